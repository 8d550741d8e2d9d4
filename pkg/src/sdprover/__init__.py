"""Saturation prover for first-order logic with equality.

The calculus is superposition with literal selection over a Knuth-Bendix
ordering.  Simplification includes rewriting by unit equalities, clause
subsumption, and conditional rewriting whose side conditions are discharged
by matching the rest of the side clause into the clause being rewritten,
in both forward and backward direction.
"""

from .clauses import Clause, ClauseFactory, Literal, PredicateSymbol, eq, neq, predicate
from .ordering import OrderResult, compare_clauses, compare_literals, compare_terms
from .saturation import ProverConfig, SatStatus, SaturationResult, proof_clauses, saturate, verify_proof
from .terms import App, FunctionSymbol, Signature, SignatureError, Substitution, Term, Var
from .tptp import ParseError, Problem, emit_result, format_clause, load_problem, parse_problem

__all__ = [
    "App",
    "Clause",
    "ClauseFactory",
    "FunctionSymbol",
    "Literal",
    "OrderResult",
    "ParseError",
    "Problem",
    "PredicateSymbol",
    "ProverConfig",
    "SatStatus",
    "SaturationResult",
    "Signature",
    "SignatureError",
    "Substitution",
    "Term",
    "Var",
    "compare_clauses",
    "compare_literals",
    "compare_terms",
    "emit_result",
    "eq",
    "format_clause",
    "load_problem",
    "neq",
    "parse_problem",
    "predicate",
    "proof_clauses",
    "saturate",
    "verify_proof",
]
