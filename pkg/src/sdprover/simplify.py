"""Simplification and deletion rules over the active clause set.

Demodulation rewrites with a unit equality.  Subsumption demodulation
generalizes it: the side premise is an equality plus extra literals, and the
extra literals must match, instantiated, into the main premise.  The main
premise L[t] | D is replaced by L[r sigma] | D when

  - some solution of the multi-literal matcher covers every side literal
    except one positive equality l = r (partial substitution sigma'),
  - a term t in a literal of the main premise outside the matched image
    extends sigma' to sigma with l sigma = t (either orientation),
  - l sigma is greater than r sigma, and
  - the literals of the main premise outside the matched image are greater,
    as a multiset, than the instantiated equality.

The last check is the cheap equivalent of demanding that the main premise
exceed the instantiated side premise: the matched image and the side
literals it instantiates cancel, leaving exactly this comparison.

Replacement rewrites one occurrence per application; the saturation loop
re-applies to fixpoint.  Scan order is deterministic: candidate side
premises by ascending clause id, matcher solutions in enumeration order,
main literals left to right, subterms outermost first, the equality as
stored before its flip, first full pass wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .clauses import Clause, ClauseFactory, Literal, eq, rename_apart
from .index import BackwardIndex, FsdIndex
from .matching import match_solutions, subsumes
from .ordering import OrderResult, compare_literal_multisets, compare_terms
from .terms import App, Substitution, Term, apply_term, match_pairs, preorder_subterms, replace_at


@dataclass(frozen=True)
class RewriteStep:
    """One validated rewrite of a main premise by a side premise equality.

    eq_pos/flipped identify the rewriting equality and the orientation used;
    lit_pos/path locate the rewritten occurrence; subst is the full matching
    substitution over the renamed side premise; lhs_image and rhs_image are
    the instantiated equality sides (lhs_image is the occurrence itself).
    pairs records the matched (side position, main position) literal pairs.
    """

    side_cid: int
    eq_pos: int
    flipped: bool
    lit_pos: int
    path: tuple[int, ...]
    subst: Substitution
    lhs_image: Term
    rhs_image: Term
    pairs: tuple[tuple[int, int], ...]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(dst for _, dst in self.pairs)


def literal_occurrences(lit: Literal) -> Iterator[tuple[tuple[int, ...], Term]]:
    """Non-variable subterm occurrences of a literal, outermost first.

    Paths start with the argument index.  Variable occurrences are skipped:
    no term is smaller than a variable, so they can never be rewritten.
    """
    for i, arg in enumerate(lit.args):
        for path, sub in preorder_subterms(arg, (i,)):
            if isinstance(sub, App):
                yield path, sub


def replace_in_literal(lit: Literal, path: tuple[int, ...], new: Term) -> Literal:
    args = list(lit.args)
    args[path[0]] = replace_at(args[path[0]], path[1:], new)
    return Literal(lit.positive, lit.pred, tuple(args))


def _orientations(lit: Literal) -> Iterator[tuple[Term, Term, bool]]:
    a, b = lit.args
    yield a, b, False
    if a != b:
        yield b, a, True


def check_ordering_conditions(
    main: Clause, lhs_image: Term, rhs_image: Term, matched_image: frozenset[int]
) -> bool:
    """Orientation and redundancy checks for one candidate rewrite.

    The instantiated equality must be oriented left to right, and the main
    literals outside the matched image must exceed it as a multiset.  The
    multiset comparison is kept exact: when the equality instance itself
    occurs outside the image it cancels, and the remainder decides.
    """
    if compare_terms(lhs_image, rhs_image) is not OrderResult.GREATER:
        return False
    outside = [lit for i, lit in enumerate(main.literals) if i not in matched_image]
    return compare_literal_multisets(outside, [eq(lhs_image, rhs_image)]) is OrderResult.GREATER


def sd_rewrite_steps(
    side_lits: Sequence[Literal], main: Clause, side_cid: int, match_limit: int = 0
) -> Iterator[RewriteStep]:
    """Every validated rewrite of main by the renamed side literals, in scan order.

    side_lits must already be renamed apart from main.
    """
    for m in match_solutions(side_lits, main.literals, reserve_equality=True, limit=match_limit):
        equality = side_lits[m.rewrite_eq_pos]
        image = m.image
        for lit_pos, lit in enumerate(main.literals):
            if lit_pos in image:
                continue
            for path, t in literal_occurrences(lit):
                for lhs, rhs, flipped in _orientations(equality):
                    sigma = match_pairs([(lhs, t)], m.subst)
                    if sigma is None:
                        continue
                    rhs_image = apply_term(rhs, sigma)
                    if not check_ordering_conditions(main, t, rhs_image, image):
                        continue
                    yield RewriteStep(
                        side_cid=side_cid,
                        eq_pos=m.rewrite_eq_pos,
                        flipped=flipped,
                        lit_pos=lit_pos,
                        path=path,
                        subst=sigma,
                        lhs_image=t,
                        rhs_image=rhs_image,
                        pairs=m.pairs,
                    )


def sd_simplifications(side: Clause, main: Clause, match_limit: int = 0) -> Iterator[RewriteStep]:
    """All subsumption demodulation steps with the given side and main premise."""
    if not any(l.positive and l.is_equality for l in side.literals):
        return
    if len(side.literals) - 1 > len(main.literals):
        return
    side_lits = rename_apart(side.literals, main.literals)
    yield from sd_rewrite_steps(side_lits, main, side.cid, match_limit)


def build_simplified_clause(main: Clause, step: RewriteStep, factory: ClauseFactory, rule: str) -> Clause:
    """Main premise with the rewritten occurrence replaced, minted with provenance."""
    lits = list(main.literals)
    lits[step.lit_pos] = replace_in_literal(lits[step.lit_pos], step.path, step.rhs_image)
    return factory.make(lits, rule=rule, parents=(main.cid, step.side_cid))


def demodulate(unit: Clause, main: Clause, factory: ClauseFactory) -> Optional[Clause]:
    """Rewrite one occurrence in main with a unit equality, or None.

    Requires the instantiated equality to be oriented and the whole main
    premise to exceed it as a multiset.  Scan order matches the subsumption
    demodulation engine: literals left to right, subterms outermost first,
    the equality as stored before its flip.
    """
    renamed = rename_apart(unit.literals, main.literals)
    equality = renamed[0]
    for lit_pos, lit in enumerate(main.literals):
        for path, t in literal_occurrences(lit):
            for lhs, rhs, _ in _orientations(equality):
                sigma = match_pairs([(lhs, t)])
                if sigma is None:
                    continue
                rhs_image = apply_term(rhs, sigma)
                if compare_terms(t, rhs_image) is not OrderResult.GREATER:
                    continue
                if compare_literal_multisets(main.literals, [eq(t, rhs_image)]) is not OrderResult.GREATER:
                    continue
                lits = list(main.literals)
                lits[lit_pos] = replace_in_literal(lit, path, rhs_image)
                return factory.make(lits, rule="demodulation", parents=(main.cid, unit.cid))
    return None


def forward_subsumption_demodulation(
    d: Clause, ix: FsdIndex, factory: ClauseFactory, match_limit: int = 0
) -> Optional[Clause]:
    """Simplify d with the first applicable indexed side premise, or None."""
    for c in sorted(ix.retrieve_fsd_candidates(d), key=lambda c: c.cid):
        step = next(sd_simplifications(c, d, match_limit), None)
        if step is not None:
            return build_simplified_clause(d, step, factory, rule="fsd")
    return None


def backward_subsumption_demodulation(
    c: Clause, active: BackwardIndex, factory: ClauseFactory, match_limit: int = 0
) -> list[tuple[Clause, Clause]]:
    """Rewrite active clauses with side premise c; (old, new) per replacement."""
    if len(c.literals) < 2:
        return []
    out: list[tuple[Clause, Clause]] = []
    for d in sorted(active.retrieve_bsd_candidates(c), key=lambda d: d.cid):
        step = next(sd_simplifications(c, d, match_limit), None)
        if step is not None:
            out.append((d, build_simplified_clause(d, step, factory, rule="bsd")))
    return out


def forward_subsumption_delete(d: Clause, active: BackwardIndex) -> Optional[int]:
    """Id of an active clause subsuming d, or None."""
    for c in sorted(active.forward_subsumption_candidates(d), key=lambda c: c.cid):
        if len(c.literals) <= len(d.literals) and subsumes(c, d):
            return c.cid
    return None


def backward_subsumption_deletions(g: Clause, active: BackwardIndex) -> list[Clause]:
    """Active clauses subsumed by g, in ascending id order."""
    out = []
    for d in sorted(active.backward_subsumption_candidates(g), key=lambda d: d.cid):
        if len(g.literals) <= len(d.literals) and subsumes(g, d):
            out.append(d)
    return out
