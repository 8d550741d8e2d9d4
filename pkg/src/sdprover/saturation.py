"""Given-clause saturation loop with simplification and redundancy deletion.

Discount-style: passive clauses rest untouched until popped; the given
clause is forward-simplified against the active set, then used backward to
delete or rewrite active clauses, then activated and paired with every
active clause for generating inferences.  Clause selection alternates age
and weight at a 1:5 ratio, starting with age.

Provenance lives on the clauses themselves (rule plus parent ids inside the
factory registry), so a proof is reconstructed by walking parents from the
empty clause, and re-validated by re-running each step's rule.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from . import calculus
from .clauses import Clause, ClauseFactory, variant
from .index import BackwardIndex, FsdIndex
from .simplify import (
    backward_subsumption_deletions,
    backward_subsumption_demodulation,
    build_simplified_clause,
    demodulate,
    forward_subsumption_delete,
    forward_subsumption_demodulation,
    sd_simplifications,
)


class SatStatus(Enum):
    UNSATISFIABLE = "Unsatisfiable"
    SATURATED = "Saturated"
    RESOURCE_OUT = "ResourceOut"


@dataclass(frozen=True)
class ProverConfig:
    """Saturation switches and limits; zero limits mean unlimited."""

    fsd: bool = True
    bsd: bool = True
    time_limit: float = 60.0
    clause_limit: int = 100000
    match_limit: int = 0
    proof: bool = True
    max_iterations: int = 0


@dataclass
class SaturationResult:
    status: SatStatus
    factory: ClauseFactory
    empty: Optional[Clause] = None
    limit_reason: Optional[str] = None
    iterations: int = 0
    activated: int = 0


class ResourceLimit(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class PassiveQueue:
    """Two-heap clause queue: lightest-first with a periodic oldest-first pop."""

    AGE_EVERY = 6

    def __init__(self) -> None:
        self._weight_heap: list[tuple[int, int]] = []
        self._age_heap: list[int] = []
        self._clauses: dict[int, Clause] = {}
        self._pops = 0

    def __len__(self) -> int:
        return len(self._clauses)

    def push(self, c: Clause) -> None:
        if c.cid in self._clauses:
            return
        self._clauses[c.cid] = c
        heapq.heappush(self._weight_heap, (c.weight, c.cid))
        heapq.heappush(self._age_heap, c.cid)

    def pop(self) -> Clause:
        self._pops += 1
        by_age = self._pops % self.AGE_EVERY == 1
        # stale heap entries are skipped lazily
        if by_age:
            while True:
                cid = heapq.heappop(self._age_heap)
                if cid in self._clauses:
                    return self._clauses.pop(cid)
        while True:
            _, cid = heapq.heappop(self._weight_heap)
            if cid in self._clauses:
                return self._clauses.pop(cid)


@dataclass
class ProverState:
    factory: ClauseFactory
    config: ProverConfig
    passive: PassiveQueue = field(default_factory=PassiveQueue)
    active: dict[int, Clause] = field(default_factory=dict)
    bindex: BackwardIndex = field(default_factory=BackwardIndex)
    fsd_index: FsdIndex = field(default_factory=FsdIndex)
    unit_eqs: dict[int, Clause] = field(default_factory=dict)
    deadline: Optional[float] = None

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimit("time")

    def check_clauses(self) -> None:
        if self.config.clause_limit > 0 and self.factory.created > self.config.clause_limit:
            raise ResourceLimit("clauses")

    def activate(self, g: Clause) -> None:
        self.active[g.cid] = g
        self.bindex.insert(g)
        self.fsd_index.insert(g)
        if len(g.literals) == 1 and g.literals[0].positive and g.literals[0].is_equality:
            self.unit_eqs[g.cid] = g

    def remove_active(self, c: Clause) -> None:
        self.active.pop(c.cid, None)
        self.bindex.remove(c)
        self.fsd_index.remove(c)
        self.unit_eqs.pop(c.cid, None)


def _demodulate_once(g: Clause, st: ProverState) -> Optional[Clause]:
    for cid in sorted(st.unit_eqs):
        if cid == g.cid:
            continue
        res = demodulate(st.unit_eqs[cid], g, st.factory)
        if res is not None:
            return res
    return None


def forward_simplify(g: Clause, st: ProverState) -> Optional[Clause]:
    """Simplify the given clause against the active set until no rule fires.

    Each round tries subsumption deletion, then rewriting by a unit
    equality, then forward subsumption demodulation; a successful rewrite
    restarts the round with the new clause.  None means g was deleted.
    """
    while True:
        st.check_time()
        if forward_subsumption_delete(g, st.bindex) is not None:
            return None
        stepped = _demodulate_once(g, st)
        if stepped is None and st.config.fsd:
            stepped = forward_subsumption_demodulation(g, st.fsd_index, st.factory, st.config.match_limit)
        if stepped is None:
            return g
        g = stepped


def backward_simplify(g: Clause, st: ProverState) -> None:
    """Use the activated clause g to delete or rewrite older active clauses.

    Rewritten replacements go back to passive so they are forward-simplified
    before ever becoming active.
    """
    for d in backward_subsumption_deletions(g, st.bindex):
        st.remove_active(d)
    if st.config.bsd and any(l.positive and l.is_equality for l in g.literals):
        for old, new in backward_subsumption_demodulation(g, st.bindex, st.factory, st.config.match_limit):
            st.remove_active(old)
            st.passive.push(new)


def _generate(g: Clause, st: ProverState) -> list[Clause]:
    out = list(calculus.unary_inferences(g, st.factory))
    for cid in sorted(st.active):
        st.check_time()
        a = st.active[cid]
        out.extend(calculus.resolution(g, a, st.factory))
        out.extend(calculus.superposition(g, a, st.factory))
        if a.cid != g.cid:
            out.extend(calculus.superposition(a, g, st.factory))
            out.extend(calculus.resolution(a, g, st.factory))
    return out


def saturate(clauses: Iterable[Clause], config: ProverConfig, factory: ClauseFactory) -> SaturationResult:
    """Run the given-clause loop to a verdict.

    clauses must have been minted by the same factory, so conclusions extend
    the same registry and proofs stay reconstructible.
    """
    st = ProverState(factory=factory, config=config)
    if config.time_limit > 0:
        st.deadline = time.monotonic() + config.time_limit
    result = SaturationResult(status=SatStatus.SATURATED, factory=factory)
    for c in clauses:
        if c.is_empty:
            result.status = SatStatus.UNSATISFIABLE
            result.empty = c
            return result
        st.passive.push(c)
    try:
        while len(st.passive) > 0:
            result.iterations += 1
            if 0 < config.max_iterations < result.iterations:
                raise ResourceLimit("iterations")
            st.check_time()
            st.check_clauses()
            g = forward_simplify(st.passive.pop(), st)
            if g is None:
                continue
            if g.is_empty:
                result.status = SatStatus.UNSATISFIABLE
                result.empty = g
                return result
            st.activate(g)
            result.activated += 1
            backward_simplify(g, st)
            for c in _generate(g, st):
                if c.is_empty:
                    result.status = SatStatus.UNSATISFIABLE
                    result.empty = c
                    return result
                st.passive.push(c)
    except ResourceLimit as limit:
        result.status = SatStatus.RESOURCE_OUT
        result.limit_reason = limit.reason
    return result


def proof_clauses(result: SaturationResult) -> list[Clause]:
    """Ancestor closure of the empty clause, ascending by id."""
    if result.empty is None:
        return []
    registry = result.factory.registry
    seen: set[int] = set()
    stack = [result.empty.cid]
    while stack:
        cid = stack.pop()
        if cid in seen:
            continue
        seen.add(cid)
        stack.extend(registry[cid].parents)
    return [registry[cid] for cid in sorted(seen)]


def _reproducible(node: Clause, registry: dict[int, Clause]) -> bool:
    scratch = ClauseFactory()
    parents = [registry[p] for p in node.parents]
    rule = node.rule
    if rule == "input":
        return True
    if rule in ("resolution", "superposition"):
        conclusions = getattr(calculus, rule)(parents[0], parents[1], scratch)
    elif rule == "factoring":
        conclusions = calculus.factoring(parents[0], scratch)
    elif rule == "eq_resolution":
        conclusions = calculus.equality_resolution(parents[0], scratch)
    elif rule == "eq_factoring":
        conclusions = calculus.equality_factoring(parents[0], scratch)
    elif rule == "demodulation":
        main, unit = parents
        redone = demodulate(unit, main, scratch)
        conclusions = [] if redone is None else [redone]
    elif rule in ("fsd", "bsd"):
        main, side = parents
        conclusions = [
            build_simplified_clause(main, step, scratch, rule)
            for step in sd_simplifications(side, main)
        ]
    else:
        return False
    return any(variant(c.literals, node.literals) for c in conclusions)


def verify_proof(result: SaturationResult) -> list[str]:
    """Re-run every proof step; returns human-readable failures, empty if valid."""
    problems = []
    if result.status is not SatStatus.UNSATISFIABLE or result.empty is None:
        return ["result carries no proof"]
    for node in proof_clauses(result):
        if not _reproducible(node, result.factory.registry):
            problems.append(f"clause {node.cid} not reproduced by rule {node.rule}")
    return problems
