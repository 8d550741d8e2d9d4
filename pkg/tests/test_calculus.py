"""Generating rule tests: unit cases, selection discipline, ground soundness."""

from oracles import ground_entails
from randgen import Gen, GroundGen

from sdprover.calculus import (
    binary_inferences,
    equality_factoring,
    equality_resolution,
    factoring,
    resolution,
    superposition,
    unary_inferences,
)
from sdprover.clauses import ClauseFactory, eq, neq, select, variant
from sdprover.terms import Var

env = Gen(seed=47)
x, y = Var(0), Var(1)


def _lits_of(clauses):
    return {c.literals for c in clauses}


def test_resolution_basic():
    factory = ClauseFactory()
    c1 = factory.make([env.p(env.f(x))])
    c2 = factory.make([env.p(env.f(env.a)).negated(), env.q(env.a)])
    out = resolution(c1, c2, factory)
    assert _lits_of(out) == {(env.q(env.a),)}
    assert out[0].rule == "resolution"
    assert out[0].parents == (c1.cid, c2.cid)


def test_resolution_requires_selected_negative_literal():
    factory = ClauseFactory()
    # the heavier negative literal is selected, so the lighter one is inert
    c2 = factory.make([env.q(env.a).negated(), env.p(env.f(env.f(env.a))).negated()])
    assert select(c2) == (1,)
    q_unit = factory.make([env.q(env.a)])
    assert resolution(q_unit, c2, factory) == []
    p_unit = factory.make([env.p(env.f(env.f(env.a)))])
    assert _lits_of(resolution(p_unit, c2, factory)) == {(env.q(env.a).negated(),)}


def test_resolution_ignores_mismatched_predicates_and_polarity():
    factory = ClauseFactory()
    assert resolution(factory.make([env.p(env.a)]), factory.make([env.q(env.a).negated()]), factory) == []
    assert resolution(factory.make([env.p(env.a)]), factory.make([env.p(env.a)]), factory) == []


def test_resolution_renames_shared_variables_apart():
    factory = ClauseFactory()
    c1 = factory.make([env.p(x)])
    c2 = factory.make([env.p(env.f(x)).negated(), env.q(x)])
    out = resolution(c1, c2, factory)
    assert len(out) == 1
    assert variant(out[0].literals, (env.q(x),))


def test_factoring_unifies_two_selected_literals():
    factory = ClauseFactory()
    c = factory.make([env.p(x), env.p(env.c)])
    out = factoring(c, factory)
    assert _lits_of(out) == {(env.p(env.c),)}
    assert out[0].rule == "factoring"


def test_factoring_skips_negative_clauses_with_one_selected_literal():
    factory = ClauseFactory()
    # only the heaviest negative literal is selected, so no pair unifies
    c = factory.make([env.p(x).negated(), env.p(env.f(env.c)).negated()])
    assert select(c) == (1,)
    assert factoring(c, factory) == []


def test_superposition_ground_rewrite():
    factory = ClauseFactory()
    c1 = factory.make([eq(env.f(env.c), env.c)])
    c2 = factory.make([env.p(env.f(env.c))])
    out = superposition(c1, c2, factory)
    assert _lits_of(out) == {(env.p(env.c),)}
    assert out[0].rule == "superposition"
    assert out[0].parents == (c1.cid, c2.cid)


def test_superposition_respects_orientation():
    factory = ClauseFactory()
    # rewriting with the small side would grow the term; nothing applies
    c1 = factory.make([eq(env.f(env.c), env.c)])
    c2 = factory.make([env.p(env.c)])
    assert superposition(c1, c2, factory) == []


def test_superposition_skips_variable_positions():
    factory = ClauseFactory()
    c1 = factory.make([eq(env.f(env.a), env.a)])
    c2 = factory.make([env.p(x)])
    assert superposition(c1, c2, factory) == []


def test_superposition_needs_selected_equality():
    factory = ClauseFactory()
    # the negative literal is selected, leaving the equality inert
    c1 = factory.make([env.q(env.f(env.a)).negated(), eq(env.f(env.a), env.a)])
    assert select(c1) == (0,)
    c2 = factory.make([env.p(env.f(env.a))])
    assert superposition(c1, c2, factory) == []


def test_superposition_into_equality_checks_both_sides():
    factory = ClauseFactory()
    c1 = factory.make([eq(env.f(env.c), env.c)])
    c2 = factory.make([neq(env.f(env.c), env.g(env.c))])
    out = superposition(c1, c2, factory)
    assert _lits_of(out) == {(neq(env.c, env.g(env.c)),)}


def test_equality_resolution():
    factory = ClauseFactory()
    c = factory.make([neq(env.f(x), env.f(env.a)), env.p(x)])
    out = equality_resolution(c, factory)
    assert _lits_of(out) == {(env.p(env.a),)}
    assert out[0].rule == "eq_resolution"
    assert out[0].parents == (c.cid,)


def test_equality_resolution_needs_unifiable_sides():
    factory = ClauseFactory()
    c = factory.make([neq(env.a, env.b)])
    assert equality_resolution(c, factory) == []


def test_equality_factoring():
    factory = ClauseFactory()
    c = factory.make([eq(env.f(x), x), eq(env.f(env.b), env.b)])
    out = equality_factoring(c, factory)
    assert _lits_of(out) == {(eq(env.f(env.b), env.b), neq(env.b, env.b))}
    assert out[0].rule == "eq_factoring"


def test_unary_wrapper_collects_all_three_rules():
    factory = ClauseFactory()
    c = factory.make([env.p(x), env.p(env.c), neq(y, env.a)])
    out = unary_inferences(c, factory)
    rules = {cl.rule for cl in out}
    assert "eq_resolution" in rules


def test_ground_inferences_are_sound():
    gg = GroundGen(seed=5)
    factory = ClauseFactory()
    checked = 0
    for _ in range(600):
        lits1 = gg.lits(gg.rng.randrange(1, 3))
        lits2 = gg.lits(gg.rng.randrange(1, 3))
        if gg.rng.random() < 0.5:
            # share a complemented literal so binary rules fire often
            lits2 = lits2 + (gg.rng.choice(lits1).negated(),)
        c1 = factory.make(lits1)
        c2 = factory.make(lits2)
        produced = unary_inferences(c1, factory) + binary_inferences(c1, c2, factory)
        for concl in produced:
            assert ground_entails([c1.literals, c2.literals], concl.literals)
            checked += 1
    assert checked > 50


