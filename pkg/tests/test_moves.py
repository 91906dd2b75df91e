import random

import pytest
from hypothesis import given, settings, strategies as st

from knotwidth.constructions import stabilize
from knotwidth.errors import NotApplicable
from knotwidth.morse import (
    Event, Kind, Presentation, count_components, parse, profile_of, render,
    render_events, width,
)
from knotwidth.moves import (
    TIER_TABLE, Classification, MoveKind, Tier, apply, canonical_key,
    classify_thick_level, closure, enumerate_inverse, enumerate_preserving,
    enumerate_reducing, gap_of, swaps,
)

from oracles import jones_like, random_word

TREFOIL = "u1 u3 x2 x2 x2 d1 d1"
# double trefoil after sliding its middle cap below the next cup
WEAK = "u1 u3 x2 x2 x2 u5 d1 x2 x2 x2 d1 d1"


def knots(max_len=12):
    return st.builds(lambda r, n: random_word(r, n, knot=True),
                     st.randoms(use_true_random=False), st.integers(2, max_len))


def w(ev):
    return sum(profile_of(ev))


# -- commute ------------------------------------------------------------------

def test_commute_disjoint_examples():
    k = parse("u1 u3 d1 d1")
    kinds = {(m.kind, m.site) for m in enumerate_preserving(k, Tier.T0)}
    assert (MoveKind.COMMUTE, (1, 2)) in kinds
    assert (MoveKind.COMMUTE, (3, 4)) in kinds
    # cup then cap is never a commutation: it changes width
    assert not any(m.site == (2, 3) for m in enumerate_preserving(k, Tier.T2))


def test_swaps_shift_indices():
    # cup below a crossing to its right: crossing index drops by 2 when it goes first
    assert swaps(Event(Kind.CUP, 1), Event(Kind.POS, 4)) == [(Event(Kind.POS, 2), Event(Kind.CUP, 1))]
    # touching supports do not swap
    assert swaps(Event(Kind.POS, 1), Event(Kind.POS, 2)) == []


def test_cap_cup_same_index_two_ways():
    opts = swaps(Event(Kind.CAP, 2), Event(Kind.CUP, 2))
    assert len(opts) == 2


def test_tier_content():
    k = parse("u1 x1 y1 d1")
    t0 = {m.kind for m in enumerate_preserving(k, Tier.T0)}
    t1 = {m.kind for m in enumerate_preserving(k, Tier.T1)}
    assert MoveKind.R2 not in t0 and MoveKind.KINK not in t0
    assert {MoveKind.R2, MoveKind.KINK} <= t1
    r3 = parse("u1 u3 x1 x2 x1 d1 d1")
    assert any(m.kind is MoveKind.R3 for m in enumerate_preserving(r3, Tier.T2))
    assert not any(m.kind is MoveKind.R3 for m in enumerate_preserving(r3, Tier.T1))
    assert set(TIER_TABLE) == set(Tier)


def test_tier_parse():
    assert Tier.parse("t2") is Tier.T2
    assert Tier.parse("T0") is Tier.T0
    with pytest.raises(ValueError):
        Tier.parse("t9")


# -- reducing ------------------------------------------------------------------

def test_type1_example():
    k = parse("u1 u2 d1 d1")
    (m,) = enumerate_reducing(k)
    assert m.kind is MoveKind.TYPE1 and m.site == (2, 3)
    assert m.delta == -6
    assert render(apply(k, m)) == "u1 d1"


@pytest.mark.parametrize("base, pos, t", [
    ("u1 d1", 1, 4),
    (TREFOIL, 3, 6),
    ("u1 u3 u5 x2 x4 d1 d1 d1", 4, 8),
])
def test_type1_delta_family(base, pos, t):
    k = stabilize(parse(base), pos, 1)
    assert max(profile_of(k.events)) == t
    (m,) = [m for m in enumerate_reducing(k) if m.kind is MoveKind.TYPE1 and m.start == pos]
    assert m.delta == -(2 * t - 2)
    assert width(apply(k, m)) - width(k) == -(2 * t - 2)
    assert apply(k, m) == parse(base)


def test_type2_example():
    k = parse(WEAK)
    (m,) = [m for m in enumerate_reducing(k) if m.kind is MoveKind.TYPE2]
    assert m.site == (6, 7)
    out = apply(k, m)
    assert render(out) == "u1 u3 x2 x2 x2 d1 u3 x2 x2 x2 d1 d1"
    assert width(out) == width(k) - 4


def test_no_type2_on_split_level():
    # two strands below the cup: the exchange would split the link
    assert not any(m.kind is MoveKind.TYPE2 for m in enumerate_reducing(parse("u1 u3 d1 d1")))


def test_apply_mismatch():
    k = parse("u1 u2 d1 d1")
    (m,) = enumerate_reducing(k)
    with pytest.raises(NotApplicable):
        apply(parse(TREFOIL), m)


def test_gap_of():
    ev = parse(WEAK).events
    assert gap_of(ev, 5) == 2


# -- oracle checks on every move ------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(knots())
def test_preserving_moves_are_isotopies(ev):
    inv = jones_like(ev)
    for m in enumerate_preserving(Presentation(ev), Tier.T2):
        out = m.result(ev)
        assert w(out) == w(ev), m
        assert count_components(out) == 1
        assert jones_like(out) == inv, (render_events(ev), m)


@settings(max_examples=150, deadline=None)
@given(knots())
def test_reducing_moves_are_isotopies(ev):
    inv = jones_like(ev)
    for m in enumerate_reducing(Presentation(ev)):
        out = m.result(ev)
        assert w(out) - w(ev) == m.delta
        assert m.delta == -4 if m.kind is MoveKind.TYPE2 else m.delta < 0
        assert count_components(out) == 1
        assert jones_like(out) == inv, (render_events(ev), m)


@settings(max_examples=80, deadline=None)
@given(knots(8))
def test_inverse_moves_are_isotopies(ev):
    inv = jones_like(ev)
    for m in enumerate_inverse(Presentation(ev)):
        out = m.result(ev)
        assert w(out) - w(ev) == m.delta > 0
        assert count_components(out) == 1
        assert jones_like(out) == inv, (render_events(ev), m)


@settings(max_examples=100, deadline=None)
@given(knots(10))
def test_inverse_type2_undone(ev):
    k = Presentation(ev)
    for m in enumerate_inverse(k):
        if m.kind is not MoveKind.INV_TYPE2:
            continue
        up = apply(k, m)
        back = [apply(up, r) for r in enumerate_reducing(up)
                if r.kind is MoveKind.TYPE2 and r.start == m.start]
        assert k in back


@settings(max_examples=100, deadline=None)
@given(knots(10), st.randoms(use_true_random=False))
def test_stabilize_then_cancel(ev, rng):
    k = Presentation(ev)
    pos = rng.randrange(1, len(ev))
    c = sum(e.delta for e in ev[:pos])
    turn = rng.choice((1, -1))
    index = rng.randint(1, c) if turn == 1 else rng.randint(2, c + 1)
    s = stabilize(k, pos, index, turn)
    cancels = [m for m in enumerate_reducing(s) if m.kind is MoveKind.TYPE1 and m.start == pos]
    assert len(cancels) == 1
    assert apply(s, cancels[0]) == k
    assert cancels[0].delta == -(2 * (c + 2) - 2)


# -- closure -----------------------------------------------------------------

def test_closure_link_example():
    res = closure(parse("u1 u3 d1 d1"), Tier.T0)
    assert [render(k) for k in res] == ["u1 u3 d1 d1", "u1 u1 d1 d1", "u1 u3 d3 d1", "u1 u1 d3 d1"]
    assert not res.truncated
    assert canonical_key(parse("u1 u3 d3 d1"), Tier.T0) == b"u1 u1 d1 d1"


def test_closure_trefoil():
    res = closure(parse(TREFOIL), Tier.T0)
    assert len(res) == 4
    assert canonical_key(parse(TREFOIL), Tier.T0) == b"u1 u1 x2 x2 x2 d1 d1"


def test_closure_truncated():
    assert closure(parse(TREFOIL), Tier.T0, 1).truncated


def test_closure_key_class_invariant_t0():
    # commutations are reversible, so every member sees the same closure
    rng = random.Random(3)
    for _ in range(25):
        k = Presentation(random_word(rng, rng.randint(4, 8), knot=True))
        res = closure(k, Tier.T0, 300)
        if res.truncated:
            continue
        key = canonical_key(k, Tier.T0, 300)
        for other in res:
            assert canonical_key(other, Tier.T0, 300) == key


def test_closure_key_monotone_t1():
    # kink and R2 only delete, so a member reaches a subset of the closure
    rng = random.Random(4)
    for _ in range(25):
        k = Presentation(random_word(rng, rng.randint(4, 8), knot=True))
        res = closure(k, Tier.T1, 300)
        if res.truncated:
            continue
        key = canonical_key(k, Tier.T1, 300)
        for other in res:
            assert canonical_key(other, Tier.T1, 300) >= key


def test_key_stable():
    k = parse(WEAK)
    assert canonical_key(k, Tier.T2, 50) == canonical_key(k, Tier.T2, 50)


def test_closure_members_preserve_width():
    k = parse(WEAK)
    for other in closure(k, Tier.T2):
        assert width(other) == width(k)


# -- classification ----------------------------------------------------------

def test_classify_stabilized():
    c = classify_thick_level(parse("u1 u2 d1 d1"), 0)
    assert c.classification is Classification.STABILIZED
    assert c.witness.kind is MoveKind.TYPE1


def test_classify_weakly_reducible():
    k = parse(WEAK)
    c = classify_thick_level(k, 0)
    assert c.classification is Classification.WEAKLY_REDUCIBLE
    assert c.to_json()["classification"] == "weakly_reducible_witness"


def test_classify_none_found():
    c = classify_thick_level(parse(TREFOIL), 0)
    assert c.classification is Classification.NONE_FOUND
    assert c.witness is None
    assert not c.truncated


def test_classify_out_of_range():
    with pytest.raises(IndexError):
        classify_thick_level(parse(TREFOIL), 2)


def test_move_json():
    (m,) = enumerate_reducing(parse("u1 u2 d1 d1"))
    assert m.to_json(8) == {"kind": "type1", "site": [2, 3], "result_width": 2,
                            "before": "u2 d1", "after": ""}


@settings(max_examples=150, deadline=None)
@given(knots())
def test_length_keeping_moves_reversible(ev):
    # the explorer shares keys across same-length closure members on this basis
    for m in enumerate_preserving(Presentation(ev), Tier.T2):
        out = m.result(ev)
        if len(out) != len(ev):
            continue
        back = {r.result(out) for r in enumerate_preserving(Presentation(out), Tier.T2)}
        assert ev in back, m
