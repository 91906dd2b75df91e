import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from knotwidth.errors import LexError, ValidityError
from knotwidth.morse import (
    Event, Kind, Presentation, bridge_count, count_components, from_report,
    is_valid, lex, parse, profile_of, render, report, slab_arcs, slab_bounds,
    strand_counts, strand_profile, thick_thin, through_verticals, width,
)

from oracles import brute_profile, components, random_word

TREFOIL = "u1 u3 x2 x2 x2 d1 d1"
DOUBLE_TREFOIL = "u1 u3 x2 x2 x2 d1 u3 x2 x2 x2 d1 d1"


def words(max_len=16, knot=False):
    return st.builds(lambda r, n: random_word(r, n, knot),
                     st.randoms(use_true_random=False), st.integers(2, max_len))


# -- hand-computed values ---------------------------------------------------

@pytest.mark.parametrize("text, prof, w", [
    ("u1 d1", (2,), 2),
    (TREFOIL, (2, 4, 2), 8),
    (DOUBLE_TREFOIL, (2, 4, 2, 4, 2), 14),
    ("u1 u1 d1 d1", (2, 4, 2), 8),
    ("u1 x1 y1 d1", (2,), 2),
])
def test_profile_and_width(text, prof, w):
    k = parse(text)
    assert tuple(strand_profile(k)) == prof
    assert width(k) == w
    assert list(prof) == brute_profile(text)


def test_thick_thin_trefoil():
    tt = thick_thin(parse(TREFOIL))
    assert tt.thick == ((1, 4),)
    assert tt.thin == ()


def test_thick_thin_double_trefoil():
    tt = thick_thin(parse(DOUBLE_TREFOIL))
    assert tt.thick == ((1, 4), (3, 4))
    assert tt.thin == ((2, 2),)
    assert tt.levels() == [("A", 1, 4), ("B", 2, 2), ("A", 3, 4)]


def test_unknot_single_thick():
    tt = thick_thin(parse("u1 d1"))
    assert tt.thick == ((0, 2),)
    assert tt.thin == ()


def test_strand_counts():
    assert strand_counts(parse(TREFOIL).events) == [2, 4, 4, 4, 4, 2, 0]


def test_components():
    assert count_components(parse("u1 u1 d1 d1").events) == 2
    assert count_components(parse("u1 u3 d1 d1").events) == 2
    assert count_components(parse(TREFOIL).events) == 1
    assert parse(TREFOIL).is_knot
    # a plat on two strands is always one circle, kinked or not
    assert count_components(parse("u1 x1 x1 d1").events) == 1


def test_bridge():
    assert bridge_count(parse(TREFOIL)) == 2
    assert bridge_count(parse("u1 d1")) == 1


# -- errors ------------------------------------------------------------------

def test_bad_token():
    with pytest.raises(LexError):
        parse("u1 q2 d1")
    with pytest.raises(LexError):
        parse("u0 d1")


@pytest.mark.parametrize("text, pos", [
    ("u2", 1),          # cup past the last slot
    ("u1 d2", 2),       # cap index out of range
    ("u1 x1 x2 d1", 3),  # crossing needs a strand to its right
    ("d1", 1),
])
def test_validity_position(text, pos):
    with pytest.raises(ValidityError) as err:
        parse(text)
    assert err.value.position == pos
    assert str(err.value).startswith(f"event {pos}:")


def test_open_strands():
    with pytest.raises(ValidityError):
        parse("u1 u1 d1")
    with pytest.raises(ValidityError):
        parse("")


def test_comments_ignored():
    assert render(parse("u1  d1 # unknot")) == "u1 d1"


def test_lex():
    assert lex("u1 x12") == [Event(Kind.CUP, 1), Event(Kind.POS, 12)]


# -- slabs -------------------------------------------------------------------

def test_slab_double_trefoil():
    k = parse(DOUBLE_TREFOIL)
    lo, mid, hi = slab_bounds(k, 1)
    assert lo < mid < hi
    below, above = slab_arcs(k, 1)
    assert len(below.min_arcs) == 1
    assert below.verticals == (1, 2)
    assert len(above.max_arcs) == 2


def test_slab_index_error():
    with pytest.raises(IndexError):
        slab_bounds(parse("u1 d1"), 3)


def test_through_unknot():
    assert through_verticals(parse("u1 d1"), 0) == ()


# -- JSON --------------------------------------------------------------------

def test_report_roundtrip():
    k = parse(DOUBLE_TREFOIL)
    data = json.loads(json.dumps(report(k)))
    assert data["width"] == 14
    assert data["thin"] == [[2, 2]]
    assert data["events"][0] == {"kind": "cup", "index": 1}
    assert from_report(data) == k


# -- properties --------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(words())
def test_roundtrip(ev):
    k = Presentation(ev)
    assert parse(render(k)) == k


@settings(max_examples=300, deadline=None)
@given(words())
def test_profile_matches_brute(ev):
    text = render(Presentation(ev))
    assert list(profile_of(ev)) == brute_profile(text)


@settings(max_examples=300, deadline=None)
@given(words())
def test_profile_steps(ev):
    prof = (0,) + profile_of(ev) + (0,)
    assert all(abs(a - b) == 2 for a, b in zip(prof, prof[1:]))


@settings(max_examples=300, deadline=None)
@given(words())
def test_levels_alternate(ev):
    levels = thick_thin(Presentation(ev)).levels()
    kinds = [lv[0] for lv in levels]
    assert kinds[0] == kinds[-1] == "A"
    assert all(a != b for a, b in zip(kinds, kinds[1:]))


@settings(max_examples=300, deadline=None)
@given(words())
def test_cups_caps_bridge(ev):
    k = Presentation(ev)
    cups = sum(e.kind is Kind.CUP for e in ev)
    caps = sum(e.kind is Kind.CAP for e in ev)
    assert cups == caps == bridge_count(k)


@settings(max_examples=300, deadline=None)
@given(words())
def test_components_match_oracle(ev):
    assert count_components(ev) == components(ev)


def test_is_valid_rejects_mutations():
    rng = random.Random(7)
    for _ in range(200):
        ev = list(random_word(rng, rng.randint(2, 12)))
        p = rng.randrange(len(ev))
        ev[p] = Event(ev[p].kind, ev[p].index + 20)
        assert not is_valid(ev)
