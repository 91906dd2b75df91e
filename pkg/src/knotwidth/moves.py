"""Rewrites on Morse words.

Width-preserving moves approximate level isotopy in three tiers:

  T0  commutation of adjacent events acting on disjoint strands
  T1  T0 + kink absorption at a cup/cap + cancellation of inverse crossings
  T2  T1 + the braid relation on three crossings of one sign

Reducing moves act on a cup directly followed by a cap.  If the cap eats
exactly one of the cup's new strands the pair cancels (Type I); if it acts
on two other strands the minimum is slid above the maximum (Type II).
Reductions hidden behind commutations are found by searching the bounded
closure of a word under the preserving moves.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import NotApplicable
from .morse import (
    _DELTA, Event, Kind, Presentation, profile_of, render_events, thick_thin,
)

DEFAULT_BUDGET = 10_000


class Tier(enum.IntEnum):
    T0 = 0
    T1 = 1
    T2 = 2

    @classmethod
    def parse(cls, text):
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown tier {text!r}, expected t0, t1 or t2") from None


TIER_TABLE = {
    Tier.T0: "commute: swap adjacent events on disjoint strands (cup/cap pairs excluded), "
             "shifting indices by 2 past a cup or cap",
    Tier.T1: "T0 + kink: 'u i, x|y i' -> 'u i' and 'x|y i, d i' -> 'd i'; "
             "r2: 'x i, y i' and 'y i, x i' -> nothing",
    Tier.T2: "T1 + r3: 'x i, x i+1, x i' <-> 'x i+1, x i, x i+1' (same for y)",
}


class MoveKind(str, enum.Enum):
    COMMUTE = "commute"
    KINK = "kink"
    R2 = "r2"
    R3 = "r3"
    TYPE1 = "type1"
    TYPE2 = "type2"
    INV_TYPE1 = "inv_type1"
    INV_TYPE2 = "inv_type2"

    @property
    def reducing(self):
        return self in (MoveKind.TYPE1, MoveKind.TYPE2)

    @property
    def inverse(self):
        return self in (MoveKind.INV_TYPE1, MoveKind.INV_TYPE2)


class Move(NamedTuple):
    """Replace ``before`` at ``events[start:start + len(before)]`` by ``after``.

    ``delta`` is the change in width.  Insertions (``before`` empty) go just
    above event ``start`` (1-based), i.e. at 0-based slot ``start``.
    """

    kind: MoveKind
    start: int
    before: tuple[Event, ...]
    after: tuple[Event, ...]
    delta: int = 0

    @property
    def site(self) -> tuple[int, ...]:
        if not self.before:
            return (self.start,)
        return tuple(range(self.start + 1, self.start + len(self.before) + 1))

    def result(self, events: Sequence[Event]) -> tuple[Event, ...]:
        end = self.start + len(self.before)
        return (*events[:self.start], *self.after, *events[end:])

    def matches(self, events: Sequence[Event]) -> bool:
        end = self.start + len(self.before)
        return 0 <= self.start <= len(events) and end <= len(events) \
            and tuple(events[self.start:end]) == self.before

    def to_json(self, base_width=None):
        out = {"kind": self.kind.value, "site": list(self.site)}
        if base_width is not None:
            out["result_width"] = base_width + self.delta
        out["before"] = render_events(self.before)
        out["after"] = render_events(self.after)
        return out

    def __str__(self):
        return f"{self.kind.value}@{','.join(map(str, self.site))}"


def _span(ev: Event, side: str) -> tuple[int, int]:
    """Positions an event touches just below ('in') or just above ('out')."""
    if ev.kind is Kind.CUP:
        return (ev.index, 0) if side == "in" else (ev.index, 2)
    if ev.kind is Kind.CAP:
        return (ev.index, 2) if side == "in" else (ev.index, 0)
    return ev.index, 2


def swaps(lower: Event, upper: Event) -> list[tuple[Event, Event]]:
    """Ways to exchange two adjacent events acting on disjoint strands.

    Returns ``[(new_lower, new_upper), ...]``: empty if the supports meet,
    two options only for a cap directly below a cup at the same index (the
    cup may drop to either side of the cap).
    """
    s1, n1 = _span(lower, "out")
    s2, n2 = _span(upper, "in")
    out = []
    if s2 + n2 <= s1:
        out.append((upper, Event(lower.kind, lower.index + upper.delta)))
    if s2 >= s1 + n1:
        out.append((Event(upper.kind, upper.index - lower.delta), lower))
    return out


def preserving_moves(events: Sequence[Event], tier=Tier.T1) -> list[Move]:
    moves = []
    n = len(events)
    for p in range(n - 1):
        a, b = events[p], events[p + 1]
        if {a.kind, b.kind} != {Kind.CUP, Kind.CAP}:
            for lo, hi in swaps(a, b):
                moves.append(Move(MoveKind.COMMUTE, p, (a, b), (lo, hi)))
        if tier >= Tier.T1:
            if a.kind is Kind.CUP and b.kind.is_crossing and b.index == a.index:
                moves.append(Move(MoveKind.KINK, p, (a, b), (a,)))
            if a.kind.is_crossing and b.kind is Kind.CAP and a.index == b.index:
                moves.append(Move(MoveKind.KINK, p, (a, b), (b,)))
            if a.kind.is_crossing and b.kind.is_crossing and a.kind is not b.kind \
                    and a.index == b.index:
                moves.append(Move(MoveKind.R2, p, (a, b), ()))
    if tier >= Tier.T2:
        for p in range(n - 2):
            a, b, c = events[p:p + 3]
            if a.kind.is_crossing and a.kind is b.kind is c.kind and a.index == c.index \
                    and abs(a.index - b.index) == 1:
                moves.append(Move(MoveKind.R3, p, (a, b, c), (b, a, b)))
    return moves


def enumerate_preserving(k: Presentation, tier=Tier.T1) -> list[Move]:
    return preserving_moves(k.events, tier)


def reducing_moves(events: Sequence[Event]) -> list[Move]:
    moves = []
    c = 0
    CUP, CAP = Kind.CUP, Kind.CAP
    for p, (a, b) in enumerate(zip(events, events[1:])):
        if a.kind is not CUP:
            c += _DELTA[a.kind]
            continue
        c += 2
        if b.kind is not CAP:
            continue
        gap = abs(a.index - b.index)
        if gap == 1:
            moves.append(Move(MoveKind.TYPE1, p, (a, b), (), 2 - 2 * c))
        elif gap >= 2 and c > 4:
            # two strands below the cup would leave none between the cap
            # and the cup: the word splits, which cannot happen on a knot
            (lo, hi), = swaps(a, b)
            moves.append(Move(MoveKind.TYPE2, p, (a, b), (lo, hi), -4))
    return moves


def enumerate_reducing(k: Presentation) -> list[Move]:
    return reducing_moves(k.events)


def inverse_moves(events: Sequence[Event]) -> list[Move]:
    """Width-increasing moves: zig-zag insertion and cap/cup exchange."""
    moves = []
    c = 0
    for p in range(len(events) + 1):
        if p:
            c += events[p - 1].delta
        if c >= 2:
            for i in range(1, c + 2):
                if i <= c:
                    zz = (Event(Kind.CUP, i), Event(Kind.CAP, i + 1))
                    moves.append(Move(MoveKind.INV_TYPE1, p, (), zz, 2 * c + 2))
                if i >= 2:
                    zz = (Event(Kind.CUP, i), Event(Kind.CAP, i - 1))
                    moves.append(Move(MoveKind.INV_TYPE1, p, (), zz, 2 * c + 2))
    for p in range(len(events) - 1):
        a, b = events[p], events[p + 1]
        if a.kind is Kind.CAP and b.kind is Kind.CUP:
            for lo, hi in swaps(a, b):
                moves.append(Move(MoveKind.INV_TYPE2, p, (a, b), (lo, hi), 4))
    return moves


def enumerate_inverse(k: Presentation) -> list[Move]:
    return inverse_moves(k.events)


def apply(k: Presentation, m: Move) -> Presentation:
    if not m.matches(k.events):
        raise NotApplicable(f"{m} does not match {render_events(k.events)}")
    out = Presentation(m.result(k.events))
    if out.component_count != k.component_count:
        raise NotApplicable(f"{m} changes the number of components")
    return out


def gap_of(events: Sequence[Event], start: int) -> int:
    """Gap index just above the critical event at ``start``."""
    return sum(1 for ev in events[:start + 1] if ev.kind.is_critical) - 1


@dataclass(frozen=True)
class ClosureResult:
    words: tuple[Presentation, ...]
    truncated: bool

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, k):
        return k in self.words


def closure_events(start: tuple[Event, ...], tier=Tier.T1, node_budget=DEFAULT_BUDGET):
    """Breadth-first closure under preserving moves.

    Layers are admitted in lexicographic order of their rendered words
    until ``node_budget`` distinct words are held.  Returns the words in
    admission order and whether some reachable word was left out.
    """
    if node_budget < 1:
        raise ValueError("node_budget must be at least 1")
    text = {start: render_events(start)}
    order = [start]
    frontier = [start]
    truncated = False
    while frontier:
        found = {}
        for w in frontier:
            for m in preserving_moves(w, tier):
                v = m.result(w)
                if v not in text and v not in found:
                    found[v] = render_events(v)
        layer = sorted(found, key=found.get)
        room = node_budget - len(order)
        if len(layer) > room:
            layer = layer[:room]
            truncated = True
        for v in layer:
            text[v] = found[v]
        order.extend(layer)
        frontier = layer
        if truncated:
            break
    return order, text, truncated


def closure(k: Presentation, tier=Tier.T1, node_budget=DEFAULT_BUDGET) -> ClosureResult:
    order, _, truncated = closure_events(k.events, tier, node_budget)
    return ClosureResult(tuple(Presentation(w) for w in order), truncated)


def canonical_key(k: Presentation, tier=Tier.T1, node_budget=DEFAULT_BUDGET) -> bytes:
    """Least rendered word in the closure.

    Equal keys mean the words are related by preserving moves; different
    keys prove nothing when the closure was truncated.
    """
    _, text, _ = closure_events(k.events, tier, node_budget)
    return min(text.values()).encode("ascii")


class Classification(str, enum.Enum):
    STABILIZED = "stabilized_witness"
    WEAKLY_REDUCIBLE = "weakly_reducible_witness"
    NONE_FOUND = "no_reduction_found"


@dataclass(frozen=True)
class ThickLevelClass:
    """Search outcome for one thick level.

    ``witness`` applies to ``witness_word``, a member of the closure of the
    classified word.  NONE_FOUND only means no reduction was found within
    ``search_budget_used`` closure words at ``tier``.
    """

    thick_index: int
    classification: Classification
    witness: Move | None
    witness_word: Presentation | None
    search_budget_used: int
    tier: Tier
    truncated: bool

    def to_json(self):
        out = {
            "thick_index": self.thick_index,
            "classification": self.classification.value,
            "tier": self.tier.name.lower(),
            "search_budget_used": self.search_budget_used,
            "truncated": self.truncated,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json(sum(profile_of(self.witness_word.events)))
            out["witness_word"] = render_events(self.witness_word.events)
        return out


def level_reductions(k: Presentation, tier=Tier.T1, node_budget=DEFAULT_BUDGET):
    """All reducing moves found in the closure, grouped by the thick gap they straddle.

    Returns ``({gap: [(n, word, move), ...]}, closure_size, truncated)``
    where ``n`` is the word's rank in closure order.
    """
    order, _, truncated = closure_events(k.events, tier, node_budget)
    found: dict[int, list] = {}
    for n, w in enumerate(order):
        for m in reducing_moves(w):
            found.setdefault(gap_of(w, m.start), []).append((n, w, m))
    return found, len(order), truncated


def classify_thick_level(k: Presentation, thick_index: int, tier=Tier.T1,
                         node_budget=DEFAULT_BUDGET) -> ThickLevelClass:
    tt = thick_thin(k)
    if not 0 <= thick_index < len(tt.thick):
        raise IndexError(f"thick level {thick_index} out of range 0..{len(tt.thick) - 1}")
    gap = tt.thick[thick_index][0]
    found, used, truncated = level_reductions(k, tier, node_budget)
    hits = found.get(gap, [])
    for want, cls in ((MoveKind.TYPE1, Classification.STABILIZED),
                      (MoveKind.TYPE2, Classification.WEAKLY_REDUCIBLE)):
        for _, w, m in hits:
            if m.kind is want:
                return ThickLevelClass(thick_index, cls, m, Presentation(w), used, tier, truncated)
    return ThickLevelClass(thick_index, Classification.NONE_FOUND, None, None, used, tier, truncated)
