"""Morse words: parsing, validation and the level computations behind width.

A Morse word lists elementary events from bottom to top.  Word position
plays the role of height; the only critical points of the height function
are cups (minima) and caps (maxima), so regular levels live in the gaps
between consecutive critical events.

Indices are 1-based and relative to the strands present just below the
event.  ``u i`` inserts two new strands at positions i, i+1; ``d i`` joins
the strands at i, i+1; ``x i`` / ``y i`` cross the strands at i, i+1.  For
``x i`` the strand entering from the left passes over, for ``y i`` it passes
under.
"""
from __future__ import annotations

import enum
import re
from itertools import accumulate
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import LexError, ValidityError


class Kind(str, enum.Enum):
    CUP = "u"
    CAP = "d"
    POS = "x"
    NEG = "y"

    @property
    def is_critical(self):
        return self is Kind.CUP or self is Kind.CAP

    @property
    def is_crossing(self):
        return self is Kind.POS or self is Kind.NEG


JSON_KIND = {Kind.CUP: "cup", Kind.CAP: "cap", Kind.POS: "crosspos", Kind.NEG: "crossneg"}
KIND_FROM_JSON = {v: k for k, v in JSON_KIND.items()}
_DELTA = {Kind.CUP: 2, Kind.CAP: -2, Kind.POS: 0, Kind.NEG: 0}
_CRIT_DELTA = {Kind.CUP: 2, Kind.CAP: -2}


class Event(NamedTuple):
    kind: Kind
    index: int

    def __str__(self):
        return f"{self.kind.value}{self.index}"

    @property
    def delta(self):
        """Change in strand count caused by this event."""
        return _DELTA[self.kind]


def cup(i):
    return Event(Kind.CUP, i)


def cap(i):
    return Event(Kind.CAP, i)


def pos(i):
    return Event(Kind.POS, i)


def neg(i):
    return Event(Kind.NEG, i)


_TOKEN = re.compile(r"([udxy])([1-9][0-9]*)")


def lex(text: str) -> list[Event]:
    """Split a single-line word into events.  ``#`` starts a comment."""
    text = text.split("#", 1)[0]
    events = []
    for n, tok in enumerate(text.split(), start=1):
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise LexError(tok, n)
        events.append(Event(Kind(m.group(1)), int(m.group(2))))
    return events


def event_error(ev: Event, count: int) -> str | None:
    """Reason ``ev`` is invalid on ``count`` strands, or None if it is fine."""
    if ev.index < 1:
        return f"index {ev.index} must be positive"
    if ev.kind is Kind.CUP:
        if ev.index > count + 1:
            return f"cup index {ev.index} exceeds {count + 1} on {count} strands"
        return None
    if count < 2:
        return f"{str(ev)} needs at least 2 strands, have {count}"
    if ev.index > count - 1:
        return f"index {ev.index} exceeds {count - 1} on {count} strands"
    return None


def check_events(events: Sequence[Event]) -> None:
    count = 0
    for n, ev in enumerate(events, start=1):
        why = event_error(ev, count)
        if why is not None:
            raise ValidityError(why, n)
        count += ev.delta
    if not events:
        raise ValidityError("empty word", 1)
    if count != 0:
        raise ValidityError(f"{count} strands left open at the top", len(events) + 1)


def is_valid(events: Sequence[Event]) -> bool:
    try:
        check_events(events)
    except ValidityError:
        return False
    return True


class _Lineage:
    """Union-find over strand identities."""

    def __init__(self):
        self.parent = []

    def new(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def count_components(events: Sequence[Event]) -> int:
    """Number of closed components; assumes ``events`` already validated."""
    uf = _Lineage()
    strands: list[int] = []
    for ev in events:
        i = ev.index - 1
        if ev.kind is Kind.CUP:
            a = uf.new()
            strands[i:i] = [a, a]
        elif ev.kind is Kind.CAP:
            uf.union(strands[i], strands[i + 1])
            del strands[i:i + 2]
        else:
            strands[i], strands[i + 1] = strands[i + 1], strands[i]
    return len({uf.find(a) for a in range(len(uf.parent))})


@dataclass(frozen=True)
class Presentation:
    """A validated Morse word.  Construction raises ValidityError."""

    events: tuple[Event, ...]
    component_count: int = field(init=False, compare=False)

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        check_events(events)
        object.__setattr__(self, "component_count", count_components(events))

    @property
    def is_knot(self):
        return self.component_count == 1

    def __len__(self):
        return len(self.events)

    def __str__(self):
        return render(self)

    @classmethod
    def from_text(cls, text):
        return cls(tuple(lex(text)))


def parse(text: str) -> Presentation:
    return Presentation.from_text(text)


def render_events(events: Iterable[Event]) -> str:
    return " ".join(f"{e.kind.value}{e.index}" for e in events)


def render(k: Presentation) -> str:
    return render_events(k.events)


def strand_counts(events: Sequence[Event]) -> list[int]:
    """Strand count just above each event."""
    out, c = [], 0
    for ev in events:
        c += ev.delta
        out.append(c)
    return out


def critical_positions(events: Sequence[Event]) -> list[int]:
    """0-based word positions of the cups and caps, bottom to top."""
    return [n for n, ev in enumerate(events) if ev.kind.is_critical]


@dataclass(frozen=True)
class StrandProfile:
    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]


def profile_of(events: Sequence[Event]) -> tuple[int, ...]:
    return tuple(accumulate([_CRIT_DELTA[k] for k, _ in events if k in _CRIT_DELTA]))[:-1]


def strand_profile(k: Presentation) -> StrandProfile:
    """One strand count per gap between consecutive critical events.

    ``counts[g]`` is the number of strands met by a regular level between
    critical events g and g+1 (0-based, crossings ignored).
    """
    return StrandProfile(profile_of(k.events))


def width(k: Presentation) -> int:
    return sum(profile_of(k.events))


def bridge_count(k: Presentation) -> int:
    return sum(1 for ev in k.events if ev.kind is Kind.CAP)


@dataclass(frozen=True)
class ThickThinDecomposition:
    thick: tuple[tuple[int, int], ...]
    thin: tuple[tuple[int, int], ...]

    def levels(self):
        """Thick and thin levels interleaved bottom to top, tagged 'A'/'B'."""
        out = []
        for n, t in enumerate(self.thick):
            if n:
                out.append(("B", *self.thin[n - 1]))
            out.append(("A", *t))
        return out


def thick_thin_of(counts: Sequence[int]) -> ThickThinDecomposition:
    padded = [0, *counts, 0]
    thick, thin = [], []
    for g, c in enumerate(counts):
        lo, hi = padded[g], padded[g + 2]
        if c > lo and c > hi:
            thick.append((g, c))
        elif 0 < g < len(counts) - 1 and c < lo and c < hi:
            thin.append((g, c))
    return ThickThinDecomposition(tuple(thick), tuple(thin))


def thick_thin(k: Presentation) -> ThickThinDecomposition:
    return thick_thin_of(profile_of(k.events))


@dataclass(frozen=True)
class SlabArcs:
    """Arcs and vertical strands of the slab on one side of a thick level.

    Positions are 1-based strand positions at the thick level.  Arcs are
    ``(event position, (p, q))`` with the 1-based word position of the cup
    or cap.  A strict disk is represented by its arc together with the
    interval ``[p, q]`` it spans at the thick level.
    """

    slab: tuple[str, int]
    min_arcs: tuple[tuple[int, tuple[int, int]], ...] = ()
    max_arcs: tuple[tuple[int, tuple[int, int]], ...] = ()
    verticals: tuple[int, ...] = ()

    @property
    def arcs(self):
        return self.min_arcs or self.max_arcs


def slab_bounds(k: Presentation, thick_index: int) -> tuple[int, int, int]:
    """Word cut points ``(lo, mid, hi)`` for a thick level.

    The thick level sits just above the critical event opening its gap
    (event ``mid - 1``); the lower slab is ``events[lo:mid]`` and the upper
    slab ``events[mid:hi]``.  Thin levels sit just above the cap opening
    their gap, so adjacent slabs tile the word.
    """
    tt = thick_thin(k)
    if not 0 <= thick_index < len(tt.thick):
        raise IndexError(f"thick level {thick_index} out of range 0..{len(tt.thick) - 1}")
    crit = critical_positions(k.events)
    gap = tt.thick[thick_index][0]
    mid = crit[gap] + 1
    lo = 0 if thick_index == 0 else crit[tt.thin[thick_index - 1][0]] + 1
    hi = len(k.events) if thick_index == len(tt.thick) - 1 else crit[tt.thin[thick_index][0]] + 1
    return lo, mid, hi


def slab_arcs(k: Presentation, thick_index: int) -> tuple[SlabArcs, SlabArcs]:
    lo, mid, hi = slab_bounds(k, thick_index)
    events = k.events
    start = sum(ev.delta for ev in events[:lo])

    # below: trace labels upward from the thin level to the thick level
    labels: list = [("v", p) for p in range(1, start + 1)]
    for n in range(lo, mid):
        ev = events[n]
        i = ev.index - 1
        if ev.kind is Kind.CUP:
            labels[i:i] = [("m", n + 1), ("m", n + 1)]
        elif ev.kind.is_crossing:
            labels[i], labels[i + 1] = labels[i + 1], labels[i]
        else:
            raise AssertionError("cap below a thick level inside its slab")
    ends: dict[int, list[int]] = {}
    verticals = []
    for p, lab in enumerate(labels, start=1):
        if lab[0] == "v":
            verticals.append(p)
        else:
            ends.setdefault(lab[1], []).append(p)
    below = SlabArcs(("below", thick_index),
                     min_arcs=tuple((e, tuple(ps)) for e, ps in sorted(ends.items())),
                     verticals=tuple(verticals))

    # above: trace thick-level positions upward until they are capped
    labels = list(range(1, len(labels) + 1))
    arcs = []
    for n in range(mid, hi):
        ev = events[n]
        i = ev.index - 1
        if ev.kind is Kind.CAP:
            arcs.append((n + 1, tuple(sorted(labels[i:i + 2]))))
            del labels[i:i + 2]
        elif ev.kind.is_crossing:
            labels[i], labels[i + 1] = labels[i + 1], labels[i]
        else:
            raise AssertionError("cup above a thick level inside its slab")
    above = SlabArcs(("above", thick_index), max_arcs=tuple(arcs),
                     verticals=tuple(sorted(labels)))
    return below, above


def through_verticals(k: Presentation, thick_index: int) -> tuple[int, ...]:
    """Thick-level positions that run vertically through both adjacent slabs."""
    below, above = slab_arcs(k, thick_index)
    return tuple(sorted(set(below.verticals) & set(above.verticals)))


def report(k: Presentation) -> dict:
    tt = thick_thin(k)
    return {
        "events": [{"kind": JSON_KIND[e.kind], "index": e.index} for e in k.events],
        "width": width(k),
        "profile": list(profile_of(k.events)),
        "thick": [list(t) for t in tt.thick],
        "thin": [list(t) for t in tt.thin],
        "bridge": bridge_count(k),
        "components": k.component_count,
    }


def from_report(data: dict) -> Presentation:
    return Presentation(tuple(Event(KIND_FROM_JSON[e["kind"]], int(e["index"]))
                              for e in data["events"]))
