"""Bounded neighbourhoods of the width complex.

Nodes are canonical keys of presentation classes, edges are reducing moves
(plus, in undirected mode, their inverses up to a width cap).  Every
statement made here is relative to the move tier and the search budgets: a
"local minimum" means no reducing move was found in the bounded closure,
never that none exists.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, asdict

from .errors import NotAKnot
from .moves import (
    DEFAULT_BUDGET, Move, MoveKind, Tier, closure_events, inverse_moves,
    level_reductions,
)
from .morse import Presentation, profile_of, render, render_events

DEFAULT_NODES = 100_000
MINIMAL_LABEL = "no reduction found (budget-relative)"


@dataclass(frozen=True)
class Budgets:
    tier: Tier = Tier.T1
    closure_budget: int = DEFAULT_BUDGET
    node_cap: int = DEFAULT_NODES
    width_cap: int | None = None
    undirected: bool = False

    def to_json(self):
        out = asdict(self)
        out["tier"] = self.tier.name.lower()
        return out


def _need_knot(k):
    if not k.is_knot:
        raise NotAKnot(f"{render(k)} has {k.component_count} components")


def _width(events):
    return sum(profile_of(events))


@dataclass
class Node:
    key: str
    word: Presentation
    width: int


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    kind: MoveKind

    @property
    def inverse(self):
        return self.kind.inverse


@dataclass
class WidthComplexGraph:
    nodes: dict[str, Node]
    edges: list[Edge]
    budgets: Budgets
    truncated: bool = False
    closure_truncated: bool = False
    root: str = ""

    def out_edges(self, key, reducing_only=True):
        return [e for e in self.edges if e.src == key and (not reducing_only or not e.inverse)]

    def sinks(self):
        has_out = {e.src for e in self.edges if not e.inverse}
        return [key for key in self.nodes if key not in has_out]

    def to_json(self):
        return {
            "root": self.root,
            "nodes": [{"key": n.key, "word": render(n.word), "width": n.width}
                      for n in self.nodes.values()],
            "edges": [{"from": e.src, "to": e.dst, "kind": e.kind.value} for e in self.edges],
            "budgets": self.budgets.to_json(),
            "truncated": self.truncated,
            "closure_truncated": self.closure_truncated,
            "sinks": self.sinks(),
            "note": "nodes are budget-relative canonical keys; distinct keys "
                    "may still be one class",
        }

    def to_dot(self):
        ids = {key: f"n{n}" for n, key in enumerate(self.nodes)}
        lines = ["digraph width_complex {"]
        for key, node in self.nodes.items():
            label = f"w={node.width}\\n{render(node.word)}"
            lines.append(f'  {ids[key]} [label="{label}"];')
        for e in self.edges:
            style = "dashed" if e.inverse else "solid"
            lines.append(f'  {ids[e.src]} -> {ids[e.dst]} [label="{e.kind.value}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Keys:
    """Memoised canonical keys; closure truncation is remembered."""

    def __init__(self, tier, budget):
        self.tier, self.budget = tier, budget
        self.cache: dict = {}
        self.truncated = False

    def __call__(self, events):
        key = self.cache.get(events)
        if key is None:
            order, text, truncated = closure_events(events, self.tier, self.budget)
            self.truncated |= truncated
            key = min(text.values())
            self.cache[events] = key
            if not truncated:
                # no preserving move lengthens a word and the ones that keep
                # length are reversible, so same-length members share this closure
                for w in order:
                    if len(w) == len(events):
                        self.cache[w] = key
        return key


def explore(k: Presentation, budgets: Budgets = Budgets()) -> WidthComplexGraph:
    _need_knot(k)
    width_cap = budgets.width_cap
    if width_cap is None:
        width_cap = _width(k.events) + 8
    keys = _Keys(budgets.tier, budgets.closure_budget)
    root = keys(k.events)
    graph = WidthComplexGraph({root: Node(root, k, _width(k.events))}, [], budgets, root=root)
    seen_edges = set()
    queue = deque([root])
    while queue:
        key = queue.popleft()
        node = graph.nodes[key]
        found, _, truncated = level_reductions(node.word, budgets.tier, budgets.closure_budget)
        graph.closure_truncated |= truncated
        children = []
        for hits in found.values():
            for _, w, m in hits:
                children.append((m.kind, m.result(w)))
        if budgets.undirected:
            for m in inverse_moves(node.word.events):
                if node.width + m.delta <= width_cap:
                    children.append((m.kind, m.result(node.word.events)))
        targets = {}
        for kind, child in children:
            ck = keys(child)
            if ck != key and (ck, kind) not in targets:
                targets[(ck, kind)] = child
        for (ck, kind), child in sorted(targets.items(), key=lambda t: (t[0][0], t[0][1].value)):
            if ck not in graph.nodes:
                if len(graph.nodes) >= budgets.node_cap:
                    graph.truncated = True
                    continue
                graph.nodes[ck] = Node(ck, Presentation(child), _width(child))
                queue.append(ck)
            if (key, ck, kind) not in seen_edges:
                seen_edges.add((key, ck, kind))
                graph.edges.append(Edge(key, ck, kind))
    graph.closure_truncated |= keys.truncated
    return graph


@dataclass(frozen=True)
class MinimalityReport:
    locally_minimal: bool
    tier: Tier
    budget: int
    closure_size: int
    truncated: bool
    witness: Move | None = None
    witness_word: Presentation | None = None

    @property
    def label(self):
        if self.locally_minimal:
            return f"LocallyMinimal: {MINIMAL_LABEL} at {self.tier.name}/{self.budget}"
        return f"NotLocalMin: {self.witness.kind.value} at {self.witness.site} in {render(self.witness_word)}"

    def to_json(self):
        out = {
            "result": "LocallyMinimal" if self.locally_minimal else "NotLocalMin",
            "label": self.label,
            "tier": self.tier.name.lower(),
            "budget": self.budget,
            "closure_size": self.closure_size,
            "truncated": self.truncated,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json(_width(self.witness_word.events))
            out["witness_word"] = render(self.witness_word)
        return out


def is_local_min(k: Presentation, tier=Tier.T1, node_budget=DEFAULT_BUDGET) -> MinimalityReport:
    _need_knot(k)
    found, used, truncated = level_reductions(k, tier, node_budget)
    hits = [hit for gap in sorted(found) for hit in found[gap]]
    if not hits:
        return MinimalityReport(True, tier, node_budget, used, truncated)
    # first closure word carrying a reduction; Type I preferred within it
    _, w, m = min(hits, key=lambda h: (h[0], h[2].kind is not MoveKind.TYPE1, h[2].start))
    return MinimalityReport(False, tier, node_budget, used, truncated, m, Presentation(w))


@dataclass
class Step:
    word: Presentation
    move: Move
    result: Presentation

    def to_json(self):
        return {"word": render(self.word), "move": self.move.to_json(_width(self.word.events)),
                "result": render(self.result)}


@dataclass
class DescentPath:
    start: Presentation
    steps: list[Step] = field(default_factory=list)
    widths: list[int] = field(default_factory=list)
    sink: bool = False
    truncated: bool = False

    @property
    def final(self):
        return self.steps[-1].result if self.steps else self.start

    @property
    def final_width(self):
        return self.widths[-1]

    def to_json(self):
        return {
            "start": render(self.start),
            "steps": [s.to_json() for s in self.steps],
            "widths": self.widths,
            "final": render(self.final),
            "final_width": self.final_width,
            "sink": self.sink,
            "truncated": self.truncated,
        }


def descend(k: Presentation, budgets: Budgets = Budgets()) -> DescentPath:
    """Greedy monotone path: always take the reduction giving the least width.

    Ties go to the lexicographically least result word.  Between reducing
    steps the path moves freely inside the closure, so each step records
    the closure word the move was applied to.
    """
    _need_knot(k)
    path = DescentPath(k, widths=[_width(k.events)])
    current = k
    while True:
        found, _, truncated = level_reductions(current, budgets.tier, budgets.closure_budget)
        hits = [hit for gap in sorted(found) for hit in found[gap]]
        if not hits:
            path.sink = True
            path.truncated = truncated
            return path
        _, w, m = min(hits, key=lambda h: (h[2].delta, render_events(h[2].result(h[1])),
                                           render_events(h[1]), h[2].start))
        nxt = Presentation(m.result(w))
        path.steps.append(Step(Presentation(w), m, nxt))
        path.widths.append(_width(nxt.events))
        current = nxt
