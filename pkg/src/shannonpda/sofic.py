"""The finite graph of deep pop-only paths and the constants built on it."""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Config, config_moves, floor_configs
from .graph import DirectedGraph, Edge, LabelledGraph, trim_biinfinite
from .model import AutomatonSpec


def build_y_presentation(spec: AutomatonSpec) -> LabelledGraph:
    """Control graph with an edge ``U -σ-> pop(U, e, σ)`` for every pop.

    Any path in this graph is the control trace of a run of pops on a
    suitable stack, since the anchor of each control fixes which stack edges
    may lie underneath.
    """
    edges, labels = [], {}
    for u in spec.all_controls:
        for e in spec.incoming(u):
            for sym in sorted(spec.pops(u, e.id)):
                eid = f"{u}|{e.id}|{sym}"
                edges.append(Edge(eid, u, spec.pop[u, e.id, sym]))
                labels[eid] = sym
    g = DirectedGraph(frozenset(spec.anchor), tuple(edges))
    return LabelledGraph(g, spec.alphabet, labels)


def trimmed_y(spec: AutomatonSpec) -> LabelledGraph:
    y = build_y_presentation(spec)
    return y.restrict(trim_biinfinite(y.graph))


def test_projection_hypothesis(spec: AutomatonSpec) -> bool:
    """Is the label map injective on bi-infinite paths of the trimmed graph?

    Two distinct bi-infinite paths with equal labels exist iff the trimmed
    pair graph (pairs of equally labelled edges) still contains an edge made
    of two different edges.
    """
    y = trimmed_y(spec)
    edges = []
    for f in y.edges:
        for g in y.edges:
            if y.label[f.id] == y.label[g.id]:
                edges.append(Edge(f"{f.id}\x00{g.id}", f"{f.src}\x00{g.src}", f"{f.dst}\x00{g.dst}"))
    vertices = frozenset(f"{a}\x00{b}" for a in y.vertices for b in y.vertices)
    core = trim_biinfinite(DirectedGraph(vertices, tuple(edges)))
    return all(a == b for a, b in (e.id.split("\x00") for e in core.edges))


test_projection_hypothesis.__test__ = False  # not a pytest test


@dataclass(frozen=True)
class VisibilityConstants:
    M: int
    M_circ: int
    J: int

    @property
    def M_G(self) -> int:
        return self.M_circ * (self.J + 1) + self.M

    def to_json(self):
        return {"M": self.M, "M_circ": self.M_circ, "J": self.J, "M_G": self.M_G}


@dataclass(frozen=True)
class NotFound:
    cap: int
    reason: str

    def to_json(self):
        return {"found": False, "cap": self.cap, "reason": self.reason}


def _truncate(cfg: Config, keep: int) -> Config:
    # Edges deeper than the number of remaining steps can never be popped.
    if len(cfg.pushed) > keep:
        return Config(cfg.pushed[len(cfg.pushed) - keep:], cfg.control)
    return cfg


def check_condition_a(spec: AutomatonSpec, m: int) -> int | None:
    """Least offset for which every length-``m`` deep pop word fixes the end.

    Follows, in lockstep, a path of the trimmed pop graph (which generates
    the words) together with every automaton path carrying the same label.
    Returns ``None`` when two such automaton paths end in different controls
    or when some path pushes at its last step.
    """
    y = trimmed_y(spec)
    out = {v: [(y.label[e.id], e.dst) for e in y.graph.out_edges(v)] for v in y.vertices}
    # (pop graph vertex, config) -> latest push position so far
    frontier: dict[tuple, int] = {}
    for v in y.vertices:
        for cfg in floor_configs(spec):
            frontier[v, cfg] = 0
    for k in range(1, m + 1):
        nxt: dict[tuple, int] = {}
        for (v, cfg), last in frontier.items():
            for sym, w in out[v]:
                for c2, popped in config_moves(spec, cfg, sym):
                    key = (w, _truncate(c2, m - k))
                    val = last if popped else k
                    if nxt.get(key, -1) < val:
                        nxt[key] = val
        frontier = nxt
    last_push = max(frontier.values(), default=0)
    if last_push >= m:
        return None
    if not _terminal_control_determined(spec, y, m):
        return None
    return max(1, last_push + 1)


def _terminal_control_determined(spec: AutomatonSpec, y: LabelledGraph, m: int) -> bool:
    out = {v: [(y.label[e.id], e.dst) for e in y.graph.out_edges(v)] for v in y.vertices}
    floors = sorted(floor_configs(spec))
    frontier = {(v, a, b) for v in y.vertices for a in floors for b in floors}
    for k in range(1, m + 1):
        nxt = set()
        for v, a, b in frontier:
            for sym, w in out[v]:
                for a2, _ in config_moves(spec, a, sym):
                    for b2, _ in config_moves(spec, b, sym):
                        nxt.add((w, _truncate(a2, m - k), _truncate(b2, m - k)))
        frontier = nxt
    return all(a.control == b.control for _, a, b in frontier)


def visibility_constants(spec: AutomatonSpec, cap: int = 16) -> VisibilityConstants | NotFound:
    """Smallest M <= cap (and offset M_circ) satisfying condition (A)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not trimmed_y(spec).edges:
        return NotFound(cap, "no deep pop paths: the pop graph has no cycle")
    for m in range(1, cap + 1):
        offset = check_condition_a(spec, m)
        if offset is not None:
            return VisibilityConstants(m, offset, spec.max_push_length())
    return NotFound(cap, f"condition (A) fails for every M <= {cap}")
