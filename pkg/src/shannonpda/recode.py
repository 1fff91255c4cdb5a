"""Resolving words, the tagging block map and finite-type-Dyck export."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .engine import config_moves, floor_configs
from .graph import DirectedGraph, Edge
from .model import AutomatonSpec, SpecError, make_spec
from .sofic import _truncate

TAG_CREATE, TAG_INTERNAL, TAG_RETURN = "c", "i", "r"


class NotExportable(ValueError):
    pass


@dataclass
class ResolvingReport:
    radius: int | None
    cap: int
    center_control: dict = field(default_factory=dict)  # window (tuple) -> control

    @property
    def found(self) -> bool:
        return self.radius is not None

    def to_json(self):
        return {
            "radius": self.radius,
            "cap": self.cap,
            "found": self.found,
            "center_control": [[list(w), u] for w, u in sorted(self.center_control.items(), key=lambda kv: (len(kv[0]), kv[0]))],
        }


def _is_resolving_radius(spec: AutomatonSpec, m: int) -> bool:
    """Do all paths sharing a label of length 2m+1 agree on the center control?

    Pairs of paths are followed in lockstep; after ``m`` steps only pairs in
    different controls are kept, and the radius fails if one of them
    survives ``m + 1`` further common steps.
    """
    n = 2 * m + 1
    floors = sorted(floor_configs(spec))
    pairs = {(a, b) for a in floors for b in floors}
    for k in range(1, n + 1):
        if k == m + 1:
            pairs = {(a, b) for a, b in pairs if a.control != b.control}
        nxt = set()
        for a, b in pairs:
            for sym in sorted(spec.alphabet):
                for a2, _ in config_moves(spec, a, sym):
                    for b2, _ in config_moves(spec, b, sym):
                        nxt.add((_truncate(a2, n - k), _truncate(b2, n - k)))
        pairs = nxt
        if not pairs:
            return True
    return not pairs


def _center_controls(spec: AutomatonSpec, m: int) -> dict:
    n = 2 * m + 1
    layer = {(): {(c, None) for c in floor_configs(spec)}}
    for k in range(n):
        nxt: dict = {}
        for word, states in layer.items():
            if k == m:
                states = {(c, c.control) for c, _ in states}
            for sym in sorted(spec.alphabet):
                succ = {(_truncate(c2, n - k - 1), p) for c, p in states for c2, _ in config_moves(spec, c, sym)}
                if succ:
                    nxt[word + (sym,)] = succ
        layer = nxt
    out = {}
    for word, states in layer.items():
        centers = {p for _, p in states}
        assert len(centers) == 1, (word, centers)
        out[word] = centers.pop()
    return out


def resolving_radius(spec: AutomatonSpec, cap: int = 8) -> ResolvingReport:
    """Least M <= cap such that every admissible word of length 2M+1 is resolving."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    for m in range(cap + 1):
        if _is_resolving_radius(spec, m):
            return ResolvingReport(m, cap, _center_controls(spec, m))
    return ResolvingReport(None, cap)


def symbol_tag(spec: AutomatonSpec, control: str, sym: str) -> str:
    if sym in spec.pushes(control):
        return TAG_CREATE if spec.push[control, sym][0] else TAG_INTERNAL
    return TAG_RETURN


def apply_block_map(spec: AutomatonSpec, report: ResolvingReport, word: Sequence[str]) -> list[tuple[str, str]]:
    """Tag every symbol of ``word`` that has ``radius`` symbols on both sides."""
    if not report.found:
        raise ValueError("no resolving radius: the block map is undefined")
    m = report.radius
    out = []
    for i in range(m, len(word) - m):
        window = tuple(word[i - m: i + m + 1])
        if window not in report.center_control:
            raise ValueError(f"window {list(window)} is not admissible")
        out.append((word[i], symbol_tag(spec, report.center_control[window], word[i])))
    return out


def tagged(sym: str, tag: str) -> str:
    return f"{sym}:{tag}"


def recoded_spec(spec: AutomatonSpec) -> AutomatonSpec:
    """The same automaton with every symbol renamed to carry its tag."""
    push = {(u, tagged(sym, symbol_tag(spec, u, sym))): v for (u, sym), v in spec.push.items()}
    pop = {(u, e, tagged(sym, TAG_RETURN)): v for (u, e, sym), v in spec.pop.items()}
    controls = {v: set(cs) for v, cs in spec.controls.items()}
    return make_spec(spec.base, controls, push, pop)


def untag(word: Sequence[str]) -> tuple:
    return tuple(sym.rsplit(":", 1)[0] for sym in word)


@dataclass(frozen=True)
class FiniteTypeDyckData:
    vertices: tuple
    anchors: dict
    push_edges: tuple  # (id, source, label, target, stack edge or None)
    pop_edges: tuple   # (id, source, label, target, stack edge)
    matching: tuple    # (push id, pop id)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "anchors": dict(sorted(self.anchors.items())),
            "push_edges": [{"id": i, "source": s, "label": a, "target": t, "stack_edge": d} for i, s, a, t, d in self.push_edges],
            "pop_edges": [{"id": i, "source": s, "label": a, "target": t, "stack_edge": d} for i, s, a, t, d in self.pop_edges],
            "matching": [list(m) for m in self.matching],
        }

    @classmethod
    def from_json(cls, obj) -> "FiniteTypeDyckData":
        try:
            return cls(
                tuple(obj["vertices"]),
                dict(obj["anchors"]),
                tuple((p["id"], p["source"], p["label"], p["target"], p["stack_edge"]) for p in obj["push_edges"]),
                tuple((p["id"], p["source"], p["label"], p["target"], p["stack_edge"]) for p in obj["pop_edges"]),
                tuple(tuple(m) for m in obj["matching"]),
            )
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed finite-type-Dyck data: {exc}") from exc


def export_finite_type_dyck(spec: AutomatonSpec) -> FiniteTypeDyckData:
    long = sorted((u, s) for (u, s), (path, _) in spec.push.items() if len(path) > 1)
    if long:
        u, s = long[0]
        raise NotExportable(f"not finite-type-Dyck exportable: push of {s!r} at {u!r} has length {len(spec.push[u, s][0])}")
    pushes = tuple(
        (f"{u}:{s}", u, s, target, path[0] if path else None)
        for (u, s), (path, target) in sorted(spec.push.items())
    )
    pops = tuple((f"{u}:{e}:{s}", u, s, target, e) for (u, e, s), target in sorted(spec.pop.items()))
    matching = tuple(sorted((p[0], q[0]) for p in pushes if p[4] is not None for q in pops if q[4] == p[4]))
    return FiniteTypeDyckData(tuple(spec.all_controls), dict(spec.anchor), pushes, pops, matching)


def ftd_to_spec(data: FiniteTypeDyckData) -> AutomatonSpec:
    """Reinterpret the export as a spec whose stack edges are the push edges.

    A push edge from V to V' becomes a stack edge from the anchor of V to the
    anchor of V'; a pop edge pops every push edge it is matched with.  Stack
    edges of the original that no push creates do not survive the export.
    """
    pushes = {p[0]: p for p in data.push_edges}
    pops = {q[0]: q for q in data.pop_edges}
    edges = [Edge(i, data.anchors[s], data.anchors[t]) for i, s, _, t, d in data.push_edges if d is not None]
    base = DirectedGraph(frozenset(data.anchors.values()), tuple(edges))
    controls: dict = {}
    for u, v in data.anchors.items():
        controls.setdefault(v, set()).add(u)
    push = {(s, a): (((i,) if d is not None else ()), t) for i, s, a, t, d in data.push_edges}
    pop = {}
    for pid, qid in data.matching:
        _, s, a, t, _ = pops[qid]
        if pid not in pushes:
            raise SpecError(f"matching refers to unknown push edge {pid!r}")
        pop[s, pid, a] = t
    return make_spec(base, controls, push, pop)
