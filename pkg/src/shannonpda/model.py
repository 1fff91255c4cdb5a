"""Finite specification data of a pushdown Shannon graph.

An :class:`AutomatonSpec` describes a stack graph (the *base*), finite sets of
control states attached to its vertices, and the push/pop tables that drive
the automaton.  A control belongs to exactly one base vertex, its *anchor*:
a state ``(stack, U)`` is valid when the stack path ends at the anchor of
``U`` (or is empty).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Mapping

from .graph import DirectedGraph, Edge, GraphError

Path = tuple  # tuple of edge ids


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AutomatonSpec:
    base: DirectedGraph
    alphabet: frozenset[str]
    controls: Mapping[str, frozenset[str]]
    push_labels: Mapping[str, frozenset[str]]
    pop_labels: Mapping[tuple[str, str], frozenset[str]]
    push: Mapping[tuple[str, str], tuple[Path, str]]
    pop: Mapping[tuple[str, str, str], str]
    anchor: Mapping[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "alphabet", frozenset(self.alphabet))
        set_(self, "controls", {v: frozenset(cs) for v, cs in self.controls.items()})
        set_(self, "push_labels", {u: frozenset(s) for u, s in self.push_labels.items()})
        set_(self, "pop_labels", {k: frozenset(s) for k, s in self.pop_labels.items()})
        set_(self, "push", {k: (tuple(p), c) for k, (p, c) in self.push.items()})
        set_(self, "pop", dict(self.pop))
        set_(self, "anchor", self._check())

    def _check(self) -> dict[str, str]:
        base = self.base
        anchor: dict[str, str] = {}
        for v, cs in self.controls.items():
            if v not in base.vertices:
                raise SpecError(f"controls: unknown vertex {v!r}")
            if not cs:
                raise SpecError(f"controls[{v}]: boundary set must be non-empty")
            for u in cs:
                if u in anchor:
                    raise SpecError(f"controls: control {u!r} attached to two vertices")
                anchor[u] = v
        for v in base.vertices:
            if v not in self.controls:
                raise SpecError(f"controls: vertex {v!r} has no boundary set")

        for u, syms in self.push_labels.items():
            if u not in anchor:
                raise SpecError(f"push_labels: unknown control {u!r}")
            if not syms <= self.alphabet:
                raise SpecError(f"push_labels[{u}]: symbols {sorted(syms - self.alphabet)} not in alphabet")
        expected_pop_keys = {(u, e.id) for u, v in anchor.items() for e in base.in_edges(v)}
        for key, syms in self.pop_labels.items():
            if key not in expected_pop_keys:
                raise SpecError(f"pop_labels: ({key[0]}, {key[1]}) is not a control with an incoming stack edge")
            if not syms <= self.alphabet:
                raise SpecError(f"pop_labels[{key[0]},{key[1]}]: symbols {sorted(syms - self.alphabet)} not in alphabet")
        for u in anchor:
            pops = set().union(*(self.pop_labels.get((u, e.id), ()) for e in base.in_edges(anchor[u])))
            overlap = pops & self.push_labels.get(u, frozenset())
            if overlap:
                raise SpecError(f"push/pop label overlap at control {u!r}: {sorted(overlap)}")

        for (u, sym), (path, target) in self.push.items():
            if sym not in self.push_labels.get(u, ()):
                raise SpecError(f"push[{u},{sym}]: symbol not in push_labels of control")
            if path:
                if not base.is_path(path):
                    raise SpecError(f"push[{u},{sym}]: {list(path)} is not a path in the base graph")
                if base.source(path[0]) != anchor[u]:
                    raise SpecError(f"push[{u},{sym}]: path does not start at the anchor of {u!r}")
                end = base.target(path[-1])
            else:
                end = anchor[u]
            if target not in self.controls[end]:
                raise SpecError(f"push[{u},{sym}]: push target not in boundary set of {end!r}")
        for u, syms in self.push_labels.items():
            for sym in syms:
                if (u, sym) not in self.push:
                    raise SpecError(f"push: missing entry for control {u!r}, symbol {sym!r}")

        for (u, e, sym), target in self.pop.items():
            if sym not in self.pop_labels.get((u, e), ()):
                raise SpecError(f"pop[{u},{e},{sym}]: symbol not in pop_labels")
            if target not in self.controls[base.source(e)]:
                raise SpecError(f"pop[{u},{e},{sym}]: pop target not in boundary set")
        for (u, e), syms in self.pop_labels.items():
            for sym in syms:
                if (u, e, sym) not in self.pop:
                    raise SpecError(f"pop: missing entry for control {u!r}, edge {e!r}, symbol {sym!r}")
        return anchor

    @property
    def all_controls(self) -> list[str]:
        return sorted(self.anchor)

    def pushes(self, u: str) -> frozenset[str]:
        return self.push_labels.get(u, frozenset())

    def pops(self, u: str, e: str) -> frozenset[str]:
        return self.pop_labels.get((u, e), frozenset())

    def all_pops(self, u: str) -> frozenset[str]:
        return frozenset().union(*(self.pops(u, e.id) for e in self.incoming(u)))

    def incoming(self, u: str) -> tuple[Edge, ...]:
        """Stack edges that may sit on top of the stack while in control ``u``."""
        return self.base.in_edges(self.anchor[u])

    def max_push_length(self) -> int:
        return max((len(p) for p, _ in self.push.values()), default=0)


@dataclass
class ValidationReport:
    condition_a: bool
    condition_b: bool
    condition_c: bool
    hypothesis_h: bool
    messages: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition_a and self.condition_b and self.condition_c

    def to_json(self) -> dict[str, Any]:
        return {
            "condition_a": self.condition_a,
            "condition_b": self.condition_b,
            "condition_c": self.condition_c,
            "hypothesis_h": self.hypothesis_h,
            "messages": [list(m) for m in self.messages],
        }


def validate(spec: AutomatonSpec) -> ValidationReport:
    """Check conditions (a), (b), (c) and hypothesis (h) on every control.

    (a) every pop set is non-empty (the union identity holds by construction);
    (b) the pop sets of a control have empty common intersection;
    (c) two stack edges with equal pop sets at a control are told apart by
        some pop target;
    (h) pop sets of distinct stack edges at a control are pairwise disjoint.
    """
    msgs: list[tuple[str, str]] = []
    a = b = c = h = True
    for u in spec.all_controls:
        edges = [e.id for e in spec.incoming(u)]
        for e in edges:
            if not spec.pops(u, e):
                a = False
                msgs.append(("error", f"(a): pop set of control {u} for stack edge {e} is empty"))
        if not edges:
            b = False
            msgs.append(("error", f"(b): control {u} has no incoming stack edge; the intersection is not empty"))
        else:
            common = frozenset.intersection(*(spec.pops(u, e) for e in edges))
            if common:
                b = False
                msgs.append(("error", f"(b): pop sets of control {u} share {sorted(common)}"))
        for e, f in combinations(edges, 2):
            pe, pf = spec.pops(u, e), spec.pops(u, f)
            if pe & pf:
                h = False
                msgs.append(("warning", f"(h): pop sets of control {u} for {e} and {f} overlap in {sorted(pe & pf)}"))
            if pe == pf and not any(spec.pop[u, e, s] != spec.pop[u, f, s] for s in pe):
                c = False
                msgs.append(("error", f"(c): stack edges {e} and {f} are indistinguishable at control {u}"))
    if h and all(len(spec.incoming(u)) >= 2 for u in spec.all_controls):
        assert b or not a, "pairwise disjoint non-empty pop sets must have empty intersection"
    return ValidationReport(a, b, c, h, msgs)


# JSON

def spec_to_json(spec: AutomatonSpec) -> dict[str, Any]:
    return {
        "base": {
            "vertices": sorted(spec.base.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in spec.base.edges],
        },
        "alphabet": sorted(spec.alphabet),
        "controls": {v: sorted(cs) for v, cs in sorted(spec.controls.items())},
        "push_labels": {u: sorted(s) for u, s in sorted(spec.push_labels.items())},
        "pop_labels": [
            {"control": u, "edge": e, "symbols": sorted(s)}
            for (u, e), s in sorted(spec.pop_labels.items())
        ],
        "push": [
            {"control": u, "symbol": s, "path": list(p), "target_control": t}
            for (u, s), (p, t) in sorted(spec.push.items())
        ],
        "pop": [
            {"control": u, "edge": e, "symbol": s, "target_control": t}
            for (u, e, s), t in sorted(spec.pop.items())
        ],
    }


def save_spec(spec: AutomatonSpec) -> str:
    return json.dumps(spec_to_json(spec), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(obj: Mapping, key: str, kind: type, where: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise SpecError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise SpecError(f"{where}.{key}: expected {kind.__name__}")
    return val


def _strings(val: Any, where: str) -> list[str]:
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise SpecError(f"{where}: expected a list of strings")
    return val


def graph_from_json(obj: Any, where: str = "base") -> DirectedGraph:
    vertices = _strings(_field(obj, "vertices", list, where), f"{where}.vertices")
    edges = []
    for i, e in enumerate(_field(obj, "edges", list, where)):
        w = f"{where}.edges[{i}]"
        edges.append(Edge(_field(e, "id", str, w), _field(e, "src", str, w), _field(e, "dst", str, w)))
    try:
        return DirectedGraph(frozenset(vertices), tuple(edges))
    except GraphError as exc:
        raise SpecError(f"{where}: {exc}") from None


def graph_to_json(g: DirectedGraph) -> dict[str, Any]:
    return {"vertices": sorted(g.vertices), "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges]}


def spec_from_json(obj: Any) -> AutomatonSpec:
    if not isinstance(obj, Mapping):
        raise SpecError("spec: expected a JSON object")
    base = graph_from_json(_field(obj, "base", dict, "spec"))
    alphabet = _strings(_field(obj, "alphabet", list, "spec"), "alphabet")
    controls = {
        v: frozenset(_strings(cs, f"controls.{v}"))
        for v, cs in _field(obj, "controls", dict, "spec").items()
    }
    push_labels = {
        u: frozenset(_strings(s, f"push_labels.{u}"))
        for u, s in _field(obj, "push_labels", dict, "spec").items()
    }
    pop_labels = {}
    for i, row in enumerate(_field(obj, "pop_labels", list, "spec")):
        w = f"pop_labels[{i}]"
        key = (_field(row, "control", str, w), _field(row, "edge", str, w))
        if not base.has_edge(key[1]):
            raise SpecError(f"{w}.edge: unknown stack edge {key[1]!r}")
        pop_labels[key] = frozenset(_strings(_field(row, "symbols", list, w), f"{w}.symbols"))
    push = {}
    for i, row in enumerate(_field(obj, "push", list, "spec")):
        w = f"push[{i}]"
        path = tuple(_strings(_field(row, "path", list, w), f"{w}.path"))
        for eid in path:
            if not base.has_edge(eid):
                raise SpecError(f"{w}.path: unknown stack edge {eid!r}")
        key = (_field(row, "control", str, w), _field(row, "symbol", str, w))
        push[key] = (path, _field(row, "target_control", str, w))
    pop = {}
    for i, row in enumerate(_field(obj, "pop", list, "spec")):
        w = f"pop[{i}]"
        key = (_field(row, "control", str, w), _field(row, "edge", str, w), _field(row, "symbol", str, w))
        if not base.has_edge(key[1]):
            raise SpecError(f"{w}.edge: unknown stack edge {key[1]!r}")
        pop[key] = _field(row, "target_control", str, w)
    return AutomatonSpec(base, frozenset(alphabet), controls, push_labels, pop_labels, push, pop)


def load_spec(text: str) -> AutomatonSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    return spec_from_json(obj)


def make_spec(
    base: DirectedGraph,
    controls: Mapping[str, set[str] | frozenset[str]],
    push: Mapping[tuple[str, str], tuple[Path, str]],
    pop: Mapping[tuple[str, str, str], str],
    alphabet=None,
) -> AutomatonSpec:
    """Build a spec whose label sets are read off the push and pop tables."""
    push_labels: dict[str, set[str]] = {u: set() for cs in controls.values() for u in cs}
    for u, s in push:
        push_labels.setdefault(u, set()).add(s)
    pop_labels: dict[tuple[str, str], set[str]] = {}
    for u, e, s in pop:
        pop_labels.setdefault((u, e), set()).add(s)
    syms = set(alphabet) if alphabet is not None else (
        {s for _, s in push} | {s for _, _, s in pop}
    )
    return AutomatonSpec(
        base, frozenset(syms), controls, push_labels, pop_labels, dict(push), dict(pop)
    )
