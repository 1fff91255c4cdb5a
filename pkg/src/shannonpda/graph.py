"""Finite directed graphs, labelled graphs and paths.

Vertices and edges are identified by strings.  Graphs are immutable; every
algorithm here returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class GraphError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class DirectedGraph:
    vertices: frozenset[str]
    edges: tuple[Edge, ...] = ()
    _by_id: Mapping[str, Edge] = field(init=False, repr=False, compare=False)
    _out: Mapping[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)
    _in: Mapping[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        by_id: dict[str, Edge] = {}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.id in by_id:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.src, e.dst):
                if end not in self.vertices:
                    raise GraphError(f"edge {e.id!r} refers to unknown vertex {end!r}")
            by_id[e.id] = e
            out[e.src].append(e)
            inc[e.dst].append(e)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in inc.items()})

    @classmethod
    def from_triples(cls, vertices: Iterable[str], triples: Iterable[tuple[str, str, str]]):
        return cls(frozenset(vertices), tuple(Edge(i, s, t) for i, s, t in triples))

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphError(f"no such edge {edge_id!r}") from None

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._by_id

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        self._check_vertex(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        self._check_vertex(v)
        return self._in[v]

    def out_degree(self, v: str) -> int:
        return len(self.out_edges(v))

    def in_degree(self, v: str) -> int:
        return len(self.in_edges(v))

    def source(self, edge_id: str) -> str:
        return self.edge(edge_id).src

    def target(self, edge_id: str) -> str:
        return self.edge(edge_id).dst

    def _check_vertex(self, v: str) -> None:
        if v not in self.vertices:
            raise GraphError(f"no such vertex {v!r}")

    def is_path(self, path: Iterable[str]) -> bool:
        """True iff consecutive edges of ``path`` are composable."""
        prev = None
        for eid in path:
            if not self.has_edge(eid):
                return False
            e = self._by_id[eid]
            if prev is not None and prev.dst != e.src:
                return False
            prev = e
        return True

    def subgraph(self, vertices: Iterable[str]) -> DirectedGraph:
        keep = frozenset(vertices)
        return DirectedGraph(keep, tuple(e for e in self.edges if e.src in keep and e.dst in keep))


@dataclass(frozen=True)
class LabelledGraph:
    graph: DirectedGraph
    alphabet: frozenset[str]
    label: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "label", dict(self.label))
        for e in self.graph.edges:
            if e.id not in self.label:
                raise GraphError(f"edge {e.id!r} has no label")
            if self.label[e.id] not in self.alphabet:
                raise GraphError(f"label {self.label[e.id]!r} of edge {e.id!r} not in alphabet")

    @property
    def vertices(self) -> frozenset[str]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    def restrict(self, graph: DirectedGraph) -> LabelledGraph:
        """The labelled subgraph carried by ``graph`` (a subgraph of ours)."""
        return LabelledGraph(graph, self.alphabet, {e.id: self.label[e.id] for e in graph.edges})


def _plain(g: DirectedGraph | LabelledGraph) -> DirectedGraph:
    return g.graph if isinstance(g, LabelledGraph) else g


def out_edges(g: DirectedGraph | LabelledGraph, v: str) -> frozenset[str]:
    return frozenset(e.id for e in _plain(g).out_edges(v))


def is_shannon(g: LabelledGraph) -> bool:
    """No vertex has two outgoing edges carrying the same label."""
    for v in g.vertices:
        seen = set()
        for e in g.graph.out_edges(v):
            lab = g.label[e.id]
            if lab in seen:
                return False
            seen.add(lab)
    return True


def trim_biinfinite(g: DirectedGraph) -> DirectedGraph:
    """Largest subgraph in which every vertex has positive in- and out-degree.

    These are exactly the vertices and edges that lie on bi-infinite paths.
    """
    alive = set(g.vertices)
    indeg = {v: 0 for v in alive}
    outdeg = {v: 0 for v in alive}
    for e in g.edges:
        outdeg[e.src] += 1
        indeg[e.dst] += 1
    queue = deque(v for v in alive if indeg[v] == 0 or outdeg[v] == 0)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for e in g.out_edges(v):
            if e.dst in alive and e.dst != v:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    queue.append(e.dst)
        for e in g.in_edges(v):
            if e.src in alive and e.src != v:
                outdeg[e.src] -= 1
                if outdeg[e.src] == 0:
                    queue.append(e.src)
    return g.subgraph(alive)


def reachable(g: DirectedGraph | LabelledGraph, sources: Iterable[str]) -> frozenset[str]:
    g = _plain(g)
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            if e.dst not in seen:
                seen.add(e.dst)
                queue.append(e.dst)
    return frozenset(seen)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: LabelledGraph | DirectedGraph, name: str = "") -> str:
    """Render ``g`` as DOT text with vertices and edges in sorted order."""
    labels = g.label if isinstance(g, LabelledGraph) else {}
    plain = _plain(g)
    lines = [f"digraph {_quote(name)} {{" if name else "digraph {"]
    for v in sorted(plain.vertices):
        lines.append(f"  {_quote(v)};")
    for e in plain.edges:
        attrs = f' [label={_quote(labels[e.id])}]' if e.id in labels else ""
        lines.append(f"  {_quote(e.src)} -> {_quote(e.dst)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
