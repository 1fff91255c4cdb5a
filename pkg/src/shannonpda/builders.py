"""Constructors for the standard families of pushdown Shannon graphs.

Symbol names: push/pop symbols of Dyck shifts are ``p<i>``/``q<i>``;
Markov-Dyck symbols are ``<edge>-`` (push) and ``<edge>+`` (pop); paired
symbols of the product constructions are joined with ``/``.  One-vertex
stack graphs use the vertex ``*``.
"""

from __future__ import annotations

from typing import Mapping

from .graph import DirectedGraph, Edge
from .model import AutomatonSpec, SpecError, make_spec

STAR = "*"


def _loops(names) -> DirectedGraph:
    return DirectedGraph(frozenset([STAR]), tuple(Edge(d, STAR, STAR) for d in names))


def _require_in_out(g: DirectedGraph, name: str) -> None:
    for v in sorted(g.vertices):
        if not g.in_edges(v) or not g.out_edges(v):
            raise SpecError(f"{name}: vertex {v!r} needs incoming and outgoing edges")


def golden_mean_graph() -> DirectedGraph:
    """Vertices u, w; e1: u->u, e2: u->w, e3: w->u."""
    return DirectedGraph.from_triples("uw", [("e1", "u", "u"), ("e2", "u", "w"), ("e3", "w", "u")])


def build_dyck(n: int) -> AutomatonSpec:
    if n < 2:
        raise SpecError(f"Dyck shift needs card(D) > 1 bracket pairs, got {n}")
    ds = [f"d{i}" for i in range(1, n + 1)]
    push = {("V", f"p{i}"): ((d,), "V") for i, d in enumerate(ds, 1)}
    pop = {("V", d, f"q{i}"): "V" for i, d in enumerate(ds, 1)}
    return make_spec(_loops(ds), {STAR: {"V"}}, push, pop)


def build_product(h: DirectedGraph, m: int = 2) -> AutomatonSpec:
    """Product of a graph-defined control layer with a Dyck stack on ``m`` loops.

    Pushing ``(h-, d)`` at ``s(h)`` pushes ``d`` and moves to ``t(h)``;
    popping ``d`` with ``(h+, d)`` is available at ``s(h)`` and moves to ``s(h)``.
    """
    _require_in_out(h, "product")
    if m < 1:
        raise SpecError("product: need at least one stack loop")
    ds = [f"d{i}" for i in range(m)]
    push, pop = {}, {}
    for e in h.edges:
        for d in ds:
            push[e.src, f"{e.id}-/{d}"] = ((d,), e.dst)
            pop[e.src, d, f"{e.id}+/{d}"] = e.src
    return make_spec(_loops(ds), {STAR: set(h.vertices)}, push, pop)


def build_beal_heller(sizes: Mapping[str, int]) -> AutomatonSpec:
    """One control; ``a<K>-`` pushes ``d<K>.1 ... d<K>.<I_K>`` (bottom to top).

    The block is therefore popped in reverse order, ``a<K>+<I_K>`` first.
    """
    if not sizes or any(i < 1 for i in sizes.values()):
        raise SpecError("beal-heller: every I_K must be a positive integer")
    if sum(sizes.values()) <= 1:
        raise SpecError("beal-heller: the sum of the I_K must exceed 1")
    push, pop, ds = {}, {}, []
    for k in sorted(sizes):
        block = tuple(f"d{k}.{i}" for i in range(1, sizes[k] + 1))
        ds.extend(block)
        push["V", f"a{k}-"] = (block, "V")
        for i, d in enumerate(block, 1):
            pop["V", d, f"a{k}+{i}"] = "V"
    return make_spec(_loops(ds), {STAR: {"V"}}, push, pop)


def build_example_84() -> AutomatonSpec:
    """Two controls V, V'; the states over V' cannot be reached by pops alone.

    ``a0-``/``a1-`` push ``d0``/``d1`` at V, ``a`` moves from V to V' without
    touching the stack, and every pop (``a0+`` of d0, ``a1+`` of d1) returns
    to V.  V' has no push symbols.
    """
    push = {
        ("V", "a0-"): (("d0",), "V"),
        ("V", "a1-"): (("d1",), "V"),
        ("V", "a"): ((), "V'"),
    }
    pop = {(u, f"d{i}", f"a{i}+"): "V" for u in ("V", "V'") for i in (0, 1)}
    return make_spec(_loops(["d0", "d1"]), {STAR: {"V", "V'"}}, push, pop)


def build_markov_dyck(g: DirectedGraph) -> AutomatonSpec:
    _require_in_out(g, "markov-dyck")
    push = {(e.src, f"{e.id}-"): ((e.id,), e.dst) for e in g.edges}
    pop = {(e.dst, e.id, f"{e.id}+"): e.src for e in g.edges}
    return make_spec(g, {v: {v} for v in g.vertices}, push, pop)


def build_combined(g: DirectedGraph, h: DirectedGraph) -> AutomatonSpec:
    """Markov-Dyck stack on ``g`` with a control layer driven by ``h``.

    Controls over a vertex V of ``g`` are ``A/V`` for the vertices A of ``h``.
    ``(h-, e-)`` at ``s(h)/s(e)`` pushes ``e`` and moves to ``t(h)/t(e)``;
    ``(h+, e+)`` pops ``e`` at any control over ``t(e)`` and moves to
    ``s(h)/s(e)``.
    """
    _require_in_out(g, "combined")
    _require_in_out(h, "combined")
    controls = {v: {f"{a}/{v}" for a in h.vertices} for v in g.vertices}
    push, pop = {}, {}
    for e in g.edges:
        for k in h.edges:
            push[f"{k.src}/{e.src}", f"{k.id}-/{e.id}-"] = ((e.id,), f"{k.dst}/{e.dst}")
            for a in h.vertices:
                pop[f"{a}/{e.dst}", e.id, f"{k.id}+/{e.id}+"] = f"{k.src}/{e.src}"
    return make_spec(g, controls, push, pop)


# Fixtures for the negative cases of the hypothesis and separation checks.

def clone_controls() -> AutomatonSpec:
    """Controls A and B that no word can tell apart.

    Both push ``d1``/``d2`` on ``p1``/``p2`` and stay put; both stack edges
    are popped by the same symbol ``q``, always returning to A.  Condition (c)
    fails and the boundary states (ε, A), (ε, B) are not separated.
    """
    push = {(u, f"p{i}"): ((f"d{i}",), u) for u in "AB" for i in (1, 2)}
    pop = {(u, f"d{i}", "q"): "A" for u in "AB" for i in (1, 2)}
    return make_spec(_loops(["d1", "d2"]), {STAR: {"A", "B"}}, push, pop)


def duplicate_labels() -> AutomatonSpec:
    """Two controls whose deep pop behaviour is identical (q1, q2 loops at both).

    The pop graph has two distinct bi-infinite paths with the same labels,
    so the projection hypothesis fails; ``s`` switches between the controls.
    """
    push = {(u, f"p{i}"): ((f"d{i}",), u) for u in "AB" for i in (1, 2)}
    push["A", "s"] = ((), "B")
    push["B", "s"] = ((), "A")
    pop = {(u, f"d{i}", f"q{i}"): u for u in "AB" for i in (1, 2)}
    return make_spec(_loops(["d1", "d2"]), {STAR: {"A", "B"}}, push, pop)


def asymmetric_pair() -> AutomatonSpec:
    """Controls A, B with equal boundary acceptance sets that are separated.

    Pushes keep the control; every pop returns to A.  Only B offers the extra
    pop symbol ``r`` above ``d1``, so ``p1`` separates (ε, A) from (ε, B).
    """
    push = {(u, f"p{i}"): ((f"d{i}",), u) for u in "AB" for i in (1, 2)}
    pop = {(u, f"d{i}", f"q{i}"): "A" for u in "AB" for i in (1, 2)}
    pop["B", "d1", "r"] = "A"
    return make_spec(_loops(["d1", "d2"]), {STAR: {"A", "B"}}, push, pop)


def pushes_only(symbols=("a", "b")) -> AutomatonSpec:
    """A stack graph without edges: every symbol is an epsilon push (full shift)."""
    base = DirectedGraph(frozenset([STAR]))
    return make_spec(base, {STAR: {"V"}}, {("V", s): ((), "V") for s in symbols}, {})


FAMILIES = {
    "dyck": build_dyck,
    "product": build_product,
    "beal-heller": build_beal_heller,
    "ex84": build_example_84,
    "markov-dyck": build_markov_dyck,
    "combined": build_combined,
    "clone": clone_controls,
    "duplicate": duplicate_labels,
    "asymmetric": asymmetric_pair,
}
