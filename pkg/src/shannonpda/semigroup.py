"""Graph inverse semigroup of a finite directed graph.

Generators are ``e-`` and ``e+`` for every edge ``e`` together with vertex
idempotents ``1_V``.  The relations are ``1_U 1_W = 0`` for ``U != W``,
``f- g+ = 1_s(f)`` if ``f == g`` and ``0`` otherwise, and
``1_s(f) f- = f- 1_t(f)``, ``1_t(f) f+ = f+ 1_s(f)``.

Every non-zero product reduces to ``g1+ ... gk+ 1_V f1- ... fm-``: the
plus-part spells a path backwards, the minus-part a path forwards, and both
meet at ``V``.  A word in the push/pop alphabet of a Markov-Dyck shift is
admissible exactly when its product is non-zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import DirectedGraph
from .model import AutomatonSpec

Generator = tuple  # (edge id, "+" | "-")


@dataclass(frozen=True)
class SemigroupElement:
    plus: tuple = ()
    minus: tuple = ()
    anchor: str | None = None  # None only for the empty product

    def __str__(self):
        parts = [f"{g}+" for g in self.plus] + ([f"1_{self.anchor}"] if self.anchor else [])
        parts += [f"{f}-" for f in self.minus]
        return " ".join(parts) or "1"


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    __str__ = __repr__


ZERO = _Zero()
ONE = SemigroupElement()


def parse_generator(token) -> Generator:
    if isinstance(token, tuple):
        return token
    if len(token) < 2 or token[-1] not in "+-":
        raise ValueError(f"generator {token!r} must end in '+' or '-'")
    return token[:-1], token[-1]


def multiply(base: DirectedGraph, x: SemigroupElement | _Zero, gen: Generator) -> SemigroupElement | _Zero:
    """Right-multiply ``x`` by a single generator."""
    if x is ZERO:
        return ZERO
    edge, sign = gen
    e = base.edge(edge)
    if x.anchor is None:
        return SemigroupElement((), (edge,), e.src) if sign == "-" else SemigroupElement((edge,), (), e.src)
    right = base.target(x.minus[-1]) if x.minus else x.anchor
    if sign == "-":
        if right != e.src:
            return ZERO
        return SemigroupElement(x.plus, x.minus + (edge,), x.anchor)
    if x.minus:
        if x.minus[-1] != edge:
            return ZERO
        return SemigroupElement(x.plus, x.minus[:-1], x.anchor)
    if right != e.dst:
        return ZERO
    return SemigroupElement(x.plus + (edge,), (), e.src)


def semigroup_reduce(base: DirectedGraph, word: Iterable) -> SemigroupElement | _Zero:
    x: SemigroupElement | _Zero = ONE
    for token in word:
        gen = parse_generator(token)
        if gen[1] not in "+-":
            raise ValueError(f"bad sign in generator {token!r}")
        base.edge(gen[0])  # raises on unknown edges
        x = multiply(base, x, gen)
    return x


def semigroup_admissible(base: DirectedGraph, word: Iterable) -> bool:
    return semigroup_reduce(base, word) is not ZERO


def semigroup_alphabet(spec: AutomatonSpec) -> dict[str, Generator]:
    """Map the symbols of a Markov-Dyck shaped spec to semigroup generators.

    The automaton must have one control per base vertex, push exactly one edge
    ``e`` out of the anchor and move to the control at ``t(e)``, and pop
    ``e`` with a single dedicated symbol returning to the control at ``s(e)``.
    """
    base = spec.base
    ctl = {}
    for v, cs in spec.controls.items():
        if len(cs) != 1:
            raise ValueError(f"vertex {v!r} carries {len(cs)} controls; expected exactly one")
        ctl[v] = next(iter(cs))
    gens: dict[str, Generator] = {}

    def claim(sym, gen):
        if gens.setdefault(sym, gen) != gen:
            raise ValueError(f"symbol {sym!r} plays two roles")

    for (u, sym), (path, target) in spec.push.items():
        if len(path) != 1:
            raise ValueError(f"push of {sym!r} at {u!r} is not a single edge")
        e = base.edge(path[0])
        if target != ctl[e.dst]:
            raise ValueError(f"push of {sym!r} does not move to the target of {e.id!r}")
        claim(sym, (e.id, "-"))
    for e in base.edges:
        u = ctl[e.dst]
        syms = spec.pops(u, e.id)
        if len(syms) != 1:
            raise ValueError(f"stack edge {e.id!r} needs exactly one pop symbol")
        sym = next(iter(syms))
        if spec.pop[u, e.id, sym] != ctl[e.src]:
            raise ValueError(f"pop of {e.id!r} does not return to its source")
        claim(sym, (e.id, "+"))
    pushed = {g for g in gens.values() if g[1] == "-"}
    if len(pushed) != len(base.edges) or len(set(gens.values())) != len(gens):
        raise ValueError("symbols and generators are not in bijection")
    return gens


def word_admissible(spec: AutomatonSpec, word: Sequence[str], gens: dict[str, Generator] | None = None) -> bool:
    gens = semigroup_alphabet(spec) if gens is None else gens
    return semigroup_admissible(spec.base, [gens[s] for s in word])
