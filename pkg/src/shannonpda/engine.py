"""The infinite Shannon graph of an :class:`AutomatonSpec`, explored lazily.

States are pairs ``(stack, control)``.  Reading a push symbol appends its
push path to the stack; reading a pop symbol removes the top stack edge.
Every symbol moves the stack by a known amount and no epsilon moves exist,
so the automaton is a real-time deterministic pushdown automaton in which
every state is initial and final.

Language questions quantify over *all* states.  A word of length ``n`` pops
at most ``n`` edges, so only the top ``n`` stack edges of a start state are
ever inspected; the explorations below exploit this by materializing the
part of the start stack below the current top only when a pop needs it (a
"floor" configuration whose stack below is still undecided).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .model import AutomatonSpec

Word = tuple


class StateError(ValueError):
    pass


class PdaState(NamedTuple):
    stack: tuple
    control: str

    def __str__(self):
        return f"({'.'.join(self.stack) or 'ε'}, {self.control})"


def check_state(spec: AutomatonSpec, s: PdaState) -> None:
    if s.control not in spec.anchor:
        raise StateError(f"unknown control {s.control!r}")
    if s.stack:
        if not spec.base.is_path(s.stack):
            raise StateError(f"stack {list(s.stack)} is not a path in the base graph")
        if spec.base.target(s.stack[-1]) != spec.anchor[s.control]:
            raise StateError(f"control {s.control!r} is not attached to the end of the stack")


def acceptance_set(spec: AutomatonSpec, s: PdaState) -> frozenset[str]:
    check_state(spec, s)
    return _acc(spec, s.stack[-1] if s.stack else None, s.control)


def _acc(spec: AutomatonSpec, top, control) -> frozenset[str]:
    if top is None:
        return spec.pushes(control)
    return spec.pops(control, top) | spec.pushes(control)


def _step(spec: AutomatonSpec, s: PdaState, sym: str) -> PdaState | None:
    if sym in spec.pushes(s.control):
        path, target = spec.push[s.control, sym]
        return PdaState(s.stack + path, target)
    if s.stack:
        top = s.stack[-1]
        if sym in spec.pops(s.control, top):
            return PdaState(s.stack[:-1], spec.pop[s.control, top, sym])
    return None


def step(spec: AutomatonSpec, s: PdaState, sym: str) -> PdaState | None:
    """Successor of ``s`` on ``sym``, or ``None`` when ``sym`` is rejected."""
    check_state(spec, s)
    return _step(spec, s, sym)


def run(spec: AutomatonSpec, s: PdaState, word: Iterable[str]) -> PdaState | None:
    check_state(spec, s)
    for sym in word:
        s = _step(spec, s, sym)
        if s is None:
            return None
    return s


def states_up_to(spec: AutomatonSpec, depth: int) -> list[PdaState]:
    """All valid states whose stack has at most ``depth`` edges."""
    base = spec.base
    stacks: list[tuple] = [()]
    layer: list[tuple] = [(e.id,) for e in base.edges]
    for _ in range(depth):
        stacks.extend(layer)
        layer = [p + (e.id,) for p in layer for e in base.out_edges(base.target(p[-1]))]
    out = [PdaState((), u) for u in spec.all_controls]
    for p in stacks[1:]:
        out.extend(PdaState(p, u) for u in sorted(spec.controls[base.target(p[-1])]))
    return out


# Floor configurations: ``pushed`` is the stack above the start stack's
# still-undecided part.  Popping at an empty ``pushed`` chooses an edge into
# the anchor of the current control.

class Config(NamedTuple):
    pushed: tuple
    control: str


def config_moves(spec: AutomatonSpec, cfg: Config, sym: str) -> list[tuple[Config, bool]]:
    """Successor configurations and whether the move was a pop."""
    u = cfg.control
    if sym in spec.pushes(u):
        path, target = spec.push[u, sym]
        return [(Config(cfg.pushed + path, target), False)]
    if cfg.pushed:
        top = cfg.pushed[-1]
        if sym in spec.pops(u, top):
            return [(Config(cfg.pushed[:-1], spec.pop[u, top, sym]), True)]
        return []
    targets = sorted({spec.pop[u, e.id, sym] for e in spec.incoming(u) if sym in spec.pops(u, e.id)})
    return [(Config((), t), True) for t in targets]


def config_symbols(spec: AutomatonSpec, cfg: Config) -> frozenset[str]:
    if cfg.pushed:
        return _acc(spec, cfg.pushed[-1], cfg.control)
    return spec.pushes(cfg.control) | spec.all_pops(cfg.control)


def floor_configs(spec: AutomatonSpec) -> frozenset[Config]:
    return frozenset(Config((), u) for u in spec.all_controls)


def _check_word(spec: AutomatonSpec, word: Sequence[str]) -> None:
    for sym in word:
        if sym not in spec.alphabet:
            raise ValueError(f"symbol {sym!r} not in alphabet")


def member(spec: AutomatonSpec, word: Sequence[str]) -> bool:
    """Is ``word`` the label of some path in the (infinite) automaton?"""
    _check_word(spec, word)
    current = floor_configs(spec)
    for sym in word:
        current = frozenset(c for cfg in current for c, _ in config_moves(spec, cfg, sym))
        if not current:
            return False
    return True


def _sorted_symbols(spec: AutomatonSpec) -> list[str]:
    return sorted(spec.alphabet)


def iter_language(spec: AutomatonSpec, n: int) -> Iterator[tuple[Word, frozenset[Config]]]:
    """Yield every admissible word of length <= n with its configurations.

    Words are produced breadth-first in (length, lexicographic) order.
    """
    syms = _sorted_symbols(spec)
    layer = [((), floor_configs(spec))]
    for k in range(n + 1):
        nxt = []
        for word, cfgs in layer:
            yield word, cfgs
            if k == n:
                continue
            for sym in syms:
                succ = frozenset(c for cfg in cfgs for c, _ in config_moves(spec, cfg, sym))
                if succ:
                    nxt.append((word + (sym,), succ))
        layer = nxt


def enumerate_language(spec: AutomatonSpec, n: int) -> set[Word]:
    if n < 0:
        raise ValueError("length bound must be non-negative")
    return {w for w, _ in iter_language(spec, n)}


def count_words(spec: AutomatonSpec, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for w, _ in iter_language(spec, n):
        counts[len(w)] += 1
    return counts


def sorted_words(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=lambda w: (len(w), w))


# Pushdown saturation

PopSummary = dict  # (edge, control) -> frozenset of controls


def _unwind(table: PopSummary, path: Sequence[str], start: Iterable[str]) -> set[str]:
    """Controls reachable after popping ``path`` (top last) starting in ``start``."""
    cur = set(start)
    for e in reversed(path):
        cur = {x for c in cur for x in table.get((e, c), ())}
        if not cur:
            break
    return cur


def pop_summaries(spec: AutomatonSpec) -> PopSummary:
    """Least fixpoint: controls reached by completely unwinding one stack edge.

    ``table[e, U]`` holds every ``U'`` such that the automaton, with ``e`` on
    top of the stack and in control ``U``, can reach control ``U'`` with ``e``
    popped, through any balanced sequence of pushes and pops in between.
    """
    keys = [(e.id, u) for u in spec.all_controls for e in spec.incoming(u)]
    table: dict[tuple[str, str], set[str]] = {}
    for e, u in keys:
        table[e, u] = {spec.pop[u, e, s] for s in spec.pops(u, e)}
    changed = True
    while changed:
        changed = False
        for e, u in keys:
            for sym in spec.pushes(u):
                path, target = spec.push[u, sym]
                for w in _unwind(table, path, [target]):
                    new = table[e, w] - table[e, u]
                    if new:
                        table[e, u] |= new
                        changed = True
    return {k: frozenset(v) for k, v in table.items()}


def unwind_successors(spec: AutomatonSpec, table: PopSummary, u: str) -> dict[str, set[str]]:
    """For each push symbol at ``u``: controls after pushing and fully unwinding."""
    return {
        sym: _unwind(table, spec.push[u, sym][0], [spec.push[u, sym][1]])
        for sym in sorted(spec.pushes(u))
    }


def push_reachable_tops(spec: AutomatonSpec, table: PopSummary) -> set[tuple[str, str]]:
    """Pairs (top edge, control) occurring on stacks built by pushes."""
    tops: set[tuple[str, str]] = set()
    for u in spec.all_controls:
        for sym in spec.pushes(u):
            path, target = spec.push[u, sym]
            cur = {target}
            for e in reversed(path):
                tops.update((e, c) for c in cur)
                cur = {x for c in cur for x in table.get((e, c), ())}
    changed = True
    while changed:
        changed = False
        for e, u in list(tops):
            for succ in unwind_successors(spec, table, u).values():
                for w in succ:
                    if (e, w) not in tops:
                        tops.add((e, w))
                        changed = True
    return tops


def summary_graph(spec: AutomatonSpec, table: PopSummary | None = None) -> dict[str, dict[str, set[str]]]:
    """Moves between boundary controls: ``{U: {label: {U', ...}}}``.

    Labels are the push symbol of a push-then-unwind composite, or
    ``"<sym>@<edge>"`` for a pop through the bottom of an arbitrarily deep
    stack.
    """
    table = pop_summaries(spec) if table is None else table
    graph: dict[str, dict[str, set[str]]] = {}
    for u in spec.all_controls:
        moves = {sym: set(succ) for sym, succ in unwind_successors(spec, table, u).items() if succ}
        for e in spec.incoming(u):
            for sym in sorted(spec.pops(u, e.id)):
                moves.setdefault(f"{sym}@{e.id}", set()).add(spec.pop[u, e.id, sym])
        graph[u] = moves
    return graph


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    witness: dict | None = None

    def to_json(self):
        return {"connected": self.connected, "witness": self.witness}


def strongly_connected(spec: AutomatonSpec) -> Connectivity:
    """Test strong connectedness via pop summaries.

    Two requirements: every (top edge, control) pair that pushes can create
    can be popped, and the summary graph on boundary controls is strongly
    connected.  The summary graph includes pops through the bottom of the
    stack, i.e. it describes the part of the automaton visited from
    arbitrarily deep stacks.
    """
    table = pop_summaries(spec)
    for e, u in sorted(push_reachable_tops(spec, table)):
        if not table.get((e, u)):
            return Connectivity(False, {"kind": "unpoppable", "edge": e, "control": u})
    graph = summary_graph(spec, table)
    controls = spec.all_controls
    for u in controls:
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for succ in graph[x].values():
                for y in succ:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        for v in controls:
            if v not in seen:
                return Connectivity(False, {"kind": "unreachable", "from": u, "to": v})
    return Connectivity(True, None)


def directly_accessible_controls(spec: AutomatonSpec) -> frozenset[str]:
    """Controls of states reached by pop-only paths from arbitrarily deep stacks."""
    from .graph import reachable, trim_biinfinite
    from .sofic import build_y_presentation

    y = build_y_presentation(spec)
    core = trim_biinfinite(y.graph)
    return reachable(y.graph, core.vertices)


def explicit_graph(spec: AutomatonSpec, depth: int) -> tuple[list[PdaState], list[tuple[PdaState, str, PdaState]]]:
    """States with stack length <= depth and the transitions among them."""
    states = states_up_to(spec, depth)
    index = set(states)
    edges = []
    for s in states:
        for sym in sorted(_acc(spec, s.stack[-1] if s.stack else None, s.control)):
            t = _step(spec, s, sym)
            if t in index:
                edges.append((s, sym, t))
    return states, edges


def all_words(spec: AutomatonSpec, n: int) -> Iterator[Word]:
    """Every word over the alphabet of length <= n (for brute force checks)."""
    syms = _sorted_symbols(spec)
    for k in range(n + 1):
        yield from product(syms, repeat=k)
