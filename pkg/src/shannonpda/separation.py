"""Deciding forward separation of the boundary states.

Two transition systems run pairs of automaton states in lockstep on common
symbols:

* ``P`` keeps pairs with equal stack length and equal acceptance sets.  The
  stacks move together, so ``P`` is itself a pushdown system whose stack
  symbols are pairs of base edges; reachability of the separating pairs is
  decided by saturation, with no bound on the stack.
* ``Q`` keeps pairs with different controls and equal acceptance sets, and
  jumps over stretches where the two controls coincide.  Only its finite
  part with stack lengths below ``M_G`` is explored.

A boundary pair needs to reach a separating pair in both systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .engine import PdaState, _acc, _step, check_state, states_up_to
from .model import AutomatonSpec
from .sofic import NotFound, VisibilityConstants

Pair = tuple  # (PdaState, PdaState)


class ConstantsNotFound(ValueError):
    pass


def _state_acc(spec: AutomatonSpec, s: PdaState) -> frozenset[str]:
    return _acc(spec, s.stack[-1] if s.stack else None, s.control)


# P as a pushdown system.
#
# Stack symbols are (edge, edge, differs) where ``differs`` records whether
# this symbol or any below it pairs two different edges; ``None`` marks the
# bottom.  A head is a (control pair, top symbol).

VALID, MISMATCH, EQUAL = "valid", "mismatch", "equal"


class _PairPushdown:
    def __init__(self, spec: AutomatonSpec):
        self.spec = spec

    def status(self, q, gamma) -> str:
        u, v = q
        top1, top2, differs = gamma if gamma is not None else (None, None, False)
        if _acc(self.spec, top1, u) != _acc(self.spec, top2, v):
            return MISMATCH
        if u == v and not differs:
            return EQUAL
        return VALID

    def moves(self, q, gamma):
        """Yield ("push", q', symbols), ("pop", q') or ("length",) per symbol."""
        spec = self.spec
        u, v = q
        top1, top2, differs = gamma if gamma is not None else (None, None, False)
        for sym in sorted(_acc(spec, top1, u)):
            push1, push2 = sym in spec.pushes(u), sym in spec.pushes(v)
            if push1 and push2:
                (p1, c1), (p2, c2) = spec.push[u, sym], spec.push[v, sym]
                if len(p1) != len(p2):
                    yield ("length",)
                    continue
                pushed, d = [], differs
                for e1, e2 in zip(p1, p2):
                    d = d or e1 != e2
                    pushed.append((e1, e2, d))
                yield ("push", (c1, c2), tuple(pushed))
            elif not push1 and not push2:
                yield ("pop", (spec.pop[u, top1, sym], spec.pop[v, top2, sym]))
            else:
                yield ("length",)

    def reaches_separation(self, q0) -> bool:
        heads = {(q0, None)}
        summary: dict = {}
        changed = True
        while changed:
            changed = False
            for head in list(heads):
                q, gamma = head
                st = self.status(q, gamma)
                if st == MISMATCH:
                    return True
                if st == EQUAL:
                    continue
                for mv in self.moves(q, gamma):
                    if mv[0] == "length":
                        return True
                    found: set = set()
                    if mv[0] == "pop":
                        found = {mv[1]}
                    else:
                        cur = {mv[1]}
                        for sym in reversed(mv[2]):
                            nxt = set()
                            for c in cur:
                                if (c, sym) not in heads:
                                    heads.add((c, sym))
                                    changed = True
                                if self.status(c, sym) == VALID:
                                    nxt |= summary.get((c, sym), set())
                            cur = nxt
                        for c in cur:
                            if (c, gamma) not in heads:
                                heads.add((c, gamma))
                                changed = True
                            if self.status(c, gamma) == VALID:
                                found |= summary.get((c, gamma), set())
                    if gamma is not None and found:
                        old = summary.setdefault(head, set())
                        if not found <= old:
                            old |= found
                            changed = True
        return any(self.status(q, g) == MISMATCH for q, g in heads)


def xi_P_reachable(spec: AutomatonSpec, consts, u: str, v: str) -> bool:
    """Does the pair of boundary states reach a separating pair within P?"""
    if spec.pushes(u) != spec.pushes(v):
        return True  # separated by the acceptance sets themselves
    return _PairPushdown(spec).reaches_separation((u, v))


# Q, restricted to stack lengths below M_G.

def _pair_succ(spec: AutomatonSpec, p: Pair, sym: str) -> Pair:
    return _step(spec, p[0], sym), _step(spec, p[1], sym)


def _in_q(spec: AutomatonSpec, p: Pair) -> bool:
    return p[0].control != p[1].control and _state_acc(spec, p[0]) == _state_acc(spec, p[1])


def _in_m(spec: AutomatonSpec, p: Pair) -> bool:
    a, b = p
    return a.control == b.control and a.stack != b.stack and _state_acc(spec, a) == _state_acc(spec, b)


def _jump_targets(spec: AutomatonSpec, p: Pair) -> tuple[set, bool]:
    """Pairs reached from ``p`` (same control, different stacks) where the
    controls first diverge under synchronized pops, and whether some such pop
    sequence exposes different acceptance sets (membership in M')."""
    a, b = p[0].stack, p[1].stack
    depth = min(len(a), len(b))
    targets: set = set()
    diverges = False

    def explore(i: int, w: str) -> None:
        # i edges popped from each side so far, both in control w.
        nonlocal diverges
        if i >= depth:
            return
        ea, eb = a[len(a) - 1 - i], b[len(b) - 1 - i]
        pops = spec.pops(w, ea)
        if pops != spec.pops(w, eb):
            return
        rest_a, rest_b = a[: len(a) - 1 - i], b[: len(b) - 1 - i]
        if rest_a != rest_b:
            for sym in sorted(pops):
                succ = (PdaState(rest_a, spec.pop[w, ea, sym]), PdaState(rest_b, spec.pop[w, eb, sym]))
                if _state_acc(spec, succ[0]) != _state_acc(spec, succ[1]):
                    diverges = True
                elif _in_q(spec, succ):
                    targets.add(succ)
        for sym in sorted(pops):
            wa, wb = spec.pop[w, ea, sym], spec.pop[w, eb, sym]
            if wa == wb:
                explore(i + 1, wa)

    explore(0, p[0].control)
    return targets, diverges


def _q_successors(spec: AutomatonSpec, p: Pair, bound: int) -> tuple[bool, list[Pair]]:
    """(is p in Xi or Xi', successors of p inside Q[bound])."""
    succs: list[Pair] = []
    separating = False
    for sym in sorted(_state_acc(spec, p[0])):
        s = _pair_succ(spec, p, sym)
        if _state_acc(spec, s[0]) != _state_acc(spec, s[1]):
            separating = True
            continue
        if max(len(s[0].stack), len(s[1].stack)) > bound:
            separating = True
            continue
        if _in_q(spec, s):
            succs.append(s)
        elif _in_m(spec, s):
            targets, in_m_prime = _jump_targets(spec, s)
            if in_m_prime:
                # synchronized pops then ``sym`` expose different acceptance
                # sets, so the pair is separated
                separating = True
                continue
            succs.extend(sorted(targets))
    return separating, [s for s in succs if len(s[0].stack) < bound and len(s[1].stack) < bound]


def xi_Q_reachable(spec: AutomatonSpec, consts: VisibilityConstants, u: str, v: str) -> bool:
    """Does the pair of boundary states reach Xi or Xi' inside Q[M_G]?"""
    start = (PdaState((), u), PdaState((), v))
    if not _in_q(spec, start):
        return True
    bound = consts.M_G
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        separating, succs = _q_successors(spec, p, bound)
        if separating:
            return True
        for s in succs:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return False


# Diagnostics: the word-length constants of P, read with shortest-word
# semantics on the part of P with stacks of bounded length.

def _in_p(spec: AutomatonSpec, p: Pair) -> bool:
    a, b = p
    return a != b and len(a.stack) == len(b.stack) and _state_acc(spec, a) == _state_acc(spec, b)


def _p_successors(spec: AutomatonSpec, p: Pair, bound: int) -> Iterator[Pair]:
    for sym in sorted(_state_acc(spec, p[0])):
        s = _pair_succ(spec, p, sym)
        if None not in s and _in_p(spec, s) and len(s[0].stack) <= bound:
            yield s


def p_word_lengths(spec: AutomatonSpec, bound: int) -> dict[str, int | None]:
    starts = [
        (PdaState((), u), PdaState((), v))
        for u in spec.all_controls for v in spec.all_controls
        if _in_p(spec, (PdaState((), u), PdaState((), v)))
    ]
    lam0 = lam_plus = None
    for p0 in starts:
        dist = {p0: 0}
        queue = deque([p0])
        while queue:
            p = queue.popleft()
            for s in _p_successors(spec, p, bound):
                if s not in dist:
                    dist[s] = dist[p] + 1
                    queue.append(s)
        for p, d in dist.items():
            if not p[0].stack:
                lam0 = d if lam0 is None else max(lam0, d)
        for level in range(1, bound + 1):
            dist = {}
            queue = deque()
            for s in _p_successors(spec, p0, bound):
                if len(s[0].stack) >= level and s not in dist:
                    dist[s] = 1
                    queue.append(s)
            while queue:
                p = queue.popleft()
                for s in _p_successors(spec, p, bound):
                    if len(s[0].stack) >= level and s not in dist:
                        dist[s] = dist[p] + 1
                        queue.append(s)
            for p, d in dist.items():
                if len(p[0].stack) == level:
                    lam_plus = d if lam_plus is None else max(lam_plus, d)
    return {"Lambda0": lam0, "Lambda_plus": lam_plus, "stack_bound": bound}


@dataclass
class SeparationVerdict:
    separated: bool
    failing_pair: tuple[str, str] | None = None
    condition: str | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "separated": self.separated,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "condition": self.condition,
        }


def boundary_pairs(spec: AutomatonSpec) -> list[tuple[str, str]]:
    """Pairs of distinct controls whose boundary states accept the same symbols."""
    return [(u, v) for u, v in combinations(spec.all_controls, 2) if spec.pushes(u) == spec.pushes(v)]


def decide_forward_separated(spec: AutomatonSpec, consts: VisibilityConstants | NotFound) -> SeparationVerdict:
    if isinstance(consts, NotFound):
        raise ConstantsNotFound(f"visibility constants not found: {consts.reason}")
    pairs = {}
    verdict = None
    for u, v in boundary_pairs(spec):
        a = xi_Q_reachable(spec, consts, u, v)
        b = xi_P_reachable(spec, consts, u, v)
        pairs[f"{u},{v}"] = {"a": a, "b": b}
        if verdict is None and not (a and b):
            verdict = SeparationVerdict(False, (u, v), "a" if not a else "b")
    verdict = verdict or SeparationVerdict(True)
    verdict.diagnostics = {"pairs": pairs, "M_G": consts.M_G, **p_word_lengths(spec, 2 * consts.M_G)}
    return verdict


def brute_force_separable(spec: AutomatonSpec, s1: PdaState, s2: PdaState, max_len: int) -> tuple | None:
    """Shortest (then lexicographically least) word accepted by exactly one state."""
    check_state(spec, s1)
    check_state(spec, s2)
    if s1 == s2:
        raise ValueError("states must be distinct")
    syms = sorted(spec.alphabet)
    layer = [((), (s1, s2))]
    seen = {(s1, s2)}
    for _ in range(max_len):
        nxt = []
        for word, (a, b) in layer:
            for sym in syms:
                ta, tb = _step(spec, a, sym), _step(spec, b, sym)
                if (ta is None) != (tb is None):
                    return word + (sym,)
                if ta is None or ta == tb or (ta, tb) in seen:
                    continue
                seen.add((ta, tb))
                nxt.append((word + (sym,), (ta, tb)))
        layer = nxt
        if not layer:
            break
    return None


def cross_check(spec: AutomatonSpec, verdict: SeparationVerdict, max_len: int, depth: int = 4) -> dict:
    """Compare a verdict with the brute-force oracle.

    A separated verdict needs a witness for every pair of distinct states up
    to ``depth``; a failed one needs no witness for its failing boundary pair.
    """
    if verdict.separated:
        states = states_up_to(spec, depth)
        missing = []
        for s, t in combinations(states, 2):
            if brute_force_separable(spec, s, t, max_len) is None:
                missing.append([str(s), str(t)])
        return {"agrees": not missing, "unseparated": missing[:10], "checked_pairs": len(states) * (len(states) - 1) // 2}
    u, v = verdict.failing_pair
    w = brute_force_separable(spec, PdaState((), u), PdaState((), v), max_len)
    return {"agrees": w is None, "witness": list(w) if w else None}
