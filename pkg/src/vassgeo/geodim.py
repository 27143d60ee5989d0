"""Cycle space and geometric dimension.

``cycle_space_basis`` contracts simple cycles one at a time until each
strongly connected component is a single state, then reads the cycle space
off the remaining self-loops.  ``simple_cycle_effects`` is the brute-force
oracle it is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import IntVector, Transition, Vass, check_path, sccs
from .errors import NotAPath, NotSimpleCycle, SelfLoop, TooLarge
from .linalg import Subspace, join, span_basis, vadd, vsub, zero

ORACLE_MAX_STATES = 8


@dataclass(frozen=True)
class ShrinkResult:
    shrunk: Vass
    state_map: dict[str, str]
    shift: dict[str, IntVector]


def simple_cycles(G: Vass, max_states: int = ORACLE_MAX_STATES) -> Iterator[tuple[int, ...]]:
    """Yield every simple cycle as a transition word.

    Each cycle is reported once, starting at its lowest-indexed state.
    Parallel transitions give distinct cycles.
    """
    if len(G.states) > max_states:
        raise TooLarge(f"{len(G.states)} states exceed the oracle cap of {max_states}")
    idx = G.index
    for s in G.states:
        base = idx[s]
        on_path = {s}
        word: list[int] = []

        def dfs(v: str) -> Iterator[tuple[int, ...]]:
            for i in G.out_edges[v]:
                w = G.transitions[i].dst
                if w == s:
                    yield tuple(word + [i])
                elif idx[w] > base and w not in on_path:
                    on_path.add(w)
                    word.append(i)
                    yield from dfs(w)
                    word.pop()
                    on_path.discard(w)

        yield from dfs(s)


def simple_cycle_effects(G: Vass, max_states: int = ORACLE_MAX_STATES) -> list[IntVector]:
    """Distinct effects of all simple cycles, sorted."""
    effects = set()
    for word in simple_cycles(G, max_states):
        total = zero(G.dim)
        for i in word:
            total = vadd(total, G.transitions[i].effect)
        effects.add(total)
    return sorted(effects)


def oracle_cycle_space(G: Vass, max_states: int = ORACLE_MAX_STATES) -> Subspace:
    return span_basis(simple_cycle_effects(G, max_states), G.dim)


def shrink_cycle(G: Vass, theta: Sequence[int]) -> ShrinkResult:
    """Contract the simple cycle ``theta`` into one state.

    The contracted state reuses the name of the cycle's first state.
    Transition i of the result is the image of transition i of ``G``.
    """
    theta = tuple(theta)
    if not theta:
        raise NotSimpleCycle("empty word")
    try:
        check_path(G, theta)
    except NotAPath as exc:
        raise NotSimpleCycle(str(exc)) from exc
    ts = [G.transitions[i] for i in theta]
    p0 = ts[0].src
    if ts[-1].dst != p0:
        raise NotSimpleCycle("word does not return to its first state")
    if len(theta) == 1:
        raise SelfLoop("cannot shrink a self-loop")
    visited = [t.src for t in ts]
    if len(set(visited)) != len(visited):
        raise NotSimpleCycle("cycle repeats a state")

    shift: dict[str, IntVector] = {q: zero(G.dim) for q in G.states}
    acc = zero(G.dim)
    for t in ts:
        acc = vadd(acc, t.effect)
        shift[t.dst] = acc
    on_cycle = set(visited)
    h = {q: (p0 if q in on_cycle else q) for q in G.states}
    states = tuple(q for q in G.states if q not in on_cycle or q == p0)
    trans = tuple(
        Transition(h[t.src], vsub(vadd(shift[t.src], t.effect), shift[t.dst]), h[t.dst])
        for t in G.transitions
    )
    return ShrinkResult(Vass(G.dim, states, trans), h, shift)


def _first_cycle(G: Vass, start: str) -> tuple[int, ...] | None:
    """First simple non-self-loop cycle met by DFS from ``start``."""
    path_states: list[str] = [start]
    path_edges: list[int] = []
    pos = {start: 0}
    done: set[str] = set()
    iters = [iter(G.out_edges[start])]
    while iters:
        v = path_states[-1]
        for i in iters[-1]:
            w = G.transitions[i].dst
            if w == v or w in done:
                continue
            if w in pos:
                return tuple(path_edges[pos[w]:]) + (i,)
            pos[w] = len(path_states)
            path_states.append(w)
            path_edges.append(i)
            iters.append(iter(G.out_edges[w]))
            break
        else:
            iters.pop()
            done.add(path_states.pop())
            del pos[v]
            if path_edges:
                path_edges.pop()
    return None


def _scc_cycle_space(G: Vass, comp: list[str]) -> Subspace:
    members = set(comp)
    inner = tuple(t for t in G.transitions if t.src in members and t.dst in members)
    H = Vass(G.dim, tuple(comp), inner)
    while len(H.states) > 1:
        theta = _first_cycle(H, H.states[0])
        if theta is None:  # not strongly connected; cannot happen for an SCC
            raise AssertionError("component without a cycle")
        H = shrink_cycle(H, theta).shrunk
    return span_basis((t.effect for t in H.transitions), G.dim)


def cycle_space_basis(G: Vass) -> Subspace:
    """Canonical basis of Cyc(G), in polynomial time."""
    parts = [_scc_cycle_space(G, comp) for comp in sccs(G)]
    if not parts:
        return span_basis([], G.dim)
    return join(*parts)


def gdim(G: Vass) -> int:
    return cycle_space_basis(G).rank
