"""VASS data model, path and run semantics, traversal number and characteristic."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotAPath, StateMismatch
from .linalg import Subspace, chebyshev_distance_to_span, in_span, norm, vadd, vneg, vsub, zero

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class Transition:
    src: str
    effect: IntVector
    dst: str

    @property
    def norm(self) -> int:
        return norm(self.effect)


@dataclass(frozen=True)
class Configuration:
    state: str
    counters: IntVector

    def __post_init__(self):
        object.__setattr__(self, "counters", tuple(self.counters))
        if any(c < 0 for c in self.counters):
            raise ValueError(f"negative counter in configuration {self}")

    def __str__(self) -> str:
        return f"{self.state}({','.join(map(str, self.counters))})"


@dataclass(frozen=True, eq=True)
class Vass:
    """A d-VASS: states plus an ordered list of transitions.

    Transition identity is the list index; duplicates are allowed.
    """

    dim: int
    states: tuple[str, ...]
    transitions: tuple[Transition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        ts = tuple(
            t if isinstance(t, Transition) else Transition(t[0], tuple(t[1]), t[2])
            for t in self.transitions
        )
        ts = tuple(Transition(t.src, tuple(t.effect), t.dst) for t in ts)
        object.__setattr__(self, "transitions", ts)
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state ids")
        known = set(self.states)
        for i, t in enumerate(ts):
            if t.src not in known or t.dst not in known:
                raise ValueError(f"transition {i} uses an undeclared state")
            if len(t.effect) != self.dim:
                raise DimensionMismatch(f"transition {i} has effect of length {len(t.effect)}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def out_edges(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {q: [] for q in self.states}
        for i, t in enumerate(self.transitions):
            out[t.src].append(i)
        return out

    @property
    def norm(self) -> int:
        """||T||, 0 for a VASS without transitions."""
        return max((t.norm for t in self.transitions), default=0)

    def __getitem__(self, i: int) -> Transition:
        return self.transitions[i]

    def config(self, state: str, counters: Iterable[int] | None = None) -> Configuration:
        c = zero(self.dim) if counters is None else tuple(counters)
        if state not in self.index:
            raise StateMismatch(f"unknown state {state!r}")
        if len(c) != self.dim:
            raise DimensionMismatch(f"configuration of length {len(c)} in a {self.dim}-VASS")
        return Configuration(state, c)


@dataclass(frozen=True)
class Run:
    """A transition word executed from ``start`` in ``vass``."""

    vass: Vass = field(repr=False)
    start: Configuration
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    @cached_property
    def configurations(self) -> list[Configuration]:
        seq = execute(self.vass, self.start, self.word)
        if seq is None:
            raise ValueError("word is not executable from the start configuration")
        return seq

    @property
    def target(self) -> Configuration:
        return self.configurations[-1]

    def __len__(self) -> int:
        return len(self.word)


# ---------------------------------------------------------------------------
# semantics


def check_path(G: Vass, word: Sequence[int], start_state: str | None = None) -> None:
    prev = start_state
    for k, i in enumerate(word):
        if not 0 <= i < len(G.transitions):
            raise NotAPath(f"transition index {i} out of range")
        t = G.transitions[i]
        if prev is not None and t.src != prev:
            if k == 0:
                raise StateMismatch(f"word starts at {t.src}, expected {prev}")
            raise NotAPath(f"transition {i} at position {k} leaves {t.src}, not {prev}")
        prev = t.dst


def effect(G: Vass, word: Sequence[int]) -> IntVector:
    check_path(G, word)
    total = zero(G.dim)
    for i in word:
        total = vadd(total, G.transitions[i].effect)
    return total


def execute(G: Vass, start: Configuration, word: Sequence[int]) -> list[Configuration] | None:
    """Configuration sequence of the run, or None if some counter goes negative."""
    if len(start.counters) != G.dim:
        raise DimensionMismatch("start configuration has the wrong dimension")
    check_path(G, word, start.state)
    seq = [start]
    cur = start.counters
    for i in word:
        t = G.transitions[i]
        cur = vadd(cur, t.effect)
        if any(c < 0 for c in cur):
            return None
        seq.append(Configuration(t.dst, cur))
    return seq


def reverse(G: Vass) -> Vass:
    """G^rev; transition i of the result reverses transition i of G."""
    return Vass(
        G.dim,
        G.states,
        tuple(Transition(t.dst, vneg(t.effect), t.src) for t in G.transitions),
    )


def reverse_run(run: Run) -> Run:
    return Run(reverse(run.vass), run.target, tuple(reversed(run.word)))


# ---------------------------------------------------------------------------
# graph structure


def sccs(G: Vass) -> list[list[str]]:
    """Strongly connected components in topological order of the condensation.

    Iterative Tarjan; Tarjan emits components in reverse topological order,
    so the result is reversed before returning.
    """
    succ = {q: [G.transitions[i].dst for i in G.out_edges[q]] for q in G.states}
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in G.states:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            nbrs = succ[v]
            for j in range(pos, len(nbrs)):
                w = nbrs[j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp, key=G.index.__getitem__))
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
    comps.reverse()
    return comps


def traversal_number(G: Vass) -> int:
    """Maximal number of distinct states visited by one path.

    Node-weighted longest path in the SCC condensation, weight = SCC size.
    """
    comps = sccs(G)
    comp_of = {q: k for k, comp in enumerate(comps) for q in comp}
    succs: dict[int, set[int]] = defaultdict(set)
    for t in G.transitions:
        a, b = comp_of[t.src], comp_of[t.dst]
        if a != b:
            succs[a].add(b)
    best = [0] * len(comps)
    for k in range(len(comps) - 1, -1, -1):
        best[k] = len(comps[k]) + max((best[j] for j in succs[k]), default=0)
    return max(best, default=0)


def characteristic(G: Vass) -> int:
    return traversal_number(G) * G.norm


def check_run_coset_invariant(run: Run, basis: Subspace) -> bool:
    """Check the per-state affine-coset structure of a run.

    All configurations of ``run`` at a state q must differ pairwise by vectors
    of ``basis``, and the first one, relative to the start vector, must lie
    within max-norm distance chi(G) of the span.
    """
    seq = execute(run.vass, run.start, run.word)
    if seq is None:
        return False
    return check_coset_sequence(seq, basis, characteristic(run.vass))


def check_coset_sequence(seq: Sequence[Configuration], basis: Subspace, chi: int) -> bool:
    if not seq:
        return True
    u = seq[0].counters
    first: dict[str, IntVector] = {}
    for c in seq:
        if c.state not in first:
            first[c.state] = c.counters
            if chebyshev_distance_to_span(vsub(c.counters, u), basis) > chi:
                return False
        elif not in_span(vsub(c.counters, first[c.state]), basis):
            return False
    return True
