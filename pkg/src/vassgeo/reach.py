"""Reachability: reductions, exhaustive oracles and deciders."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .core import Configuration, Run, Transition, Vass, characteristic, execute, traversal_number
from .errors import DimensionMismatch, GdimTooHigh, NotGeoZero, WrongDimension, WrongGdim
from .geodim import cycle_space_basis
from .linalg import cross3, dot, in_span, norm, span_basis, vadd, vneg, zero

REACHABLE, UNREACHABLE, UNKNOWN = "reachable", "unreachable", "unknown"


@dataclass(frozen=True)
class ReachQuery:
    vass: Vass
    source: Configuration
    target: Configuration

    def __post_init__(self):
        for c in (self.source, self.target):
            if len(c.counters) != self.vass.dim:
                raise DimensionMismatch("configuration dimension differs from the VASS")
            if c.state not in self.vass.index:
                raise ValueError(f"unknown state {c.state!r}")


@dataclass(frozen=True)
class ReachAnswer:
    verdict: str
    witness: Run | None = None
    bound_used: str = ""

    def __post_init__(self):
        if self.verdict not in (REACHABLE, UNREACHABLE, UNKNOWN):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == REACHABLE and self.witness is None:
            raise ValueError("a reachable verdict needs a witness")


@dataclass(frozen=True)
class ReductionOutput:
    """A reduced instance.

    ``origin[i]`` is the index of the input transition that output transition
    ``i`` simulates, or None for bookkeeping transitions; dropping the None
    entries from an output witness gives an input witness.
    """

    vass: Vass
    source: Configuration
    target: Configuration
    length_map: str
    origin: tuple[int | None, ...] = field(default=())
    notes: tuple[str, ...] = ()

    @property
    def query(self) -> ReachQuery:
        return ReachQuery(self.vass, self.source, self.target)

    def pull_back(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.origin[i] for i in word if self.origin[i] is not None)


class _Namer:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)

    def __call__(self, base: str) -> str:
        name = base
        while name in self.taken:
            name += "_"
        self.taken.add(name)
        return name


def _int_tag(x: int) -> str:
    return f"m{-x}" if x < 0 else str(x)


# ---------------------------------------------------------------------------
# 0-reachability


def reduce_to_zero_reach(q: ReachQuery) -> ReductionOutput:
    """Wrap the query so that it starts and ends with all counters zero."""
    G = q.vass
    name = _Namer(G.states)
    src, trg = name("__src"), name("__trg")
    trans = G.transitions + (
        Transition(src, q.source.counters, q.source.state),
        Transition(q.target.state, vneg(q.target.counters), trg),
    )
    H = Vass(G.dim, G.states + (src, trg), trans)
    origin = tuple(range(len(G.transitions))) + (None, None)
    return ReductionOutput(H, Configuration(src, zero(G.dim)), Configuration(trg, zero(G.dim)), "l -> l+2", origin)


# ---------------------------------------------------------------------------
# exhaustive search


def _witness(q: ReachQuery, parent: dict, end) -> Run:
    word = []
    cur = end
    while parent[cur] is not None:
        prev, i = parent[cur]
        word.append(i)
        cur = prev
    word.reverse()
    return Run(q.vass, q.source, tuple(word))


def oracle_reach(q: ReachQuery, norm_cap: int) -> ReachAnswer:
    """BFS over configurations of norm at most ``norm_cap``.

    Unreachable is exact only when no successor was ever cut off by the cap.
    """
    G = q.vass
    start = (q.source.state, q.source.counters)
    goal = (q.target.state, q.target.counters)
    if norm(q.source.counters) > norm_cap:
        return ReachAnswer(UNKNOWN, None, f"source norm exceeds cap {norm_cap}")
    parent: dict = {start: None}
    queue = deque([start])
    pruned = False
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return ReachAnswer(REACHABLE, _witness(q, parent, cur), f"norm<={norm_cap}, {len(parent)} configurations")
        s, v = cur
        for i in G.out_edges[s]:
            t = G.transitions[i]
            w = vadd(v, t.effect)
            if any(a < 0 for a in w):
                continue
            if any(a > norm_cap for a in w):
                pruned = True
                continue
            nxt = (t.dst, w)
            if nxt not in parent:
                parent[nxt] = (cur, i)
                queue.append(nxt)
    verdict = UNKNOWN if pruned else UNREACHABLE
    return ReachAnswer(verdict, None, f"norm<={norm_cap}, {len(parent)} configurations, cap {'hit' if pruned else 'not hit'}")


def bounded_reach(q: ReachQuery, max_len: int, complete: bool = False) -> ReachAnswer:
    """BFS over runs of length at most ``max_len``.

    A miss is reported as unreachable when ``complete`` is set, or when the
    reachable set closed off before the length bound.
    """
    G = q.vass
    start = (q.source.state, q.source.counters)
    goal = (q.target.state, q.target.counters)
    parent: dict = {start: None}
    frontier = [start]
    depth = 0
    while True:
        if goal in parent:
            return ReachAnswer(REACHABLE, _witness(q, parent, goal), f"length<={max_len}")
        if depth == max_len or not frontier:
            break
        nxt_frontier = []
        for cur in frontier:
            s, v = cur
            for i in G.out_edges[s]:
                t = G.transitions[i]
                w = vadd(v, t.effect)
                if any(a < 0 for a in w):
                    continue
                nxt = (t.dst, w)
                if nxt not in parent:
                    parent[nxt] = (cur, i)
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
        depth += 1
    if not frontier:
        return ReachAnswer(UNREACHABLE, None, f"reachable set closed after {depth} steps")
    return ReachAnswer(UNREACHABLE if complete else UNKNOWN, None, f"length<={max_len}")


def lengths_reaching(q: ReachQuery, max_len: int) -> set[int]:
    """All l <= max_len such that some run of length exactly l reaches the target."""
    G = q.vass
    goal = (q.target.state, q.target.counters)
    layer = {(q.source.state, q.source.counters)}
    found = set()
    for ell in range(max_len + 1):
        if goal in layer:
            found.add(ell)
        if ell == max_len:
            break
        nxt = set()
        for s, v in layer:
            for i in G.out_edges[s]:
                t = G.transitions[i]
                w = vadd(v, t.effect)
                if all(a >= 0 for a in w):
                    nxt.add((t.dst, w))
        layer = nxt
        if not layer:
            break
    return found


# ---------------------------------------------------------------------------
# geometric dimension 0


def decide_geo0(q: ReachQuery, basis=None) -> ReachAnswer:
    """Complete decision when every cycle has effect zero.

    Cycles can then be cut out of any run without changing later
    configurations, so it suffices to try runs along simple paths.
    """
    G = q.vass
    P = basis if basis is not None else cycle_space_basis(G)
    if P.rank != 0:
        raise NotGeoZero(f"geometric dimension is {P.rank}")
    goal_state, goal = q.target.state, q.target.counters
    word: list[int] = []
    on_path = {q.source.state}
    explored = 0

    def dfs(s: str, v) -> bool:
        nonlocal explored
        explored += 1
        if s == goal_state and v == goal:
            return True
        for i in G.out_edges[s]:
            t = G.transitions[i]
            if t.dst in on_path:
                continue
            w = vadd(v, t.effect)
            if any(a < 0 for a in w):
                continue
            on_path.add(t.dst)
            word.append(i)
            if dfs(t.dst, w):
                return True
            word.pop()
            on_path.discard(t.dst)
        return False

    if dfs(q.source.state, q.source.counters):
        return ReachAnswer(REACHABLE, Run(G, q.source, tuple(word)), f"simple paths, {explored} visited")
    return ReachAnswer(UNREACHABLE, None, f"all simple paths, {explored} visited")


def subset_sum_vass(values: Sequence[int]) -> Vass:
    """1-VASS q0 -> ... -> qn where step i either adds values[i] or nothing."""
    n = len(values)
    states = tuple(f"q{i}" for i in range(n + 1))
    trans = []
    for i, a in enumerate(values, 1):
        trans.append(Transition(f"q{i - 1}", (a,), f"q{i}"))
        trans.append(Transition(f"q{i - 1}", (0,), f"q{i}"))
    return Vass(1, states, tuple(trans))


def subset_sum_query(values: Sequence[int], s: int) -> ReachQuery:
    G = subset_sum_vass(values)
    return ReachQuery(G, Configuration("q0", (0,)), Configuration(f"q{len(values)}", (s,)))


# ---------------------------------------------------------------------------
# 3-VASS of geometric dimension 2 to 2-VASS


def normal_vector(G: Vass, basis=None) -> tuple[int, int, int]:
    if G.dim != 3:
        raise WrongDimension(f"expected a 3-VASS, got dimension {G.dim}")
    P = basis if basis is not None else cycle_space_basis(G)
    if P.rank != 2:
        raise WrongGdim(f"expected geometric dimension 2, got {P.rank}")
    n = cross3(*P.integer_basis)
    g = 0
    for a in n:
        g = gcd(g, a)
    n = tuple(a // g for a in n)
    if next(a for a in n if a) < 0:
        n = vneg(n)
    return n  # type: ignore[return-value]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def minimal_solutions(a: int, b: int, dval: int) -> set[tuple[int, int]]:
    """Nonnegative (x, y) with a x + b y >= dval used by the check gadgets."""
    if dval <= 0:
        return {(0, 0)}
    if a == 0:
        return {(0, _ceil_div(dval, b))}
    if b == 0:
        return {(_ceil_div(dval, a), 0)}
    return {(x, max(0, _ceil_div(dval - a * x, b))) for x in range(_ceil_div(dval, a) + 1)}


def _pad_to_plane(G: Vass, P) -> tuple[Vass, list[str]]:
    """Add isolated self-loops so that the cycle space becomes a plane."""
    if P.rank >= 2:
        return G, []
    extra = []
    basis = list(P.integer_basis)
    for i in range(G.dim):
        if len(basis) + len(extra) == 2:
            break
        e = tuple(1 if j == i else 0 for j in range(G.dim))
        if not in_span(e, span_basis(basis + extra, G.dim)):
            extra.append(e)
    pad = _Namer(G.states)("__pad")
    trans = G.transitions + tuple(Transition(pad, e, pad) for e in extra)
    return Vass(G.dim, G.states + (pad,), trans), [f"padded with loops {extra} on {pad}"]


def _forward_closure(start: str, succ) -> list[str]:
    seen = {start}
    order = [start]
    k = 0
    while k < len(order):
        for w in succ(order[k]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        k += 1
    return order


def reduce_3vass_to_2vass(q: ReachQuery) -> ReductionOutput:
    """Reduce 0-reachability in a 3-VASS of geometric dimension <= 2 to a 2-VASS.

    Every configuration w on a 0-run satisfies |<n, w>| <= B with n the
    normal of the cycle plane and B = 3 chi ||n||.  If n has one sign the
    coordinates it touches are bounded and move into the states.  Otherwise
    the value of <n, w> is tracked in the state and the dropped third
    coordinate is kept nonnegative by a two-step check after every move.
    """
    G = q.vass
    if G.dim != 3:
        raise WrongDimension(f"expected a 3-VASS, got dimension {G.dim}")
    if any(q.source.counters) or any(q.target.counters):
        raise ValueError("source and target counters must be zero; reduce to 0-reachability first")
    P = cycle_space_basis(G)
    if P.rank > 2:
        raise GdimTooHigh(f"geometric dimension {P.rank} > 2")
    Gp, notes = _pad_to_plane(G, P)
    n = normal_vector(Gp)
    B = 3 * characteristic(Gp) * norm(n)
    notes = notes + [f"normal {n}", f"B = {B}"]
    if all(a >= 0 for a in n) or all(a <= 0 for a in n):
        out = _fold_case(q, n if all(a >= 0 for a in n) else vneg(n), B)
        return ReductionOutput(out[0], out[1], out[2], "l -> l", out[3], tuple(notes + ["case 1"]))
    out = _check_case(q, n, B)
    return ReductionOutput(out[0], out[1], out[2], "l -> 3l", out[3], tuple(notes + ["case 2"]))


def _fold_case(q: ReachQuery, n, B: int):
    G = q.vass
    folded = [i for i in range(3) if n[i] != 0]
    kept = [i for i in range(3) if n[i] == 0]
    caps = {i: B // n[i] for i in folded}
    namer = _Namer(G.states)
    names: dict = {}

    def key_name(s: str, x: tuple) -> str:
        if (s, x) not in names:
            names[(s, x)] = namer(f"{s}__f_" + "_".join(map(str, x)))
        return names[(s, x)]

    def moves(node):
        s, x = node
        for i in G.out_edges[s]:
            t = G.transitions[i]
            y = tuple(a + t.effect[j] for a, j in zip(x, folded))
            if all(0 <= a <= caps[j] for a, j in zip(y, folded)):
                yield i, (t.dst, y)

    start = (q.source.state, (0,) * len(folded))
    nodes = _forward_closure(start, lambda nd: (m for _, m in moves(nd)))
    for nd in nodes:
        key_name(*nd)
    trans, origin = [], []
    width = 2
    for nd in nodes:
        for i, m in moves(nd):
            eff = tuple(G.transitions[i].effect[j] for j in kept)
            trans.append(Transition(names[nd], eff + (0,) * (width - len(eff)), names[m]))
            origin.append(i)
    goal = (q.target.state, (0,) * len(folded))
    states = [names[nd] for nd in nodes]
    if goal not in names:
        states.append(key_name(*goal))
    H = Vass(width, tuple(states), tuple(trans))
    return H, Configuration(names[start], (0, 0)), Configuration(names[goal], (0, 0)), tuple(origin)


def _check_case(q: ReachQuery, n, B: int):
    G = q.vass
    if sum(1 for a in n if a < 0) > 1:
        n = vneg(n)
    neg = next(i for i in range(3) if n[i] < 0)
    perm = [i for i in range(3) if i != neg] + [neg]
    a, b = n[perm[0]], n[perm[1]]
    namer = _Namer(G.states)
    names: dict = {}

    def name(key) -> str:
        if key not in names:
            kind, s, dv = key[:3]
            base = f"{s}__{'d' if kind == 'plain' else 'b'}{_int_tag(dv)}"
            if kind == "bullet":
                base += "__m" + "_".join(map(str, key[3]))
            names[key] = namer(base)
        return names[key]

    def proj(v):
        return (v[perm[0]], v[perm[1]])

    def moves(key):
        kind = key[0]
        if kind == "plain":
            _, s, dv = key
            for i in G.out_edges[s]:
                t = G.transitions[i]
                d2 = dv + dot(n, t.effect)
                if -B <= d2 <= B:
                    yield i, proj(t.effect), ("bar", t.dst, d2)
        elif kind == "bar":
            _, s, dv = key
            for m in sorted(minimal_solutions(a, b, dv)):
                yield None, (-m[0], -m[1]), ("bullet", s, dv, m)
        else:
            _, s, dv, m = key
            yield None, m, ("plain", s, dv)

    start = ("plain", q.source.state, 0)
    nodes = _forward_closure(start, lambda k: (m for _, _, m in moves(k)))
    for k in nodes:
        name(k)
    trans, origin = [], []
    for k in nodes:
        for i, eff, m in moves(k):
            trans.append(Transition(names[k], eff, names[m]))
            origin.append(i)
    goal = ("plain", q.target.state, 0)
    states = [names[k] for k in nodes]
    if goal not in names:
        states.append(name(goal))
    H = Vass(2, tuple(states), tuple(trans))
    return H, Configuration(names[start], (0, 0)), Configuration(names[goal], (0, 0)), tuple(origin)


# ---------------------------------------------------------------------------
# dispatcher


def length_bound(G: Vass, exp_const: int = 1) -> int:
    """chi^(c * traversal * d^4) with the hidden constant c supplied by the caller."""
    return characteristic(G) ** (exp_const * traversal_number(G) * G.dim**4)


def decide_reach(q: ReachQuery, budget: int = 64, exp_const: int = 1) -> ReachAnswer:
    """Dispatch on the geometric dimension.

    Dimension 0 is decided exactly.  Otherwise the 0-reachability instance
    is searched up to min(budget, bound); a miss is reported as unreachable
    only when the bound was not truncated and the dimension is at most 2.
    """
    P = cycle_space_basis(q.vass)
    if P.rank == 0:
        return decide_geo0(q, P)
    red = reduce_to_zero_reach(q)
    H = red.vass
    bound = length_bound(H, exp_const)
    max_len = min(budget, bound)
    ans = bounded_reach(red.query, max_len, complete=(P.rank <= 2 and bound <= budget))
    note = f"{ans.bound_used}; bound chi^(c*s*d^4) = {bound if bound < 10**12 else 'huge'} with c={exp_const}"
    if ans.verdict == REACHABLE:
        word = red.pull_back(ans.witness.word)
        run = Run(q.vass, q.source, word)
        assert execute(q.vass, q.source, word) is not None
        return ReachAnswer(REACHABLE, run, note)
    return ReachAnswer(ans.verdict, None, note)
