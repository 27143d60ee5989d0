"""Shared builders for tests."""

from __future__ import annotations

import random

from vassgeo.certify import SeqEnabledCertificate, ThickCertificate
from vassgeo.core import Configuration, Run, Transition, Vass
from vassgeo.linalg import span_basis


def vass(dim, edges, states=None):
    """``edges`` is a list of (src, effect, dst)."""
    if states is None:
        seen = []
        for s, _, t in edges:
            for x in (s, t):
                if x not in seen:
                    seen.append(x)
        states = seen or ["p"]
    return Vass(dim, tuple(states), tuple(Transition(s, tuple(a), t) for s, a, t in edges))


def loops(dim, effects, state="p"):
    return vass(dim, [(state, e, state) for e in effects], [state])


def rand_vass(rng: random.Random, dim, max_states, max_trans, max_norm, min_states=1):
    n = rng.randint(min_states, max_states)
    qs = [f"q{i}" for i in range(n)]
    edges = [
        (rng.choice(qs), tuple(rng.randint(-max_norm, max_norm) for _ in range(dim)), rng.choice(qs))
        for _ in range(rng.randint(0, max_trans))
    ]
    return vass(dim, edges, qs)


def rand_strongly_connected(rng: random.Random, dim, max_states, extra, max_norm):
    n = rng.randint(2, max_states)
    qs = [f"q{i}" for i in range(n)]
    order = qs[:]
    rng.shuffle(order)
    vec = lambda: tuple(rng.randint(-max_norm, max_norm) for _ in range(dim))  # noqa: E731
    edges = [(order[i], vec(), order[(i + 1) % n]) for i in range(n)]
    edges += [(rng.choice(qs), vec(), rng.choice(qs)) for _ in range(rng.randint(0, extra))]
    return vass(dim, edges, qs)


def rand_proper_plane(rng: random.Random, d, entry=3):
    """A random rank-2 subspace meeting the nonnegative orthant in a 2D cone."""
    while True:
        a = tuple(rng.randint(0, entry) for _ in range(d))
        b = tuple(rng.randint(0, entry) for _ in range(d))
        if span_basis([a, b], d).rank != 2:
            continue
        # mix so the stored basis is not itself nonnegative
        s, t = rng.randint(-2, 2), rng.randint(-2, 2)
        if s * t == 1:
            continue
        v1 = tuple(x + s * y for x, y in zip(a, b))
        v2 = tuple(t * x + y for x, y in zip(a, b))
        if span_basis([v1, v2], d).rank == 2:
            return span_basis([v1, v2], d)


# thick fixture: one state, eight self-loops
THICK_EFFECTS = [(1, 1), (1, 2), (2, 1), (-1, -1), (-1, -2), (-2, -1), (1, 0), (-1, 0)]
THICK_WORD = (0, 0, 1, 2, 5, 4, 3, 3)


def thick_vass():
    return loops(2, THICK_EFFECTS)


def thick_run():
    G = thick_vass()
    return Run(G, Configuration("p", (0, 0)), THICK_WORD)


def thick_cert(A=3, split=4, fs=(0, 0, 2, 3), fc=([0], [0], [1], [2]), bs=(0, 0, 2, 3), bc=([3], [3], [4], [5])):
    return ThickCertificate(split, SeqEnabledCertificate(fs, fc, A), SeqEnabledCertificate(bs, bc, A), A)
