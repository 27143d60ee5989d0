"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .core import Transition, Vass
from .geodim import cycle_space_basis
from .linalg import norm, span_basis


@dataclass(frozen=True)
class GeneratorParams:
    dim: int
    num_states: int
    num_transitions: int
    max_norm: int
    seed: int
    target_gdim: int | None = None


def _states(n: int) -> tuple[str, ...]:
    return tuple(f"q{i}" for i in range(n))


def _vector(rng: random.Random, d: int, k: int) -> tuple[int, ...]:
    return tuple(rng.randint(-k, k) for _ in range(d))


def random_vass(rng: random.Random, dim: int, num_states: int, num_transitions: int, max_norm: int) -> Vass:
    qs = _states(num_states)
    trans = tuple(
        Transition(rng.choice(qs), _vector(rng, dim, max_norm), rng.choice(qs)) for _ in range(num_transitions)
    )
    return Vass(dim, qs, trans)


def random_strongly_connected(
    rng: random.Random, dim: int, num_states: int, extra: int, max_norm: int
) -> Vass:
    """A Hamiltonian cycle through a random permutation plus ``extra`` random transitions."""
    qs = _states(num_states)
    order = list(qs)
    rng.shuffle(order)
    trans = [Transition(order[i], _vector(rng, dim, max_norm), order[(i + 1) % num_states]) for i in range(num_states)]
    trans += [Transition(rng.choice(qs), _vector(rng, dim, max_norm), rng.choice(qs)) for _ in range(extra)]
    rng.shuffle(trans)
    return Vass(dim, qs, tuple(trans))


def random_subspace_basis(rng: random.Random, dim: int, g: int, entry: int = 1) -> list[tuple[int, ...]]:
    while True:
        basis = [_vector(rng, dim, entry) for _ in range(g)]
        if span_basis(basis, dim).rank == g:
            return basis


def vass_in_subspace(
    rng: random.Random,
    dim: int,
    num_states: int,
    num_transitions: int,
    max_norm: int,
    basis: list[tuple[int, ...]],
    coeff: int = 2,
) -> Vass:
    """Random VASS whose cycle space lies inside ``span(basis)``.

    Each effect is a potential difference phi(dst) - phi(src) plus a small
    combination of ``basis``; around a cycle the potentials cancel.
    """
    qs = _states(num_states)
    half = max_norm // 2
    phi = {q: tuple(rng.randint(0, half) for _ in range(dim)) for q in qs}
    combos = []
    for cs in product(range(-coeff, coeff + 1), repeat=len(basis)):
        v = tuple(sum(c * b[i] for c, b in zip(cs, basis)) for i in range(dim))
        combos.append(v)
    combos = sorted(set(combos))
    trans = []
    for _ in range(num_transitions):
        s, t = rng.choice(qs), rng.choice(qs)
        base = tuple(b - a for a, b in zip(phi[s], phi[t]))
        ok = [c for c in combos if norm(tuple(x + y for x, y in zip(base, c))) <= max_norm]
        u = rng.choice(ok)
        trans.append(Transition(s, tuple(x + y for x, y in zip(base, u)), t))
    return Vass(dim, qs, tuple(trans))


def random_vass_with_gdim(
    rng: random.Random,
    dim: int,
    num_states: int,
    num_transitions: int,
    max_norm: int,
    g: int,
    attempts: int = 2000,
) -> Vass:
    if g > dim:
        raise ValueError("geometric dimension cannot exceed the dimension")
    for _ in range(attempts):
        basis = random_subspace_basis(rng, dim, g) if g else []
        G = vass_in_subspace(rng, dim, num_states, num_transitions, max_norm, basis)
        if cycle_space_basis(G).rank == g:
            return G
    raise RuntimeError(f"no VASS with geometric dimension {g} found in {attempts} attempts")


def generate(params: GeneratorParams) -> Vass:
    rng = random.Random(params.seed)
    if params.target_gdim is None:
        return random_vass(rng, params.dim, params.num_states, params.num_transitions, params.max_norm)
    return random_vass_with_gdim(
        rng, params.dim, params.num_states, params.num_transitions, params.max_norm, params.target_gdim
    )
