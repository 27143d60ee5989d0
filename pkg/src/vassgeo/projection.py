"""Sign-reflecting projections, canonical vectors, properness, support projection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from . import planar
from .core import IntVector, Transition, Vass, characteristic
from .errors import BadIndices, DependentBasis, NotSignReflecting, TooLarge
from .geodim import cycle_space_basis
from .linalg import Subspace, norm, span_basis, vscale, vsub

SUPPORT_PROJECTION_MAX_STATES = 200_000


@dataclass(frozen=True)
class Orthant:
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("orthant signs must be +1 or -1")

    @classmethod
    def nonneg(cls, d: int) -> "Orthant":
        return cls((1,) * d)

    @property
    def dim(self) -> int:
        return len(self.signs)

    def __contains__(self, v) -> bool:
        return all(a * s >= 0 for a, s in zip(v, self.signs, strict=True))


@dataclass(frozen=True)
class SrpWitness:
    """A verified sign-reflecting index pair for a plane, with canonical vectors.

    Indices are 0-based.  ``N`` is the max norm of the basis the canonical
    vectors were derived from.
    """

    indices: tuple[int, int]
    canonical_h: IntVector
    canonical_v: IntVector
    plane: Subspace
    orthant: Orthant
    N: int

    @property
    def i1(self) -> int:
        return self.indices[0]

    @property
    def i2(self) -> int:
        return self.indices[1]

    def project(self, v: Sequence) -> tuple:
        return (v[self.i1], v[self.i2])

    def lift(self, x: Sequence) -> tuple:
        """The unique vector of the plane whose I-projection is ``x``."""
        u1, u2 = self.canonical_h, self.canonical_v
        a = Fraction(x[0]) / u1[self.i1]
        b = Fraction(x[1]) / u2[self.i2]
        return tuple(a * p + b * q for p, q in zip(u1, u2))


def _check_indices(I: Sequence[int], d: int) -> tuple[int, int]:
    I = tuple(I)
    if len(I) != 2 or I[0] == I[1] or not all(0 <= i < d for i in I):
        raise BadIndices(f"need two distinct indices in [0, {d}), got {I}")
    return I  # type: ignore[return-value]


def coefficient_normals(basis: Sequence[Sequence], signs: Sequence[int], rows: Sequence[int]) -> list[tuple]:
    """Normals in coefficient space of ``{lam : signs[i] * (lam . basis)(i) >= 0, i in rows}``.

    Rank-1 bases are embedded in Q^2 with the second coefficient pinned to 0.
    """
    if len(basis) == 1:
        out = [(signs[i] * basis[0][i], 0) for i in rows]
        return out + [(0, 1), (0, -1)]
    return [(signs[i] * basis[0][i], signs[i] * basis[1][i]) for i in rows]


def basis_combination(basis: Sequence[Sequence], lam: Sequence) -> tuple:
    if len(basis) == 1:
        return vscale(lam[0], basis[0])
    return tuple(lam[0] * a + lam[1] * b for a, b in zip(basis[0], basis[1]))


def verify_srp(P: Subspace, Z: Orthant, I: Sequence[int]) -> bool:
    """Decide whether ``v|_I in Z|_I`` implies ``v in Z`` for every ``v`` in ``P``."""
    I = _check_indices(I, P.dim_ambient)
    if P.rank > 2:
        raise ValueError("verify_srp handles subspaces of rank at most 2")
    if P.rank == 0:
        return True
    basis = P.integer_basis
    gens = planar.h_to_g(coefficient_normals(basis, Z.signs, I))
    return all(basis_combination(basis, g) in Z for g in gens)


def cone_dimension(P: Subspace, Z: Orthant) -> int:
    """Dimension of ``P`` intersected with ``Z`` (0, 1 or 2); ``P`` of rank at most 2."""
    if P.rank == 0:
        return 0
    if P.rank > 2:
        raise ValueError("rank at most 2 expected")
    basis = P.integer_basis
    kind, _, _ = planar.from_normals(coefficient_normals(basis, Z.signs, range(P.dim_ambient)))
    if kind == planar.POINT:
        return 0
    if kind in (planar.RAY, planar.LINE):
        return 1
    return 2


def canonical_vectors(
    v1: Sequence[int], v2: Sequence[int], I: Sequence[int], Z: Orthant | None = None
) -> tuple[IntVector, IntVector]:
    """Canonical horizontal and vertical vectors derived from ``v1``, ``v2``."""
    v1, v2 = tuple(v1), tuple(v2)
    d = len(v1)
    Z = Z or Orthant.nonneg(d)
    i1, i2 = _check_indices(I, d)
    P = span_basis([v1, v2], d)
    if P.rank != 2:
        raise DependentBasis("v1 and v2 are linearly dependent")
    if not verify_srp(P, Z, (i1, i2)):
        raise NotSignReflecting(f"indices {(i1, i2)} are not sign-reflecting")
    if v1[i1] == 0 or v2[i2] == 0:
        v1, v2 = v2, v1
    h = vsub(vscale(v2[i2], v1), vscale(v1[i2], v2))
    v = vsub(vscale(v1[i1], v2), vscale(v2[i1], v1))
    # the I-minor is non-zero because the projection is injective on P
    if Z.signs[i1] * h[i1] < 0:
        h = vscale(-1, h)
    if Z.signs[i2] * v[i2] < 0:
        v = vscale(-1, v)
    g = 0
    for a in h + v:
        g = gcd(g, a)
    return tuple(a // g for a in h), tuple(a // g for a in v)


def find_srp(P: Subspace, Z: Orthant | None = None) -> SrpWitness | None:
    """First sign-reflecting index pair (lexicographic), with canonical vectors."""
    if P.rank != 2:
        raise ValueError("find_srp expects a plane")
    Z = Z or Orthant.nonneg(P.dim_ambient)
    if cone_dimension(P, Z) < 2:
        return None
    v1, v2 = P.integer_basis
    for I in combinations(range(P.dim_ambient), 2):
        if verify_srp(P, Z, I):
            u1, u2 = canonical_vectors(v1, v2, I, Z)
            return SrpWitness(I, u1, u2, P, Z, max(norm(v1), norm(v2)))
    return None


def is_proper(G: Vass, basis: Subspace | None = None) -> bool:
    """Does Cyc(G) meet the nonnegative orthant in two independent vectors?"""
    P = basis if basis is not None else cycle_space_basis(G)
    if P.rank < 2:
        return False
    if P.rank > 2:
        raise ValueError("is_proper is defined for geometric dimension at most 2")
    return cone_dimension(P, Orthant.nonneg(G.dim)) == 2


# ---------------------------------------------------------------------------
# support projection


def _fresh_name(q: str, v: Sequence[int], taken: set[str]) -> str:
    if not v:
        return q
    name = f"{q}__v_" + "_".join(str(a) for a in v)
    while name in taken:
        name += "_"
    return name


@dataclass(frozen=True)
class SupportProjection:
    vass: Vass
    support: tuple[int, ...]
    decode: dict[str, tuple[str, IntVector]]
    encode: dict[tuple[str, IntVector], str]


def support_projection(G: Vass, prune: bool = True, max_states: int = SUPPORT_PROJECTION_MAX_STATES) -> SupportProjection:
    """Fold the counters outside supp(Cyc(G)) into the control states.

    States are pairs (q, v) with v in N^{S-bar}, ||v|| <= 2 chi(G).  With
    ``prune`` only pairs reachable in the state graph from some
    (q, chi(G) * 1) are kept; otherwise the full product is built.
    """
    P = cycle_space_basis(G)
    S = tuple(sorted(P.support))
    Sbar = tuple(i for i in range(G.dim) if i not in P.support)
    chi = characteristic(G)
    cap = 2 * chi
    if not prune and len(G.states) * (cap + 1) ** len(Sbar) > max_states:
        raise TooLarge("support projection exceeds the state cap")

    def step(v: IntVector, t: Transition) -> IntVector | None:
        w = tuple(a + t.effect[i] for a, i in zip(v, Sbar))
        if all(0 <= a <= cap for a in w):
            return w
        return None

    if prune:
        seed = (chi,) * len(Sbar)
        order: list[tuple[str, IntVector]] = [(q, seed) for q in G.states]
        seen = set(order)
        k = 0
        while k < len(order):
            q, v = order[k]
            k += 1
            for i in G.out_edges[q]:
                t = G.transitions[i]
                w = step(v, t)
                if w is not None and (t.dst, w) not in seen:
                    if len(seen) >= max_states:
                        raise TooLarge("support projection exceeds the state cap")
                    seen.add((t.dst, w))
                    order.append((t.dst, w))
        pairs = sorted(seen, key=lambda qv: (G.index[qv[0]], qv[1]))
    else:
        pairs = [(q, v) for q in G.states for v in product(range(cap + 1), repeat=len(Sbar))]

    taken = set(G.states)
    encode: dict[tuple[str, IntVector], str] = {}
    for q, v in pairs:
        name = _fresh_name(q, v, taken)
        taken.add(name)
        encode[(q, v)] = name
    trans = []
    for q, v in pairs:
        for i in G.out_edges[q]:
            t = G.transitions[i]
            w = step(v, t)
            if w is not None and (t.dst, w) in encode:
                trans.append(Transition(encode[(q, v)], tuple(t.effect[j] for j in S), encode[(t.dst, w)]))
    states = tuple(encode[p] for p in pairs)
    decode = {name: qv for qv, name in encode.items()}
    return SupportProjection(Vass(len(S), states, tuple(trans)), S, decode, encode)
