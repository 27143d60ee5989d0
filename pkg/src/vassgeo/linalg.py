"""Exact rational linear algebra over Q^d.

Vectors are plain tuples of ``int`` or ``Fraction``.  Subspaces are kept in
reduced row-echelon form, so two equal subspaces compare equal.  The small
linear programs needed elsewhere are solved by Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[int | Fraction, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v, strict=True)), 0)


def norm(u: Sequence):
    """Maximum norm; 0 for the empty vector."""
    return max((abs(a) for a in u), default=0)


def supp(u: Sequence) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(u) if a != 0)


def zero(d: int) -> tuple[int, ...]:
    return (0,) * d


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def primitive(u: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(a) for a in u]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def cross3(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


# ---------------------------------------------------------------------------
# row echelon


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form of ``rows``; zero rows are dropped."""
    m = [[Fraction(a) for a in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^d stored by its RREF basis."""

    dim_ambient: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(b) if a != 0) for b in self.basis)

    @cached_property
    def integer_basis(self) -> tuple[tuple[int, ...], ...]:
        """Each RREF row scaled to a primitive integer vector."""
        return tuple(primitive(b) for b in self.basis)

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(i for b in self.basis for i, a in enumerate(b) if a != 0)

    def __contains__(self, v) -> bool:
        return in_span(v, self)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(a) for a in b) + ")" for b in self.basis)
        return f"Subspace(d={self.dim_ambient}, [{rows}])"


def zero_subspace(d: int) -> Subspace:
    return Subspace(d, ())


def span_basis(vectors: Iterable[Sequence], dim: int | None = None) -> Subspace:
    """Canonical (RREF) basis of the span of ``vectors``.

    ``dim`` is required when ``vectors`` may be empty.
    """
    vecs = [tuple(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise ValueError("span_basis of no vectors needs an explicit dim")
        dim = len(vecs[0])
    for v in vecs:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {dim}")
    rows, _ = rref(vecs, dim)
    return Subspace(dim, tuple(tuple(r) for r in rows))


def join(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("join of no subspaces")
    d = spaces[0].dim_ambient
    return span_basis((b for s in spaces for b in s.basis), d)


def _check_dim(v: Sequence, S: Subspace) -> None:
    if len(v) != S.dim_ambient:
        raise DimensionMismatch(f"vector of length {len(v)} vs subspace in Q^{S.dim_ambient}")


def residue(v: Sequence, S: Subspace) -> tuple[Fraction, ...]:
    """Canonical representative of ``v + S``: zero at every pivot column."""
    _check_dim(v, S)
    r = [Fraction(a) for a in v]
    for p, b in zip(S.pivots, S.basis):
        c = r[p]
        if c:
            r = [x - c * y for x, y in zip(r, b)]
    return tuple(r)


def coordinates(v: Sequence, S: Subspace) -> tuple[Fraction, ...] | None:
    """Coefficients of ``v`` in the RREF basis of ``S``, or None if v is not in S."""
    _check_dim(v, S)
    coeffs = tuple(Fraction(v[p]) for p in S.pivots)
    if all(a == 0 for a in residue(v, S)):
        return coeffs
    return None


def in_span(v: Sequence, S: Subspace) -> bool:
    return coordinates(v, S) is not None


def combine(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> tuple:
    out = [Fraction(0)] * dim
    for c, b in zip(coeffs, vectors, strict=True):
        if c:
            for i, a in enumerate(b):
                out[i] += c * a
    return tuple(out)


def solve2(a: Sequence, b: Sequence, w: Sequence) -> tuple[Fraction, Fraction]:
    """Solve ``w = x*a + y*b`` for 2-vectors with ``a``, ``b`` independent."""
    det = a[0] * b[1] - a[1] * b[0]
    if det == 0:
        raise ValueError("dependent 2-vectors")
    x = Fraction(w[0] * b[1] - w[1] * b[0], 1) / det
    y = Fraction(a[0] * w[1] - a[1] * w[0], 1) / det
    return x, y


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
#
# A constraint (c, b) stands for  sum_i c[i] * x[i] <= b.  Internally the
# coefficient part is a primitive integer vector and b a Fraction, which makes
# duplicate detection exact.


def _canon(coeffs: Sequence, rhs) -> tuple[tuple[int, ...], Fraction]:
    fr = [Fraction(a) for a in coeffs]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints), Fraction(rhs) * den
    return tuple(a // g for a in ints), Fraction(rhs) * den / g


class Infeasible(Exception):
    pass


def _insert(table: dict, coeffs: tuple[int, ...], rhs: Fraction, hist: frozenset) -> None:
    if not any(coeffs):
        if rhs < 0:
            raise Infeasible
        return
    old = table.get(coeffs)
    if old is None or rhs < old[0] or (rhs == old[0] and len(hist) < len(old[1])):
        table[coeffs] = (rhs, hist)


def fourier_motzkin(
    constraints: Iterable[tuple[Sequence, object]], eliminate: Sequence[int]
) -> list[tuple[tuple[int, ...], Fraction]] | None:
    """Project a system of inequalities by eliminating the given variables.

    Returns the projected system (eliminated columns are zero), or None when
    the system is infeasible.  Chernikov's rule discards combinations whose
    derivation history exceeds ``steps + 1`` original rows.
    """
    table: dict = {}
    try:
        for i, (c, b) in enumerate(constraints):
            cc, bb = _canon(c, b)
            _insert(table, cc, bb, frozenset((i,)))
        for step, k in enumerate(eliminate, 1):
            pos, neg, new = [], [], {}
            for cc, (bb, h) in table.items():
                if cc[k] > 0:
                    pos.append((cc, bb, h))
                elif cc[k] < 0:
                    neg.append((cc, bb, h))
                else:
                    new[cc] = (bb, h)
            for cp, bp, hp in pos:
                for cn, bn, hn in neg:
                    h = hp | hn
                    if len(h) > step + 1:
                        continue
                    fp, fn = -cn[k], cp[k]
                    coeffs = tuple(fp * x + fn * y for x, y in zip(cp, cn))
                    cc, bb = _canon(coeffs, fp * bp + fn * bn)
                    _insert(new, cc, bb, h)
            table = new
    except Infeasible:
        return None
    return [(cc, bb) for cc, (bb, _) in table.items()]


def feasible(constraints: Iterable[tuple[Sequence, object]], nvars: int) -> bool:
    return fourier_motzkin(constraints, range(nvars)) is not None


def chebyshev_distance_to_span(v: Sequence, S: Subspace) -> Fraction:
    """Exact ``min_{c in S} ||v - c||_inf``.

    Solved as the LP  minimize t  s.t.  -t <= v(i) - sum_j l_j b_j(i) <= t,
    eliminating the multipliers l_j by Fourier-Motzkin.
    """
    _check_dim(v, S)
    r = residue(v, S)
    if S.rank == 0:
        return Fraction(norm(r))
    if all(a == 0 for a in r):
        return Fraction(0)
    basis = S.integer_basis
    k = S.rank
    cons = []
    for i in range(S.dim_ambient):
        col = [b[i] for b in basis]
        # v(i) - sum l b(i) - t <= 0   and   -v(i) + sum l b(i) - t <= 0
        cons.append(([-x for x in col] + [-1], -r[i]))
        cons.append((col + [-1], r[i]))
    cons.append(([0] * k + [-1], 0))
    rows = fourier_motzkin(cons, range(k))
    assert rows is not None, "Chebyshev LP is always feasible"
    best = Fraction(0)
    for cc, bb in rows:
        ct = cc[k]
        if ct < 0:
            best = max(best, bb / ct)
    return best
