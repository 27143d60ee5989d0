"""Polyhedral cones in Q^2.

A cone is described either by generators (V-form) or by inward normals
(H-form, ``{x : <n, x> >= 0}``).  In the plane both conversions are a
filter over a handful of candidate directions, so everything here is exact
and small.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import primitive

Vec2 = tuple[int, int]

POINT, RAY, LINE, SALIENT, HALFPLANE, PLANE = "point", "ray", "line", "salient", "halfplane", "plane"
KINDS = (POINT, RAY, LINE, SALIENT, HALFPLANE, PLANE)
NONTRIVIAL = frozenset({SALIENT, HALFPLANE, PLANE})

_AXES: tuple[Vec2, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


def cross(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def dot2(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1]


def perp(a: Sequence) -> Vec2:
    """Counter-clockwise quarter turn."""
    return (-a[1], a[0])


def _clean(vectors: Iterable[Sequence]) -> list[Vec2]:
    out: list[Vec2] = []
    for v in vectors:
        if v[0] == 0 and v[1] == 0:
            continue
        p = primitive(v)
        if p not in out:
            out.append(p)
    return out


def h_to_g(normals: Iterable[Sequence]) -> list[Vec2]:
    """Generators of ``{x : <n, x> >= 0 for all n}``; empty for the point cone."""
    ns = _clean(normals)
    if not ns:
        return list(_AXES)
    cands: list[Vec2] = []
    for n in ns:
        cands += [perp(n), (n[1], -n[0]), n]
    return [c for c in _clean(cands) if all(dot2(n, c) >= 0 for n in ns)]


def _angle_key(v: Sequence):
    """Sort key for the polar angle in [0, 2pi), exact."""
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # within a half-plane, order by the cotangent-like ratio
    if half == 0:
        return (0, Fraction(-x, 1) / (abs(x) + abs(y)) if x or y else 0)
    return (1, Fraction(x, 1) / (abs(x) + abs(y)))


def sort_by_angle(vectors: Iterable[Sequence]) -> list[Vec2]:
    return sorted((tuple(v) for v in vectors), key=lambda v: (_angle_key(v), v))


def canonical(gens: Iterable[Sequence]) -> tuple[str, tuple[Vec2, ...], tuple[Vec2, ...]]:
    """Classify ``Cone(gens)``; return (kind, minimal generators, minimal normals).

    Generator conventions per kind:
      point: ();  ray: (g,);  line: (g, -g) with g the angle-first direction;
      salient: (a, b) with cross(a, b) > 0;  halfplane: (b, -b, n) with n the
      normal and b = perp(n) turned clockwise;  plane: the four axis directions.
    """
    gs = _clean(gens)
    if not gs:
        return POINT, (), tuple(_AXES)
    rank2 = any(cross(gs[0], g) != 0 for g in gs[1:])
    if not rank2:
        g = gs[0]
        neg = (-g[0], -g[1])
        if neg in gs:
            a, b = sort_by_angle([g, neg])
            return LINE, (a, b), _line_normals(g)
        return RAY, (g,), tuple(sort_by_angle(h_to_g([g])))
    dual = _clean(h_to_g(gs))
    if not dual:
        return PLANE, tuple(_AXES), ()
    dual_rank2 = any(cross(dual[0], n) != 0 for n in dual[1:])
    if not dual_rank2:
        n = dual[0]
        b = (n[1], -n[0])
        return HALFPLANE, (b, (-b[0], -b[1]), n), (n,)
    lo = next(a for a in gs if all(cross(a, g) >= 0 for g in gs))
    hi = next(b for b in gs if all(cross(g, b) >= 0 for g in gs))
    n_lo = next(n for n in dual if all(cross(n, m) >= 0 for m in dual))
    n_hi = next(n for n in dual if all(cross(m, n) >= 0 for m in dual))
    return SALIENT, (lo, hi), (n_lo, n_hi)


def _line_normals(g: Sequence) -> tuple[Vec2, ...]:
    p = perp(g)
    return tuple(sort_by_angle([p, (-p[0], -p[1])]))


def from_normals(normals: Iterable[Sequence]):
    return canonical(h_to_g(normals))


def contains(normals: Sequence[Sequence], x: Sequence) -> bool:
    return all(dot2(n, x) >= 0 for n in normals)
