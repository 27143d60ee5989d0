"""Beams, plane cones, sequential cones and rotation predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import planar
from .errors import DimensionMismatch, NotStrictRotation, PlaneMismatch, TooLarge, VectorOutsidePlane, ZeroDirection
from .linalg import feasible, in_span, is_zero, norm, primitive, rref
from .projection import SrpWitness

SEQCONE_ORACLE_MAX = 6


# ---------------------------------------------------------------------------
# beams


@dataclass(frozen=True)
class Beam:
    """``{u in N^d : ||u - a v|| <= W for some a >= 0}``."""

    direction: tuple[int, ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(self.direction))
        if self.width < 0:
            raise ValueError("beam width must be nonnegative")
        if any(a < 0 for a in self.direction):
            raise ValueError("beam direction must be nonnegative")

    def is_a_beam(self, A: int) -> bool:
        return norm(self.direction) <= A and self.width <= A

    def __contains__(self, u) -> bool:
        return all(a >= 0 for a in u) and in_beam(u, self.direction, self.width)


def alpha_interval(u: Sequence[int], v: Sequence[int], W: int, allow_negative_alpha: bool = False):
    """Closed interval of alpha with ||u - alpha v|| <= W, or None if empty.

    ``None`` bounds mean unbounded on that side.
    """
    if len(u) != len(v):
        raise DimensionMismatch("u and v differ in length")
    lo: Fraction | None = None if allow_negative_alpha else Fraction(0)
    hi: Fraction | None = None
    for a, b in zip(u, v):
        if b == 0:
            if abs(a) > W:
                return None
            continue
        x, y = Fraction(a - W, b), Fraction(a + W, b)
        if x > y:
            x, y = y, x
        lo = x if lo is None else max(lo, x)
        hi = y if hi is None else min(hi, y)
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def in_beam(u: Sequence[int], v: Sequence[int], W: int, allow_negative_alpha: bool = False) -> bool:
    return alpha_interval(u, v, W, allow_negative_alpha) is not None


def split_generalized_beam(v: Sequence[int], W: int) -> tuple[Beam, Beam]:
    """Two ordinary beams covering the points of N^d in the generalized beam of ``v``."""
    plus = tuple(max(a, 0) for a in v)
    minus = tuple(max(-a, 0) for a in v)
    return Beam(plus, W), Beam(minus, W)


def min_ray_distance(u: Sequence[int], v: Sequence[int]) -> Fraction:
    """Exact ``min over rational alpha of ||u - alpha v||``, by breakpoint enumeration."""
    if is_zero(v):
        raise ZeroDirection("direction must be non-zero")
    pairs = list(zip(u, v))
    cands: set[Fraction] = set()
    for a, b in pairs:
        if b:
            cands.add(Fraction(a, b))
    for (a, b), (c, e) in combinations(pairs, 2):
        # a - t b = c - t e   and   a - t b = -(c - t e)
        if b != e:
            cands.add(Fraction(a - c, b - e))
        if b + e != 0:
            cands.add(Fraction(a + c, b + e))
    return min(max(abs(a - t * b) for a, b in pairs) for t in cands)


def min_dist_2d(u: Sequence[int], v: Sequence[int]) -> Fraction:
    """Closed form for semipositive 2-vectors."""
    return Fraction(abs(v[0] * u[1] - u[0] * v[1]), v[0] + v[1])


# ---------------------------------------------------------------------------
# cones in a plane


@dataclass(frozen=True)
class Cone2:
    """A cone inside the plane of ``witness``, kept in I-coordinates.

    ``coords`` are the canonical 2D generators (see ``planar.canonical``),
    ``generators`` their lifts to the plane, ``normals`` the inward normals.
    """

    kind: str
    coords: tuple[tuple[int, int], ...]
    normals: tuple[tuple[int, int], ...]
    generators: tuple[tuple, ...]
    witness: SrpWitness

    @property
    def plane(self):
        return self.witness.plane

    @property
    def nontrivial(self) -> bool:
        return self.kind in planar.NONTRIVIAL

    def __contains__(self, w) -> bool:
        if not in_span(w, self.plane):
            return False
        return planar.contains(self.normals, self.witness.project(w))


def _lift(g, witness: SrpWitness, pool: Sequence[Sequence]) -> tuple:
    for v in pool:
        x = witness.project(v)
        if planar.cross(x, g) == 0 and planar.dot2(x, g) > 0:
            return tuple(v)
    return primitive(witness.lift(g))


def make_cone(gens2d, witness: SrpWitness, pool: Sequence[Sequence] = ()) -> Cone2:
    kind, coords, normals = planar.canonical(gens2d)
    pool = list(pool) + [witness.canonical_h, witness.canonical_v]
    lifted = tuple(_lift(g, witness, pool) for g in coords)
    return Cone2(kind, coords, normals, lifted, witness)


def cone_from_normals(normals, witness: SrpWitness, pool: Sequence[Sequence] = ()) -> Cone2:
    return make_cone(planar.h_to_g(normals), witness, pool)


def _check_in_plane(vectors, witness: SrpWitness) -> None:
    for v in vectors:
        if len(v) != witness.plane.dim_ambient or not in_span(v, witness.plane):
            raise VectorOutsidePlane(f"{tuple(v)} is not in the plane")


def seqcone(vectors: Sequence[Sequence[int]], witness: SrpWitness) -> Cone2:
    """SeqCone of ``vectors`` as a cone with at most two lifted generators.

    Built incrementally in I-coordinates: add the next vector's ray, then cut
    back to the nonnegative quadrant, which by sign reflection is the image
    of the nonnegative part of the plane.
    """
    _check_in_plane(vectors, witness)
    quadrant = [(1, 0), (0, 1)]
    coords: tuple = ()
    for v in vectors:
        _, _, normals = planar.canonical(list(coords) + [witness.project(v)])
        _, coords, _ = planar.from_normals(list(normals) + quadrant)
    return make_cone(coords, witness, vectors)


def seqcone_member_oracle(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Is ``target`` a nonnegative combination with all prefix sums nonnegative?"""
    k = len(vectors)
    if k > SEQCONE_ORACLE_MAX:
        raise TooLarge(f"oracle handles at most {SEQCONE_ORACLE_MAX} vectors")
    d = len(target)
    if any(a < 0 for a in target):
        return False
    # equality system: sum_j a_j v_j(i) = target(i)
    aug = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(d)]
    rows, pivots = rref(aug, k + 1)
    if k in pivots:
        return False
    free = [j for j in range(k) if j not in pivots]
    # a_p = rhs - sum_f row[f] a_f for each pivot p
    expr: dict[int, tuple[list[Fraction], Fraction]] = {}
    for r, p in zip(rows, pivots):
        expr[p] = ([-r[f] for f in free], r[k])
    for f_idx, f in enumerate(free):
        unit = [Fraction(0)] * len(free)
        unit[f_idx] = Fraction(1)
        expr[f] = (unit, Fraction(0))
    cons = []

    def geq_zero(lin: list[Fraction], const: Fraction) -> None:
        # lin . x + const >= 0   <=>   -lin . x <= const
        cons.append(([-c for c in lin], const))

    for j in range(k):
        geq_zero(*expr[j])
    for i in range(d):
        lin = [Fraction(0)] * len(free)
        const = Fraction(0)
        for j in range(k):
            c = vectors[j][i]
            if c:
                ej, cj = expr[j]
                lin = [x + c * y for x, y in zip(lin, ej)]
                const += c * cj
            if j < k - 1:
                geq_zero(list(lin), const)
    if not free:
        return all(const >= 0 for _, const in cons)
    return feasible(cons, len(free))


# ---------------------------------------------------------------------------
# rotation


def rot_strict(a: Sequence, b: Sequence) -> bool:
    """``a`` turns right strictly to ``b``: <b, a^R> > 0 with a^R = (a2, -a1)."""
    return b[0] * a[1] - b[1] * a[0] > 0


def rot_weak(a: Sequence, b: Sequence) -> bool:
    return b[0] * a[1] - b[1] * a[0] >= 0


def rot_membership(u: Sequence, v: Sequence, w: Sequence, witness: SrpWitness) -> bool:
    """Is ``w`` in Cone{u, v}?  Decided by rotation signs on I-projections.

    The pair is put in clockwise order first, so either orientation of
    ``u``, ``v`` is accepted.
    """
    _check_in_plane([u, v, w], witness)
    pu, pv, pw = witness.project(u), witness.project(v), witness.project(w)
    if not rot_strict(pu, pv):
        if rot_strict(pv, pu):
            pu, pv = pv, pu
        else:
            raise NotStrictRotation("u and v are collinear")
    return rot_weak(pu, pw) and rot_weak(pw, pv)


def cone_intersect(c1: Cone2, c2: Cone2) -> Cone2:
    if c1.plane != c2.plane or c1.witness.indices != c2.witness.indices:
        raise PlaneMismatch("cones live in different planes")
    pool = list(c1.generators) + list(c2.generators)
    return cone_from_normals(list(c1.normals) + list(c2.normals), c1.witness, pool)


def cone_sum(c1: Cone2, c2: Cone2) -> Cone2:
    if c1.plane != c2.plane or c1.witness.indices != c2.witness.indices:
        raise PlaneMismatch("cones live in different planes")
    pool = list(c1.generators) + list(c2.generators)
    return make_cone(list(c1.coords) + list(c2.coords), c1.witness, pool)
