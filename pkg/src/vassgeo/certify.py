"""Checkers for thin and thick run certificates.

Nothing geometric is taken from a certificate on trust: effects, cones and
enabledness are recomputed from the VASS and the run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import planar
from .core import Configuration, Run, Vass, characteristic, check_path, effect, execute, reverse
from .errors import GdimTooHigh, NotAPath, NotDegenerate, NotProper, NotZeroRun, PlaneMismatch, StateMismatch
from .geodim import cycle_space_basis
from .geom import Beam, cone_intersect, in_beam, seqcone, split_generalized_beam
from .linalg import Subspace, norm, primitive, zero
from .projection import Orthant, SrpWitness, basis_combination, coefficient_normals, cone_dimension, find_srp

# ---------------------------------------------------------------------------
# enabledness


def _prefix_minima(G: Vass, path: Sequence[int]) -> tuple[int, ...]:
    cur = zero(G.dim)
    low = list(cur)
    for i in path:
        cur = tuple(a + b for a, b in zip(cur, G.transitions[i].effect))
        low = [min(x, y) for x, y in zip(low, cur)]
    return tuple(low)


def _check_start(G: Vass, path: Sequence[int], c: Configuration) -> None:
    check_path(G, path)
    if path and G.transitions[path[0]].src != c.state:
        raise StateMismatch(f"path starts at {G.transitions[path[0]].src}, configuration is at {c.state}")


def is_enabled(G: Vass, path: Sequence[int], c: Configuration) -> bool:
    _check_start(G, path, c)
    return execute(G, c, path) is not None


def s_enabled(G: Vass, path: Sequence[int], c: Configuration, S) -> bool:
    """Enabled after padding the coordinates outside ``S`` by any amount.

    Padding can be made as large as needed, so only the coordinates in ``S``
    constrain: each needs ``c(i) + (minimum prefix effect)(i) >= 0``.
    """
    _check_start(G, path, c)
    low = _prefix_minima(G, path)
    return all(c.counters[i] + low[i] >= 0 for i in S)


# ---------------------------------------------------------------------------
# thin runs


@dataclass(frozen=True)
class ThinCertificate:
    A: int
    beams: tuple[Beam, ...]

    def __post_init__(self):
        object.__setattr__(self, "beams", tuple(self.beams))


def covered(v: Sequence[int], beams: Sequence[Beam]) -> bool:
    return any(in_beam(v, b.direction, b.width) for b in beams)


def check_thin(run: Run, cert: ThinCertificate) -> bool:
    if not all(b.is_a_beam(cert.A) for b in cert.beams):
        return False
    seq = execute(run.vass, run.start, run.word)
    if seq is None:
        return False
    return all(covered(c.counters, cert.beams) for c in seq)


@dataclass(frozen=True)
class DegenerateResult:
    case: str  # "i", "ii" or "iii"
    certificate: ThinCertificate
    generator: tuple[int, ...] | None = None


def bound_zero_cone(d: int, chi: int) -> int:
    return 2 * ((d + 6) * chi + 1) ** d * chi + chi


def bound_ray_cone(d: int, nstates: int, tnorm: int) -> int:
    m = nstates * tnorm
    return 2 * ((d + 3) * m + 2) ** d * m


def degenerate_thinness(G: Vass, basis: Subspace | None = None) -> DegenerateResult:
    """Classify a non-proper VASS of geometric dimension at most 2 and give its beams."""
    P = basis if basis is not None else cycle_space_basis(G)
    d = G.dim
    chi = characteristic(G)
    if P.rank > 2:
        raise GdimTooHigh("geometric dimension above 2")
    if P.rank == 0:
        return DegenerateResult("i", ThinCertificate(chi, (Beam(zero(d), chi),)))
    if P.rank == 1:
        c = P.integer_basis[0]
        beams = split_generalized_beam(c, chi)
        return DegenerateResult("i", ThinCertificate(max(chi, norm(c)), beams), c)
    dim = cone_dimension(P, Orthant.nonneg(d))
    if dim == 2:
        raise NotDegenerate("the cycle space meets the nonnegative orthant in a plane cone")
    if dim == 0:
        B = bound_zero_cone(d, chi)
        return DegenerateResult("ii", ThinCertificate(B, (Beam(zero(d), B),)))
    u = _orthant_ray(P)
    A = max(bound_ray_cone(d, len(G.states), G.norm), norm(u))
    return DegenerateResult("iii", ThinCertificate(A, (Beam(u, A),)), u)


def _orthant_ray(P: Subspace) -> tuple[int, ...]:
    basis = P.integer_basis
    gens = planar.h_to_g(coefficient_normals(basis, (1,) * P.dim_ambient, range(P.dim_ambient)))
    return primitive(basis_combination(basis, gens[0]))


# ---------------------------------------------------------------------------
# thick runs


@dataclass(frozen=True)
class SeqEnabledCertificate:
    split: tuple[int, int, int, int]
    cycles: tuple[tuple[int, ...], ...]
    A: int

    def __post_init__(self):
        object.__setattr__(self, "split", tuple(self.split))
        object.__setattr__(self, "cycles", tuple(tuple(c) for c in self.cycles))
        if len(self.split) != 4 or len(self.cycles) != 4:
            raise ValueError("need four split indices and four cycles")


@dataclass(frozen=True)
class ThickCertificate:
    split: int
    forward: SeqEnabledCertificate
    backward: SeqEnabledCertificate
    A: int

    def __post_init__(self):
        if self.forward.A != self.A or self.backward.A != self.A:
            raise ValueError("sub-certificates must share A")


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    clause: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def prefixed(self, prefix: str) -> "CheckResult":
        if self.ok:
            return self
        return CheckResult(False, f"{prefix}:{self.clause}", self.detail)


OK = CheckResult(True)


def _fail(clause: str, detail: str) -> CheckResult:
    return CheckResult(False, clause, detail)


def _is_cycle(G: Vass, word: Sequence[int]) -> bool:
    if not word:
        return False
    try:
        check_path(G, word)
    except NotAPath:
        return False
    return G.transitions[word[0]].src == G.transitions[word[-1]].dst


def _bounded(seq: Sequence[Configuration], coords: Sequence[int], A: int) -> bool:
    return all(c.counters[i] <= A for c in seq for i in coords)


def _check_witness(G: Vass, witness: SrpWitness | None) -> SrpWitness:
    P = cycle_space_basis(G)
    if witness is None:
        if P.rank != 2 or (witness := find_srp(P)) is None:
            raise NotProper("the cycle space is not a proper plane")
    elif P != witness.plane:
        raise PlaneMismatch("witness plane differs from the cycle space")
    return witness


def check_seq_enabled(
    run: Run, cert: SeqEnabledCertificate, witness: SrpWitness | None = None
) -> CheckResult:
    """Check that the four cycles are A-sequentially enabled in ``run``."""
    witness = _check_witness(run.vass, witness)
    return _check_seq_enabled(run, cert, witness)


def _check_seq_enabled(run: Run, cert: SeqEnabledCertificate, witness: SrpWitness) -> CheckResult:
    G, A = run.vass, cert.A
    i1, i2 = witness.indices
    pis = cert.cycles
    for j, pi in enumerate(pis, 1):
        if len(pi) > A:
            return _fail("lengths", f"cycle {j} has length {len(pi)} > A = {A}")
    ks = cert.split
    if any(k < 0 for k in ks) or any(a > b for a, b in zip(ks, ks[1:])) or ks[-1] > len(run.word):
        return _fail("split", f"split {ks} is not nondecreasing within [0, {len(run.word)}]")
    seq = execute(G, run.start, run.word)
    if seq is None:
        return _fail("run", "word is not a run from the start configuration")
    for j, (pi, k) in enumerate(zip(pis, ks), 1):
        if not _is_cycle(G, pi):
            return _fail("cycle", f"pi{j} is not a cycle")
        if G.transitions[pi[0]].src != seq[k].state:
            return _fail("cycle", f"pi{j} does not start at the state after position {k}")
    k1, k2, k3, k4 = ks
    d1, d2 = effect(G, pis[0]), effect(G, pis[1])
    p1 = (d1[i1], d1[i2])
    if min(p1) < 0 or max(p1) == 0:
        return _fail("pi1-semipositive", f"effect of pi1 projects to {p1}")
    if not is_enabled(G, pis[0], seq[k1]):
        return _fail("pi1-enabled", f"pi1 not enabled at {seq[k1]}")
    if not _bounded(seq[: k1 + 1], (i1, i2), A):
        return _fail("rho1-bound", "an I-coordinate exceeds A along rho1")
    if min(p1) > 0:
        S: tuple[int, ...] = ()
    else:
        S = tuple(i for i in range(G.dim) if d1[i] == 0)
    if not s_enabled(G, pis[1], seq[k2], S):
        return _fail("pi2-enabled", f"pi2 not S-enabled at {seq[k2]} for S = {S}")
    if min(p1) == 0:
        zero_coords = [i for i in (i1, i2) if d1[i] == 0]
        if not _bounded(seq[k1 : k2 + 1], zero_coords, A):
            return _fail("rho2-bound", "a coordinate not moved by pi1 exceeds A along rho2")
    cone = seqcone([d1, d2], witness)
    total = [sum(g[i] for g in cone.generators) for i in range(G.dim)]
    if not cone.generators or any(x <= 0 for x in total):
        return _fail("seqcone-positive", f"SeqCone(pi1, pi2) is {cone.kind} without a positive vector")
    for j, k in ((3, k3), (4, k4)):
        if not s_enabled(G, pis[j - 1], seq[k], ()):
            return _fail(f"pi{j}-enabled", f"pi{j} not enabled at {seq[k]}")
    return OK


def check_thick(run: Run, cert: ThickCertificate, witness: SrpWitness | None = None) -> CheckResult:
    """Check an A-thick certificate for a 0-run."""
    G = run.vass
    witness = _check_witness(G, witness)
    seq = execute(G, run.start, run.word)
    if seq is None:
        return _fail("run", "word is not a run from the start configuration")
    if any(run.start.counters) or any(seq[-1].counters):
        raise NotZeroRun("thick certificates apply to runs from and to the zero vector")
    k = cert.split
    if not 0 <= k <= len(run.word):
        return _fail("split", f"split {k} outside [0, {len(run.word)}]")
    head = Run(G, run.start, run.word[:k])
    res = _check_seq_enabled(head, cert.forward, witness)
    if not res:
        return res.prefixed("forward")
    R = reverse(G)
    tail = Run(R, seq[-1], tuple(reversed(run.word[k:])))
    res = _check_seq_enabled(tail, cert.backward, witness)
    if not res:
        return res.prefixed("backward")
    fwd = seqcone([effect(G, pi) for pi in cert.forward.cycles], witness)
    bwd = seqcone([effect(R, pi) for pi in cert.backward.cycles], witness)
    meet = cone_intersect(fwd, bwd)
    if not meet.nontrivial:
        return _fail("nontrivial", f"sequential cones meet in a {meet.kind}")
    return OK
