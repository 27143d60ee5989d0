import random
from collections import deque
from itertools import product

import pytest

from helpers import loops, rand_vass, thick_cert, thick_run, thick_vass
from vassgeo.certify import (
    SeqEnabledCertificate,
    ThickCertificate,
    ThinCertificate,
    bound_ray_cone,
    bound_zero_cone,
    check_seq_enabled,
    check_thick,
    check_thin,
    covered,
    degenerate_thinness,
    is_enabled,
    s_enabled,
)
from vassgeo.core import Configuration, Run, characteristic, reverse
from vassgeo.errors import NotDegenerate, NotProper, NotZeroRun, PlaneMismatch, StateMismatch
from vassgeo.geodim import cycle_space_basis
from vassgeo.geom import Beam
from vassgeo.linalg import span_basis
from vassgeo.projection import find_srp, is_proper


def C(state, *xs):
    return Configuration(state, tuple(xs))


# ---------------------------------------------------------------------------
# enabledness


def test_enabled_examples():
    G = loops(2, [(-1, 0), (1, 0)])
    path = (0, 1)
    assert is_enabled(G, (), C("p", 0, 0))
    assert s_enabled(G, (), C("p", 0, 0), {0, 1})
    assert is_enabled(G, path, C("p", 1, 0))
    assert not is_enabled(G, path, C("p", 0, 0))
    assert s_enabled(G, path, C("p", 0, 0), {1})
    assert not s_enabled(G, path, C("p", 0, 0), {0, 1})
    with pytest.raises(StateMismatch):
        is_enabled(G, path, C("q", 1, 0))


def _padding_brute(G, path, c, S):
    """Exists z >= 0 with supp(z) outside S such that path is enabled at c + z."""
    deficit = sum(max(map(abs, G.transitions[i].effect), default=0) for i in path)
    free = [i for i in range(G.dim) if i not in S]
    for vals in product(range(deficit + 1), repeat=len(free)):
        x = list(c.counters)
        for i, a in zip(free, vals):
            x[i] += a
        if is_enabled(G, path, Configuration(c.state, tuple(x))):
            return True
    return False


def test_s_enabled_matches_padding_search():
    rng = random.Random(61)
    for _ in range(150):
        eff = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)]
        G = loops(3, eff)
        path = tuple(rng.randrange(3) for _ in range(rng.randint(0, 3)))
        c = C("p", *(rng.randint(0, 2) for _ in range(3)))
        subsets = [frozenset(s) for s in ((), (0,), (1, 2), (0, 1, 2))]
        res = {S: s_enabled(G, path, c, S) for S in subsets}
        for S in subsets:
            assert res[S] == _padding_brute(G, path, c, S)
        assert res[frozenset((0, 1, 2))] == is_enabled(G, path, c)
        # enlarging S never turns false into true
        for S in subsets:
            for T in subsets:
                if S <= T and not res[S]:
                    assert not res[T]


# ---------------------------------------------------------------------------
# thin certificates


def test_check_thin_examples():
    G = loops(2, [(0, 0), (1, 1)])
    still = Run(G, C("p", 0, 0), (0, 0))
    assert check_thin(still, ThinCertificate(0, [Beam((0, 0), 0)]))
    diag = Run(G, C("p", 0, 0), (1, 1, 1))
    assert check_thin(diag, ThinCertificate(1, [Beam((1, 1), 0)]))
    assert not check_thin(diag, ThinCertificate(1, [Beam((1, 0), 0)]))
    # a beam too wide for A is rejected
    assert not check_thin(still, ThinCertificate(0, [Beam((0, 0), 1)]))


def test_check_thin_monotone_in_A():
    G = loops(2, [(1, 2), (0, 1)])
    run = Run(G, C("p", 0, 0), (0, 0, 1))
    cert = ThinCertificate(2, [Beam((1, 2), 1)])
    assert check_thin(run, cert)
    for A in range(3, 6):
        assert check_thin(run, ThinCertificate(A, cert.beams))


def zero_run_configs(G, cap):
    """Vectors on 0-runs with every counter at most ``cap``."""

    def closure(H):
        seen = {(q, (0,) * H.dim) for q in H.states}
        todo = deque(seen)
        while todo:
            q, v = todo.popleft()
            for i in H.out_edges[q]:
                t = H.transitions[i]
                w = tuple(a + b for a, b in zip(v, t.effect))
                if min(w, default=0) >= 0 and max(w, default=0) <= cap and (t.dst, w) not in seen:
                    seen.add((t.dst, w))
                    todo.append((t.dst, w))
        return seen

    return {v for _, v in closure(G) & closure(reverse(G))}


def test_degenerate_case_i_rank_1():
    G = loops(2, [(1, -1), (-1, 1)])
    res = degenerate_thinness(G)
    chi = characteristic(G)
    assert res.case == "i"
    assert {b.direction for b in res.certificate.beams} == {(1, 0), (0, 1)}
    assert all(b.width == chi for b in res.certificate.beams)
    for v in zero_run_configs(G, 8):
        assert covered(v, res.certificate.beams)


def test_degenerate_case_i_rank_0():
    G = rand_vass(random.Random(3), 2, 1, 0, 1)
    res = degenerate_thinness(G)
    assert res.case == "i" and res.certificate.beams[0].direction == (0, 0)


def test_degenerate_case_ii():
    G = loops(3, [(1, -1, 0), (0, 1, -1), (-1, 0, 1)])
    res = degenerate_thinness(G)
    assert res.case == "ii"
    assert res.certificate.A == bound_zero_cone(3, characteristic(G))
    assert bound_zero_cone(3, 1) == 2 * 10**3 + 1


def test_degenerate_case_iii():
    G = loops(3, [(1, 0, -1), (0, 1, 0), (-1, 0, 1), (0, -1, 0)])
    res = degenerate_thinness(G)
    assert res.case == "iii"
    assert res.generator == (0, 1, 0)
    assert res.certificate.A == max(bound_ray_cone(3, 1, 1), 1)
    assert bound_ray_cone(3, 1, 1) == 2 * 8**3


def test_degenerate_proper_rejected():
    with pytest.raises(NotDegenerate):
        degenerate_thinness(loops(2, [(1, 1), (1, -1)]))


def test_degenerate_random_zero_runs_covered():
    rng = random.Random(62)
    seen_cases = set()
    tries = 0
    while tries < 60:
        G = rand_vass(rng, 3, 3, 5, 1)
        P = cycle_space_basis(G)
        if P.rank > 2 or is_proper(G, P):
            continue
        tries += 1
        res = degenerate_thinness(G, P)
        seen_cases.add(res.case)
        for v in zero_run_configs(G, 5):
            assert covered(v, res.certificate.beams)
    assert "i" in seen_cases


# ---------------------------------------------------------------------------
# sequential enabledness and thick certificates


def enabled_fixture():
    """pi1 = [1, 2] has effect (1, 1) but needs the first counter at 1."""
    G = loops(2, [(1, 0), (-1, 0), (2, 1), (0, 1)])
    return Run(G, C("p", 0, 0), (0, 1))


def test_seq_enabled_accepts():
    run = enabled_fixture()
    cert = SeqEnabledCertificate((1, 1, 1, 1), [[1, 2], [3], [0], [0]], 2)
    assert check_seq_enabled(run, cert)


def test_seq_enabled_mutations():
    run = enabled_fixture()
    cases = [
        (SeqEnabledCertificate((1, 1, 1, 1), [[1, 2], [3], [0], [0]], 1), "lengths"),
        (SeqEnabledCertificate((2, 2, 2, 2), [[1, 2], [3], [0], [0]], 2), "pi1-enabled"),
        (SeqEnabledCertificate((1, 0, 1, 1), [[1, 2], [3], [0], [0]], 2), "split"),
        (SeqEnabledCertificate((1, 1, 1, 3), [[1, 2], [3], [0], [0]], 2), "split"),
        (SeqEnabledCertificate((1, 1, 1, 1), [[], [3], [0], [0]], 2), "cycle"),
        (SeqEnabledCertificate((1, 1, 1, 1), [[1], [3], [0], [0]], 2), "pi1-semipositive"),
        (SeqEnabledCertificate((1, 1, 1, 1), [[0], [1], [0], [0]], 2), "seqcone-positive"),
        (SeqEnabledCertificate((1, 1, 2, 1), [[1, 2], [3], [1], [0]], 2), "split"),
    ]
    for cert, clause in cases:
        res = check_seq_enabled(run, cert)
        assert not res and res.clause == clause, (cert, res)


def test_pi3_clause_is_empty_set_enabledness():
    # with S empty, any cycle is enabled after padding
    run = enabled_fixture()
    cert = SeqEnabledCertificate((1, 1, 2, 2), [[1, 2], [3], [1, 2], [1]], 2)
    assert check_seq_enabled(run, cert)


def test_thick_fixture_accepts():
    assert check_thick(thick_run(), thick_cert())


THICK_MUTATIONS = [
    ({"A": 0}, "forward:lengths"),
    ({"fs": (4, 4, 4, 4)}, "forward:rho1-bound"),
    ({"fc": ([3, 0, 0], [0], [1], [2])}, "forward:pi1-enabled"),
    ({"fc": ([3], [0], [1], [2])}, "forward:pi1-semipositive"),
    ({"fs": (2, 1, 2, 3)}, "forward:split"),
    ({"bc": ([3], [3], [3], [3])}, "nontrivial"),
    ({"fc": ([6], [6], [1], [2])}, "forward:seqcone-positive"),
    ({"fc": ([6], [4], [1], [2])}, "forward:pi2-enabled"),
    ({"fc": ([6], [1], [1], [2]), "fs": (0, 4, 4, 4)}, "forward:rho2-bound"),
    ({"bc": ([0], [3], [4], [5])}, "backward:pi1-semipositive"),
]


@pytest.mark.parametrize("mutation,clause", THICK_MUTATIONS)
def test_thick_mutations(mutation, clause):
    res = check_thick(thick_run(), thick_cert(**mutation))
    assert not res
    assert res.clause == clause


def test_thick_preconditions():
    G = thick_vass()
    with pytest.raises(NotZeroRun):
        check_thick(Run(G, C("p", 0, 0), (0,)), thick_cert())
    with pytest.raises(NotProper):
        check_thick(Run(loops(2, [(1, -1)]), C("p", 0, 0), ()), thick_cert())
    bad = find_srp(span_basis([(1, 0, 1), (0, 1, 1)]))
    with pytest.raises(PlaneMismatch):
        check_thick(thick_run(), thick_cert(), bad)
    with pytest.raises(ValueError):
        ThickCertificate(4, thick_cert().forward, SeqEnabledCertificate((0, 0, 2, 3), [[3]] * 4, 5), 3)
