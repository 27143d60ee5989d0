import random
from collections import deque
from itertools import combinations

import pytest

from helpers import loops, rand_vass, vass
from vassgeo.core import Configuration, characteristic, execute
from vassgeo.errors import GdimTooHigh, NotGeoZero, WrongDimension, WrongGdim
from vassgeo.geodim import cycle_space_basis, simple_cycle_effects
from vassgeo.linalg import dot, norm
from vassgeo.reach import (
    REACHABLE,
    UNKNOWN,
    UNREACHABLE,
    ReachAnswer,
    ReachQuery,
    bounded_reach,
    decide_geo0,
    decide_reach,
    length_bound,
    lengths_reaching,
    minimal_solutions,
    normal_vector,
    oracle_reach,
    reduce_3vass_to_2vass,
    reduce_to_zero_reach,
    subset_sum_query,
    subset_sum_vass,
)


def C(state, *xs):
    return Configuration(state, tuple(xs))


def assert_witness(q, ans):
    run = ans.witness
    seq = execute(q.vass, q.source, run.word)
    assert seq is not None and seq[-1] == q.target


def test_answer_invariants():
    with pytest.raises(ValueError):
        ReachAnswer("maybe")
    with pytest.raises(ValueError):
        ReachAnswer(REACHABLE)


def test_reduce_to_zero_examples():
    G = vass(1, [("p", (-1,), "q")])
    q = ReachQuery(G, C("p", 2), C("q", 1))
    red = reduce_to_zero_reach(q)
    assert red.length_map == "l -> l+2"
    assert red.source.counters == (0,) and red.target.counters == (0,)
    a = oracle_reach(q, 5)
    b = oracle_reach(red.query, 5)
    assert a.verdict == b.verdict == REACHABLE
    assert len(b.witness) == len(a.witness) + 2
    assert red.pull_back(b.witness.word) == a.witness.word
    z = reduce_to_zero_reach(ReachQuery(G, C("p", 0), C("p", 0)))
    assert [t.effect for t in z.vass.transitions[-2:]] == [(0,), (0,)]


def test_reduce_to_zero_name_clash():
    G = vass(0, [("__src", (), "__trg")])
    red = reduce_to_zero_reach(ReachQuery(G, C("__src"), C("__trg")))
    assert len(set(red.vass.states)) == 4


def test_reduce_to_zero_preserves_reachability():
    rng = random.Random(71)
    for _ in range(150):
        d = rng.randint(1, 3)
        G = rand_vass(rng, d, 5, 8, 2)
        u = tuple(rng.randint(0, 4) for _ in range(d))
        v = tuple(rng.randint(0, 4) for _ in range(d))
        q = ReachQuery(G, Configuration(rng.choice(G.states), u), Configuration(rng.choice(G.states), v))
        a = oracle_reach(q, 8)
        b = oracle_reach(reduce_to_zero_reach(q).query, 8)
        if UNKNOWN not in (a.verdict, b.verdict):
            assert a.verdict == b.verdict


def test_oracle_reach_examples():
    G = loops(1, [(1,)])
    q = ReachQuery(G, C("p", 0), C("p", 0))
    ans = oracle_reach(q, 3)
    assert ans.verdict == REACHABLE and ans.witness.word == ()
    ans = oracle_reach(ReachQuery(G, C("p", 0), C("p", 5)), 10)
    assert ans.verdict == REACHABLE and len(ans.witness) == 5
    assert oracle_reach(ReachQuery(G, C("p", 0), C("p", 12)), 10).verdict == UNKNOWN
    H = vass(1, [("p", (1,), "q")])
    assert oracle_reach(ReachQuery(H, C("p", 0), C("q", 2)), 10).verdict == UNREACHABLE


def test_bounded_reach_examples():
    G = loops(1, [(1,)])
    assert bounded_reach(ReachQuery(G, C("p", 0), C("p", 0)), 0).verdict == REACHABLE
    assert bounded_reach(ReachQuery(G, C("p", 0), C("p", 1)), 0).verdict == UNKNOWN
    assert bounded_reach(ReachQuery(G, C("p", 0), C("p", 1)), 0, complete=True).verdict == UNREACHABLE
    chain = vass(1, [(f"s{i}", (1,), f"s{i + 1}") for i in range(7)])
    q = ReachQuery(chain, C("s0", 0), C("s7", 7))
    ans = bounded_reach(q, 7)
    assert ans.verdict == REACHABLE and len(ans.witness) == 7
    assert_witness(q, ans)
    # the chain's reachable set closes after 7 steps, so a miss is exact
    assert bounded_reach(q, 6).verdict == UNKNOWN
    assert bounded_reach(ReachQuery(chain, C("s0", 0), C("s7", 6)), 20).verdict == UNREACHABLE


def test_bounded_agrees_with_oracle():
    rng = random.Random(72)
    for _ in range(150):
        G = rand_vass(rng, 2, 4, 7, 2)
        q = ReachQuery(G, Configuration(G.states[0], (1, 1)), Configuration(rng.choice(G.states), (rng.randint(0, 3), rng.randint(0, 3))))
        o = oracle_reach(q, 10)
        if o.verdict == REACHABLE:
            b = bounded_reach(q, len(o.witness))
            assert b.verdict == REACHABLE and len(b.witness) == len(o.witness)
            assert_witness(q, b)


def test_lengths_reaching():
    G = loops(1, [(1,), (-1,)])
    q = ReachQuery(G, C("p", 0), C("p", 0))
    assert lengths_reaching(q, 6) == {0, 2, 4, 6}


def brute_subset(values, s):
    return any(sum(c) == s for k in range(len(values) + 1) for c in combinations(values, k))


def test_subset_sum_examples():
    assert decide_geo0(subset_sum_query([2, 3], 5)).verdict == REACHABLE
    assert decide_geo0(subset_sum_query([2, 3], 4)).verdict == UNREACHABLE
    G = subset_sum_vass([2, 3])
    assert len(G.transitions) == 4 and cycle_space_basis(G).rank == 0


def test_subset_sum_family():
    rng = random.Random(73)
    for _ in range(30):
        values = [rng.randint(1, 9) for _ in range(rng.randint(1, 6))]
        s = rng.randint(0, sum(values) + 2)
        q = subset_sum_query(values, s)
        ans = decide_geo0(q)
        assert (ans.verdict == REACHABLE) == brute_subset(values, s)
        if ans.verdict == REACHABLE:
            assert_witness(q, ans)


def test_geo0_with_zero_effect_cycles():
    G = vass(1, [("p", (1,), "q"), ("q", (-1,), "p"), ("q", (2,), "r"), ("r", (0,), "r")])
    q = ReachQuery(G, C("p", 0), C("r", 3))
    assert cycle_space_basis(G).rank == 0
    assert decide_geo0(q).verdict == REACHABLE == oracle_reach(q, 10).verdict
    with pytest.raises(NotGeoZero):
        decide_geo0(ReachQuery(loops(1, [(1,)]), C("p", 0), C("p", 1)))


def test_normal_vector_examples():
    assert normal_vector(loops(3, [(1, 0, 1), (0, 1, 1)])) == (1, 1, -1)
    assert normal_vector(loops(3, [(1, 0, 0), (0, 1, 0)])) == (0, 0, 1)
    with pytest.raises(WrongDimension):
        normal_vector(loops(2, [(1, 0), (0, 1)]))
    with pytest.raises(WrongGdim):
        normal_vector(loops(3, [(1, 0, 0)]))
    rng = random.Random(74)
    for _ in range(50):
        G = rand_vass(rng, 3, 4, 6, 2)
        if cycle_space_basis(G).rank != 2:
            continue
        n = normal_vector(G)
        assert all(dot(n, c) == 0 for c in simple_cycle_effects(G))


def test_minimal_solutions_examples():
    assert minimal_solutions(2, 3, 0) == {(0, 0)}
    assert minimal_solutions(2, 3, -4) == {(0, 0)}
    assert minimal_solutions(0, 3, 7) == {(0, 3)}
    assert minimal_solutions(2, 3, 6) == {(0, 2), (1, 2), (2, 1), (3, 0)}
    assert minimal_solutions(1, 1, 2) == {(0, 2), (1, 1), (2, 0)}


def test_minimal_solutions_cover():
    # every solution of a x + b y >= d dominates some member
    for a in range(0, 4):
        for b in range(0, 4):
            if a == b == 0:
                continue
            for dv in range(-2, 9):
                M = minimal_solutions(a, b, dv)
                assert all(a * x + b * y >= dv and x >= 0 and y >= 0 for x, y in M)
                for x in range(12):
                    for y in range(12):
                        if a * x + b * y >= dv:
                            assert any(x >= m0 and y >= m1 for m0, m1 in M)


def gadget_check(red, dv, x, y):
    """From the bar state of value dv at (x, y), can the matching plain state (x, y) be reached?"""
    H = red.vass
    bar = next(s for s in H.states if s.endswith(f"__b{dv}"))
    plain = next(s for s in H.states if s.endswith(f"__d{dv}") and s.split("__")[0] == bar.split("__")[0])
    q = ReachQuery(H, C(bar, x, y), C(plain, x, y))
    return bounded_reach(q, 2).verdict == REACHABLE


def test_case2_gadget_example():
    # n = (1, 1, -1); a path p -> r of effect (1, 1, 0) leaves d = 2 at r
    G = vass(
        3,
        [("p", (1, 0, 1), "p"), ("p", (0, 1, 1), "p"), ("p", (1, 1, 0), "r"), ("r", (-1, -1, 0), "p")],
    )
    q = ReachQuery(G, C("p", 0, 0, 0), C("p", 0, 0, 0))
    red = reduce_3vass_to_2vass(q)
    assert red.length_map == "l -> 3l"
    assert "normal (1, 1, -1)" in red.notes
    assert minimal_solutions(1, 1, 2) == {(0, 2), (1, 1), (2, 0)}
    for x in range(4):
        for y in range(4):
            assert gadget_check(red, 2, x, y) == (x + y >= 2)


def test_case2_lengths():
    G = loops(3, [(1, 0, 1), (-1, 0, -1), (0, 1, 1), (0, -1, -1)])
    q = ReachQuery(G, C("p", 0, 0, 0), C("p", 0, 0, 0))
    red = reduce_3vass_to_2vass(q)
    assert "B = 3" in red.notes
    assert lengths_reaching(q, 6) == {0, 2, 4, 6}
    assert lengths_reaching(red.query, 18) == {0, 6, 12, 18}


def test_case1_folding():
    # n = (0, 0, 1): the third counter moves only on the acyclic part
    G = vass(3, [("p", (0, 0, 2), "q"), ("q", (1, 0, 0), "q"), ("q", (0, 1, 0), "q"), ("q", (-1, -1, -2), "r")])
    q = ReachQuery(G, C("p", 0, 0, 0), C("r", 0, 0, 0))
    red = reduce_3vass_to_2vass(q)
    assert red.length_map == "l -> l"
    assert "normal (0, 0, 1)" in red.notes
    assert red.vass.dim == 2
    assert lengths_reaching(q, 6) == lengths_reaching(red.query, 6) == {4}
    ans = bounded_reach(red.query, 6)
    word = red.pull_back(ans.witness.word)
    assert execute(G, q.source, word)[-1] == q.target


def test_case1_negative_normal_and_padding():
    G = loops(3, [(1, -1, 0)])
    red = reduce_3vass_to_2vass(ReachQuery(G, C("p", 0, 0, 0), C("p", 0, 0, 0)))
    assert any("padded" in n for n in red.notes)
    assert red.vass.dim == 2


def test_reduce_3to2_preconditions():
    with pytest.raises(WrongDimension):
        reduce_3vass_to_2vass(ReachQuery(loops(2, [(1, 0)]), C("p", 0, 0), C("p", 0, 0)))
    with pytest.raises(ValueError):
        reduce_3vass_to_2vass(ReachQuery(loops(3, [(1, 0, 0)]), C("p", 1, 0, 0), C("p", 0, 0, 0)))
    full = loops(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(GdimTooHigh):
        reduce_3vass_to_2vass(ReachQuery(full, C("p", 0, 0, 0), C("p", 0, 0, 0)))


def test_run_in_cd_bound():
    rng = random.Random(75)
    done = 0
    while done < 40:
        G = rand_vass(rng, 3, 4, 6, 2)
        if cycle_space_basis(G).rank != 2:
            continue
        done += 1
        n = normal_vector(G)
        B = 3 * characteristic(G) * norm(n)
        start = (G.states[0], (0, 0, 0))
        seen = {start}
        todo = deque([start])
        while todo:
            s, v = todo.popleft()
            assert abs(dot(n, v)) <= B
            for i in G.out_edges[s]:
                t = G.transitions[i]
                w = tuple(a + b for a, b in zip(v, t.effect))
                if min(w) >= 0 and max(w) <= 8 and (t.dst, w) not in seen:
                    seen.add((t.dst, w))
                    todo.append((t.dst, w))


def test_decide_reach():
    q = subset_sum_query([2, 3], 5)
    assert decide_reach(q).verdict == REACHABLE
    G = loops(2, [(1, 1), (1, 0)])
    q = ReachQuery(G, C("p", 0, 0), C("p", 3, 2))
    ans = decide_reach(q)
    assert ans.verdict == REACHABLE
    assert_witness(q, ans)
    # the truncated bound never produces a definite miss
    far = ReachQuery(G, C("p", 0, 0), C("p", 0, 1))
    assert decide_reach(far, budget=10).verdict == UNKNOWN
    chain = vass(1, [("a", (1,), "b"), ("b", (1,), "c")])
    assert length_bound(chain, 1) == 3**3
    assert length_bound(chain, 2) == 3**6


def test_decide_reach_agrees_with_oracle():
    rng = random.Random(76)
    for _ in range(100):
        G = rand_vass(rng, 2, 4, 6, 2)
        q = ReachQuery(G, Configuration(G.states[0], (0, 0)), Configuration(rng.choice(G.states), (rng.randint(0, 2), rng.randint(0, 2))))
        a = decide_reach(q, budget=12)
        o = oracle_reach(q, 8)
        if a.verdict == REACHABLE:
            assert_witness(q, a)
            assert o.verdict != UNREACHABLE
        if a.verdict == UNREACHABLE:
            assert o.verdict != REACHABLE
