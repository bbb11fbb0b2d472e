import itertools

import pytest
from hypothesis import given, settings, strategies as st

from abpkit import randgen
from abpkit.algebra import GF, QQ
from abpkit.decomp import slice_from_subspace, verify
from abpkit.families import make_P, make_power_sum, make_S, make_S_hat
from abpkit.poly import Polynomial
from abpkit.subspace import (
    BudgetExceeded,
    LinearSubspace,
    build_chart_systems,
    contains_check,
    count_candidates,
    exhaustive_search,
    gaussian_binomial,
    iter_echelon,
    pivot_patterns,
    propagation_refute,
    search_through_point,
)


def test_contains_examples():
    x0, x1, x2 = Polynomial.variables(3)
    assert contains_check(x0 * x1, LinearSubspace.coordinate([0], 3))
    assert not contains_check(x0 ** 2 + x1 ** 2, LinearSubspace.coordinate([0], 3))
    S = make_S(4, 5)
    assert contains_check(S, LinearSubspace.coordinate([1, 3, 4, 5], 6))
    assert not contains_check(S, LinearSubspace.coordinate([0, 1, 2, 3], 6))


def test_contains_agrees_with_point_sampling(rng):
    # oracle: F vanishes on a subspace iff it vanishes at random points of it
    for _ in range(100):
        n = rng.randint(2, 4)
        Q = randgen.rand_subspace(rng, n, rng.randint(1, n - 1))
        F = randgen.planted_form(rng, Q, 3) if rng.random() < 0.5 else randgen.rand_form(rng, n, 3)
        basis = Q.basis()
        samples = []
        for _ in range(8):
            t = randgen.rand_point(rng, len(basis), bound=9)
            samples.append([sum((c * b[i] for c, b in zip(t, basis)), QQ(0)) for i in range(n)])
        assert all(Q.contains_point(v) for v in samples)
        assert contains_check(F, Q) == all(F.evaluate(v) == 0 for v in samples)


def test_gaussian_binomial_values():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(6, 4, 2) == 651
    assert gaussian_binomial(6, 4, 3) == 11011
    assert gaussian_binomial(5, 0, 7) == 1 and gaussian_binomial(2, 3, 5) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_echelon_enumeration_counts_and_distinct(p):
    f = GF(p)
    for n in range(1, 5):
        for r in range(n + 1):
            seen = set()
            for piv in pivot_patterns(n, r):
                for C in iter_echelon(n, piv, f):
                    seen.add(LinearSubspace(C.rows, n, f))
            assert len(seen) == gaussian_binomial(n, r, p) == count_candidates(n, r, p)


def _brute_subspaces(F, r):
    # oracle: all r-subsets of nonzero forms, deduplicated by span
    f, n = F.field, F.num_vars
    forms = [v for v in itertools.product(range(f.p), repeat=n) if any(v)]
    out = set()
    for rows in itertools.combinations(forms, r):
        Q = LinearSubspace([[f(a) for a in v] for v in rows], n, f)
        if Q.codim == r and contains_check(F, Q):
            out.add(Q)
    return out


def test_search_x0x1_gf2():
    F = Polynomial.variable(0, 2, GF(2)) * Polynomial.variable(1, 2, GF(2))
    stats = {}
    hits = exhaustive_search(F, 1, stats=stats)
    assert set(hits) == {LinearSubspace.coordinate([0], 2, GF(2)), LinearSubspace.coordinate([1], 2, GF(2))}
    assert stats == {"examined": 3, "total": 3}


def test_search_p13_empty():
    F = make_P(1, 3, GF(2))
    stats = {}
    assert exhaustive_search(F, 1, stats=stats) == [] and stats["examined"] == 7


@pytest.mark.parametrize("p", [2, 3])
def test_search_matches_brute_force(rng, p):
    f = GF(p)
    for _ in range(6):
        n = rng.randint(2, 3)
        r = rng.randint(1, n - 1)
        Q = randgen.rand_subspace(rng, n, r, f)
        F = randgen.planted_form(rng, Q, 2)
        hits = exhaustive_search(F, r)
        assert Q in hits
        assert set(hits) == _brute_subspaces(F, r)


def test_search_workers_same_order():
    F = make_S(4, 5, GF(2))
    assert exhaustive_search(F, 4, workers=2) == exhaustive_search(F, 4)


def test_search_equivariant_under_permutation():
    F = make_S(2, 3, GF(3))
    perm = [2, 0, 3, 1]
    G = F.permute(perm)
    a = {Q.permute(perm) for Q in exhaustive_search(F, 2)}
    assert a == set(exhaustive_search(G, 2))


def test_budget_exceeded():
    F = make_S(4, 5, GF(3))
    with pytest.raises(BudgetExceeded) as info:
        exhaustive_search(F, 4, budget=100)
    assert info.value.total == 11011 and info.value.examined <= 100
    with pytest.raises(BudgetExceeded):
        search_through_point(F, [0, 0, 0, 1, 0, 0], 4, budget=10)


def test_through_point_is_filtered_search():
    f = GF(3)
    for F, r, p0 in ((make_S_hat(4, 3, f), 3, [0, 0, 0, 1, 0]), (make_S(2, 3, f), 2, [0, 1, 0, 0])):
        stats = {}
        got = search_through_point(F, p0, r, stats=stats)
        want = [Q for Q in exhaustive_search(F, r) if Q.contains_point([f(a) for a in p0])]
        assert got == sorted(want, key=LinearSubspace.sort_key)
        assert stats["total"] == count_candidates(F.num_vars, r, 3, through_point=True)


def test_search_rejects_rationals():
    with pytest.raises(ValueError):
        exhaustive_search(make_P(1, 3), 1)


def test_chart_x0_squared():
    F = Polynomial.variable(0, 2) ** 2
    systems = build_chart_systems(F, 0)
    assert len(systems) == 1 and systems[0].num_unknowns == 0
    assert [e for e in systems[0].equations if not e.is_zero()]
    assert propagation_refute(systems).refuted


def test_chart_counts():
    systems = build_chart_systems(make_P(1, 3), 1)
    assert [s.pivots for s in systems] == [(0,), (1,), (2,)]
    assert [s.num_unknowns for s in systems] == [2, 1, 0]


def test_chart_solutions_give_contained_subspaces(rng):
    for _ in range(30):
        n = rng.randint(2, 4)
        r = rng.randint(1, n - 1)
        F = randgen.rand_form(rng, n, 2)
        for s in build_chart_systems(F, r):
            vals = randgen.rand_point(rng, s.num_unknowns)
            Q = s.subspace_at(vals)
            holds = all(e.evaluate(vals) == 0 for e in s.equations)
            assert holds == contains_check(F, Q)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_p1d_refuted(d):
    res = propagation_refute(build_chart_systems(make_P(1, d), 1))
    assert res.refuted and len(res.trace) == 3


def test_x0x1_inconclusive():
    x0, x1 = Polynomial.variables(2)
    res = propagation_refute(build_chart_systems(x0 * x1, 1))
    assert res.status == "inconclusive" and res.chart_index == 0


def test_planted_never_refuted(rng):
    # soundness: a planted subspace exists, so refutation would be a false claim
    for _ in range(500):
        n = rng.randint(2, 4)
        r = rng.randint(1, n - 1)
        Q = randgen.rand_subspace(rng, n, r)
        F = randgen.planted_form(rng, Q, rng.randint(2, 3))
        assert not propagation_refute(build_chart_systems(F, r)).refuted
        assert verify(F, slice_from_subspace(F, Q)).ok


def test_power_sum_plane_is_inconclusive():
    assert propagation_refute(build_chart_systems(make_power_sum(2, 3), 1)).status == "inconclusive"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_subspace_canonical(rows):
    Q = LinearSubspace([[QQ(a) for a in r] for r in rows], 4)
    R = LinearSubspace([[QQ(a) for a in r] for r in reversed(rows)] + [[QQ(a) * 2 for a in rows[0]]], 4)
    assert Q == R and hash(Q) == hash(R)
    assert all(Q.contains_point(v) for v in Q.basis())
    assert len(Q.basis()) == 4 - Q.codim
