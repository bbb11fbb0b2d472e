from fractions import Fraction

import pytest

from abpkit import randgen
from abpkit.abp import Abp, Edge, evaluate_abp, expand, naive_abp_from_polynomial, validate
from abpkit.families import figure1_abp, make_power_sum
from abpkit.poly import LinearForm, Polynomial

x, y = Polynomial.variables(2)
FIG1 = x ** 3 - x ** 2 * y - Fraction(3, 2) * x * y ** 2


def lf(*c):
    return LinearForm(tuple(c))


def test_fig1_validates_with_size_4():
    a = figure1_abp()
    check = validate(a)
    assert check.ok and check.details["size"] == 4 and a.size == 4
    assert list(a.widths) == [1, 2, 2, 1] and len(a.edges) == 7


def test_fig1_expands():
    assert expand(figure1_abp()) == FIG1


def test_fig1_partial_expansion():
    a = figure1_abp()
    assert expand(a, a.source, (2, 0)) == x * y + Fraction(1, 2) * y ** 2


def test_fig1_eval():
    assert evaluate_abp(figure1_abp(), [1, 1]) == Fraction(-3, 2)


def test_single_edge():
    a = Abp(2, [1, 1], [Edge(0, 0, 0, lf(1, 0))])
    assert expand(a) == x


@pytest.mark.parametrize("edges,widths,reason", [
    ([Edge(0, 0, 0, lf(1, 0)), Edge(0, 0, 0, lf(0, 1), to_layer=2)], [1, 1, 1], "non-consecutive layers"),
    ([Edge(0, 0, 0, lf(0, 0)), Edge(1, 0, 0, lf(1, 0))], [1, 1, 1], "zero label"),
    ([Edge(0, 0, 0, lf(1, 0))], [1, 2, 1], None),
    ([Edge(0, 0, 0, lf(1, 0))], [2, 1], "source layer width must be 1"),
    ([Edge(0, 0, 0, lf(1, 0))], [1, 2], "sink layer width must be 1"),
    ([Edge(0, 0, 5, lf(1, 0))], [1, 1], "vertex out of range"),
    ([Edge(0, 0, 0, LinearForm((1, 0, 0)))], [1, 1], "label length"),
    ([Edge(0, 0, 0, lf(1, 0))], [1], "too few layers"),
    ([Edge(0, 0, 0, lf(1, 0))], [1, 0, 1], "empty layer"),
])
def test_validate_reports(edges, widths, reason):
    check = validate(Abp(2, widths, edges))
    if reason is None:
        assert check.ok
    else:
        assert not check.ok and check.reason == reason


def test_parallel_edges_merge():
    a = Abp(2, [1, 1], [Edge(0, 0, 0, lf(1, 0)), Edge(0, 0, 0, lf(0, 1))])
    assert len(a.edges) == 1 and expand(a) == x + y


def test_expand_rejects_backwards():
    a = figure1_abp()
    with pytest.raises(ValueError):
        expand(a, (2, 0), (1, 0))
    with pytest.raises(ValueError):
        expand(a, (1, 0), (1, 0))


def test_naive_abp_examples():
    d = 4
    a = naive_abp_from_polynomial(Polynomial.variable(0, 2) ** d)
    assert list(a.widths) == [1, 1, 1, 1, 1] and all(e.label == LinearForm.variable(0, 2) for e in a.edges)
    n = 3
    b = naive_abp_from_polynomial(make_power_sum(n, d))
    assert list(b.widths) == [1] + [n + 1] * (d - 1) + [1]


def test_naive_round_trip(rng):
    for _ in range(50):
        n, d = rng.randint(1, 4), rng.randint(1, 5)
        F = randgen.rand_form(rng, n, d)
        a = naive_abp_from_polynomial(F)
        assert validate(a).ok and expand(a) == F
        assert a.size == len(F) * (d - 1) or d == 1


def test_expand_is_homogeneous(rng):
    for _ in range(50):
        a = randgen.rand_nonzero_abp(rng, num_vars=rng.randint(1, 3))
        F = expand(a)
        assert F.is_homogeneous() and F.degree == a.depth


def test_evaluate_matches_expand(rng):
    for _ in range(20):
        a = randgen.rand_abp(rng, num_vars=3)
        F = expand(a)
        for _ in range(50):
            p = randgen.rand_point(rng, 3)
            assert evaluate_abp(a, p) == F.evaluate(p)


def test_zero_point(rng):
    for _ in range(10):
        a = randgen.rand_abp(rng, num_vars=2)
        assert evaluate_abp(a, [0, 0]) == 0


def test_path_abp_at_basis_vectors():
    n = 3
    a = Abp(n, [1, 1, 1, 1], [Edge(k, 0, 0, LinearForm.variable(k, n)) for k in range(n)])
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        assert evaluate_abp(a, e) == 0
    assert evaluate_abp(a, [1, 1, 1]) == 1


def test_layer_cut_identity(rng):
    for _ in range(50):
        a = randgen.rand_nonzero_abp(rng, num_vars=rng.randint(1, 3))
        total = expand(a)
        for j in range(1, a.depth):
            cut = Polynomial.zero(a.num_vars)
            for v in range(a.widths[j]):
                cut = cut + expand(a, a.source, (j, v)) * expand(a, (j, v), a.sink)
            assert cut == total
