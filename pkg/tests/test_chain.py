import pytest

from abpkit import randgen
from abpkit.abp import Abp, Edge, expand, forward_polynomials, naive_abp_from_polynomial, validate
from abpkit.chain import (
    IdealChain,
    certificate_holds,
    check_inclusion,
    extract_chain,
    minimize_chain,
    synthesize_abp,
)
from abpkit.families import figure1_abp, make_power_sum
from abpkit.poly import LinearForm, Polynomial

x, y = Polynomial.variables(2)


def _live(a):
    return all(not g.is_zero() for layer in forward_polynomials(a) for g in layer)


def test_figure1_levels():
    a = figure1_abp()
    c = extract_chain(a)
    assert c.widths == [2, 2, 1]
    assert c.top == expand(a)
    for k, level in enumerate(c.levels, start=1):
        assert all(g.degree == k and g.is_homogeneous() for g in level)
    for k, labels in enumerate(c.certificates):
        assert certificate_holds(c.levels[k], c.levels[k + 1], labels)


def test_inclusion_example():
    res = check_inclusion([x, y], [x * x + x * y])
    assert res.ok
    assert res.labels[0][0] == LinearForm.from_polynomial(x + y)
    assert res.labels[1][0].is_zero()


def test_inclusion_failure():
    res = check_inclusion([x], [y * y])
    assert not res and res.failed_index == 0
    res = check_inclusion([x], [x * y, y * y, x * x])
    assert res.failed_index == 1


def test_path_abp():
    z = Polynomial.variable(2, 3)
    a = Abp(3, [1, 1, 1, 1], [Edge(k, 0, 0, LinearForm.variable(k, 3)) for k in range(3)])
    c = extract_chain(a)
    x0, x1, _ = Polynomial.variables(3)
    assert c.levels == [[x0], [x0 * x1], [x0 * x1 * z]]


def test_naive_power_sum_levels():
    for n, d in ((2, 3), (3, 4)):
        c = extract_chain(naive_abp_from_polynomial(make_power_sum(n, d)))
        xs = Polynomial.variables(n + 1)
        for k in range(1, d):
            assert c.levels[k - 1] == [v ** k for v in xs]
        assert c.top == make_power_sum(n, d)


def test_redundant_generator_and_minimize():
    c = IdealChain([[x, y, x + y], [x * y]])
    a = synthesize_abp(c)
    assert validate(a) and list(a.widths) == [1, 3, 1]
    assert expand(a) == x * y
    m = minimize_chain(c)
    assert m.widths == [2, 1]
    b = synthesize_abp(c, minimize=True)
    assert list(b.widths) == [1, 2, 1] and expand(b) == x * y


def test_synthesize_rejects_bad_chain():
    with pytest.raises(ValueError):
        synthesize_abp(IdealChain([[x], [y * y]]))
    with pytest.raises(ValueError):
        synthesize_abp(IdealChain([[x], [x * x, x * y]]))
    with pytest.raises(ValueError):
        synthesize_abp(IdealChain([[x + y * y], [x * x]]))


def test_extract_zero_abp():
    with pytest.raises(ValueError):
        extract_chain(Abp(2, [1, 1, 1], [Edge(0, 0, 0, LinearForm.variable(0, 2))]))


def test_round_trip_random(rng):
    done = 0
    while done < 100:
        a = randgen.rand_nonzero_abp(rng, num_vars=rng.randint(2, 3), max_layers=5, max_width=3)
        if not _live(a):
            continue
        done += 1
        c = extract_chain(a)
        b = synthesize_abp(c)
        assert validate(b)
        assert expand(b) == expand(a)
        assert list(b.widths) == list(a.widths)
        c2 = extract_chain(b)
        assert c2.levels == c.levels


def test_certificates_hold_random(rng):
    for _ in range(50):
        c = extract_chain(randgen.rand_nonzero_abp(rng, num_vars=2))
        for k, labels in enumerate(c.certificates):
            assert certificate_holds(c.levels[k], c.levels[k + 1], labels)
            assert check_inclusion(c.levels[k], c.levels[k + 1])
