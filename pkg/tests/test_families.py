import pytest
import sympy

from abpkit.families import (
    COMPUTED,
    CORRECTED,
    PAPER,
    describe,
    make_P,
    make_power_sum,
    make_S,
    make_S_hat,
    s_hat_basis_point,
)
from abpkit.poly import Polynomial
from abpkit.singular import pure_power_reduce, sing_generators, verify_claimed_sing


def test_power_sum_small():
    x0, x1, x2 = Polynomial.variables(3)
    assert make_power_sum(2, 3) == x0 ** 3 + x1 ** 3 + x2 ** 3
    assert make_power_sum(0, 5) == Polynomial.variable(0, 1) ** 5


def test_p_small():
    x0, x1, x2 = Polynomial.variables(3)
    assert make_P(1, 3) == x0 ** 3 + x1 * x2 ** 2


def test_s45_has_six_terms():
    assert len(make_S(4, 5)) == 6


@pytest.mark.parametrize("maker,nmin,dmin", [(make_power_sum, 0, 2), (make_P, 1, 2), (make_S, 1, 3),
                                             (make_S_hat, 1, 3)])
def test_argument_checks(maker, nmin, dmin):
    with pytest.raises(ValueError):
        maker(nmin - 1, dmin)
    with pytest.raises(ValueError):
        maker(nmin, dmin - 1)


def test_families_are_homogeneous_with_stated_sizes():
    for n in range(1, 7):
        for d in range(3, 7):
            for name, N in (("power_sum", n + 1), ("P", 2 * n + 1), ("S", n + 2), ("S_hat", n + 1)):
                F = describe(name, n, d).polynomial()
                assert F.is_homogeneous() and F.degree == d and F.num_vars == N


def test_metadata_codim_matches_reduction():
    for n in range(1, 7):
        for d in range(2, 7):
            # the cyclic S family has non-monomial gradients; see the Groebner test below
            names = ["power_sum", "P"] + (["S_hat"] if d >= 3 else [])
            for name in names:
                desc = describe(name, n, d)
                F = desc.polynomial()
                rep = pure_power_reduce(sing_generators(F), F.num_vars, F.field)
                assert rep.status == "reduced"
                expect = "empty" if desc.sing_empty else desc.codim_sing
                assert rep.codim == expect, (name, n, d)
                for comp in desc.sing_components:
                    assert verify_claimed_sing(F, comp).ok


@pytest.mark.parametrize("n,d", [(1, 3), (1, 4), (2, 3), (2, 4)])
def test_s_is_smooth_groebner(n, d):
    xs = sympy.symbols(f"x0:{n + 2}")
    F = sum(xs[i] * xs[i + 1] ** (d - 1) for i in range(n)) + xs[n] * xs[0] ** (d - 1) + xs[n + 1] ** d
    ours = sum(sympy.Rational(c) * sympy.prod([v ** k for v, k in zip(xs, e)]) for e, c in make_S(n, d).terms)
    assert sympy.expand(F - ours) == 0
    G = sympy.groebner([sympy.diff(F, v) for v in xs], *xs, order="grevlex")
    # zero-dimensional at the origin: every variable has a pure power among the leading terms
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]
    for i in range(n + 2):
        assert any(m[i] > 0 and sum(m) == m[i] for m in leads)
    assert describe("S", n, d).sing_empty


def test_metadata_tags():
    p = describe("P", 3, 4)
    assert p.degree_divisor == 4 and p.codim_threshold == 3 and p.known_sr_exact == 4
    assert p.sources["degree_divisor"] == PAPER and p.sources["known_sr_upper"] == COMPUTED
    assert describe("P", 3, 2).sources["codim_sing"] == CORRECTED
    assert describe("S", 4, 5).known_sr_exact == 4 and describe("S", 4, 4).known_sr_exact is None
    assert describe("S", 4, 4).known_sr_upper == 4
    assert describe("S_hat", 4, 3).known_sr_exact == 3


def test_s_hat_singular_point_with_sympy():
    # independent oracle: solve grad = 0 on the affine charts x_k = 1
    for n in (2, 3, 4):
        d = 3
        xs = sympy.symbols(f"x1:{n + 2}")
        F = sum(xs[i - 1] * xs[i] ** (d - 1) for i in range(1, n)) + xs[n] ** d
        points = set()
        for k in range(n + 1):
            eqs = [sympy.diff(F, v).subs(xs[k], 1) for v in xs]
            rest = [v for v in xs if v != xs[k]]
            for sol in sympy.solve(eqs, rest, dict=True):
                vec = tuple(1 if v == xs[k] else sol.get(v, v) for v in xs)
                points.add(vec)
        assert points == {tuple(1 if i == 0 else 0 for i in range(n + 1))}
        assert describe("S_hat", n, d).sing_components[0] == s_hat_basis_point(n, 1)


def test_s_hat_basis_point_bounds():
    with pytest.raises(ValueError):
        s_hat_basis_point(3, 0)
    assert s_hat_basis_point(3, 4).codim == 3
