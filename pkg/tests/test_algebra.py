import pickle
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from abpkit.algebra import GF, QQ, ExactMatrix, MismatchError, PrimeFieldElement, field_from_tag, nullspace, rank, \
    rref, solve_linear


def test_rref_identity():
    m, piv = rref(ExactMatrix.identity(2))
    assert m == ExactMatrix.identity(2) and piv == [0, 1]


def test_rref_rank_one():
    m, piv = rref(ExactMatrix([[1, 2], [2, 4]]))
    assert m == ExactMatrix([[1, 2], [0, 0]]) and piv == [0]


def test_rref_mod_2_by_hand():
    # [[1,1],[1,2]] is [[1,1],[1,0]] mod 2; subtracting rows gives [[1,0],[0,1]]
    F2 = GF(2)
    m, piv = rref(ExactMatrix([[1, 1], [1, 2]], F2))
    assert m == ExactMatrix([[1, 0], [0, 1]], F2) and piv == [0, 1]


def test_solve_linear_examples():
    b = [Fraction(3), Fraction(-1, 2)]
    assert solve_linear(ExactMatrix.identity(2), b) == b
    x = solve_linear(ExactMatrix([[1, 1]]), [2])
    assert x[0] + x[1] == 2
    assert solve_linear(ExactMatrix([[1], [1]]), [0, 1]) is None


def test_solve_linear_free_variables_are_zero():
    # x0 + x1 = 2 -> canonical solution has the free column x1 = 0
    assert solve_linear(ExactMatrix([[1, 1]]), [2]) == [2, 0]


def test_prime_field_arithmetic():
    F7 = GF(7)
    a, b = F7(3), F7(5)
    assert a + b == F7(1) and a * b == F7(1) and a / b == F7(3) * F7(3)
    assert str(F7(10)) == "3 mod 7"
    with pytest.raises(ZeroDivisionError):
        a / F7(0)
    with pytest.raises(MismatchError):
        F7(1) + GF(5)(1)


def test_prime_field_rejects_bad_modulus():
    for p in (1, 4, 2 ** 31 + 11):
        with pytest.raises(ValueError):
            GF(p)


def test_scalar_strings_round_trip():
    assert QQ.format(Fraction(-3, 2)) == "-3/2" and QQ.format(Fraction(4)) == "4"
    assert QQ.parse("-3/2") == Fraction(-3, 2)
    F5 = GF(5)
    assert F5.parse(F5.format(F5(3))) == F5(3)
    assert field_from_tag("Fp:5") is F5 and field_from_tag("Q") == QQ


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(fractions, fractions)
def test_rational_round_trip(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a


@given(st.integers(0, 100), st.integers(1, 100))
def test_prime_field_round_trip(a, b):
    F = GF(101)
    assert (F(a) * F(b)) / F(b) == F(a)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80)
@given(matrices)
def test_rref_against_sympy(rows):
    m, piv = rref(ExactMatrix(rows))
    ref, ref_piv = sympy.Matrix(rows).rref()
    assert piv == list(ref_piv)
    assert [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in ref.row(i)]
            for i in range(ref.rows)] == [list(m[i, j] for j in range(m.ncols)) for i in range(m.nrows)]


@settings(max_examples=80)
@given(matrices)
def test_rref_idempotent_and_rank_of_transpose(rows):
    m = ExactMatrix(rows)
    once, _ = rref(m)
    assert rref(once)[0] == once
    assert rank(m) == rank(m.transpose())


@settings(max_examples=80)
@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_linear_solutions_check_out(rows, rhs):
    a = ExactMatrix(rows)
    b = [Fraction(x) for x in rhs[:a.nrows]]
    x = solve_linear(a, b)
    if x is not None:
        assert a @ x == b
    else:
        aug = ExactMatrix([list(r) + [bi] for r, bi in zip(rows, b)])
        assert rank(aug) > rank(a)


@settings(max_examples=50)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_nullspace_mod_p(rows, p):
    F = GF(p)
    m = ExactMatrix([[F(x) for x in r] for r in rows], F)
    basis = nullspace(m)
    assert len(basis) == m.ncols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m @ v)


def test_element_is_picklable():
    x = PrimeFieldElement(3, 7)
    assert pickle.loads(pickle.dumps(x)) == x
    assert pickle.loads(pickle.dumps(GF(7))) is GF(7)
