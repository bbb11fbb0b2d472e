"""Strength, j-restricted and slice decompositions F = sum_k G_k H_k."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ, ExactMatrix, MismatchError, solve_linear
from .checks import Check
from .families import make_P
from .poly import LinearForm, Polynomial
from .subspace import LinearSubspace, contains_check


@dataclass(frozen=True)
class StrengthDecomposition:
    """Pairs (G_k, H_k) with sum G_k H_k meant to equal a degree-d form.

    ``restriction`` is j when every G_k has degree j; j = 1 marks a slice
    decomposition.
    """

    pairs: tuple
    degree: int
    restriction: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((g, h) for g, h in self.pairs))

    @property
    def length(self) -> int:
        return len(self.pairs)

    def total(self) -> Polynomial:
        g0 = self.pairs[0][0]
        acc = Polynomial.zero(g0.num_vars, g0.field)
        for g, h in self.pairs:
            acc = acc + g * h
        return acc

    def is_slice(self) -> bool:
        return self.restriction == 1

    def slices(self) -> list[LinearForm]:
        if any(g.degree != 1 for g, _ in self.pairs):
            raise ValueError("not a slice decomposition")
        return [LinearForm.from_polynomial(g) for g, _ in self.pairs]


def verify(F: Polynomial, dec: StrengthDecomposition) -> Check:
    """Check the shape constraints and the exact identity sum G_k H_k = F."""
    d = dec.degree
    if F.is_zero() or not F.is_homogeneous():
        return Check.failed("target not homogeneous")
    if F.degree != d:
        return Check.failed("degree mismatch", target=F.degree, declared=d)
    if dec.restriction is not None and not 1 <= dec.restriction <= d - 1:
        return Check.failed("restriction out of range", j=dec.restriction)
    if not dec.pairs:
        return Check.failed("identity mismatch", summands=0)
    for k, (g, h) in enumerate(dec.pairs):
        for name, p in (("G", g), ("H", h)):
            if p.num_vars != F.num_vars or p.field != F.field:
                return Check.failed("space mismatch", where=(k, name))
            if p.is_zero():
                return Check.failed("zero factor", where=(k, name))
            if not p.is_homogeneous():
                return Check.failed("factor not homogeneous", where=(k, name))
            if not 1 <= p.degree <= d - 1:
                return Check.failed("factor degree out of range", where=(k, name))
        if g.degree + h.degree != d:
            return Check.failed("degrees do not add up", where=(k,))
        if dec.restriction is not None and g.degree != dec.restriction:
            return Check.failed("restriction violated", where=(k, "G"))
    if dec.total() != F:
        return Check.failed("identity mismatch")
    return Check.passed(length=dec.length, restriction=dec.restriction)


def swap_factors(dec: StrengthDecomposition) -> StrengthDecomposition:
    """Exchange G_k and H_k: a j-restricted decomposition becomes (d-j)-restricted."""
    j = dec.restriction
    return StrengthDecomposition(tuple((h, g) for g, h in dec.pairs), dec.degree,
                                 None if j is None else dec.degree - j)


def _x(i, n, field):
    return Polynomial.variable(i, n, field)


def shioda_slice_decomposition(n: int, d: int, field=QQ) -> StrengthDecomposition:
    """The n/2 + 2 summand slice decomposition of S(n, d) for even n."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and at least 2")
    if d < 3:
        raise ValueError("need d >= 3")
    N = n + 2

    def x(i):
        return _x(i, N, field)

    pairs = [(x(2 * k + 1), x(2 * k + 2) ** (d - 1) + x(2 * k) * x(2 * k + 1) ** (d - 2))
             for k in range(n // 2)]
    pairs.append((x(n), x(0) ** (d - 1)))
    pairs.append((x(n + 1), x(n + 1) ** (d - 1)))
    return StrengthDecomposition(tuple(pairs), d, 1)


def s_hat_slice_decomposition(n: int, d: int, field=QQ) -> StrengthDecomposition:
    """The n/2 + 1 summand slice decomposition of S_hat(n, d) for even n (x_1 at index 0)."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and at least 2")
    if d < 3:
        raise ValueError("need d >= 3")
    N = n + 1

    def x(i):  # 1-based name x_i
        return _x(i - 1, N, field)

    pairs = []
    for k in range(n // 2):
        h = x(2 * k + 2) ** (d - 1)
        if k > 0:
            h = h + x(2 * k) * x(2 * k + 1) ** (d - 2)
        pairs.append((x(2 * k + 1), h))
    pairs.append((x(n + 1), x(n + 1) ** (d - 1)))
    return StrengthDecomposition(tuple(pairs), d, 1)


def p_restricted_decomposition(n: int, d: int, j: int, field=QQ) -> StrengthDecomposition:
    """x0^j * x0^(d-j) + sum_k (x_{2k-1} x_{2k}^(j-1)) * x_{2k}^(d-j)."""
    if not 1 <= j <= d - 1:
        raise ValueError(f"j must lie in [1, {d - 1}], got {j}")
    make_P(n, d)  # argument checks
    N = 2 * n + 1

    def x(i):
        return _x(i, N, field)

    pairs = [(x(0) ** j, x(0) ** (d - j))]
    for k in range(1, n + 1):
        pairs.append((x(2 * k - 1) * x(2 * k) ** (j - 1), x(2 * k) ** (d - j)))
    return StrengthDecomposition(tuple(pairs), d, j)


def slice_from_subspace(F: Polynomial, Q: LinearSubspace) -> StrengthDecomposition:
    """A slice decomposition whose slices are the defining forms of Q.

    The forms are completed to a coordinate system by the standard coordinates
    of the non-pivot columns; F is rewritten in those coordinates and each
    monomial is assigned to the first slice coordinate it contains.
    """
    if F.num_vars != Q.num_vars or F.field != Q.field:
        raise MismatchError("polynomial and subspace live in different spaces")
    if F.is_zero() or not F.is_homogeneous() or F.degree < 2:
        raise ValueError("need a nonzero form of degree at least 2")
    if Q.codim == 0 or not contains_check(F, Q):
        raise ValueError("F does not lie in the ideal of Q")
    n, f, r = F.num_vars, F.field, Q.codim
    free = Q.free_columns()
    # new coordinates y = M x: the r forms, then the complementary x_c
    M = [list(row) for row in Q.rows]
    for c in free:
        M.append([f.one if j == c else f.zero for j in range(n)])
    Mm = ExactMatrix(M, f, ncols=n)
    # x = M^{-1} y, column by column
    inv_cols = [solve_linear(Mm, [f.one if i == k else f.zero for i in range(n)]) for k in range(n)]
    x_in_y = [LinearForm(tuple(inv_cols[k][i] for k in range(n)), f) for i in range(n)]
    y_in_x = [LinearForm(tuple(row), f) for row in M]
    G = F.substitute_linear(x_in_y)
    buckets: list[dict] = [dict() for _ in range(r)]
    for e, c in G.items():
        k = next((i for i in range(r) if e[i]), None)
        if k is None:  # pragma: no cover
            raise ValueError("F does not lie in the ideal of Q")
        buckets[k][e[:k] + (e[k] - 1,) + e[k + 1:]] = c
    pairs = []
    for k, terms in enumerate(buckets):
        if not terms:
            continue
        h = Polynomial(n, terms, f).substitute_linear(y_in_x)
        pairs.append((Q.forms[k].to_polynomial(), h))
    return StrengthDecomposition(tuple(pairs), F.degree, 1)


def subspace_from_slice(dec: StrengthDecomposition) -> LinearSubspace:
    """Z(L_1, ..., L_r) for the slices of a slice decomposition."""
    if dec.restriction not in (1, None):
        raise ValueError("not a slice decomposition")
    slices = dec.slices()
    return LinearSubspace(slices, slices[0].num_vars, slices[0].field)
