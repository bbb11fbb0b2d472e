"""Singular-locus generators and a pure-power radical reduction.

``pure_power_reduce`` only knows two rewrites, both of which keep the common
zero set unchanged:

1. a generator c * L^e with L a linear form is replaced by L;
2. the remaining generators are reduced modulo the linear forms found so far.

That is enough for every family handled in this package.  Anything else is
reported as ``unreduced`` instead of guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import Check
from .poly import LinearForm, Polynomial
from .subspace import LinearSubspace, contains_check

REDUCED = "reduced"
UNREDUCED = "unreduced"


@dataclass
class SingularLocusReport:
    generators: list
    reduced_linear_forms: list = field(default_factory=list)
    codim: int | str | None = None
    status: str = UNREDUCED
    remaining: list = field(default_factory=list)
    subspace: LinearSubspace | None = None


def sing_generators(F: Polynomial) -> list[Polynomial]:
    """The nonzero first partials of F."""
    if not F.is_homogeneous():
        raise ValueError("sing_generators needs a homogeneous polynomial")
    return [g for g in F.gradient() if not g.is_zero()]


def as_linear_power(g: Polynomial) -> LinearForm | None:
    """L when g = c * L^e for a linear form L, otherwise None."""
    if g.is_zero() or not g.is_homogeneous():
        return None
    e = g.degree
    if e == 0:
        return None
    n, f = g.num_vars, g.field
    if e == 1:
        return LinearForm.from_polynomial(g)
    lead = next((i for i in range(n) if g.coefficient(tuple(e if j == i else 0 for j in range(n))) != 0), None)
    if lead is None:
        return None
    c = g.coefficient(tuple(e if j == lead else 0 for j in range(n)))
    if f.characteristic and e % f.characteristic == 0:
        # the x_lead^(e-1) x_j coefficients vanish; accept only a single pure power
        return LinearForm.variable(lead, n, f) if len(g) == 1 else None
    coeffs = [f.zero] * n
    coeffs[lead] = f.one
    for j in range(n):
        if j != lead:
            ex = [0] * n
            ex[lead] = e - 1
            ex[j] += 1
            coeffs[j] = g.coefficient(tuple(ex)) / (c * e)
    L = LinearForm(tuple(coeffs), f)
    if L.to_polynomial() ** e * c != g:
        return None
    return L


def _reduce_mod(g: Polynomial, Z: LinearSubspace) -> Polynomial:
    """g with every pivot variable of Z eliminated (x_p -> -sum row[c] x_c)."""
    if Z.codim == 0:
        return g
    n, f = g.num_vars, g.field
    images = [Polynomial.variable(i, n, f) for i in range(n)]
    for row, p in zip(Z.rows, Z.pivots):
        img = Polynomial.zero(n, f)
        for c in range(n):
            if c != p and row[c] != 0:
                img = img - Polynomial.variable(c, n, f) * row[c]
        images[p] = img
    return g.compose(images)


def pure_power_reduce(gens, num_vars: int | None = None, field=None) -> SingularLocusReport:
    gens = [g for g in gens if not g.is_zero()]
    if num_vars is None or field is None:
        if not gens:
            raise ValueError("num_vars and field are required for an empty generator list")
        num_vars, field = gens[0].num_vars, gens[0].field
    forms: list[LinearForm] = []
    Z = LinearSubspace([], num_vars, field)
    pending = list(gens)
    while True:
        pending = [h for h in (_reduce_mod(g, Z) for g in pending) if not h.is_zero()]
        hit = None
        for i, g in enumerate(pending):
            L = as_linear_power(g)
            if L is not None:
                hit = i
                break
        if hit is None:
            break
        forms.append(L)
        pending.pop(hit)
        Z = LinearSubspace(forms, num_vars, field)
    report = SingularLocusReport(list(gens), Z.forms, remaining=pending)
    if pending:
        report.status = UNREDUCED
        report.codim = None
        return report
    report.status = REDUCED
    report.codim = "empty" if Z.is_empty() else Z.codim
    report.subspace = Z
    return report


def verify_claimed_sing(F: Polynomial, claimed: LinearSubspace) -> Check:
    """Check Sing(F) = claimed in both directions.

    Forward: every partial vanishes identically on ``claimed``.  Backward:
    the pure-power reduction of the partials lands exactly on ``claimed``.
    """
    gens = sing_generators(F)
    for i, g in enumerate(gens):
        if not contains_check(g, claimed):
            return Check.failed("a partial derivative does not vanish on the claimed locus", where=i)
    report = pure_power_reduce(gens, F.num_vars, F.field)
    if report.status != REDUCED:
        return Check.inconclusive("reduction did not finish", remaining=len(report.remaining))
    if report.subspace != claimed:
        return Check.failed("singular locus is strictly larger than the claimed locus",
                            computed=str(report.subspace))
    return Check.passed(codim=report.codim)
