"""The acceptance suite: ten end-to-end criteria, each with its own time limit.

Each ``criterion_*`` function returns a ``CriterionResult``; ``run_all``
runs them in order.  A criterion passes only if its checks hold *and* it
finishes inside its limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import randgen
from .abp import expand, forward_polynomials, validate
from .algebra import GF, QQ
from .bounds import (
    kumar_abp_lb,
    p_family_report,
    p_small_degree_form,
    p_small_degree_gate,
    power_sum_report,
    shioda_report,
)
from .chain import extract_chain, synthesize_abp
from .decomp import (
    p_restricted_decomposition,
    shioda_slice_decomposition,
    slice_from_subspace,
    subspace_from_slice,
    verify,
)
from .families import describe, figure1_abp, make_P, make_power_sum, make_S, make_S_hat, s_hat_basis_point
from .poly import Polynomial, pencil_coefficients, polar_pairing
from .singular import verify_claimed_sing
from .subspace import (
    LinearSubspace,
    build_chart_systems,
    contains_check,
    exhaustive_search,
    gaussian_binomial,
    propagation_refute,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    elapsed: float
    limit: float
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and self.elapsed < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"[{verdict}] {self.number:2d}. {self.title} ({self.elapsed:.2f}s / {self.limit:g}s)"
        if not self.ok:
            text += f": {len(self.failures)} failed check(s); first: {self.failures[0]}"
        elif not self.passed:
            text += ": time limit exceeded"
        return text

    def to_dict(self, timings=True) -> dict:
        out = {"criterion": self.number, "title": self.title, "passed": self.passed,
               "failures": list(self.failures), "notes": list(self.notes), "limit_s": self.limit}
        if timings:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def _timed(number, title, limit):
    def wrap(fn):
        def run(seed=None):
            failures, notes = [], []
            t0 = time.perf_counter()
            fn(failures, notes, seed)
            return CriterionResult(number, title, not failures, time.perf_counter() - t0, limit,
                                   failures, notes)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.number = number
        return run
    return wrap


def _expect(failures, cond, message):
    if not cond:
        failures.append(message)


@_timed(1, "the example ABP validates with size 4 and expands to x^3 - x^2 y - 3/2 x y^2", 1.0)
def criterion_fig1(failures, notes, seed):
    a = figure1_abp()
    check = validate(a)
    _expect(failures, check.ok and a.size == 4, f"validate: {check}, size {a.size}")
    x, y = Polynomial.variables(2)
    target = x ** 3 - x ** 2 * y - QQ(3) / 2 * x * y ** 2
    got = expand(a)
    _expect(failures, got == target, f"expanded to {got}")


@_timed(2, "Shioda slice decompositions verify with n/2 + 2 summands", 5.0)
def criterion_shioda(failures, notes, seed):
    for n in (2, 4, 6):
        for d in (3, 4, 5, 6):
            dec = shioda_slice_decomposition(n, d)
            check = verify(make_S(n, d), dec)
            _expect(failures, check.ok, f"S({n},{d}): {check.reason}")
            _expect(failures, dec.length == n // 2 + 2, f"S({n},{d}): {dec.length} summands")


@_timed(3, "P-family j-restricted decompositions verify with n + 1 summands", 10.0)
def criterion_p_restricted(failures, notes, seed):
    count = 0
    for n in range(1, 5):
        F_by_d = {d: make_P(n, d) for d in range(2, 7)}
        for d, F in F_by_d.items():
            for j in range(1, d):
                dec = p_restricted_decomposition(n, d, j)
                check = verify(F, dec)
                count += 1
                _expect(failures, check.ok, f"P({n},{d}) j={j}: {check.reason}")
                _expect(failures, dec.length == n + 1, f"P({n},{d}) j={j}: {dec.length} summands")
    notes.append(f"{count} decompositions checked")


@_timed(4, "bound calculators reproduce the displayed numbers", 1.0)
def criterion_bounds(failures, notes, seed):
    for n in range(0, 7):
        for d in range(2, 17):
            expect = (d - 1) * (-(-(n + 1) // 2))
            got = kumar_abp_lb(d, describe("power_sum", n, d).codim_sing)
            _expect(failures, got == expect, f"kumar power sum n={n} d={d}: {got} != {expect}")
            _expect(failures, power_sum_report(n, d).total_abp_lower == expect,
                    f"power sum report n={n} d={d}")
    for d in range(3, 17):
        rep = shioda_report(4, d)
        _expect(failures, rep.total_abp_lower == 3 * (d - 1) + 2,
                f"shioda_report(4,{d}) total {rep.total_abp_lower}")
        if rep.status != "proven":
            notes.append(f"shioda_report(4,{d}) matches but is marked {rep.status}: slice rank 4 is unproven there")
    for d in range(3, 17):
        rep = shioda_report(2, d)
        _expect(failures, rep.total_abp_lower == 2 * (d - 1) + 2 and rep.status == "proven",
                f"shioda_report(2,{d}) total {rep.total_abp_lower}")
    gated = 0
    for n in range(1, 7):
        for d in range(2, 17):
            if not p_small_degree_gate(n, d):
                continue
            gated += 1
            expect = (d - 1) * (-(-(n + 1) // 2)) + 2 * ((n + 1) // 2)
            rep = p_family_report(n, d)
            got = rep.closed_forms["small_degree"]["value"]
            _expect(failures, got == expect == p_small_degree_form(n, d),
                    f"P small-degree form n={n} d={d}: {got} != {expect}")
            if d >= 3:
                _expect(failures, rep.total_abp_lower >= got,
                        f"P n={n} d={d}: per-j total {rep.total_abp_lower} below closed form {got}")
    notes.append(f"{gated} gated (n, d) pairs for the small-degree form")


@_timed(5, "singular-locus claims hold via verify_claimed_sing", 5.0)
def criterion_singular(failures, notes, seed):
    for n in range(0, 7):
        for d in range(2, 7):
            F = make_power_sum(n, d)
            empty = LinearSubspace.coordinate(range(n + 1), n + 1)
            c = verify_claimed_sing(F, empty)
            _expect(failures, c.ok and empty.is_empty(), f"power sum n={n} d={d}: {c.status} {c.reason}")
    for d in range(2, 7):
        F = make_P(1, d)
        c = verify_claimed_sing(F, LinearSubspace.coordinate([0, 2], 3))
        _expect(failures, c.ok, f"x0^d + x1 x2^(d-1), d={d}: {c.reason}")
    for n in range(1, 7):
        for d in range(2, 7):
            claimed = LinearSubspace.coordinate(range(0, 2 * n + 1, 2), 2 * n + 1)
            c = verify_claimed_sing(make_P(n, d), claimed)
            _expect(failures, c.ok and claimed.codim == n + 1, f"P({n},{d}): {c.reason}")
    # the point [e_{n-1}] in the coordinates x_1..x_{n+1}
    for n in range(1, 7):
        for d in range(3, 7):
            F = make_S_hat(n, d)
            if n - 1 < 1:
                failures.append(f"S_hat({n},{d}): the point [e_{n - 1}] does not exist in x_1..x_{n + 1}")
                continue
            c = verify_claimed_sing(F, s_hat_basis_point(n, n - 1))
            _expect(failures, c.ok, f"S_hat({n},{d}) at [e_{n - 1}]: {c.status}: {c.reason}")
            fixed = verify_claimed_sing(F, describe("S_hat", n, d).sing_components[0])
            if not c.ok and fixed.ok:
                notes.append(f"S_hat({n},{d}): singular point is [e_1], not [e_{n - 1}]")


@_timed(6, "chain <-> ABP round trip on 100 random ABPs", 60.0)
def criterion_chain(failures, notes, seed):
    r = randgen.rng(seed)
    done = 0
    while done < 100:
        a = randgen.rand_abp(r, num_vars=r.randint(1, 3), max_layers=5, max_width=3)
        if any(g.is_zero() for layer in forward_polynomials(a) for g in layer):
            continue  # dead vertices are dropped by extraction; keep live ABPs only
        done += 1
        b = synthesize_abp(extract_chain(a))
        _expect(failures, expand(b) == expand(a), f"ABP #{done}: polynomial changed")
        _expect(failures, b.widths == a.widths, f"ABP #{done}: widths {b.widths} != {a.widths}")


@_timed(7, "slice <-> subspace round trip for S(4,5)", 1.0)
def criterion_slice_subspace(failures, notes, seed):
    F = make_S(4, 5)
    dec = shioda_slice_decomposition(4, 5)
    Q = subspace_from_slice(dec)
    A0 = LinearSubspace.coordinate([1, 3, 4, 5], 6)
    _expect(failures, Q == A0, f"subspace_from_slice gave {Q}")
    _expect(failures, contains_check(F, Q), "contains_check failed")
    back = slice_from_subspace(F, Q)
    c = verify(F, back)
    _expect(failures, c.ok and back.length == 4, f"slice_from_subspace: {c.reason}, {back.length} summands")


@_timed(8, "propagation refutes every rational line in Z(P(1,d))", 5.0)
def criterion_refute(failures, notes, seed):
    for d in (3, 4, 5, 6):
        systems = build_chart_systems(make_P(1, d), 1)
        res = propagation_refute(systems)
        _expect(failures, len(systems) == 3, f"d={d}: {len(systems)} charts")
        _expect(failures, res.refuted, f"d={d}: {res.status} at chart {res.chart_index}")


@_timed(9, "finite-field search oracles (heuristic) and Gaussian-binomial counts", 120.0)
def criterion_finite_field(failures, notes, seed):
    def run(F, r, p, label):
        stats = {}
        hits = exhaustive_search(F, r, stats=stats)
        expect = gaussian_binomial(F.num_vars, r, p)
        _expect(failures, stats["examined"] == stats["total"] == expect,
                f"{label} over GF({p}): examined {stats['examined']}, formula {expect}")
        return hits, stats["examined"]

    for p in (2, 3):
        f = GF(p)
        for d in (3, 4, 5, 6):
            hits, n_cand = run(make_P(1, d, f), 1, p, f"P(1,{d})")
            _expect(failures, not hits, f"P(1,{d}) over GF({p}): found {hits}")
            _expect(failures, n_cand == (7 if p == 2 else 13), f"P(1,{d}) over GF({p}): {n_cand} candidates")
        hits, _ = run(make_P(2, 3, f), 2, p, "P(2,3)")
        _expect(failures, not hits, f"P(2,3) over GF({p}): found {hits}")
        hits, n_cand = run(make_S(4, 5, f), 4, p, "S(4,5)")
        A0 = LinearSubspace.coordinate([1, 3, 4, 5], 6, f)
        _expect(failures, A0 in hits, f"S(4,5) over GF({p}): Z(x1,x3,x4,x5) not found")
        notes.append(f"S(4,5) over GF({p}): {len(hits)} of {n_cand} codim-4 subspaces lie in Z(F) (heuristic)")


@_timed(10, "property suites: Euler, pencil sum, layer cut, bound symmetry, refutation soundness", 60.0)
def criterion_properties(failures, notes, seed):
    r = randgen.rng(seed)
    for i in range(200):
        n, d = r.randint(1, 4), r.randint(1, 5)
        F = randgen.rand_form(r, n, d)
        v = randgen.rand_point(r, n)
        _expect(failures, polar_pairing(F, v, v) == d * F.evaluate(v), f"Euler identity #{i}")
    for i in range(100):
        n, d = r.randint(1, 4), r.randint(1, 5)
        F = randgen.rand_form(r, n, d)
        p, q = randgen.rand_point(r, n), randgen.rand_point(r, n)
        c = pencil_coefficients(F, p, q)
        _expect(failures, sum(c) == F.evaluate([a + b for a, b in zip(p, q)]), f"pencil sum #{i}")
    for i in range(50):
        a = randgen.rand_nonzero_abp(r, num_vars=r.randint(1, 3))
        total = expand(a)
        for j in range(1, a.depth):
            cut = sum((expand(a, a.source, (j, v)) * expand(a, (j, v), a.sink) for v in range(a.widths[j])),
                      Polynomial.zero(a.num_vars))
            _expect(failures, cut == total, f"layer cut ABP #{i} layer {j}")
    for n in range(1, 7):
        for d in range(2, 17):
            reps = [power_sum_report(n, d), p_family_report(n, d)]
            if n % 2 == 0 and d >= 3:
                reps.append(shioda_report(n, d))
            for rep in reps:
                _expect(failures, rep.is_symmetric(), f"{rep.family}({n},{d}) not symmetric")
                _expect(failures, rep.total_abp_lower == sum(rep.per_j_lower.values()),
                        f"{rep.family}({n},{d}) total")
    refuted = 0
    for i in range(500):
        nv = r.randint(2, 4)
        codim = r.randint(1, min(2, nv - 1))
        d = r.randint(2, 3)
        Q = randgen.rand_subspace(r, nv, codim)
        F = randgen.planted_form(r, Q, d)
        if propagation_refute(build_chart_systems(F, codim)).refuted:
            refuted += 1
            failures.append(f"planted instance #{i} refuted: F = {F}, Q = {Q}")
    notes.append(f"500 planted instances, {refuted} refuted")


CRITERIA = [criterion_fig1, criterion_shioda, criterion_p_restricted, criterion_bounds, criterion_singular,
            criterion_chain, criterion_slice_subspace, criterion_refute, criterion_finite_field,
            criterion_properties]


def run_all(seed=None, only=None) -> list[CriterionResult]:
    return [c(seed) for c in CRITERIA if only is None or c.number in only]
