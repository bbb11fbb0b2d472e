"""Lower-bound calculators for strength, restricted strength and homogeneous ABP size.

Everything is exact integer arithmetic: roots and logarithms are extracted by
integer powering, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .families import COMPUTED, PAPER, describe

USER_CLAIMED = "user-claimed"
PROVEN = "proven"
CONJECTURE = "conjecture"


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def int_root_floor(x: int, k: int) -> int:
    """Largest m >= 0 with m**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    lo, hi = 1, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def int_log_ceil(k: int, s: int) -> int:
    """Smallest r >= 0 with k**r >= s, for k >= 2 and s >= 1."""
    if k < 2 or s < 1:
        raise ValueError("need k >= 2 and s >= 1")
    r, power = 0, 1
    while power < s:
        power *= k
        r += 1
    return r


def root_power_floor(d: int, num: int, den: int) -> int:
    """floor(d ** (num / den)) computed exactly."""
    return int_root_floor(d ** num, den)


def strength_lb_sing(codim_sing: int) -> int:
    """ceil(codim_sing / 2)."""
    if codim_sing < 0:
        raise ValueError("codim_sing must be non-negative")
    return ceil_div(codim_sing, 2)


def kumar_abp_lb(d: int, codim_sing: int) -> int:
    """(d - 1) * ceil(codim_sing / 2)."""
    if d < 2:
        raise ValueError("need d >= 2")
    return (d - 1) * strength_lb_sing(codim_sing)


def restricted_strength_lb(k: int, c: int, s: int) -> int:
    """min(c + 1, ceil(log_k s)); the k = 1 branch is the slice-rank bound c + 1."""
    if s < 2:
        raise ValueError("need s >= 2")
    if c < 0 or k < 1:
        raise ValueError("need c >= 0 and k >= 1")
    if k == 1:
        return c + 1
    return min(c + 1, int_log_ceil(k, s))


@dataclass
class BoundInput:
    d: int
    n_vars: int
    codim_sing: int | None = None
    c: int | None = None
    s: int | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("need d >= 2")
        if self.codim_sing is not None and not 0 <= self.codim_sing <= self.n_vars:
            raise ValueError("codim_sing must lie in [0, n_vars]")

    def require(self, *names):
        missing = [x for x in names if getattr(self, x) is None]
        if missing:
            raise ValueError(f"formula needs {', '.join(missing)}")


@dataclass
class BoundReport:
    d: int
    per_j_lower: dict
    total_abp_lower: int
    formula_trace: list = field(default_factory=list)
    closed_forms: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    status: str = PROVEN
    family: str | None = None
    n: int | None = None

    def is_symmetric(self) -> bool:
        return all(self.per_j_lower[j] == self.per_j_lower[self.d - j] for j in self.per_j_lower)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "status": self.status,
            "per_j_lower": {str(j): v for j, v in sorted(self.per_j_lower.items())},
            "total": self.total_abp_lower,
            "closed_forms": self.closed_forms,
            "formula_trace": [list(t) for t in self.formula_trace],
            "warnings": list(self.warnings),
        }


def aggregate(inp: BoundInput) -> BoundReport:
    """per_j = best available bound on str_j, symmetrized under j <-> d - j; total = sum."""
    inp.require("codim_sing")
    d = inp.d
    raw, trace = {}, []
    for j in range(1, d):
        value = strength_lb_sing(inp.codim_sing)
        trace.append((j, "codim-sing", value))
        if inp.c is not None and inp.s is not None:
            r = restricted_strength_lb(j, inp.c, inp.s)
            trace.append((j, "restricted", r))
            value = max(value, r)
        raw[j] = value
    per_j = {}
    for j in range(1, d):
        per_j[j] = max(raw[j], raw[d - j])
        if per_j[j] != raw[j]:
            trace.append((j, "symmetry", per_j[j]))
    return BoundReport(d, per_j, sum(per_j.values()), trace)


def power_sum_report(n: int, d: int) -> BoundReport:
    desc = describe("power_sum", n, d)
    rep = aggregate(BoundInput(d, desc.num_vars, desc.codim_sing,
                               provenance={"codim_sing": desc.sources["codim_sing"]}))
    rep.family, rep.n = "power_sum", n
    rep.closed_forms["kumar"] = kumar_abp_lb(d, desc.codim_sing)
    return rep


def p_small_degree_form(n: int, d: int) -> int:
    """(d-1) ceil((n+1)/2) + 2 floor((n+1)/2)."""
    return (d - 1) * ceil_div(n + 1, 2) + 2 * ((n + 1) // 2)


def p_small_degree_gate(n: int, d: int) -> bool:
    """d <= 2^((n+1)/2), i.e. d^2 <= 2^(n+1)."""
    return d * d <= 2 ** (n + 1)


def p_general_form(n: int, d: int, upper_den: int | None = None):
    """The three-part bound with the middle sum running to floor(d^(2/upper_den)).

    upper_den defaults to n + 1.  Returns (value, trace, clamped) where
    clamped lists the j whose summand was negative and replaced by 0.
    """
    upper_den = n + 1 if upper_den is None else upper_den
    h = ceil_div(n + 1, 2)
    r1 = root_power_floor(d, 1, n + 1)
    r2 = root_power_floor(d, 2, upper_den)
    value = (d - 1) * h + 2 * ((n + 1) // 2) * r1
    trace, clamped = [("base", (d - 1) * h), ("low-j", 2 * ((n + 1) // 2) * r1)], []
    for j in range(r1 + 1, r2 + 1):
        term = int_log_ceil(j, d) - h
        if term < 0:
            clamped.append(j)
            term = 0
        trace.append((j, term))
        value += term
    return value, trace, clamped


def p_family_report(n: int, d: int) -> BoundReport:
    desc = describe("P", n, d)
    inp = BoundInput(d, desc.num_vars, desc.codim_sing, c=desc.codim_threshold, s=desc.degree_divisor,
                     provenance={k: desc.sources[k] for k in ("codim_sing", "codim_threshold", "degree_divisor")})
    rep = aggregate(inp)
    rep.family, rep.n = "P", n
    total = rep.total_abp_lower

    small = p_small_degree_form(n, d)
    gate = p_small_degree_gate(n, d)
    rep.closed_forms["small_degree"] = {"value": small, "gate": gate, "applicable": gate and d >= 3}
    if gate and d >= 3:
        if total < small:  # pragma: no cover - would mean the aggregation is wrong
            raise AssertionError(f"total {total} below the small-degree form {small}")
    elif gate:
        rep.warnings.append("small-degree form needs j = 1 and j = d-1 to differ; not applied for d = 2")

    for key, den in (("general", n + 1), ("general_proof_exponent", n + 2)):
        value, trace, clamped = p_general_form(n, d, den)
        r2 = root_power_floor(d, 2, den)
        applicable = 2 * r2 < d
        rep.closed_forms[key] = {"value": value, "upper_limit": r2, "applicable": applicable}
        rep.formula_trace.append((key, "three-part-sum", value))
        if clamped:
            rep.formula_trace.append((key, "clamped-negative-terms", tuple(clamped)))
        if applicable and total < value:  # pragma: no cover
            raise AssertionError(f"total {total} below the {key} form {value}")
        if not applicable:
            rep.warnings.append(f"{key}: summation range reaches d/2 and overlaps its mirror image;"
                                f" value {value} is not implied (total {total})")
    rep.warnings.append("general form: stated upper limit uses d^(2/(n+1)); "
                        "the derivation uses d^(2/(n+2)); both are reported")
    return rep


def shioda_report(n: int, d: int) -> BoundReport:
    """Bounds for S(n, d), n even: middle j from the empty singular locus, ends from slice rank."""
    if n % 2:
        raise ValueError("n must be even")
    desc = describe("S", n, d)
    mid = strength_lb_sing(desc.codim_sing)
    status, ends = PROVEN, None
    if desc.known_sr_exact is not None:
        ends = desc.known_sr_exact
    else:
        status = CONJECTURE
        ends = n // 2 + 2
    per_j, trace = {}, []
    for j in range(1, d):
        if j in (1, d - 1):
            per_j[j] = max(ends, mid)
            trace.append((j, "slice-rank" if status == PROVEN else "conjectured-slice-rank", per_j[j]))
        else:
            per_j[j] = mid
            trace.append((j, "codim-sing", mid))
    rep = BoundReport(d, per_j, sum(per_j.values()), trace, status=status, family="S", n=n)
    rep.closed_forms["displayed"] = (n + 2) // 2 * (d - 1) + 2
    if status == CONJECTURE:
        rep.warnings.append("slice rank n/2 + 2 is conjectured for this n; the total is not a theorem")
    return rep


def family_report(name: str, n: int, d: int) -> BoundReport:
    name = {"powersum": "power_sum", "Shat": "S_hat"}.get(name, name)
    if name == "power_sum":
        return power_sum_report(n, d)
    if name == "P":
        return p_family_report(n, d)
    if name == "S":
        return shioda_report(n, d)
    raise ValueError(f"no bound calculator for family {name!r}")


__all__ = [
    "BoundInput", "BoundReport", "USER_CLAIMED", "PAPER", "COMPUTED", "PROVEN", "CONJECTURE",
    "strength_lb_sing", "kumar_abp_lb", "restricted_strength_lb", "int_log_ceil", "int_root_floor",
    "aggregate", "power_sum_report", "p_family_report", "shioda_report", "family_report",
    "p_small_degree_form", "p_small_degree_gate", "p_general_form",
]
