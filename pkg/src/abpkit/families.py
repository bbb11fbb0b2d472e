"""The explicit polynomial families and the example ABP, with their known facts.

Index conventions (0-based throughout):

* power sum and P(n, d) use x_0..x_N as written;
* S(n, d) uses x_0..x_{n+1} as written;
* S_hat(n, d) is written in x_1..x_{n+1}; here x_i is stored at index i-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abp import Abp, Edge
from .algebra import QQ
from .poly import LinearForm, Polynomial
from .subspace import LinearSubspace

# provenance tags for metadata values
PAPER = "paper-metadata"
COMPUTED = "computed"
CORRECTED = "corrected"

FAMILY_NAMES = ("power_sum", "P", "S", "S_hat")


def _var_power(i, k, n):
    e = [0] * n
    e[i] = k
    return tuple(e)


def _two_var_term(i, a, j, b, n):
    e = [0] * n
    e[i] += a
    e[j] += b
    return tuple(e)


def make_power_sum(n: int, d: int, field=QQ) -> Polynomial:
    """x_0^d + ... + x_n^d."""
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    N = n + 1
    return Polynomial(N, {_var_power(i, d, N): 1 for i in range(N)}, field)


def make_P(n: int, d: int, field=QQ) -> Polynomial:
    """x_0^d + sum_{k=1..n} x_{2k-1} x_{2k}^{d-1}, in 2n+1 variables."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    N = 2 * n + 1
    terms = {_var_power(0, d, N): 1}
    for k in range(1, n + 1):
        terms[_two_var_term(2 * k - 1, 1, 2 * k, d - 1, N)] = 1
    return Polynomial(N, terms, field)


def make_S(n: int, d: int, field=QQ) -> Polynomial:
    """Shioda polynomial sum_{i<n} x_i x_{i+1}^{d-1} + x_n x_0^{d-1} + x_{n+1}^d."""
    if n < 1 or d < 3:
        raise ValueError("need n >= 1 and d >= 3")
    N = n + 2
    terms: dict = {}
    for i in range(n):
        e = _two_var_term(i, 1, i + 1, d - 1, N)
        terms[e] = terms.get(e, 0) + 1
    e = _two_var_term(n, 1, 0, d - 1, N)
    terms[e] = terms.get(e, 0) + 1
    terms[_var_power(n + 1, d, N)] = 1
    return Polynomial(N, terms, field)


def make_S_hat(n: int, d: int, field=QQ) -> Polynomial:
    """S(n, d) with x_0 set to zero and dropped: n+1 variables x_1..x_{n+1} at indices 0..n."""
    if n < 1 or d < 3:
        raise ValueError("need n >= 1 and d >= 3")
    N = n + 1
    terms = {}
    for i in range(1, n):
        terms[_two_var_term(i - 1, 1, i, d - 1, N)] = 1
    terms[_var_power(n, d, N)] = 1
    return Polynomial(N, terms, field)


def figure1_abp() -> Abp:
    """The size-4 example ABP in variables x = x0, y = x1.

    Layer 1 and layer 2 list the upper vertex first.
    """
    h = QQ(1) / 2

    def lf(a, b):
        return LinearForm((a, b))

    edges = [
        Edge(0, 0, 0, lf(1, 1)),    # x + y
        Edge(0, 0, 1, lf(0, 1)),    # y
        Edge(1, 0, 0, lf(0, h)),    # y/2
        Edge(1, 0, 1, lf(1, 0)),    # x
        Edge(1, 1, 0, lf(h, 0)),    # x/2
        Edge(2, 0, 0, lf(-1, 0)),   # -x
        Edge(2, 1, 0, lf(1, -1)),   # x - y
    ]
    return Abp(2, [1, 2, 2, 1], edges)


@dataclass(frozen=True)
class FamilyDescriptor:
    """Ground-truth facts about one family member.

    ``codim_sing`` is a count; when the singular locus is empty it equals the
    variable count and ``sing_empty`` is set.  ``sources`` tags each fact as
    computed here, quoted from published statements, or corrected.
    """

    name: str
    n: int
    d: int
    num_vars: int
    codim_sing: int
    sing_empty: bool
    sing_components: tuple = ()
    degree_divisor: int | None = None
    codim_threshold: int | None = None
    known_sr_upper: int | None = None
    known_sr_exact: int | None = None
    sources: dict = field(default_factory=dict)
    notes: tuple = ()

    def polynomial(self, field=QQ) -> Polynomial:
        return MAKERS[self.name](self.n, self.d, field)


MAKERS = {"power_sum": make_power_sum, "P": make_P, "S": make_S, "S_hat": make_S_hat}


def describe(name: str, n: int, d: int) -> FamilyDescriptor:
    if name == "power_sum":
        make_power_sum(n, d)
        N = n + 1
        return FamilyDescriptor(
            name, n, d, N, codim_sing=N, sing_empty=True, known_sr_upper=N,
            sources={"codim_sing": PAPER, "known_sr_upper": COMPUTED})
    if name == "P":
        make_P(n, d)
        N = 2 * n + 1
        if d == 2:
            # every partial is linear and together they span all coordinates
            return FamilyDescriptor(
                name, n, d, N, codim_sing=N, sing_empty=True,
                degree_divisor=d, codim_threshold=n, known_sr_upper=n + 1, known_sr_exact=n + 1,
                sources={"codim_sing": CORRECTED, "degree_divisor": PAPER, "codim_threshold": PAPER,
                         "known_sr_upper": COMPUTED, "known_sr_exact": PAPER},
                notes=("for d = 2 the singular locus is empty, not Z(x0, x2, ...)",))
        sing = LinearSubspace.coordinate(range(0, N, 2), N)
        return FamilyDescriptor(
            name, n, d, N, codim_sing=n + 1, sing_empty=False, sing_components=(sing,),
            degree_divisor=d, codim_threshold=n, known_sr_upper=n + 1, known_sr_exact=n + 1,
            sources={"codim_sing": PAPER, "sing_components": PAPER, "degree_divisor": PAPER,
                     "codim_threshold": PAPER, "known_sr_upper": COMPUTED, "known_sr_exact": PAPER})
    if name == "S":
        make_S(n, d)
        N = n + 2
        upper = n // 2 + 2 if n % 2 == 0 else None
        exact = None
        if n == 2:
            exact = 3
        elif n == 4 and d >= 5:
            exact = 4
        return FamilyDescriptor(
            name, n, d, N, codim_sing=N, sing_empty=True, known_sr_upper=upper, known_sr_exact=exact,
            sources={"codim_sing": PAPER, "known_sr_upper": PAPER, "known_sr_exact": PAPER})
    if name == "S_hat":
        make_S_hat(n, d)
        N = n + 1
        # the singular point is x_1 = 1 (index 0), the start of the chain x_1 x_2^{d-1}
        point = LinearSubspace.coordinate(range(1, N), N)
        sr = n // 2 + 1 if n % 2 == 0 else None
        return FamilyDescriptor(
            name, n, d, N, codim_sing=n, sing_empty=False, sing_components=(point,),
            known_sr_upper=sr, known_sr_exact=sr,
            sources={"codim_sing": PAPER, "sing_components": CORRECTED,
                     "known_sr_upper": PAPER, "known_sr_exact": PAPER},
            notes=("singular point is [e_1] in x_1..x_{n+1} coordinates; "
                   "the point [e_{n-1}] is regular once n >= 3",))
    raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")


def s_hat_basis_point(n: int, k: int) -> LinearSubspace:
    """The point [e_k] of P^n in the 1-based coordinates x_1..x_{n+1} of S_hat(n, d)."""
    N = n + 1
    if not 1 <= k <= N:
        raise ValueError(f"no basis point e_{k} among x_1..x_{N}")
    return LinearSubspace.coordinate([i for i in range(N) if i != k - 1], N)
