"""Linear subspaces inside hypersurfaces.

Containment is ideal-theoretic: Q = Z(L_1..L_r) lies in Z(F) when F composed
with a parametrization of Q is the zero polynomial, i.e. F is in <L_1..L_r>.

Over a prime field every codim-r subspace is enumerated once through its
reduced echelon form.  Over QQ the same echelon charts turn containment into
polynomial equations in the free echelon entries, and a small propagation
solver tries to refute them.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .algebra import QQ, ExactMatrix, MismatchError, _rref_in_place, nullspace
from .poly import LinearForm, Polynomial


class BudgetExceeded(RuntimeError):
    """Raised when a search would examine more candidates than allowed.

    ``found`` holds the hits among the ``examined`` candidates already checked.
    """

    def __init__(self, total: int, budget: int, examined: int = 0, found=None):
        super().__init__(f"{total} candidates exceed the budget of {budget}")
        self.total = total
        self.budget = budget
        self.examined = examined
        self.found = list(found or [])


class LinearSubspace:
    """The projective linear space cut out by a set of linear forms.

    The forms are stored in reduced echelon form, so two subspaces are equal
    exactly when their stored rows are equal.
    """

    __slots__ = ("num_vars", "field", "rows", "pivots")

    def __init__(self, forms, num_vars: int | None = None, field=None):
        forms = list(forms)
        if field is None:
            field = next((g.field for g in forms if isinstance(g, LinearForm)), QQ)
        rows = []
        for g in forms:
            if isinstance(g, Polynomial):
                g = LinearForm.from_polynomial(g)
            if isinstance(g, LinearForm):
                if g.field != field:
                    raise MismatchError("forms over different fields")
                rows.append(list(g.coeffs))
            else:
                rows.append([field(c) for c in g])
        if num_vars is None:
            if not rows:
                raise ValueError("num_vars is required when no forms are given")
            num_vars = len(rows[0])
        if any(len(r) != num_vars for r in rows):
            raise MismatchError("forms of different lengths")
        pivots = _rref_in_place(rows, num_vars, field.zero, field.one)
        self.num_vars = num_vars
        self.field = field
        self.rows = tuple(tuple(r) for r in rows[:len(pivots)])
        self.pivots = tuple(pivots)

    @classmethod
    def _from_echelon(cls, rows, pivots, num_vars, field):
        q = cls.__new__(cls)
        q.num_vars = num_vars
        q.field = field
        q.rows = rows
        q.pivots = pivots
        return q

    @classmethod
    def whole_space(cls, num_vars, field=QQ):
        return cls([], num_vars, field)

    @classmethod
    def coordinate(cls, indices, num_vars, field=QQ):
        """Z(x_i : i in indices)."""
        return cls([LinearForm.variable(i, num_vars, field) for i in indices], num_vars, field)

    @classmethod
    def span_of_points(cls, points, num_vars=None, field=QQ):
        """The smallest linear space containing the given (affine representatives of) points."""
        points = [list(p) for p in points]
        if num_vars is None:
            num_vars = len(points[0])
        if not points:
            return cls([LinearForm.variable(i, num_vars, field) for i in range(num_vars)], num_vars, field)
        forms = nullspace(ExactMatrix(points, field, ncols=num_vars))
        return cls(forms, num_vars, field)

    @property
    def forms(self) -> list[LinearForm]:
        return [LinearForm(r, self.field) for r in self.rows]

    @property
    def codim(self) -> int:
        return len(self.rows)

    @property
    def projective_dim(self) -> int:
        """-1 for the empty projective set (all coordinates vanish)."""
        return self.num_vars - 1 - self.codim

    def is_empty(self) -> bool:
        return self.codim == self.num_vars

    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.num_vars) if c not in piv]

    def parametrization(self) -> list[LinearForm]:
        """Images of x_0..x_n as linear forms in ``num_vars - codim`` parameters."""
        free = self.free_columns()
        k = len(free)
        pos = {c: j for j, c in enumerate(free)}
        images = [None] * self.num_vars
        for c, j in pos.items():
            images[c] = LinearForm.variable(j, k, self.field)
        for row, c in zip(self.rows, self.pivots):
            images[c] = LinearForm(tuple(-row[fc] for fc in free), self.field)
        return images

    def basis(self) -> list[list]:
        """Vectors spanning the affine cone over the subspace."""
        return nullspace(ExactMatrix(self.rows, self.field, ncols=self.num_vars))

    def contains_point(self, v) -> bool:
        return all(g(v) == 0 for g in self.forms)

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return all(self.contains_point(v) for v in other.basis())

    def permute(self, perm) -> "LinearSubspace":
        """Image under renaming x_i -> x_{perm[i]}."""
        rows = []
        for r in self.rows:
            nr = [self.field.zero] * self.num_vars
            for i, c in enumerate(r):
                nr[perm[i]] = c
            rows.append(nr)
        return LinearSubspace(rows, self.num_vars, self.field)

    def to_field(self, field) -> "LinearSubspace":
        return LinearSubspace([[field(c) for c in r] for r in self.rows], self.num_vars, field)

    def sort_key(self):
        """Enumeration order: pivot patterns in colex order, then free entries row-major."""
        entries = []
        piv = set(self.pivots)
        for row, p in zip(self.rows, self.pivots):
            for c in range(p + 1, self.num_vars):
                if c not in piv:
                    x = row[c]
                    entries.append(getattr(x, "value", x))
        return (self.pivots[::-1], tuple(entries))

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace) and self.num_vars == other.num_vars
                and self.field == other.field and self.rows == other.rows)

    def __hash__(self):
        return hash((self.num_vars, self.rows))

    def __repr__(self):
        forms = ", ".join(str(g) for g in self.forms)
        return f"Z({forms})"


def contains_check(F: Polynomial, Q: LinearSubspace) -> bool:
    """True iff F vanishes identically on Q (equivalently F lies in the ideal of Q)."""
    if F.num_vars != Q.num_vars or F.field != Q.field:
        raise MismatchError("polynomial and subspace live in different spaces")
    return F.substitute_linear(Q.parametrization()).is_zero()


# ---------------------------------------------------------------------------
# Finite-field enumeration


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_patterns(n: int, r: int) -> list[tuple[int, ...]]:
    """All r-subsets of range(n), in colex order."""
    return sorted(itertools.combinations(range(n), r), key=lambda c: c[::-1])


def _free_positions(pivots, n):
    piv = set(pivots)
    return [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in piv]


def iter_echelon(n: int, pivots, field):
    """Every reduced echelon r x n matrix over a finite field with the given pivots."""
    free = _free_positions(pivots, n)
    zero, one = field.zero, field.one
    elems = field.elements()
    for values in itertools.product(elems, repeat=len(free)):
        rows = [[zero] * n for _ in pivots]
        for i, p in enumerate(pivots):
            rows[i][p] = one
        for (i, c), v in zip(free, values):
            rows[i][c] = v
        yield LinearSubspace._from_echelon(tuple(tuple(r) for r in rows), tuple(pivots), n, field)


def _shard_count(n, pivots, q):
    return q ** len(_free_positions(pivots, n))


def _search_shard(args):
    F, pivots, limit = args
    hits = []
    examined = 0
    for Q in iter_echelon(F.num_vars, pivots, F.field):
        if limit is not None and examined >= limit:
            break
        examined += 1
        if contains_check(F, Q):
            hits.append(Q)
    return hits, examined


def _plan(shards, budget, total):
    """Split shard work so that at most ``budget`` candidates are examined."""
    if budget is None or total <= budget:
        return [(s, None) for s, _ in shards], False
    plan, left = [], budget
    for s, count in shards:
        if left <= 0:
            break
        plan.append((s, None if count <= left else left))
        left -= count
    return plan, True


def _run_shards(F, plan, workers):
    jobs = [(F, s, limit) for s, limit in plan]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_shard, jobs))
    else:
        results = [_search_shard(j) for j in jobs]
    hits, examined = [], 0
    for h, e in results:
        hits.extend(h)
        examined += e
    return hits, examined


def _require_finite(F: Polynomial):
    if F.field.characteristic == 0:
        raise ValueError("exhaustive search needs a polynomial over a prime field")


def exhaustive_search(F: Polynomial, r: int, budget: int | None = None, workers: int = 1,
                      stats: dict | None = None):
    """Every codim-r linear subspace of Z(F) over the prime field of F.

    Candidates are the reduced echelon forms, one per subspace, so exactly
    ``gaussian_binomial(num_vars, r, p)`` of them are examined.  Results come
    back in enumeration order whatever the worker count.  Pass a dict as
    ``stats`` to receive the examined and total candidate counts.
    """
    _require_finite(F)
    n = F.num_vars
    if not 0 <= r <= n:
        raise ValueError(f"codim {r} out of range for {n} variables")
    q = F.field.p
    shards = [(piv, _shard_count(n, piv, q)) for piv in pivot_patterns(n, r)]
    total = sum(c for _, c in shards)
    plan, truncated = _plan(shards, budget, total)
    hits, examined = _run_shards(F, plan, workers)
    if truncated:
        raise BudgetExceeded(total, budget, examined, hits)
    if stats is not None:
        stats["examined"] = examined
        stats["total"] = total
    return hits


def count_candidates(num_vars: int, r: int, q: int, through_point: bool = False) -> int:
    if through_point:
        return gaussian_binomial(num_vars - 1, r, q)
    return gaussian_binomial(num_vars, r, q)


def search_through_point(F: Polynomial, p0, r: int, budget: int | None = None, stats: dict | None = None):
    """Codim-r subspaces of Z(F) that contain the projective point [p0].

    Only forms vanishing at p0 are enumerated: echelon matrices over a basis
    of the annihilator of p0, so there are ``gaussian_binomial(n-1, r, p)``
    candidates instead of ``gaussian_binomial(n, r, p)``.
    """
    _require_finite(F)
    n = F.num_vars
    f = F.field
    p0 = [f(x) for x in p0]
    if all(x == 0 for x in p0):
        raise ValueError("p0 must be a nonzero vector")
    if not 0 <= r <= n - 1:
        raise ValueError(f"codim {r} out of range for subspaces through a point in {n} variables")
    ann = nullspace(ExactMatrix([p0], f, ncols=n))
    m = len(ann)
    total = gaussian_binomial(m, r, f.p)
    hits, examined = [], 0
    for piv in pivot_patterns(m, r):
        for C in iter_echelon(m, piv, f):
            if budget is not None and examined >= budget:
                hits.sort(key=LinearSubspace.sort_key)
                raise BudgetExceeded(total, budget, examined, hits)
            examined += 1
            forms = [[sum((c * b[j] for c, b in zip(row, ann)), f.zero) for j in range(n)]
                     for row in C.rows]
            Q = LinearSubspace(forms, n, f)
            if contains_check(F, Q):
                hits.append(Q)
    hits.sort(key=LinearSubspace.sort_key)
    if stats is not None:
        stats["examined"] = examined
        stats["total"] = total
    return hits


# ---------------------------------------------------------------------------
# Rational charts


@dataclass
class ChartSystem:
    """Containment equations for one echelon chart of codim-r subspaces.

    Unknown u_k is the echelon entry at ``unknowns[k] = (row, col)``; the
    equations are polynomials in the unknowns that all vanish iff the
    corresponding subspace lies in Z(F).
    """

    pivots: tuple
    unknowns: list
    equations: list = dc_field(default_factory=list)
    num_vars: int = 0
    field: object = QQ

    @property
    def num_unknowns(self) -> int:
        return len(self.unknowns)

    def subspace_at(self, values) -> LinearSubspace:
        """The subspace with the given unknown values (one per unknown)."""
        n = self.num_vars
        field = self.field
        rows = [[field.zero] * n for _ in self.pivots]
        for i, p in enumerate(self.pivots):
            rows[i][p] = field.one
        for (i, c), v in zip(self.unknowns, values):
            rows[i][c] = field(v)
        return LinearSubspace(rows, n, field)


def _chart_system(F: Polynomial, pivots) -> ChartSystem:
    n = F.num_vars
    f = F.field
    unknowns = _free_positions(pivots, n)
    free_cols = [c for c in range(n) if c not in set(pivots)]
    m = len(unknowns)
    k = len(free_cols)
    total = m + k
    tpos = {c: m + j for j, c in enumerate(free_cols)}
    images = [None] * n
    for c, j in tpos.items():
        images[c] = Polynomial.variable(j, total, f)
    for i, p in enumerate(pivots):
        img = Polynomial.zero(total, f)
        for u, (row, c) in enumerate(unknowns):
            if row == i:
                img = img - Polynomial.variable(u, total, f) * Polynomial.variable(tpos[c], total, f)
        images[p] = img
    G = F.compose(images)
    grouped: dict = {}
    for e, c in G.items():
        grouped.setdefault(e[m:], {})[e[:m]] = c
    equations = [Polynomial(m, grouped[t], f) for t in sorted(grouped, reverse=True)]
    return ChartSystem(tuple(pivots), unknowns, equations, n, f)


def build_chart_systems(F: Polynomial, r: int, workers: int = 1) -> list[ChartSystem]:
    """One containment system per echelon chart of codim-r subspaces (colex order).

    A codim-r subspace over QQ lies in Z(F) iff some chart's equations have a
    common rational solution.
    """
    n = F.num_vars
    if not 0 <= r <= n:
        raise ValueError(f"codim {r} out of range for {n} variables")
    patterns = pivot_patterns(n, r)
    if workers and workers > 1 and len(patterns) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_chart_system, [F] * len(patterns), patterns))
    return [_chart_system(F, piv) for piv in patterns]


@dataclass
class Refutation:
    """Outcome of ``propagation_refute``.

    ``status`` is "refuted" (no chart has a solution) or "inconclusive"; in
    the latter case ``chart`` is the first chart not refuted and ``residual``
    its equations after propagation.
    """

    status: str
    chart: ChartSystem | None = None
    chart_index: int | None = None
    forced_zero: list = dc_field(default_factory=list)
    residual: list = dc_field(default_factory=list)
    trace: list = dc_field(default_factory=list)

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"


def _single_variable_monomial(eq: Polynomial):
    if len(eq) != 1:
        return None
    (e, _), = eq.items()
    used = [i for i, k in enumerate(e) if k]
    return used[0] if len(used) == 1 else None


def _propagate(system: ChartSystem):
    eqs = [e for e in system.equations if not e.is_zero()]
    m = system.num_unknowns
    f = system.field
    forced = []
    while True:
        for eq in eqs:
            if eq.degree == 0:
                return True, forced, eqs
        u = next((v for v in map(_single_variable_monomial, eqs) if v is not None), None)
        if u is None:
            return False, forced, eqs
        forced.append(u)
        images = Polynomial.variables(m, f)
        images[u] = Polynomial.zero(m, f)
        eqs = [g for g in (eq.compose(images) for eq in eqs) if not g.is_zero()]


def propagation_refute(systems: list[ChartSystem]) -> Refutation:
    """Try to show that no chart system has a solution.

    Two sound rules are applied until nothing changes: an equation c*u^e = 0
    forces u = 0, and forced zeros are substituted into the other equations.
    A chart is refuted once some equation becomes a nonzero constant.
    """
    trace = []
    for idx, system in enumerate(systems):
        refuted, forced, residual = _propagate(system)
        trace.append({"pivots": list(system.pivots), "refuted": refuted,
                      "forced_zero": [list(system.unknowns[u]) for u in forced]})
        if not refuted:
            return Refutation("inconclusive", system, idx,
                              [system.unknowns[u] for u in forced], residual, trace)
    return Refutation("refuted", trace=trace)
