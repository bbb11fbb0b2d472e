"""Ideal chains I_1 > I_2 > ... > I_d = <F> and their ABPs.

Level k of a chain holds degree-k generators.  An inclusion I_k > I_{k+1} is
certified by linear forms L[i][j] with G_{k+1,j} = sum_i G_{k,i} L[i][j]; the
same forms are the edge labels between layers k and k+1 of an ABP.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abp import Abp, Edge, forward_polynomials, validate
from .algebra import ExactMatrix, rref, solve_linear
from .poly import LinearForm, Polynomial


@dataclass
class InclusionResult:
    """Certificates ``labels[i][j]`` (level-k generator i to level-(k+1) generator j),
    or the index of the first level-(k+1) generator outside the ideal."""

    ok: bool
    labels: list = field(default_factory=list)
    failed_index: int | None = None

    def __bool__(self):
        return self.ok


@dataclass
class IdealChain:
    levels: list
    certificates: list | None = None

    @property
    def degree(self) -> int:
        return len(self.levels)

    @property
    def widths(self) -> list[int]:
        return [len(level) for level in self.levels]

    @property
    def top(self) -> Polynomial:
        return self.levels[-1][0]

    def check_shape(self):
        if not self.levels:
            raise ValueError("empty chain")
        if len(self.levels[-1]) != 1:
            raise ValueError("the last level must hold exactly one polynomial")
        for k, level in enumerate(self.levels, start=1):
            if not level:
                raise ValueError(f"level {k} is empty")
            for g in level:
                if g.is_zero() or not g.is_homogeneous() or g.degree != k:
                    raise ValueError(f"level {k} holds {g}, which is not a nonzero degree-{k} form")


def extract_chain(a: Abp) -> IdealChain:
    """Level k = the polynomials A[source, v] for v in layer k (zeros dropped).

    The certificates are the ABP's own labels restricted to the surviving
    vertices.
    """
    check = validate(a)
    if not check:
        raise ValueError(f"invalid ABP: {check.reason} at {check.where}")
    layers = forward_polynomials(a)
    if layers[-1][0].is_zero():
        raise ValueError("the ABP computes the zero polynomial")
    kept = [[i for i, g in enumerate(layer) if not g.is_zero()] for layer in layers]
    levels = [[layers[k][i] for i in kept[k]] for k in range(1, len(layers))]
    by_layer = a.edges_by_layer()
    certs = []
    for k in range(1, a.depth):
        pos_src = {v: i for i, v in enumerate(kept[k])}
        pos_dst = {v: j for j, v in enumerate(kept[k + 1])}
        zero = LinearForm.zero(a.num_vars, a.field)
        labels = [[zero] * len(kept[k + 1]) for _ in kept[k]]
        for e in by_layer[k]:
            if e.src in pos_src and e.dst in pos_dst:
                labels[pos_src[e.src]][pos_dst[e.dst]] = e.label
        certs.append(labels)
    return IdealChain(levels, certs)


def _monomials_of_degree(gens, num_vars, extra):
    mons = set()
    for g in gens:
        for e, _ in g.items():
            for v in range(num_vars):
                m = list(e)
                m[v] += 1
                mons.add(tuple(m))
    for g in extra:
        mons.update(e for e, _ in g.items())
    return sorted(mons, reverse=True)


def check_inclusion(level_k, level_k1) -> InclusionResult:
    """Express each degree-(k+1) generator as sum_i G_i L_i with linear L_i.

    Each generator gives a linear system with (num_vars * len(level_k))
    unknowns and one equation per monomial; underdetermined systems are
    solved with free variables set to zero.
    """
    level_k = list(level_k)
    level_k1 = list(level_k1)
    g0 = level_k[0]
    n, f = g0.num_vars, g0.field
    w = len(level_k)
    mons = _monomials_of_degree(level_k, n, level_k1)
    row_of = {m: r for r, m in enumerate(mons)}
    cols = []
    for g in level_k:
        for v in range(n):
            col = [f.zero] * len(mons)
            for e, c in g.items():
                m = list(e)
                m[v] += 1
                col[row_of[tuple(m)]] = c
            cols.append(col)
    A = ExactMatrix([[cols[j][r] for j in range(len(cols))] for r in range(len(mons))], f, ncols=len(cols))
    labels = [[None] * len(level_k1) for _ in range(w)]
    for j, target in enumerate(level_k1):
        b = [target.coefficient(m) for m in mons]
        x = solve_linear(A, b)
        if x is None:
            return InclusionResult(False, failed_index=j)
        for i in range(w):
            labels[i][j] = LinearForm(tuple(x[i * n:(i + 1) * n]), f)
    return InclusionResult(True, labels)


def certificate_holds(level_k, level_k1, labels) -> bool:
    for j, target in enumerate(level_k1):
        acc = Polynomial.zero(target.num_vars, target.field)
        for i, g in enumerate(level_k):
            acc = acc + g * labels[i][j].to_polynomial()
        if acc != target:
            return False
    return True


def minimize_chain(c: IdealChain) -> IdealChain:
    """Keep, per level, the first generators that are linearly independent over the field."""
    levels = []
    for level in c.levels:
        mons = sorted({e for g in level for e, _ in g.items()}, reverse=True)
        f = level[0].field
        M = ExactMatrix([[g.coefficient(m) for g in level] for m in mons], f, ncols=len(level))
        _, pivots = rref(M)
        levels.append([level[i] for i in pivots])
    return IdealChain(levels)


def synthesize_abp(c: IdealChain, minimize: bool = False) -> Abp:
    """The ABP with layer widths [1, w_1, ..., w_{d-1}, 1] whose labels certify the chain.

    Raises ValueError when some inclusion cannot be certified.
    """
    c.check_shape()
    if minimize:
        c = minimize_chain(c)
    g0 = c.levels[0][0]
    n, f = g0.num_vars, g0.field
    edges = [Edge(0, 0, j, LinearForm.from_polynomial(g)) for j, g in enumerate(c.levels[0])]
    for k in range(1, c.degree):
        res = check_inclusion(c.levels[k - 1], c.levels[k])
        if not res:
            raise ValueError(f"generator {res.failed_index} of level {k + 1} is not in the level-{k} ideal")
        for i, row in enumerate(res.labels):
            for j, label in enumerate(row):
                if not label.is_zero():
                    edges.append(Edge(k, i, j, label))
    widths = [1] + c.widths[:-1] + [1]
    return Abp(n, widths, edges, f)
