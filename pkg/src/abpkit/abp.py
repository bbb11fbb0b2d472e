"""Homogeneous algebraic branching programs.

Vertices are addressed as ``(layer, index)``.  Layer 0 holds the source and
the last layer holds the sink.  Every edge runs from layer k to layer k+1 and
carries a linear form; a missing edge is an implicit zero label.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ
from .checks import Check
from .poly import LinearForm, Polynomial


@dataclass(frozen=True)
class Edge:
    layer: int
    src: int
    dst: int
    label: LinearForm
    to_layer: int | None = None

    @property
    def target_layer(self) -> int:
        return self.layer + 1 if self.to_layer is None else self.to_layer

    def key(self):
        return (self.layer, self.src, self.target_layer, self.dst)


class Abp:
    """A layered DAG with linear-form edge labels.

    Parallel edges between one vertex pair are merged by adding their labels;
    if the sum cancels the edge disappears.
    """

    def __init__(self, num_vars: int, widths, edges, field=QQ):
        self.num_vars = num_vars
        self.widths = tuple(int(w) for w in widths)
        self.field = field
        merged: dict = {}
        counts: dict = {}
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if not isinstance(e.label, LinearForm):
                e = Edge(e.layer, e.src, e.dst, LinearForm(tuple(e.label), field), e.to_layer)
            k = e.key()
            if k in merged:
                merged[k] = Edge(e.layer, e.src, e.dst, merged[k].label + e.label, e.to_layer)
                counts[k] += 1
            else:
                merged[k] = e
                counts[k] = 1
        self.edges = tuple(sorted((e for k, e in merged.items()
                                   if counts[k] == 1 or not e.label.is_zero()),
                                  key=Edge.key))

    @property
    def depth(self) -> int:
        """Number of edge layers; equals the degree of the computed polynomial."""
        return len(self.widths) - 1

    @property
    def size(self) -> int:
        return sum(self.widths[1:-1])

    @property
    def source(self):
        return (0, 0)

    @property
    def sink(self):
        return (self.depth, 0)

    def edges_by_layer(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(max(self.depth, 0))]
        for e in self.edges:
            if 0 <= e.layer < self.depth:
                out[e.layer].append(e)
        return out

    def __eq__(self, other):
        return (isinstance(other, Abp) and self.num_vars == other.num_vars
                and self.widths == other.widths and self.field == other.field
                and self.edges == other.edges)

    def __repr__(self):
        return f"Abp(num_vars={self.num_vars}, widths={list(self.widths)}, edges={len(self.edges)})"


def validate(a: Abp) -> Check:
    """Check the structural invariants; report the first violation found."""
    if len(a.widths) < 2:
        return Check.failed("too few layers", where={"widths": list(a.widths)})
    for k, w in enumerate(a.widths):
        if w < 1:
            return Check.failed("empty layer", where={"layer": k})
    if a.widths[0] != 1:
        return Check.failed("source layer width must be 1", where={"layer": 0})
    if a.widths[-1] != 1:
        return Check.failed("sink layer width must be 1", where={"layer": a.depth})
    for e in a.edges:
        where = {"layer": e.layer, "from": e.src, "to": e.dst}
        if e.target_layer != e.layer + 1:
            return Check.failed("non-consecutive layers", where={**where, "to_layer": e.target_layer})
        if not 0 <= e.layer < a.depth:
            return Check.failed("layer out of range", where=where)
        if not 0 <= e.src < a.widths[e.layer] or not 0 <= e.dst < a.widths[e.layer + 1]:
            return Check.failed("vertex out of range", where=where)
        if e.label.num_vars != a.num_vars:
            return Check.failed("label length", where=where)
        if e.label.field != a.field:
            return Check.failed("label field", where=where)
        if e.label.is_zero():
            return Check.failed("zero label", where=where)
    return Check.passed(size=a.size)


def _require_valid(a: Abp):
    check = validate(a)
    if not check:
        raise ValueError(f"invalid ABP: {check.reason} at {check.where}")


def _sweep(a: Abp, start, stop_layer, zero, unit, label_value, mul):
    layer, idx = start
    vec = [zero] * a.widths[layer]
    vec[idx] = unit
    by_layer = a.edges_by_layer()
    for k in range(layer, stop_layer):
        nxt = [zero] * a.widths[k + 1]
        for e in by_layer[k]:
            v = vec[e.src]
            if v:
                nxt[e.dst] = nxt[e.dst] + mul(v, label_value(e))
        vec = nxt
    return vec


def forward_polynomials(a: Abp, start=None) -> list[list[Polynomial]]:
    """A[start, v] for every vertex v in layers at or after ``start``'s layer."""
    _require_valid(a)
    start = start or a.source
    zero = Polynomial.zero(a.num_vars, a.field)
    labels = {e.key(): e.label.to_polynomial() for e in a.edges}
    layer, idx = start
    vec = [zero] * a.widths[layer]
    vec[idx] = Polynomial.constant(1, a.num_vars, a.field)
    out = [vec]
    by_layer = a.edges_by_layer()
    for k in range(layer, a.depth):
        nxt = [zero] * a.widths[k + 1]
        for e in by_layer[k]:
            if vec[e.src]:
                nxt[e.dst] = nxt[e.dst] + vec[e.src] * labels[e.key()]
        vec = nxt
        out.append(vec)
    return out


def expand(a: Abp, start=None, end=None) -> Polynomial:
    """The polynomial computed between two vertices (default: source to sink).

    Accumulates layer by layer, so the cost is linear in the number of edges
    times the cost of one polynomial multiply-add.
    """
    _require_valid(a)
    start = tuple(start) if start is not None else a.source
    end = tuple(end) if end is not None else a.sink
    if start[0] >= end[0]:
        raise ValueError(f"start layer {start[0]} must precede end layer {end[0]}")
    for v in (start, end):
        if not (0 <= v[0] <= a.depth and 0 <= v[1] < a.widths[v[0]]):
            raise ValueError(f"no vertex {v}")
    zero = Polynomial.zero(a.num_vars, a.field)
    one = Polynomial.constant(1, a.num_vars, a.field)
    labels = {e.key(): e.label.to_polynomial() for e in a.edges}
    vec = _sweep(a, start, end[0], zero, one, lambda e: labels[e.key()], lambda x, y: x * y)
    return vec[end[1]]


def evaluate_abp(a: Abp, point):
    """Scalar layer sweep; equals ``expand(a).evaluate(point)``."""
    _require_valid(a)
    if len(point) != a.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {a.num_vars}")
    f = a.field
    point = [f(x) for x in point]
    vec = _sweep(a, a.source, a.depth, f.zero, f.one, lambda e: e.label(point), lambda x, y: x * y)
    return vec[0]


def naive_abp_from_polynomial(F: Polynomial) -> Abp:
    """One source-to-sink path per term of F.

    Each monomial is split into its variables in index order; the last edge of
    the path carries the coefficient.
    """
    if F.is_zero() or not F.is_homogeneous():
        raise ValueError("need a nonzero homogeneous polynomial")
    d = F.degree
    if d < 1:
        raise ValueError("need degree at least 1")
    terms = F.terms
    n = F.num_vars
    if d == 1:
        return Abp(n, [1, 1], [Edge(0, 0, 0, LinearForm.from_polynomial(F))], F.field)
    t = len(terms)
    widths = [1] + [t] * (d - 1) + [1]
    edges = []
    for path, (e, c) in enumerate(terms):
        factors = [i for i, k in enumerate(e) for _ in range(k)]
        for step, var in enumerate(factors):
            label = LinearForm.variable(var, n, F.field)
            if step == d - 1:
                label = label.scale(c)
            src = 0 if step == 0 else path
            dst = 0 if step == d - 1 else path
            edges.append(Edge(step, src, dst, label))
    return Abp(n, widths, edges, F.field)
