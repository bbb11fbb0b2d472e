"""Seeded random instances for property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from .abp import Abp, Edge, expand
from .algebra import QQ
from .poly import LinearForm, Polynomial
from .subspace import LinearSubspace

DEFAULT_SEED = 20240601


def rng(seed=None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def rand_scalar(r: random.Random, field=QQ, bound: int = 3, nonzero: bool = False):
    while True:
        if field == QQ:
            x = Fraction(r.randint(-bound, bound), r.randint(1, bound))
        else:
            x = field(r.randrange(field.p))
        if not nonzero or x != 0:
            return x


def monomials(num_vars: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(num_vars), d):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def rand_form(r, num_vars, d, field=QQ, max_terms=6, nonzero=True) -> Polynomial:
    """A random homogeneous polynomial of degree d."""
    mons = monomials(num_vars, d)
    while True:
        chosen = r.sample(mons, min(len(mons), r.randint(1, max_terms)))
        F = Polynomial(num_vars, {e: rand_scalar(r, field) for e in chosen}, field)
        if not nonzero or not F.is_zero():
            return F


def rand_point(r, num_vars, field=QQ, bound=4) -> list:
    return [rand_scalar(r, field, bound) for _ in range(num_vars)]


def rand_linear_form(r, num_vars, field=QQ, nonzero=True) -> LinearForm:
    while True:
        L = LinearForm(tuple(rand_scalar(r, field) for _ in range(num_vars)), field)
        if not nonzero or not L.is_zero():
            return L


def rand_abp(r, num_vars=2, max_layers=5, max_width=3, field=QQ, density=0.7) -> Abp:
    """A valid random ABP with 2..max_layers layers (degree 1..max_layers-1)."""
    depth = r.randint(1, max_layers - 1)
    widths = [1] + [r.randint(1, max_width) for _ in range(depth - 1)] + [1]
    edges = []
    for k in range(depth):
        for i in range(widths[k]):
            for j in range(widths[k + 1]):
                if r.random() < density:
                    edges.append(Edge(k, i, j, rand_linear_form(r, num_vars, field)))
    return Abp(num_vars, widths, edges, field)


def rand_nonzero_abp(r, **kw) -> Abp:
    while True:
        a = rand_abp(r, **kw)
        if not expand(a).is_zero():
            return a


def rand_subspace(r, num_vars, codim, field=QQ) -> LinearSubspace:
    while True:
        Q = LinearSubspace([rand_linear_form(r, num_vars, field) for _ in range(codim)], num_vars, field)
        if Q.codim == codim:
            return Q


def planted_form(r, Q: LinearSubspace, d: int, max_terms=3) -> Polynomial:
    """A random degree-d form in the ideal of Q: sum of L_k * H_k over its defining forms."""
    n, f = Q.num_vars, Q.field
    F = Polynomial.zero(n, f)
    while F.is_zero():
        for L in Q.forms:
            if r.random() < 0.8:
                F = F + L.to_polynomial() * rand_form(r, n, d - 1, f, max_terms)
    return F
