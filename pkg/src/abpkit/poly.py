"""Sparse multivariate polynomials over QQ or GF(p).

Monomials are exponent tuples.  Terms are kept in a dict keyed by exponent
tuple; zero coefficients are never stored.  Printing and serialization use the
graded-lex order, highest monomial first, with x0 > x1 > ... .
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ, MismatchError

Monomial = tuple


def grlex_key(m: Monomial):
    """Sort key for the graded-lex order (use ``reverse=True`` for descending)."""
    return (sum(m), m)


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e)
            out[e] = ca * cb if c is None else c + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _add_into(acc: dict, terms: dict, scale=None) -> None:
    for e, c in terms.items():
        if scale is not None:
            c = c * scale
        old = acc.get(e)
        if old is None:
            acc[e] = c
        else:
            s = old + c
            if s == 0:
                del acc[e]
            else:
                acc[e] = s


class Polynomial:
    __slots__ = ("num_vars", "field", "_terms", "_hash")

    def __init__(self, num_vars: int, terms=None, field=QQ):
        self.num_vars = num_vars
        self.field = field
        self._hash = None
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {num_vars} variables")
            c = field(c)
            if c != 0:
                out[e] = out.get(e, field.zero) + c
                if out[e] == 0:
                    del out[e]
        self._terms = out

    @classmethod
    def _raw(cls, num_vars, field, terms):
        p = cls.__new__(cls)
        p.num_vars = num_vars
        p.field = field
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars, field=QQ):
        return cls._raw(num_vars, field, {})

    @classmethod
    def constant(cls, c, num_vars, field=QQ):
        c = field(c)
        return cls._raw(num_vars, field, {(0,) * num_vars: c} if c != 0 else {})

    @classmethod
    def monomial(cls, exps, coeff=1, field=QQ):
        return cls(len(exps), {tuple(exps): coeff}, field)

    @classmethod
    def variable(cls, i, num_vars, field=QQ):
        if not 0 <= i < num_vars:
            raise IndexError(f"variable index {i} out of range for {num_vars} variables")
        e = [0] * num_vars
        e[i] = 1
        return cls._raw(num_vars, field, {tuple(e): field.one})

    @classmethod
    def variables(cls, num_vars, field=QQ) -> list["Polynomial"]:
        return [cls.variable(i, num_vars, field) for i in range(num_vars)]

    @classmethod
    def linear(cls, coeffs, field=QQ):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field(c)
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(n, field, terms)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> list[tuple[Monomial, object]]:
        """(exponents, coefficient) pairs in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def coefficient(self, exps) -> object:
        return self._terms.get(tuple(exps), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.num_vars != self.num_vars:
            raise MismatchError(f"{self.num_vars} vs {other.num_vars} variables")
        if other.field != self.field:
            raise MismatchError(f"{self.field!r} vs {other.field!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.num_vars, self.field)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self._terms)
        _add_into(terms, other._terms)
        return Polynomial._raw(self.num_vars, self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.num_vars, self.field, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial._raw(self.num_vars, self.field, _mul_terms(self._terms, other._terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.field(c)
        if c == 0:
            return Polynomial.zero(self.num_vars, self.field)
        return Polynomial._raw(self.num_vars, self.field, {e: v * c for e, v in self._terms.items()})

    def __truediv__(self, c):
        return self.scale(self.field.one / self.field(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.num_vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.num_vars == other.num_vars and self.field == other.field
                    and self._terms == other._terms)
        if isinstance(other, (int,)) or hasattr(other, "denominator") or hasattr(other, "p"):
            try:
                return self == Polynomial.constant(other, self.num_vars, self.field)
            except (TypeError, ValueError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.num_vars}, {self}, {self.field!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            cs = str(c.value) if hasattr(c, "p") else str(c)
            if not mono:
                s = cs
            elif cs == "1":
                s = mono
            elif cs == "-1":
                s = "-" + mono
            else:
                s = f"{cs}*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    # -- calculus and substitution ---------------------------------------

    def partial_derivative(self, i: int) -> "Polynomial":
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable index {i} out of range")
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                c2 = c * k
                if c2 != 0:
                    ne = e[:i] + (k - 1,) + e[i + 1:]
                    terms[ne] = c2
        return Polynomial._raw(self.num_vars, self.field, terms)

    def gradient(self) -> list["Polynomial"]:
        return [self.partial_derivative(i) for i in range(self.num_vars)]

    def evaluate(self, point):
        if len(point) != self.num_vars:
            raise MismatchError(f"point has {len(point)} coordinates, expected {self.num_vars}")
        f = self.field
        v = [f(x) for x in point]
        pows: list[dict] = [dict() for _ in v]
        total = f.zero
        for e, c in self._terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    pk = pows[i].get(k)
                    if pk is None:
                        pk = pows[i][k] = v[i] ** k
                    t = t * pk
            total = total + t
        return total

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def compose(self, images: list["Polynomial"]) -> "Polynomial":
        """Replace x_i by ``images[i]`` and expand."""
        if len(images) != self.num_vars:
            raise MismatchError(f"{len(images)} images for {self.num_vars} variables")
        if not images:
            return Polynomial.constant(self.coefficient(()), 0, self.field)
        m = images[0].num_vars
        for g in images:
            if g.num_vars != m or g.field != self.field:
                raise MismatchError("images must share variable count and field")
        one = {(0,) * m: self.field.one}
        cache: list[dict] = [{0: one, 1: images[i]._terms} for i in range(self.num_vars)]

        def power(i, k):
            got = cache[i].get(k)
            if got is None:
                got = cache[i][k] = _mul_terms(power(i, k - 1), cache[i][1])
            return got

        acc: dict = {}
        for e, c in self._terms.items():
            t = None
            for i, k in enumerate(e):
                if k:
                    pk = power(i, k)
                    t = pk if t is None else _mul_terms(t, pk)
                    if not t:
                        break
            if t is None:
                t = one
            _add_into(acc, t, c)
        return Polynomial._raw(m, self.field, acc)

    def substitute_linear(self, images: list["LinearForm"]) -> "Polynomial":
        """Replace x_i by the linear form ``images[i]`` (all of one length)."""
        polys = [g.to_polynomial() if isinstance(g, LinearForm) else g for g in images]
        for g in polys:
            if not (g.is_zero() or (g.degree == 1 and g.is_homogeneous())):
                raise ValueError("substitute_linear expects linear forms")
        return self.compose(polys)

    # -- conversions ------------------------------------------------------

    def to_field(self, field) -> "Polynomial":
        """Reduce (or reinterpret) coefficients in another field."""
        return Polynomial(self.num_vars, {e: field(c) for e, c in self._terms.items()}, field)

    def permute(self, perm) -> "Polynomial":
        """Rename x_i to x_{perm[i]}."""
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * self.num_vars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            terms[tuple(ne)] = c
        return Polynomial._raw(self.num_vars, self.field, terms)

    def restrict_variables(self, keep) -> "Polynomial":
        """Drop every variable not in ``keep`` (which must not occur) and re-index the rest."""
        keep = list(keep)
        dropped = set(range(self.num_vars)) - set(keep)
        used = self.variables_used()
        if used & dropped:
            raise ValueError(f"variables {sorted(used & dropped)} still occur")
        return Polynomial._raw(len(keep), self.field,
                               {tuple(e[i] for i in keep): c for e, c in self._terms.items()})

    def embed(self, num_vars: int, positions) -> "Polynomial":
        """Inverse of ``restrict_variables``: x_i becomes x_{positions[i]} in ``num_vars`` variables."""
        terms = {}
        for e, c in self._terms.items():
            ne = [0] * num_vars
            for i, k in enumerate(e):
                ne[positions[i]] = k
            terms[tuple(ne)] = c
        return Polynomial._raw(num_vars, self.field, terms)


@dataclass(frozen=True)
class LinearForm:
    """c_0 x_0 + ... + c_n x_n."""

    coeffs: tuple
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.field(c) for c in self.coeffs))

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    @classmethod
    def variable(cls, i, num_vars, field=QQ):
        return cls(tuple(1 if j == i else 0 for j in range(num_vars)), field)

    @classmethod
    def zero(cls, num_vars, field=QQ):
        return cls((0,) * num_vars, field)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LinearForm":
        if not p.is_zero() and not (p.degree == 1 and p.is_homogeneous()):
            raise ValueError(f"{p} is not a linear form")
        coeffs = [p.field.zero] * p.num_vars
        for e, c in p.items():
            coeffs[e.index(1)] = c
        return cls(tuple(coeffs), p.field)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coeffs, self.field)

    def __call__(self, point):
        return sum((c * self.field(x) for c, x in zip(self.coeffs, point)), self.field.zero)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if other.num_vars != self.num_vars or other.field != self.field:
            raise MismatchError("linear forms over different spaces")
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coeffs), self.field)

    def scale(self, c) -> "LinearForm":
        c = self.field(c)
        return LinearForm(tuple(a * c for a in self.coeffs), self.field)

    def __str__(self):
        return str(self.to_polynomial())


def pencil_coefficients(F: Polynomial, p, q) -> list:
    """Coefficients c_0..c_d with F(a*p + b*q) = sum_i c_i a^(d-i) b^i.

    Computed by exact expansion of F composed with the rank-2 map
    x_j -> p_j a + q_j b.
    """
    if F.is_zero() or not F.is_homogeneous():
        raise ValueError("pencil_coefficients needs a nonzero homogeneous polynomial")
    if len(p) != F.num_vars or len(q) != F.num_vars:
        raise MismatchError("point lengths must match the variable count")
    d = F.degree
    f = F.field
    images = [Polynomial(2, {(1, 0): f(pj), (0, 1): f(qj)}, f) for pj, qj in zip(p, q)]
    G = F.compose(images)
    return [G.coefficient((d - i, i)) for i in range(d + 1)]


def polar_pairing(F: Polynomial, v, w):
    """sum_i (dF/dx_i)(v) * w_i: the derivative of F along w at v."""
    if len(v) != F.num_vars or len(w) != F.num_vars:
        raise MismatchError("vector lengths must match the variable count")
    f = F.field
    total = f.zero
    for i, wi in enumerate(w):
        wi = f(wi)
        if wi != 0:
            total = total + F.partial_derivative(i).evaluate(v) * wi
    return total
