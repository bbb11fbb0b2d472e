"""Exact coefficient fields and dense linear algebra over them.

Two fields are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields GF(p) with p <= 2**31 (elements are ``PrimeFieldElement``).
Every routine here is exact; nothing ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

MAX_MODULUS = 2**31


class MismatchError(ValueError):
    """Operands live over different fields or in different variable counts."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeFieldElement:
    """An element of GF(p), stored as its representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise MismatchError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return PrimeFieldElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o, self.p) / self

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return PrimeFieldElement(pow(pow(self.value, -1, self.p), -e, self.p), self.p)
        return PrimeFieldElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self._coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __lt__(self, other):
        # only used for deterministic sort keys
        return self.value < PrimeFieldElement(self._coerce(other), self.p).value

    def __repr__(self):
        return f"PrimeFieldElement({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"

    def __reduce__(self):
        return (PrimeFieldElement, (self.value, self.p))


class RationalField:
    """The field Q; elements are Fractions."""

    tag = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, PrimeFieldElement):
            raise MismatchError("cannot lift a prime-field element to Q")
        return Fraction(x)

    def format(self, a) -> str:
        return str(a)

    def parse(self, s) -> Fraction:
        return self(s)

    def elements(self):
        raise TypeError("Q is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field GF(p)."""

    def __init__(self, p: int):
        if not 2 <= p <= MAX_MODULUS or not _is_prime(p):
            raise ValueError(f"modulus must be a prime in [2, 2^31], got {p}")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"
        self.zero = PrimeFieldElement(0, p)
        self.one = PrimeFieldElement(1, p)

    def __call__(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise MismatchError(f"mixing GF({self.p}) and GF({x.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.zero + x

    def format(self, a) -> str:
        return str(self(a))

    def parse(self, s: str):
        s = s.strip()
        if " mod " in s:
            v, p = s.split(" mod ")
            if int(p) != self.p:
                raise MismatchError(f"element {s!r} is not in GF({self.p})")
            return PrimeFieldElement(int(v), self.p)
        return self.zero + Fraction(s)

    def elements(self):
        return [PrimeFieldElement(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """Parse ``"Q"`` or ``"Fp:<p>"``."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return GF(int(tag[3:]))
    raise ValueError(f"unknown field tag {tag!r}")


def format_scalar(a) -> str:
    """Rationals as "num/den" (den omitted when 1), GF(p) elements as "v mod p"."""
    return str(a)


# ---------------------------------------------------------------------------
# Dense matrices


def _rref_in_place(rows: list[list], ncols: int, zero, one) -> list[int]:
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        inv = one / piv[c]
        if inv != one:
            for k in range(c, ncols):
                piv[k] = piv[k] * inv
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f != 0:
                    for k in range(c, ncols):
                        if piv[k] != 0:
                            row[k] = row[k] - f * piv[k]
        pivots.append(c)
        r += 1
    return pivots


class ExactMatrix:
    """A rectangular matrix of exact field elements."""

    __slots__ = ("rows", "ncols", "field")

    def __init__(self, rows, field=QQ, ncols: int | None = None):
        rows = [tuple(field(x) for x in row) for row in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ValueError("matrix rows have different lengths")
        self.rows = tuple(rows)
        self.ncols = ncols
        self.field = field

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def identity(cls, n: int, field=QQ):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, ncols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                           self.field, ncols=self.nrows)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
            return ExactMatrix([[sum((a * b for a, b in zip(row, col)), self.field.zero) for col in cols]
                                for row in self.rows], self.field, ncols=other.ncols)
        vec = [self.field(x) for x in other]
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(row, vec)), self.field.zero) for row in self.rows]

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"ExactMatrix([{body}], {self.field!r})"


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and pivot columns; rank is ``len(pivots)``."""
    rows = [list(row) for row in m.rows]
    pivots = _rref_in_place(rows, m.ncols, m.field.zero, m.field.one)
    out = ExactMatrix.__new__(ExactMatrix)
    out.rows = tuple(tuple(r) for r in rows)
    out.ncols = m.ncols
    out.field = m.field
    return out, pivots


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def solve_linear(a: ExactMatrix, b) -> list | None:
    """One exact solution of ``a @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is canonical.
    """
    f = a.field
    b = [f(x) for x in b]
    if len(b) != a.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.nrows}")
    rows = [list(row) + [bi] for row, bi in zip(a.rows, b)]
    pivots = _rref_in_place(rows, a.ncols + 1, f.zero, f.one)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = [f.zero] * a.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return x


def nullspace(m: ExactMatrix) -> list[list]:
    """Basis of ``{x : m @ x = 0}``, one vector per non-pivot column."""
    red, pivots = rref(m)
    f = m.field
    basis = []
    pivset = set(pivots)
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for r, c in enumerate(pivots):
            v[c] = -red.rows[r][free]
        basis.append(v)
    return basis
