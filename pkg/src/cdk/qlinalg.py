"""Exact rational scalars and the small dense linear algebra used elsewhere.

Scalars are :class:`fractions.Fraction` (always in lowest terms, positive
denominator).  Elimination is done fraction-free on primitive integer rows
with the leftmost nonzero column as pivot, so kernel and complement bases
are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
Vector = tuple  # tuple of Fraction


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    # Fraction() also accepts decimals and exponents; only p or p/q is allowed here.
    body = text[1:] if text[0] in "+-" else text
    num, _, den = body.partition("/")
    if not num.isdigit() or (den and not den.isdigit()):
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(text)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(to_rational(v) for r in rows for v in r)
        return cls(len(rows), width, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        columns = [list(c) for c in columns]
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def row_list(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def column_list(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(self.column_list())

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    def to_json(self) -> list:
        return [[format_rational(q) for q in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls.from_rows([[parse_rational(s) if isinstance(s, str) else to_rational(s)
                               for s in row] for row in data])


def _primitive(row: list) -> list:
    """Scale an integer row so its entries are coprime with a positive leading entry."""
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
    if g == 0:
        return row
    lead = next(v for v in row if v)
    if lead < 0:
        g = -g
    return [v // g for v in row]


def _integer_row(row: Iterable) -> list:
    row = [to_rational(v) for v in row]
    den = 1
    for q in row:
        den = lcm(den, q.denominator)
    return [int(q * den) for q in row]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; reduced rows are Fraction
    tuples with unit pivots, zero rows dropped.
    """
    work = [_primitive(_integer_row(r)) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                # fraction-free update keeps everything integral
                work[i] = _primitive([p[col] * x - f * y for x, y in zip(work[i], p)])
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    reduced = []
    for i, col in enumerate(pivots):
        lead = work[i][col]
        reduced.append(tuple(Fraction(v, lead) for v in work[i]))
    return reduced, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def kernel(M: RatMatrix) -> list:
    """Basis of ``{v : Mv = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other
    free columns.
    """
    reduced, pivots = rref(M.row_list(), M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for row, col in zip(reduced, pivots):
            v[col] = -row[free]
        basis.append(tuple(v))
    return basis


def membership(span_vectors: Sequence[Sequence], target: Sequence) -> Optional[tuple]:
    """Coordinates ``c`` with ``sum(c[i] * span_vectors[i]) == target``, or None.

    When the spanning vectors are dependent the coordinates of free vectors
    are set to zero.
    """
    k = len(span_vectors)
    dim = len(target)
    if any(len(v) != dim for v in span_vectors):
        raise ValueError("all vectors must share a dimension")
    if k == 0:
        return () if not any(target) else None
    # augmented system: columns are span vectors, last column is the target
    rows = [[span_vectors[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    reduced, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for row, col in zip(reduced, pivots):
        coords[col] = row[k]
    return tuple(coords)


def orthogonal_complement(vectors: Sequence[Sequence], ambient_dim: int) -> list:
    """Basis of the complement under the standard dot product (the kernel of
    the matrix whose rows are ``vectors``)."""
    if any(len(v) != ambient_dim for v in vectors):
        raise ValueError("vector dimension differs from ambient_dim")
    nonzero = [v for v in vectors if any(v)]
    if not nonzero:
        return [tuple(Fraction(int(i == j)) for j in range(ambient_dim))
                for i in range(ambient_dim)]
    return kernel(RatMatrix.from_rows(nonzero))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))
