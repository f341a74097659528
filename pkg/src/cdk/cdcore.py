"""Cayley-Dickson algebras A_n = Q^(2^n) with exact coefficients.

An element of level n is a pair (a, b) of level n-1 elements, stored flat:
``coeffs[:2**(n-1)]`` is ``a`` and ``coeffs[2**(n-1):]`` is ``b``.  The
product is the doubling rule

    (a, b)(x, y) = (a x - conj(y) b, y a + b conj(x))

and conjugation is conj(a, b) = (conj(a), -b).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .qlinalg import format_rational, parse_rational, to_rational

MAX_TABLE_LEVEL = 10


class AlgebraError(ValueError):
    """Invalid input for an algebra operation."""


class LevelError(AlgebraError):
    pass


@dataclass(frozen=True, eq=True)
class Element:
    level: int
    coeffs: tuple

    def __post_init__(self):
        if self.level < 0:
            raise LevelError("level must be >= 0")
        if len(self.coeffs) != 1 << self.level:
            raise LevelError(f"level {self.level} needs {1 << self.level} coefficients, "
                             f"got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Element":
        coeffs = tuple(to_rational(c) for c in coeffs)
        level = len(coeffs).bit_length() - 1
        if len(coeffs) == 0 or 1 << level != len(coeffs):
            raise LevelError("coefficient count must be a power of two")
        return cls(level, coeffs)

    @classmethod
    def zero(cls, level: int) -> "Element":
        return cls(level, (Fraction(0),) * (1 << level))

    @classmethod
    def basis(cls, i: int, level: int, coeff=1) -> "Element":
        if not 0 <= i < 1 << level:
            raise LevelError(f"basis index {i} out of range for level {level}")
        c = [Fraction(0)] * (1 << level)
        c[i] = to_rational(coeff)
        return cls(level, tuple(c))

    @classmethod
    def scalar(cls, r, level: int) -> "Element":
        return cls.basis(0, level, r)

    @classmethod
    def from_halves(cls, a: "Element", b: "Element") -> "Element":
        _same_level(a, b)
        return cls(a.level + 1, a.coeffs + b.coeffs)

    def halves(self) -> tuple:
        if self.level == 0:
            raise LevelError("a level-0 element has no halves")
        h = len(self.coeffs) // 2
        return Element(self.level - 1, self.coeffs[:h]), Element(self.level - 1, self.coeffs[h:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> tuple:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_level(self, other)
        return Element(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_level(self, other)
        return Element(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return cd_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def scale(self, r) -> "Element":
        r = to_rational(r)
        return Element(self.level, tuple(r * a for a in self.coeffs))

    def __str__(self):
        from .exprlang import format_element
        return format_element(self)

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        coeffs = tuple(parse_rational(c) if isinstance(c, str) else to_rational(c)
                       for c in data["coeffs"])
        return cls(int(data["level"]), coeffs)


def _same_level(*xs: Element) -> None:
    level = xs[0].level
    for x in xs[1:]:
        if x.level != level:
            raise LevelError(f"level mismatch: {level} vs {x.level}")


# -- recursive product on scaled integer lists ---------------------------------

def _conj_list(x: list) -> list:
    return [x[0]] + [-c for c in x[1:]]


def _mul_int(x: list, y: list) -> list:
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    if not any(x) or not any(y):
        return [0] * n
    if n == 2:
        # (a, b)(c, d) = (ac - db, da + bc) over the reals
        a, b = x
        c, d = y
        return [a * c - d * b, d * a + b * c]
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    first = [p - q for p, q in zip(_mul_int(a, c), _mul_int(_conj_list(d), b))]
    second = [p + q for p, q in zip(_mul_int(d, a), _mul_int(b, _conj_list(c)))]
    return first + second


def _to_int_list(coeffs: tuple) -> tuple:
    den = 1
    for q in coeffs:
        if q.denominator != 1:
            den = lcm(den, q.denominator)
    if den == 1:
        return [q.numerator for q in coeffs], 1
    return [int(q * den) for q in coeffs], den


def cd_mul(x: Element, y: Element) -> Element:
    """Product in A_n by direct recursion on halves."""
    _same_level(x, y)
    xs, dx = _to_int_list(x.coeffs)
    ys, dy = _to_int_list(y.coeffs)
    out = _mul_int(xs, ys)
    den = dx * dy
    if den == 1:
        return Element(x.level, tuple(Fraction(v) for v in out))
    return Element(x.level, tuple(Fraction(v, den) for v in out))


def conjugate(x: Element) -> Element:
    return Element(x.level, (x.coeffs[0],) + tuple(-c for c in x.coeffs[1:]))


def trace(x: Element) -> Fraction:
    return 2 * x.coeffs[0]


def norm2(x: Element) -> Fraction:
    return sum((c * c for c in x.coeffs if c), Fraction(0))


def inner(x: Element, y: Element) -> Fraction:
    _same_level(x, y)
    return sum((a * b for a, b in zip(x.coeffs, y.coeffs) if a and b), Fraction(0))


def tilde(x: Element) -> Element:
    """(a, b) -> (-b, a)."""
    if x.level == 0:
        raise LevelError("tilde is undefined at level 0")
    h = len(x.coeffs) // 2
    return Element(x.level, tuple(-c for c in x.coeffs[h:]) + x.coeffs[:h])


def e_tilde(level: int) -> Element:
    """The unit (0, e0) of the second half, index 2**(level-1)."""
    if level < 1:
        raise LevelError("e~0 needs level >= 1")
    return Element.basis(1 << (level - 1), level)


GENERAL, PURE, DOUBLY_PURE = "general", "pure", "doubly_pure"


def purity(x: Element) -> str:
    if x.coeffs[0]:
        return GENERAL
    if x.level == 0:
        return PURE
    if x.coeffs[len(x.coeffs) // 2]:
        return PURE
    return DOUBLY_PURE


def is_pure(x: Element) -> bool:
    return not x.coeffs[0]


def is_doubly_pure(x: Element) -> bool:
    if x.level == 0:
        raise LevelError("double purity is undefined at level 0")
    return purity(x) == DOUBLY_PURE


def associator(x: Element, y: Element, z: Element) -> Element:
    """(xy)z - x(yz)."""
    _same_level(x, y, z)
    return cd_mul(cd_mul(x, y), z) - cd_mul(x, cd_mul(y, z))


def commutator(x: Element, y: Element) -> Element:
    _same_level(x, y)
    return cd_mul(x, y) - cd_mul(y, x)


# -- structure constants --------------------------------------------------------

@dataclass(frozen=True)
class StructureTable:
    """e_i e_j = sign[i, j] * e_{index[i, j]} at a fixed level."""

    level: int
    sign: np.ndarray
    index: np.ndarray

    def product(self, i: int, j: int) -> tuple:
        return self.sign_rows[i][j], self.index_rows[i][j]

    @cached_property
    def sign_rows(self) -> list:
        return self.sign.tolist()

    @cached_property
    def index_rows(self) -> list:
        return self.index.tolist()

    def to_csv(self) -> str:
        size = 1 << self.level
        lines = ["i,j,sign,k"]
        for i in range(size):
            for j in range(size):
                lines.append(f"{i},{j},{int(self.sign[i, j])},{int(self.index[i, j])}")
        return "\n".join(lines) + "\n"

    def to_grid(self) -> str:
        size = 1 << self.level
        cells = [[("-" if self.sign[i, j] < 0 else "") + f"e{int(self.index[i, j])}"
                  for j in range(size)] for i in range(size)]
        header = [""] + [f"e{j}" for j in range(size)]
        rows = [header] + [[f"e{i}"] + cells[i] for i in range(size)]
        width = max(len(c) for r in rows for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in rows) + "\n"

    def to_json(self) -> dict:
        return {"level": self.level,
                "sign": self.sign.astype(int).tolist(),
                "index": self.index.astype(int).tolist()}


_tables: dict = {}
_tables_lock = threading.Lock()


def _double_table(prev: StructureTable) -> StructureTable:
    # Basis products of (p,0),(0,p) pairs from the doubling rule:
    #   (p,0)(q,0) = (pq, 0)        (p,0)(0,q) = (0, qp)
    #   (0,p)(q,0) = (0, p conj(q))  (0,p)(0,q) = (-conj(q) p, 0)
    s, k = prev.sign, prev.index
    h = s.shape[0]
    conj_q = np.where(np.arange(h) == 0, 1, -1).astype(np.int8)[None, :]
    sign = np.empty((2 * h, 2 * h), dtype=np.int8)
    index = np.empty((2 * h, 2 * h), dtype=np.int32)
    sign[:h, :h] = s
    index[:h, :h] = k
    sign[:h, h:] = s.T
    index[:h, h:] = k.T + h
    sign[h:, :h] = s * conj_q
    index[h:, :h] = k + h
    sign[h:, h:] = -(s.T * conj_q)
    index[h:, h:] = k.T
    return StructureTable(prev.level + 1, sign, index)


def structure_table(n: int) -> StructureTable:
    """Memoized signed structure constants for level n (n <= MAX_TABLE_LEVEL)."""
    if n < 0:
        raise LevelError("level must be >= 0")
    if n > MAX_TABLE_LEVEL:
        raise LevelError(f"structure tables are capped at level {MAX_TABLE_LEVEL}")
    table = _tables.get(n)
    if table is not None:
        return table
    with _tables_lock:
        # double-checked: another thread may have finished while we waited
        if n not in _tables:
            t = _tables.get(0)
            if t is None:
                t = StructureTable(0, np.ones((1, 1), dtype=np.int8),
                                   np.zeros((1, 1), dtype=np.int32))
                _tables[0] = t
            while t.level < n:
                t = _tables.get(t.level + 1) or _double_table(t)
                t.sign.setflags(write=False)
                t.index.setflags(write=False)
                _tables[t.level] = t
        return _tables[n]


def basis_product(i: int, j: int, n: int) -> tuple:
    """(sign, k) with e_i e_j = sign * e_k at level n."""
    size = 1 << n
    if not (0 <= i < size and 0 <= j < size):
        raise LevelError(f"basis index out of range for level {n}")
    return structure_table(n).product(i, j)


def table_mul(x: Element, y: Element) -> Element:
    """Product via the structure table; agrees with :func:`cd_mul`."""
    _same_level(x, y)
    t = structure_table(x.level)
    out = [Fraction(0)] * len(x.coeffs)
    ys = [(j, c) for j, c in enumerate(y.coeffs) if c]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        srow, krow = t.sign_rows[i], t.index_rows[i]
        for j, b in ys:
            k = krow[j]
            if srow[j] > 0:
                out[k] += a * b
            else:
                out[k] -= a * b
    return Element(x.level, tuple(out))
