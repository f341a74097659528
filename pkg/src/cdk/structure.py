"""Alternation predicates and quaternion/octonion subalgebra builders."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cdcore import (
    AlgebraError,
    Element,
    _same_level,
    associator,
    cd_mul,
    e_tilde,
    inner,
    is_doubly_pure,
    is_pure,
    norm2,
    structure_table,
    tilde,
)
from .qlinalg import format_rational, membership, rank


def alternates(a: Element, b: Element) -> bool:
    """True iff (a, a, b) = 0."""
    _same_level(a, b)
    return associator(a, a, b).is_zero()


@dataclass(frozen=True)
class StrongAlternation:
    left: Element   # (a, a, b)
    right: Element  # (a, b, b)

    def __bool__(self):
        return self.left.is_zero() and self.right.is_zero()

    @property
    def failing(self) -> list:
        out = []
        if not self.left.is_zero():
            out.append("(a,a,b)")
        if not self.right.is_zero():
            out.append("(a,b,b)")
        return out


def alternates_strongly(a: Element, b: Element) -> StrongAlternation:
    """Both (a,a,b) and (a,b,b); truthy iff both vanish.

    The returned object keeps the two associators so callers can report
    which one failed.
    """
    _same_level(a, b)
    return StrongAlternation(associator(a, a, b), associator(a, b, b))


@dataclass(frozen=True)
class Subalgebra:
    ambient_level: int
    basis: tuple
    # table[i][j]: coordinates of basis[i]*basis[j] in the basis, None if outside the span
    table: tuple
    orthogonal: bool
    independent: bool
    closed: bool
    labels: tuple = field(default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "ambient_level": self.ambient_level,
            "basis": [b.to_json() for b in self.basis],
            "table": [[None if c is None else [format_rational(q) for q in c] for c in row]
                      for row in self.table],
            "closed": self.closed,
        }


def subalgebra(basis: Sequence[Element], labels: Sequence[str] = ()) -> Subalgebra:
    """Compute the product table of an ordered basis and record closure."""
    basis = tuple(basis)
    if not basis:
        raise AlgebraError("empty basis")
    _same_level(*basis)
    vecs = [b.coeffs for b in basis]
    orthogonal = all(inner(basis[i], basis[j]) == 0
                     for i in range(len(basis)) for j in range(i + 1, len(basis)))
    independent = rank(vecs) == len(basis)
    table = []
    for x in basis:
        row = []
        for y in basis:
            row.append(membership(vecs, cd_mul(x, y).coeffs))
        table.append(tuple(row))
    closed = independent and all(c is not None for row in table for c in row)
    return Subalgebra(basis[0].level, basis, tuple(table), orthogonal, independent, closed,
                      tuple(labels))


def check_iso_to_level(sub: Subalgebra, m: int) -> bool:
    """True iff the table of ``sub`` is entry-for-entry the level-m structure table."""
    size = 1 << m
    if sub.dim != size:
        raise AlgebraError(f"subalgebra has dimension {sub.dim}, level {m} needs {size}")
    if not sub.closed:
        return False
    t = structure_table(m)
    for i in range(size):
        for j in range(size):
            sign, k = t.product(i, j)
            coords = sub.table[i][j]
            expected = [Fraction(0)] * size
            expected[k] = Fraction(sign)
            if list(coords) != expected:
                return False
    return True


def quaternion_H(a: Element) -> Subalgebra:
    """H_a with ordered basis (e0, a~, a, e~0) for doubly pure a != 0."""
    if a.level < 1 or not is_doubly_pure(a):
        raise AlgebraError("quaternion_H needs a doubly pure element")
    if a.is_zero():
        raise AlgebraError("quaternion_H needs a nonzero element")
    n = a.level
    return subalgebra([Element.basis(0, n), tilde(a), a, e_tilde(n)],
                      ("e0", "a~", "a", "e~0"))


def V(a: Element, b: Element) -> Subalgebra:
    """Span{e0, a, b, ab}; ``closed`` reports whether it is a subalgebra."""
    _same_level(a, b)
    if not (is_pure(a) and is_pure(b)):
        raise AlgebraError("V(a;b) needs pure a and b")
    return subalgebra([Element.basis(0, a.level), a, b, cd_mul(a, b)], ("e0", "a", "b", "ab"))


@dataclass(frozen=True)
class SpecialTriple:
    a: Element
    b: Element
    c: Element


def special_triple_violations(a: Element, b: Element, c: Element) -> list:
    """Names of the special-triple conditions that fail (empty list if special)."""
    _same_level(a, b, c)
    bad = []
    if not all(is_pure(x) for x in (a, b, c)):
        bad.append("pure")
    if any(norm2(x) != 1 for x in (a, b, c)):
        bad.append("unit norm")
    if inner(a, b) or inner(a, c) or inner(b, c):
        bad.append("orthogonal")
    for name, (x, y) in (("a<->b", (a, b)), ("a<->c", (a, c)), ("b<->c", (b, c))):
        if not alternates_strongly(x, y):
            bad.append(f"strong alternation {name}")
    ab = cd_mul(a, b)
    if inner(c, ab) or inner(c, a) or inner(c, b) or c.coeffs[0]:
        bad.append("c in V(a;b)^perp")
    return bad


def is_special_triple(a: Element, b: Element, c: Element) -> bool:
    return not special_triple_violations(a, b, c)


OCTONION_LABELS = ("e0", "a", "b", "ab", "c(ab)", "cb", "ac", "c")


def octonion_basis(a: Element, b: Element, c: Element) -> list:
    """Ordered basis e0, a, b, ab, c(ab), cb, ac, c."""
    ab = cd_mul(a, b)
    return [Element.basis(0, a.level), a, b, ab, cd_mul(c, ab), cd_mul(c, b), cd_mul(a, c), c]


def octonion_O(a: Element, b: Element, c: Element) -> Subalgebra:
    bad = special_triple_violations(a, b, c)
    if bad:
        raise AlgebraError("not a special triple: " + ", ".join(bad))
    return subalgebra(octonion_basis(a, b, c), OCTONION_LABELS)


def span_contains(sub: Subalgebra, x: Element) -> Optional[tuple]:
    return membership([b.coeffs for b in sub.basis], x.coeffs)
