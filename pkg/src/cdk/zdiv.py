"""Zero divisors: multiplication matrices, annihilators and sparse searches.

For a fixed x the condition xy = 0 is linear in y, so a search only has to
enumerate candidate x; every partner y comes out of an exact kernel.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .cdcore import AlgebraError, Element, _same_level, cd_mul, norm2, structure_table
from .qlinalg import RatMatrix, kernel
from .randgen import random_element

MAX_KERNEL_SOLVES = 10**7


class SearchTooLarge(AlgebraError):
    pass


@dataclass(frozen=True)
class ZeroDivisorPair:
    level: int
    x: Element
    y: Element
    ann_dim: int = 0

    def __post_init__(self):
        if self.x.is_zero() or self.y.is_zero():
            raise AlgebraError("zero divisor pairs need nonzero members")

    def to_json(self) -> dict:
        return {"level": self.level, "x": self.x.to_json(), "y": self.y.to_json(),
                "ann_dim": self.ann_dim}


@dataclass(frozen=True)
class Annihilator:
    x: Element
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def left_mul_matrix(x: Element) -> RatMatrix:
    """L with L @ coeffs(y) == coeffs(x y)."""
    size = len(x.coeffs)
    t = structure_table(x.level)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        srow, krow = t.sign_rows[i], t.index_rows[i]
        for j in range(size):
            rows[krow[j]][j] += a if srow[j] > 0 else -a
    return RatMatrix.from_rows(rows)


def right_mul_matrix(x: Element) -> RatMatrix:
    """R with R @ coeffs(y) == coeffs(y x)."""
    size = len(x.coeffs)
    t = structure_table(x.level)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j in range(size):
            s, k = t.product(j, i)
            rows[k][j] += a if s > 0 else -a
    return RatMatrix.from_rows(rows)


def annihilator(x: Element, right: bool = False) -> Annihilator:
    """Basis of {y : xy = 0} (or {y : yx = 0} with ``right``)."""
    if x.is_zero():
        raise AlgebraError("the annihilator of 0 is the whole algebra")
    M = right_mul_matrix(x) if right else left_mul_matrix(x)
    return Annihilator(x, tuple(Element(x.level, v) for v in kernel(M)))


def is_xbar_member(x: Element, y: Element) -> bool:
    _same_level(x, y)
    return not x.is_zero() and not y.is_zero() and cd_mul(x, y).is_zero()


def candidate_count(n: int, support: int, coeffs: Sequence[int]) -> int:
    size = 1 << n
    nz = len([c for c in set(coeffs) if c])
    return sum(comb(size, k) * nz ** k for k in range(1, min(support, size) + 1))


def candidates(n: int, support: int, coeffs: Iterable[int]) -> Iterable[Element]:
    """Sparse x with 1..support nonzero coefficients from ``coeffs``, in
    lexicographic (indices, coefficients) order."""
    size = 1 << n
    values = sorted({int(c) for c in coeffs if c})
    keyed = []
    for k in range(1, min(support, size) + 1):
        for idx in itertools.combinations(range(size), k):
            for vals in itertools.product(values, repeat=k):
                keyed.append((idx, vals))
    keyed.sort()
    for idx, vals in keyed:
        c = [Fraction(0)] * size
        for i, v in zip(idx, vals):
            c[i] = Fraction(v)
        yield Element(n, tuple(c))


def search_pairs(n: int, support: int, coeffs: Sequence[int], right: bool = False) -> list:
    """All (x, y) with x a sparse candidate and y an annihilator basis vector.

    Output order: candidates in lexicographic (indices, coeffs) order, then
    kernel basis order.  With ``right`` the pairs satisfy y x = 0 instead.
    """
    if n < 1:
        raise AlgebraError("search needs level >= 1")
    if support < 1:
        raise AlgebraError("support must be >= 1")
    if not any(int(c) for c in coeffs):
        raise AlgebraError("coefficient set must contain a nonzero value")
    if candidate_count(n, support, coeffs) > MAX_KERNEL_SOLVES:
        raise SearchTooLarge(f"more than {MAX_KERNEL_SOLVES} kernel solves requested")
    out = []
    for x in candidates(n, support, coeffs):
        ann = annihilator(x, right=right)
        for y in ann.basis:
            out.append(ZeroDivisorPair(n, x, y, ann.dim))
    return out


@dataclass(frozen=True)
class SmokeReport:
    level: int
    samples: int
    seed: int
    norm_failures: int
    annihilator_failures: int

    @property
    def passed(self) -> bool:
        return self.norm_failures == 0 and self.annihilator_failures == 0


def no_zero_divisors_smoke(n: int, samples: int, seed: int) -> SmokeReport:
    """Norm multiplicativity and trivial annihilators on random pairs, n <= 3."""
    if n > 3:
        raise AlgebraError(f"A_{n} has zero divisors for n >= 4; the smoke check only "
                           "applies to the normed levels n <= 3")
    rng = random.Random(seed)
    norm_bad = ann_bad = 0
    for _ in range(samples):
        x = random_element(rng, n, nonzero=True)
        y = random_element(rng, n, nonzero=True)
        if norm2(cd_mul(x, y)) != norm2(x) * norm2(y):
            norm_bad += 1
        if annihilator(x).basis:
            ann_bad += 1
    return SmokeReport(n, samples, seed, norm_bad, ann_bad)


def atlas_csv(pairs: Sequence[ZeroDivisorPair]) -> str:
    lines = ["support,coeffs,ann_dim"]
    for p in pairs:
        idx = p.x.support()
        lines.append(" ".join(str(i) for i in idx) + ","
                     + " ".join(str(p.x.coeffs[i]) for i in idx) + f",{p.ann_dim}")
    return "\n".join(lines) + "\n"
