"""Algebra monomorphisms A_m -> A_n and their type I / type II classification.

A monomorphism is stored as the list of images of the source basis
(column i is phi(e_i)).  Verification is exhaustive over basis pairs.

For a target of level N the two distinguished elements are

* ``e~0 = e_{2^(N-1)}``, the unit of the second half, and
* ``eps = (e~0, 0) = e_{2^(N-2)}``, the same element one level down
  embedded in the first half.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .cdcore import (
    AlgebraError,
    Element,
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
from .qlinalg import RatMatrix, format_rational, kernel, membership, parse_rational
from .structure import alternates_strongly, octonion_basis, special_triple_violations


class VerificationError(AlgebraError):
    """A candidate map is not an algebra monomorphism.

    ``pair`` holds the first failing basis pair (i, j) when the failure is
    multiplicativity.
    """

    def __init__(self, reason: str, pair: Optional[tuple] = None):
        self.reason = reason
        self.pair = pair
        super().__init__(reason if pair is None else f"{reason} at basis pair {pair}")


@dataclass(frozen=True)
class Monomorphism:
    m: int
    n: int
    columns: tuple  # Elements of level n, images of e_0 .. e_{2^m - 1}

    @property
    def matrix(self) -> RatMatrix:
        return RatMatrix.from_columns([c.coeffs for c in self.columns])

    def __call__(self, x: Element) -> Element:
        if x.level != self.m:
            raise AlgebraError(f"expected a level-{self.m} element")
        out = Element.zero(self.n)
        for c, col in zip(x.coeffs, self.columns):
            if c:
                out = out + col.scale(c)
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n,
                "matrix": [[format_rational(q) for q in col.coeffs] for col in self.columns]}

    @classmethod
    def columns_from_json(cls, data: dict) -> tuple:
        m, n = int(data["m"]), int(data["n"])
        cols = tuple(Element(n, tuple(parse_rational(q) if isinstance(q, str) else Fraction(q)
                                      for q in col))
                     for col in data["matrix"])
        return m, n, cols


def _as_columns(candidate, m: int, n: int) -> tuple:
    if isinstance(candidate, RatMatrix):
        if (candidate.rows, candidate.cols) != (1 << n, 1 << m):
            raise AlgebraError(f"matrix must be {1 << n}x{1 << m}, "
                               f"got {candidate.rows}x{candidate.cols}")
        return tuple(Element(n, col) for col in candidate.column_list())
    cols = tuple(candidate)
    if len(cols) != 1 << m:
        raise AlgebraError(f"need {1 << m} image columns, got {len(cols)}")
    out = []
    for col in cols:
        if not isinstance(col, Element):
            col = Element(n, tuple(Fraction(q) for q in col))
        if col.level != n:
            raise AlgebraError(f"image columns must have level {n}")
        out.append(col)
    return tuple(out)


def _norm_samples(m: int) -> list:
    rng = random.Random(0x5EED + m)
    size = 1 << m
    return [Element(m, tuple(Fraction(rng.randint(-3, 3)) for _ in range(size)))
            for _ in range(4)]


def verify_monomorphism(candidate, m: int, n: int) -> Monomorphism:
    """Check unit, multiplicativity on all basis pairs, and injectivity.

    ``candidate`` is either a 2^n x 2^m RatMatrix or a sequence of 2^m image
    columns.  Raises :class:`VerificationError` naming the first violation
    in lexicographic basis-pair order.
    """
    if not 0 <= m <= n:
        raise AlgebraError("need 0 <= m <= n")
    cols = _as_columns(candidate, m, n)
    if cols[0] != Element.basis(0, n):
        raise VerificationError("unit not preserved: phi(e0) != e0")
    t = structure_table(m)
    for i in range(1 << m):
        for j in range(1 << m):
            sign, k = t.product(i, j)
            lhs = cd_mul(cols[i], cols[j])
            rhs = cols[k] if sign > 0 else -cols[k]
            if lhs != rhs:
                raise VerificationError("multiplicativity fails", (i, j))
    if kernel(RatMatrix.from_columns([c.coeffs for c in cols])):
        raise VerificationError("not injective")
    phi = Monomorphism(m, n, cols)
    for x in _norm_samples(m):
        if norm2(phi(x)) != norm2(x):
            raise VerificationError("norm not preserved")  # unreachable for a true mono
    return phi


def trivial_embedding(m: int, n: int) -> Monomorphism:
    return verify_monomorphism([Element.basis(i, n) for i in range(1 << m)], m, n)


def mono_from_unit_pure(w: Element) -> Monomorphism:
    """phi_w : A_1 -> A_n, r e0 + s e1 -> r e0 + s w."""
    if not is_pure(w):
        raise AlgebraError("w must be pure")
    if norm2(w) != 1:
        raise AlgebraError("w must have norm 1")
    return verify_monomorphism([Element.basis(0, w.level), w], 1, w.level)


def mono_from_pair(a: Element, b: Element) -> Monomorphism:
    """A_2 -> A_n with e1 -> a, e2 -> b, e3 -> ab."""
    problems = []
    if not (is_pure(a) and is_pure(b)):
        problems.append("not pure")
    if norm2(a) != 1 or norm2(b) != 1:
        problems.append("not unit")
    if inner(a, b):
        problems.append("not orthogonal")
    sa = alternates_strongly(a, b)
    if not sa:
        problems.append("not strongly alternating: " + " and ".join(sa.failing) + " nonzero")
    if problems:
        raise AlgebraError("pair rejected: " + "; ".join(problems))
    return verify_monomorphism([Element.basis(0, a.level), a, b, cd_mul(a, b)], 2, a.level)


def mono_from_triple(a: Element, b: Element, c: Element) -> Monomorphism:
    """A_3 -> A_n through the ordered basis e0, a, b, ab, c(ab), cb, ac, c."""
    bad = special_triple_violations(a, b, c)
    if bad:
        raise AlgebraError("not a special triple: " + ", ".join(bad))
    return verify_monomorphism(octonion_basis(a, b, c), 3, a.level)


def generators(phi: Monomorphism) -> tuple:
    """The images that determine phi: (e1,), (e1, e2) or (e1, e2, e7)."""
    if phi.m == 1:
        return (phi.columns[1],)
    if phi.m == 2:
        return (phi.columns[1], phi.columns[2])
    if phi.m == 3:
        return (phi.columns[1], phi.columns[2], phi.columns[7])
    raise AlgebraError("generators are defined for source levels 1..3")


def reconstruct(phi: Monomorphism) -> Monomorphism:
    gens = generators(phi)
    builder = {1: mono_from_unit_pure, 2: mono_from_pair, 3: mono_from_triple}[phi.m]
    return builder(*gens)


# -- classification ------------------------------------------------------------

PLAIN, TYPE_I, TYPE_II = "plain", "type_I", "type_II"


def epsilon(level: int) -> Element:
    """eps = (e~0, 0) at the given level (>= 2)."""
    if level < 2:
        raise AlgebraError("eps needs level >= 2")
    return Element.basis(1 << (level - 2), level)


@dataclass(frozen=True)
class MonoType:
    tag: str
    witness_e_tilde: Optional[tuple] = None
    witness_epsilon: Optional[tuple] = None

    def to_json(self) -> dict:
        def fmt(w):
            return None if w is None else [format_rational(q) for q in w]
        return {"type": self.tag, "witness_e_tilde": fmt(self.witness_e_tilde),
                "witness_epsilon": fmt(self.witness_epsilon)}


def classify_type(phi: Monomorphism) -> MonoType:
    span = [c.coeffs for c in phi.columns]
    if phi.n < 1:
        return MonoType(PLAIN)
    w_tilde = membership(span, e_tilde(phi.n).coeffs)
    if w_tilde is None:
        return MonoType(PLAIN)
    if phi.n < 2:
        return MonoType(TYPE_I, w_tilde)
    w_eps = membership(span, epsilon(phi.n).coeffs)
    if w_eps is None:
        return MonoType(TYPE_I, w_tilde)
    return MonoType(TYPE_II, w_tilde, w_eps)


# -- the type II analysis ---------------------------------------------------------

PROJECTIVE, ZERO_DIVISOR, OBSTRUCTED = "projective", "zero_divisor", "obstructed"


@dataclass(frozen=True)
class Type2Analysis:
    alpha: Element
    a: Element
    b: Element
    c: Element
    d: Element
    kind: str
    assoc: Element      # (alpha, alpha, eps)
    ad: Element
    a_tilde_d: Element
    mirrored: bool = False

    @property
    def alternates(self) -> bool:
        return self.assoc.is_zero()


def h_epsilon_violation(alpha: Element) -> Optional[str]:
    if alpha.level < 3:
        return "alpha must have level >= 3"
    if not is_doubly_pure(alpha):
        return "alpha is not doubly pure"
    eps = epsilon(alpha.level)
    if inner(alpha, eps) or inner(alpha, tilde(eps)):
        return "alpha is not orthogonal to H_eps"
    return None


def _decompose(a: Element, b: Element) -> tuple:
    # c = projection of b onto span{a, a~}; a and a~ are orthogonal with equal norms
    at = tilde(a)
    n2 = norm2(a)
    c = a.scale(inner(b, a) / n2) + at.scale(inner(b, at) / n2)
    return c, b - c


def analyze_type2_alpha(alpha: Element) -> Type2Analysis:
    """Split alpha = (a, b), decompose b = c + d against H_a, and classify.

    ``kind`` is ``projective`` when d = 0, ``zero_divisor`` when d != 0 and
    (alpha, alpha, eps) = 0 (then ad = a~d = 0), and ``obstructed`` when
    d != 0 and the associator does not vanish.  When a = 0 the roles of the
    halves are swapped and ``mirrored`` is set.
    """
    problem = h_epsilon_violation(alpha)
    if problem:
        raise AlgebraError(problem)
    if alpha.is_zero():
        raise AlgebraError("alpha must be nonzero")
    a, b = alpha.halves()
    mirrored = a.is_zero()
    if mirrored:
        a, b = b, a
    c, d = _decompose(a, b)
    assoc = associator(alpha, alpha, epsilon(alpha.level))
    ad = cd_mul(a, d)
    atd = cd_mul(tilde(a), d)
    if d.is_zero():
        kind = PROJECTIVE
    elif assoc.is_zero():
        kind = ZERO_DIVISOR
    else:
        kind = OBSTRUCTED
    return Type2Analysis(alpha, a, b, c, d, kind, assoc, ad, atd, mirrored)


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    p, r = isqrt(q.numerator), isqrt(q.denominator)
    if p * p == q.numerator and r * r == q.denominator:
        return Fraction(p, r)
    return None


def o_alpha_basis(alpha: Element) -> list:
    """e0, eps~, eps, e~0, alpha~, alpha eps, eps~ alpha, alpha."""
    eps = epsilon(alpha.level)
    return octonion_basis(tilde(eps), eps, alpha)


def type2_octonion(alpha: Element) -> Monomorphism:
    """The type II monomorphism A_3 -> A_{n+1} with image O_alpha.

    alpha is rescaled to unit norm when its norm is rational; otherwise an
    error is raised.
    """
    analysis = analyze_type2_alpha(alpha)
    if not analysis.alternates:
        raise AlgebraError("(alpha, alpha, eps) != 0: " + str(analysis.assoc))
    root = rational_sqrt(norm2(alpha))
    if root is None:
        raise AlgebraError("alpha is not unit-normalizable over Q (norm2 is not a square)")
    unit = alpha.scale(1 / root)
    eps = epsilon(alpha.level)
    return mono_from_triple(tilde(eps), eps, unit)


def associator_bridge(a: Element, b: Element) -> tuple:
    """((a, e~0, b) at level n, (alpha, alpha, eps) at level n+1) for alpha = (a, b)."""
    if a.level < 2 or not (is_doubly_pure(a) and is_doubly_pure(b)):
        raise AlgebraError("associator_bridge needs doubly pure a, b of level >= 2")
    alpha = Element.from_halves(a, b)
    return (associator(a, e_tilde(a.level), b),
            associator(alpha, alpha, epsilon(alpha.level)))


def bridge_identity_holds(a: Element, b: Element) -> bool:
    """alpha(alpha eps) == -norm2(alpha) eps + (0, (a, e~0, b))."""
    alpha = Element.from_halves(a, b)
    eps = epsilon(alpha.level)
    lhs = cd_mul(alpha, cd_mul(alpha, eps))
    inner_assoc = associator(a, e_tilde(a.level), b)
    rhs = -eps.scale(norm2(alpha)) + Element.from_halves(Element.zero(a.level), inner_assoc)
    return lhs == rhs
