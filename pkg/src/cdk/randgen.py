"""Seeded exact random elements.

All randomness goes through a :class:`random.Random` instance (Mersenne
Twister MT19937), so a seed fully determines every sample.  Coefficients
are drawn uniformly from {-3, ..., 3}; with ``halves`` some are divided by 2.

Unit vectors are rational points on spheres obtained by inverse
stereographic projection, and orthonormal frames are built with rational
Householder reflections, so no square roots are ever needed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .cdcore import Element, cd_mul, e_tilde, tilde

COEFF_RANGE = range(-3, 4)


def random_coeff(rng: random.Random, halves: bool = False) -> Fraction:
    v = Fraction(rng.choice(COEFF_RANGE))
    if halves and rng.random() < 0.25:
        v /= 2
    return v


def random_element(rng: random.Random, level: int, *, pure: bool = False,
                   doubly_pure: bool = False, nonzero: bool = False,
                   halves: bool = False) -> Element:
    size = 1 << level
    while True:
        c = [random_coeff(rng, halves) for _ in range(size)]
        if pure or doubly_pure:
            c[0] = Fraction(0)
        if doubly_pure:
            c[size // 2] = Fraction(0)
        x = Element(level, tuple(c))
        if not nonzero or not x.is_zero():
            return x


def unit_vector(rng: random.Random, dim: int, spread: int = 4) -> list:
    """A rational point on the unit sphere in Q^dim.

    Inverse stereographic projection of a random u in Q^(dim-1):
    (2u, |u|^2 - 1) / (|u|^2 + 1).
    """
    if dim == 1:
        return [Fraction(rng.choice((-1, 1)))]
    u = [Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(dim - 1)]
    s = sum(x * x for x in u)
    out = [2 * x / (s + 1) for x in u] + [(s - 1) / (s + 1)]
    # rotate the coordinates so the (s-1)/(s+1) entry is not always last
    k = rng.randrange(dim)
    return out[k:] + out[:k]


def embed(values: Sequence, indices: Sequence[int], level: int) -> Element:
    c = [Fraction(0)] * (1 << level)
    for i, v in zip(indices, values):
        c[i] = Fraction(v)
    return Element(level, tuple(c))


def random_unit(rng: random.Random, level: int, indices: Sequence[int]) -> Element:
    """Unit element supported on ``indices``."""
    return embed(unit_vector(rng, len(indices)), indices, level)


def pure_indices(level: int) -> list:
    return list(range(1, 1 << level))


def doubly_pure_indices(level: int) -> list:
    h = 1 << (level - 1)
    return [i for i in range(1, 1 << level) if i != h]


def reflect(v: Sequence[Fraction], x: Sequence[Fraction]) -> list:
    """Householder reflection of x in the hyperplane orthogonal to v."""
    vv = sum(a * a for a in v)
    if vv == 0:
        return list(x)
    f = 2 * sum(a * b for a, b in zip(v, x)) / vv
    return [b - f * a for a, b in zip(v, x)]


def frame_map(targets: Sequence[Sequence[Fraction]], dim: int, start: int = 1):
    """A rational orthogonal map Q (as a function) with Q(e_{start+i}) = targets[i].

    ``targets`` must be orthonormal.  Q is a product of reflections.
    """
    reflections = []
    for i, t in enumerate(targets):
        cur = list(t)
        # Q = R1 R2 ... Rk; pull the target back through R1 first
        for v in reflections:
            cur = reflect(v, cur)
        e = [Fraction(int(j == start + i)) for j in range(dim)]
        v = [a - b for a, b in zip(e, cur)]
        reflections.append(v if any(v) else [Fraction(0)] * dim)

    def apply(x: Sequence[Fraction]) -> list:
        out = list(x)
        for v in reversed(reflections):
            out = reflect(v, out)
        return out
    return apply


def random_unit_pure(rng: random.Random, level: int) -> Element:
    return random_unit(rng, level, pure_indices(level))


def random_unit_doubly_pure(rng: random.Random, level: int) -> Element:
    return random_unit(rng, level, doubly_pure_indices(level))


def random_orthonormal_pure_pair(rng: random.Random, level: int) -> tuple:
    """Orthonormal pure (a, b); any such pair alternates strongly at level <= 3."""
    size = 1 << level
    a = random_unit_pure(rng, level)
    # b' is a unit vector on indices 2.., then mapped by a reflection sending e1 to a
    b0 = random_unit(rng, level, list(range(2, size)))
    Q = frame_map([a.coeffs], size)
    b = Element(level, tuple(Q(b0.coeffs)))
    return a, b


def random_special_triple_level3(rng: random.Random) -> tuple:
    """A random special triple in A_3 (there every orthonormal pure triple
    with c orthogonal to ab is special)."""
    a, b = random_orthonormal_pure_pair(rng, 3)
    ab = cd_mul(a, b)
    Q = frame_map([a.coeffs, b.coeffs, ab.coeffs], 8)
    # Q fixes e0 and sends e1, e2, e3 to a, b, ab; c comes from span{e4..e7}
    c0 = random_unit(rng, 3, [4, 5, 6, 7])
    c = Element(3, tuple(Q(c0.coeffs)))
    return a, b, c


def pad(x: Element, level: int) -> Element:
    """Trivial embedding of x into a higher level (zeros appended)."""
    extra = (1 << level) - len(x.coeffs)
    return Element(level, x.coeffs + (Fraction(0),) * extra)


def random_projective_alpha(rng: random.Random, level: int) -> Element:
    """Unit alpha = (r a, s a + t a~) at ``level`` with a unit doubly pure one level
    down and (r, s, t) on the unit 2-sphere; b lies in span{a, a~}."""
    a = random_unit_doubly_pure(rng, level - 1)
    r, s, t = unit_vector(rng, 3)
    return Element.from_halves(a.scale(r), a.scale(s) + tilde(a).scale(t))


def random_h_eps_perp(rng: random.Random, level: int) -> Element:
    """A random nonzero alpha = (a, b) with a, b doubly pure one level down."""
    while True:
        a = random_element(rng, level - 1, doubly_pure=True)
        b = random_element(rng, level - 1, doubly_pure=True)
        alpha = Element.from_halves(a, b)
        if not alpha.is_zero():
            return alpha


def e_tilde_pair(rng: random.Random, level: int) -> tuple:
    """(a, e~0) with a a random unit doubly pure element: a type I pair."""
    return random_unit_doubly_pure(rng, level), e_tilde(level)
