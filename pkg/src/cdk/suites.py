"""Seeded property suites run by ``cdk check``.

Every suite returns a :class:`SuiteReport`.  Suites that verify a claim
fail on any violation; the ladder suite also *expects* certain identities
to fail above their threshold level and fails only if no counterexample
turns up.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cdcore import (
    Element,
    associator,
    cd_mul,
    commutator,
    e_tilde,
    inner,
    norm2,
    tilde,
)
from .exprlang import format_element
from .homtool import _decompose, associator_bridge, bridge_identity_holds
from .randgen import random_element
from .zdiv import search_pairs

# level at or below which each identity holds
LADDER_THRESHOLDS = {"commutative": 1, "associative": 2, "alternative": 3}


@dataclass
class SuiteReport:
    name: str
    level: int
    samples: int
    seed: int
    passed: bool = True
    lines: list = field(default_factory=list)
    counterexample: Optional[dict] = None

    def note(self, line: str) -> None:
        self.lines.append(line)

    def fail(self, what: str, args: Sequence[Element]) -> None:
        self.passed = False
        self.counterexample = {"check": what, "args": [format_element(a) for a in args]}
        self.note(f"VIOLATION {what}: " + "; ".join(format_element(a) for a in args))

    def text(self) -> str:
        head = f"suite {self.name} level={self.level} samples={self.samples} seed={self.seed}"
        tail = "result: PASS" if self.passed else "result: FAIL"
        return "\n".join([head, *self.lines, tail]) + "\n"

    def to_json(self) -> dict:
        return {"suite": self.name, "level": self.level, "samples": self.samples,
                "seed": self.seed, "passed": self.passed, "lines": self.lines,
                "counterexample": self.counterexample}


def shrink(args: Sequence[Element], fails: Callable[..., bool]) -> list:
    """Greedy minimization: drop coefficients, then shrink magnitudes to signs,
    keeping ``fails(*args)`` true throughout."""
    args = list(args)
    changed = True
    while changed:
        changed = False
        for pos in range(len(args)):
            for i, c in enumerate(args[pos].coeffs):
                if not c:
                    continue
                for repl in (Fraction(0), Fraction(1 if c > 0 else -1)):
                    if repl == c:
                        continue
                    coeffs = list(args[pos].coeffs)
                    coeffs[i] = repl
                    trial = args[:pos] + [Element(args[pos].level, tuple(coeffs))] + args[pos + 1:]
                    if fails(*trial):
                        args = trial
                        changed = True
                        break
    return args


def _check(report: SuiteReport, what: str, fails: Callable[..., bool],
           args: Sequence[Element]) -> bool:
    if fails(*args):
        report.fail(what, shrink(args, fails))
        return False
    return True


# -- counterexample searches over the basis ------------------------------------------

def find_noncommuting_basis(n: int) -> Optional[tuple]:
    size = 1 << n
    for i, j in itertools.product(range(size), repeat=2):
        x, y = Element.basis(i, n), Element.basis(j, n)
        if not commutator(x, y).is_zero():
            return x, y
    return None


def find_nonassociative_basis(n: int) -> Optional[tuple]:
    size = 1 << n
    for i, j, k in itertools.product(range(size), repeat=3):
        x, y, z = (Element.basis(t, n) for t in (i, j, k))
        if not associator(x, y, z).is_zero():
            return x, y, z
    return None


def find_nonalternative(n: int) -> Optional[tuple]:
    """First (x, y) with (x, x, y) != 0, x = e_i + e_j (i < j) and y = e_k."""
    size = 1 << n
    for i in range(size):
        xi = Element.basis(i, n)
        for k in range(size):
            if not associator(xi, xi, Element.basis(k, n)).is_zero():
                return xi, Element.basis(k, n)
    for i, j in itertools.combinations(range(size), 2):
        x = Element.basis(i, n) + Element.basis(j, n)
        for k in range(size):
            y = Element.basis(k, n)
            if not associator(x, x, y).is_zero():
                return x, y
    return None


# -- suites --------------------------------------------------------------------------

def ladder(n: int, samples: int, seed: int) -> SuiteReport:
    rep = SuiteReport("ladder", n, samples, seed)
    size = 1 << n
    rng = random.Random(seed)

    if n <= LADDER_THRESHOLDS["commutative"]:
        ok = all(_check(rep, "commutative", lambda x, y: not commutator(x, y).is_zero(),
                        (Element.basis(i, n), Element.basis(j, n)))
                 for i, j in itertools.product(range(size), repeat=2))
        rep.note(f"commutative: holds (exhaustive on basis, {size * size} pairs)" if ok else
                 "commutative: VIOLATED")
    else:
        w = find_noncommuting_basis(n)
        if w is None:
            rep.passed = False
            rep.note("commutative: expected failure but no counterexample found")
        else:
            rep.note(f"commutative: fails as expected, witness x={format_element(w[0])} "
                     f"y={format_element(w[1])} [x,y]={format_element(commutator(*w))}")

    if n <= LADDER_THRESHOLDS["associative"]:
        ok = all(_check(rep, "associative",
                        lambda x, y, z: not associator(x, y, z).is_zero(),
                        tuple(Element.basis(t, n) for t in ijk))
                 for ijk in itertools.product(range(size), repeat=3))
        rep.note(f"associative: holds (exhaustive on basis, {size ** 3} triples)" if ok else
                 "associative: VIOLATED")
    else:
        w = find_nonassociative_basis(n)
        if w is None:
            rep.passed = False
            rep.note("associative: expected failure but no counterexample found")
        else:
            rep.note("associative: fails as expected, witness "
                     + " ".join(f"{v}={format_element(e)}" for v, e in zip("xyz", w))
                     + f" (x,y,z)={format_element(associator(*w))}")

    if n <= LADDER_THRESHOLDS["alternative"]:
        ok = all(_check(rep, "alternative on basis",
                        lambda x, y: not (associator(x, x, y).is_zero()
                                          and associator(x, y, y).is_zero()),
                        (Element.basis(i, n), Element.basis(j, n)))
                 for i, j in itertools.product(range(size), repeat=2))
        for _ in range(samples):
            x = random_element(rng, n, halves=True)
            y = random_element(rng, n, halves=True)
            ok &= _check(rep, "left alternative", lambda x, y: not associator(x, x, y).is_zero(),
                         (x, y))
            ok &= _check(rep, "right alternative",
                         lambda x, y: not associator(x, y, y).is_zero(), (x, y))
        rep.note(f"alternative: holds (exhaustive on basis, {samples} random pairs)" if ok else
                 "alternative: VIOLATED")
    else:
        w = find_nonalternative(n)
        if w is None:
            rep.passed = False
            rep.note("alternative: expected failure but no counterexample found")
        else:
            rep.note(f"alternative: fails as expected, witness x={format_element(w[0])} "
                     f"y={format_element(w[1])} (x,x,y)={format_element(associator(w[0], w[0], w[1]))}")
    return rep


def flexible(n: int, samples: int, seed: int) -> SuiteReport:
    rep = SuiteReport("flexible", n, samples, seed)
    rng = random.Random(seed)
    ok = True
    for _ in range(samples):
        x = random_element(rng, n, halves=True)
        y = random_element(rng, n, halves=True)
        ok &= _check(rep, "(x,y,x) = 0", lambda x, y: not associator(x, y, x).is_zero(), (x, y))
    rep.note(f"flexible: (x,y,x) = 0 on {samples} random pairs" if ok else "flexible: VIOLATED")
    return rep


def norm_mult(n: int, samples: int, seed: int) -> SuiteReport:
    rep = SuiteReport("norm_mult", n, samples, seed)
    rng = random.Random(seed)
    if n <= 3:
        ok = True
        for _ in range(samples):
            x = random_element(rng, n, halves=True)
            y = random_element(rng, n, halves=True)
            ok &= _check(rep, "norm2(xy) = norm2(x) norm2(y)",
                         lambda x, y: norm2(cd_mul(x, y)) != norm2(x) * norm2(y), (x, y))
        rep.note(f"norm multiplicative on {samples} random pairs" if ok else
                 "norm multiplicativity VIOLATED")
        return rep
    pairs = search_pairs(4, 2, (-1, 1))
    if not pairs:
        rep.passed = False
        rep.note("expected a zero-divisor witness at level >= 4 but none was found")
        return rep
    p = pairs[0]
    x = Element(n, p.x.coeffs + (Fraction(0),) * ((1 << n) - 16))
    y = Element(n, p.y.coeffs + (Fraction(0),) * ((1 << n) - 16))
    rep.note(f"norm multiplicativity fails as expected: x={format_element(x)} "
             f"y={format_element(y)} norm2(x)={norm2(x)} norm2(y)={norm2(y)} "
             f"norm2(xy)={norm2(cd_mul(x, y))}")
    return rep


def _doubly_pure_variant(rng: random.Random, n: int, k: int) -> tuple:
    """Random doubly pure (a, b); every 4th sample makes b orthogonal to a,
    to a~, or to both, so both sides of the orthogonality clauses get hit."""
    a = random_element(rng, n, doubly_pure=True, nonzero=True, halves=True)
    b = random_element(rng, n, doubly_pure=True, halves=True)
    at = tilde(a)
    na = norm2(a)
    if k % 4 in (1, 3):
        b = b - a.scale(inner(b, a) / na)
    if k % 4 in (2, 3):
        b = b - at.scale(inner(b, at) / na)
    return a, b


def tilde_identities(n: int, samples: int, seed: int) -> SuiteReport:
    rep = SuiteReport("lemma1_1", n, samples, seed)
    if n < 2:
        rep.passed = False
        rep.note(f"{rep.name} needs level >= 2")
        return rep
    rng = random.Random(seed)
    et = e_tilde(n)
    # (name, fails(a, b), whether a is only required to be pure)
    clauses = [
        ("a e~0 = a~ and e~0 a = -a~",
         lambda a, b: cd_mul(a, et) != tilde(a) or cd_mul(et, a) != -tilde(a), False),
        ("a a~ = -|a|^2 e~0, a~ a = |a|^2 e~0, <a,a~> = 0",
         lambda a, b: (cd_mul(a, tilde(a)) != -et.scale(norm2(a))
                       or cd_mul(tilde(a), a) != et.scale(norm2(a))
                       or inner(a, tilde(a)) != 0), False),
        ("a~b = -(ab)~ for a pure, b doubly pure",
         lambda a, b: cd_mul(tilde(a), b) != -tilde(cd_mul(a, b)), True),
        ("<a,b> = 0 <=> a~b + b~a = 0",
         lambda a, b: ((inner(a, b) == 0)
                       != (cd_mul(tilde(a), b) + cd_mul(tilde(b), a)).is_zero()), False),
        ("<a~,b> = 0 <=> ab = b~a~",
         lambda a, b: (inner(tilde(a), b) == 0) != (cd_mul(a, b) == cd_mul(tilde(b), tilde(a))),
         False),
        ("a~b = ab~ <=> <a,b> = 0 and <a~,b> = 0",
         lambda a, b: ((cd_mul(tilde(a), b) == cd_mul(a, tilde(b)))
                       != (inner(a, b) == 0 and inner(tilde(a), b) == 0)), False),
    ]
    bad = set()
    for k in range(samples):
        a, b = _doubly_pure_variant(rng, n, k)
        ap = random_element(rng, n, pure=True, halves=True)
        for name, fails, pure_only in clauses:
            if name not in bad and not _check(rep, name, fails, (ap if pure_only else a, b)):
                bad.add(name)
    for name, _, _ in clauses:
        rep.note(f"{name}: {'VIOLATED' if name in bad else 'holds'}")
    return rep


def bridge(n: int, samples: int, seed: int) -> SuiteReport:
    """For doubly pure a, b at level n and alpha = (a, b) at level n+1:
    (a, e~0, b) = 0 <=> (alpha, alpha, eps) = 0, the exact identity
    alpha(alpha eps) = -|alpha|^2 eps + (0, (a, e~0, b)), and
    (a, e~0, d) = 2 a~ d for the H_a^perp part d of b."""
    rep = SuiteReport("thm2_5_bridge", n, samples, seed)
    if n < 2:
        rep.passed = False
        rep.note(f"{rep.name} needs level >= 2")
        return rep
    rng = random.Random(seed)
    et = e_tilde(n)
    zero_hits = 0
    ok = True

    def equivalence_fails(a, b):
        first, second = associator_bridge(a, b)
        return first.is_zero() != second.is_zero()

    def two_atilde_d_fails(a, b):
        if a.is_zero():
            return False
        _, d = _decompose(a, b)
        return associator(a, et, d) != cd_mul(tilde(a), d).scale(2)

    for k in range(samples):
        a, b = _doubly_pure_variant(rng, n, k)
        if k % 5 == 4:
            # projective case: b in span{a, a~}
            b = a.scale(rng.randint(-2, 2)) + tilde(a).scale(rng.randint(-2, 2))
        ok &= _check(rep, "equivalence", equivalence_fails, (a, b))
        ok &= _check(rep, "alpha(alpha eps) identity",
                     lambda a, b: not bridge_identity_holds(a, b), (a, b))
        ok &= _check(rep, "(a,e~0,d) = 2 a~d", two_atilde_d_fails, (a, b))
        if associator_bridge(a, b)[1].is_zero():
            zero_hits += 1
    rep.note(f"equivalence and identity checked on {samples} pairs "
             f"({zero_hits} with vanishing associator)" if ok else "bridge VIOLATED")
    return rep


SUITES = {
    "lemma1_1": tilde_identities,
    "ladder": ladder,
    "norm_mult": norm_mult,
    "flexible": flexible,
    "thm2_5_bridge": bridge,
}
