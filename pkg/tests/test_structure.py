import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdk.cdcore import (
    AlgebraError,
    Element,
    associator,
    cd_mul,
    e_tilde,
    inner,
    norm2,
    tilde,
)
from cdk.homtool import mono_from_triple
from cdk.randgen import (
    pad,
    random_element,
    random_orthonormal_pure_pair,
    random_special_triple_level3,
    random_unit_doubly_pure,
)
from cdk.structure import (
    V,
    alternates,
    alternates_strongly,
    check_iso_to_level,
    is_special_triple,
    octonion_O,
    quaternion_H,
    span_contains,
    special_triple_violations,
    subalgebra,
)

from .conftest import same_level


def e(i, n, c=1):
    return Element.basis(i, n, c)


def dp_pairs(levels=st.integers(3, 5)):
    return same_level(2, levels=levels, doubly_pure=True)


# -- doubly pure identities (tilde algebra) -----------------------------------------------

@given(dp_pairs())
def test_right_and_left_multiplication_by_e_tilde(ab):
    a, _ = ab
    et = e_tilde(a.level)
    assert cd_mul(a, et) == tilde(a)
    assert cd_mul(et, a) == -tilde(a)


@given(dp_pairs())
def test_product_with_own_tilde(ab):
    a, _ = ab
    et = e_tilde(a.level)
    assert cd_mul(a, tilde(a)) == -et.scale(norm2(a))
    assert cd_mul(tilde(a), a) == et.scale(norm2(a))
    assert inner(a, tilde(a)) == 0


@given(st.integers(3, 5).flatmap(
    lambda n: st.tuples(*[st.integers(-3, 3)] * ((1 << n) - 1)).map(lambda cs: (n, cs))),
       st.data())
def test_tilde_of_product_pure_left_factor(ncs, data):
    n, cs = ncs
    a = Element(n, (F(0),) + tuple(F(c) for c in cs))
    b = data.draw(same_level(1, levels=st.just(n), doubly_pure=True))[0]
    assert cd_mul(tilde(a), b) == -tilde(cd_mul(a, b))


def test_tilde_of_product_needs_b_doubly_pure():
    """With b merely pure the identity is not general; record how often it holds."""
    rng = random.Random(11)
    held = total = 0
    for n in (3, 4, 5):
        for _ in range(100):
            a = random_element(rng, n, pure=True)
            b = random_element(rng, n, pure=True)
            held += cd_mul(tilde(a), b) == -tilde(cd_mul(a, b))
            total += 1
    # frozen outcome of this seed: the identity breaks for most samples
    assert (held, total) == (40, 300)


def _orthogonalized(ab, k):
    a, b = ab
    if a.is_zero():
        return a, b
    if k & 1:
        b = b - a.scale(inner(b, a) / norm2(a))
    if k & 2:
        b = b - tilde(a).scale(inner(b, tilde(a)) / norm2(a))
    return a, b


@given(dp_pairs(), st.integers(0, 3))
def test_orthogonality_via_tilde_sum(ab, k):
    a, b = _orthogonalized(ab, k)
    assert (inner(a, b) == 0) == (cd_mul(tilde(a), b) + cd_mul(tilde(b), a)).is_zero()


@given(dp_pairs(), st.integers(0, 3))
def test_tilde_orthogonality_via_product(ab, k):
    a, b = _orthogonalized(ab, k)
    assert (inner(tilde(a), b) == 0) == (cd_mul(a, b) == cd_mul(tilde(b), tilde(a)))


@given(dp_pairs(), st.integers(0, 3))
def test_tilde_swap_iff_orthogonal_to_quaternion_part(ab, k):
    a, b = _orthogonalized(ab, k)
    assert (cd_mul(tilde(a), b) == cd_mul(a, tilde(b))) == \
        (inner(a, b) == 0 and inner(tilde(a), b) == 0)


# -- alternation ----------------------------------------------------------------------

@given(same_level(2, levels=st.integers(1, 3)))
def test_everything_alternates_up_to_octonions(xy):
    x, y = xy
    assert alternates(x, y)
    assert alternates_strongly(x, y)
    assert alternates(x, Element.basis(0, x.level))


@given(same_level(1, levels=st.integers(4, 5), doubly_pure=True))
def test_doubly_pure_alternates_with_e_tilde(xs):
    (a,) = xs
    assert alternates(a, e_tilde(a.level))


@given(same_level(1, levels=st.integers(1, 5)), st.integers(-3, 3))
def test_dependent_pairs_alternate_strongly(xs, k):
    (a,) = xs
    assert alternates_strongly(a, a.scale(k))


def test_strong_alternation_failure_is_reported():
    # (x,x,y) != 0 witness found by the ladder search at level 4
    x, y = e(1, 4) + e(10, 4), e(4, 4)
    result = alternates_strongly(x, y)
    assert not result
    assert result.failing == ["(a,a,b)"]
    assert associator(x, x, y) == e(15, 4, 2)


# -- quaternion subalgebras ------------------------------------------------------------

def test_h_of_e1_at_level2():
    h = quaternion_H(e(1, 2))
    assert [b.support() for b in h.basis] == [(0,), (3,), (1,), (2,)]
    assert h.labels == ("e0", "a~", "a", "e~0")
    assert check_iso_to_level(h, 2)


def test_h_of_e1_at_level4():
    h = quaternion_H(e(1, 4))
    assert list(h.basis) == [e(0, 4), e(9, 4), e(1, 4), e(8, 4)]
    assert h.closed and check_iso_to_level(h, 2)


def test_h_rejects_non_doubly_pure():
    with pytest.raises(AlgebraError):
        quaternion_H(e(0, 3))
    with pytest.raises(AlgebraError):
        quaternion_H(e(4, 3))


def test_h_of_rational_unit_vector():
    a = e(1, 4, F(3, 5)) + e(9, 4, F(4, 5))
    assert norm2(a) == 1
    assert check_iso_to_level(quaternion_H(a), 2)


@pytest.mark.parametrize("seed", range(10))
def test_h_of_random_unit_is_quaternions(seed):
    a = random_unit_doubly_pure(random.Random(seed), 3 + seed % 3)
    assert check_iso_to_level(quaternion_H(a), 2)


def test_h_of_non_unit_is_closed_but_scaled():
    h = quaternion_H(e(1, 3, 2))
    assert h.closed and not check_iso_to_level(h, 2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_v_of_basis_pair(n):
    assert check_iso_to_level(V(e(1, n), e(2, n)), 2)


def test_v_of_dependent_pair_is_not_closed():
    v = V(e(1, 3), e(1, 3))
    assert not v.independent and not v.closed
    assert not check_iso_to_level(v, 2)


def test_v_permuted_basis_is_not_iso():
    a, b = e(1, 2), e(2, 2)
    sub = subalgebra([e(0, 2), b, a, cd_mul(a, b)])
    assert sub.closed and not check_iso_to_level(sub, 2)


def test_iso_dimension_mismatch():
    with pytest.raises(AlgebraError):
        check_iso_to_level(V(e(1, 3), e(2, 3)), 3)


@pytest.mark.parametrize("seed", range(8))
def test_orthonormal_alternating_pair_spans_quaternions(seed):
    rng = random.Random(seed)
    if seed % 2:
        a, b = random_orthonormal_pure_pair(rng, 3)
    else:
        a, b = random_unit_doubly_pure(rng, 4), e_tilde(4)
    assert associator(a, a, b).is_zero()
    ab = cd_mul(a, b)
    assert inner(ab, a) == 0 and inner(ab, b) == 0 and norm2(ab) == 1
    assert check_iso_to_level(V(a, b), 2)


# -- special triples and octonion subalgebras ----------------------------------------------

def test_special_triple_examples():
    assert is_special_triple(e(1, 3), e(2, 3), e(7, 3))
    assert not is_special_triple(e(1, 3), e(2, 3), e(3, 3))
    assert "c in V(a;b)^perp" in special_triple_violations(e(1, 3), e(2, 3), e(3, 3))
    assert is_special_triple(e(1, 4), e(2, 4), e(4, 4))


def test_octonion_of_standard_triple_is_identity():
    o = octonion_O(e(1, 3), e(2, 3), e(7, 3))
    assert check_iso_to_level(o, 3)
    assert [b.support() for b in o.basis] == [(i,) for i in range(8)]
    assert all(b.coeffs[b.support()[0]] == 1 for b in o.basis)


def test_octonion_at_level4_uses_first_eight_coordinates():
    o = octonion_O(e(1, 4), e(2, 4), e(4, 4))
    assert sorted(b.support()[0] for b in o.basis) == list(range(8))
    assert check_iso_to_level(o, 3)


def test_octonion_rejects_non_special():
    with pytest.raises(AlgebraError):
        octonion_O(e(1, 3), e(2, 3), e(3, 3))


def test_special_triple_need_not_give_octonions():
    # special by definition but the 8-dim span is not alternative
    a, b, c = e(1, 4), e(2, 4), e(12, 4)
    assert is_special_triple(a, b, c)
    o = octonion_O(a, b, c)
    assert o.closed and o.orthogonal
    assert not check_iso_to_level(o, 3)
    x = o.basis[1] + o.basis[4]
    assert not associator(x, x, o.basis[2]).is_zero()


def test_special_basis_triples_at_level4_census():
    triples = [t for t in itertools.combinations(range(1, 16), 3)
               if is_special_triple(*(e(i, 4) for i in t))]
    iso = [t for t in triples if check_iso_to_level(octonion_O(*(e(i, 4) for i in t)), 3)]
    assert (len(triples), len(iso)) == (420, 224)


@pytest.mark.parametrize("seed", range(6))
def test_pairwise_quaternion_spans_of_special_triple(seed):
    rng = random.Random(seed)
    a, b, c = random_special_triple_level3(rng)
    if seed % 2:
        a, b, c = (pad(x, 4) for x in (a, b, c))
    assert is_special_triple(a, b, c)
    for x, y in ((a, b), (a, c), (b, c)):
        assert check_iso_to_level(V(x, y), 2)
    assert check_iso_to_level(octonion_O(a, b, c), 3)


@pytest.mark.parametrize("seed", range(6))
def test_triples_inside_an_octonion_span_regenerate_it(seed):
    # a fixed octonion image at level 4 that contains e~0
    phi = mono_from_triple(e(1, 4), e(8, 4), e(2, 4))
    base = subalgebra(list(phi.columns))
    x0, y0, z0 = random_special_triple_level3(random.Random(seed))
    x, y, z = phi(x0), phi(y0), phi(z0)
    assert inner(z, cd_mul(x, y)) == 0
    assert is_special_triple(x, y, z)
    o = octonion_O(x, y, z)
    assert all(span_contains(base, v) is not None for v in o.basis)
    assert all(span_contains(o, v) is not None for v in base.basis)


def test_subalgebra_json():
    data = quaternion_H(e(1, 2)).to_json()
    assert data["ambient_level"] == 2 and data["closed"] is True
    assert data["basis"][1] == {"level": 2, "coeffs": ["0", "0", "0", "1"]}
    # e~0 * a = -a~  (basis index 3 times 2 gives minus index 1)
    assert data["table"][3][2] == ["0", "-1", "0", "0"]
