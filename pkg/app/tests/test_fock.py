import random

import pytest

from app.algebra import LaurentPoly, ONE, Q, Scalar, u_power
from app.fock import (
    FockVector,
    SiteError,
    SparseOperator,
    ZSeries,
    a_minus,
    a_plus,
    apply_generator,
    generator,
    h_op,
    k_inv,
    k_op,
    pair_vectors,
    pairing,
    pairing_weight,
    qosc_relations,
    right_apply,
)


def test_k_eigenvalue():
    assert k_op(1, 1).image((2,)) == FockVector.basis((2,), u_power(5))
    assert k_inv(1, 1).image((2,)) == FockVector.basis((2,), u_power(-5))


def test_creation_and_annihilation():
    assert a_plus(1, 1).image((2,)) == FockVector.basis((3,))
    assert a_minus(1, 1).image((2,)) == FockVector.basis((1,), 1 - Q ** 4)
    assert a_minus(1, 1).image((0,)).is_zero()
    assert h_op(2, 2).image((1, 3)) == FockVector.basis((1, 3), Scalar(3))


def test_pairing_weight():
    assert pairing_weight((1,)) == 1 - Q ** 2
    assert pairing_weight((0, 0)) == ONE
    assert pairing((2,), FockVector.basis((2,))) == Scalar(LaurentPoly({0: 1, 4: -1}) * LaurentPoly({0: 1, 8: -1}))
    assert pairing((1,), FockVector.basis((2,))).is_zero()


@pytest.mark.parametrize("m", range(5))
def test_qosc_relations_hold(m):
    for name, (lhs, rhs) in qosc_relations().items():
        assert lhs.image((m,)) == rhs.image((m,)), name


@pytest.mark.parametrize("gen", ["a+", "a-", "k", "h"])
def test_right_action_is_transpose_under_pairing(gen):
    for m in range(7):
        for m_ket in range(7):
            ket = FockVector.basis((m_ket,))
            from_ket = pair_vectors(FockVector.basis((m,)), apply_generator(gen, 1, ket))
            from_bra = pair_vectors(right_apply(gen, 1, (m,)), ket)
            assert from_ket == from_bra


def test_site_out_of_range():
    with pytest.raises(SiteError):
        a_plus(3, 2)
    with pytest.raises(SiteError):
        apply_generator("a+", 0, FockVector.basis((0, 0)))


def test_site_is_checked_on_zero_vectors():
    with pytest.raises(SiteError):
        apply_generator("a-", 0, FockVector())
    with pytest.raises(SiteError):
        apply_generator("k", 3, FockVector(), arity=2)
    with pytest.raises(SiteError):
        apply_generator("a+", 2, FockVector.basis((1,)) + FockVector.basis((0, 1)))
    assert apply_generator("a-", 2, FockVector(), arity=2).is_zero()


def test_tensor_and_embed():
    op = a_plus(1, 1).tensor(SparseOperator.identity(1))
    assert op.image((0, 2)) == FockVector.basis((1, 2))
    embedded = a_minus(1, 1).embed([3], 3)
    assert embedded.image((0, 0, 1)) == FockVector.basis((0, 0, 0), 1 - Q ** 2)


def test_adding_different_z_degrees_raises():
    with pytest.raises(ValueError):
        a_plus(1, 1).with_z_degree(1) + a_plus(1, 1)


def test_zseries_known_range():
    series = ZSeries({0: SparseOperator.identity(1)}, 1, known_max=2)
    assert series.coefficient(1).image((0,)).is_zero()
    with pytest.raises(ValueError):
        series.coefficient(3)
    product = series * ZSeries.from_operators([a_plus(1, 1).with_z_degree(1)], 1)
    assert product.coefficient(1).image((0,)) == FockVector.basis((1,))


@pytest.mark.parametrize("seed", range(5))
def test_composition_matches_sequential_application(seed):
    rng = random.Random(seed)
    word = [(rng.choice(["a+", "a-", "k", "k-1", "h"]), rng.randint(1, 2)) for _ in range(4)]
    composed = SparseOperator.identity(2)
    for gen, site in word:
        composed = generator(gen, site, 2) @ composed
    for state in [(0, 0), (1, 2), (3, 1)]:
        vector = FockVector.basis(state)
        for gen, site in word:
            vector = apply_generator(gen, site, vector)
        assert composed.image(state) == vector, word


@pytest.mark.parametrize("m", range(5))
def test_h_grading(m):
    h, up, down = h_op(1, 1), a_plus(1, 1), a_minus(1, 1)
    assert (h @ up).image((m,)) == (up @ h).image((m,)) + up.image((m,))
    assert (h @ down).image((m,)) == (down @ h).image((m,)) - down.image((m,))
