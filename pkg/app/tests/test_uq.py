import pytest

from app.algebra import IMAG, Q, u_power
from app.checks import run_check
from app.fock import FockVector
from app.services.mpo_service import conjugate_by_k
from app.services.uq_service import (
    AFFINE_TYPES,
    AlgebraError,
    build_algebra,
    build_cyclic_algebra,
    coproduct,
    generator_operator,
    pi_z,
)


def transpose(matrix):
    return tuple(zip(*matrix))


def test_rank_one_cartan_matrix():
    assert build_algebra(1, 2, 1).cartan == ((2, -4), (-1, 2))


@pytest.mark.parametrize("s,t", list(AFFINE_TYPES))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_langlands_dual_transposes_cartan(s, t, n):
    spec = build_algebra(s, t, n)
    assert spec.langlands_dual().cartan == transpose(spec.cartan)
    assert spec.affine_type == AFFINE_TYPES[(s, t)]


def test_cyclic_cartan_matrix():
    assert build_cyclic_algebra(2).cartan == ((2, -2), (-2, 2))
    assert build_cyclic_algebra(3).cartan == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def test_f0_image():
    spec = build_algebra(1, 1, 2)
    image = pi_z(spec, "f0")
    assert image.z_degree == -1
    assert image.operator.image((1, 0)) == FockVector.basis((0, 0), IMAG * u_power(-3) * (1 - Q ** 2))


def test_e0_raises_z_degree():
    assert pi_z(build_algebra(2, 1, 1), "e0").z_degree == 2


def test_invalid_algebra_data():
    with pytest.raises(AlgebraError):
        build_algebra(3, 1, 2)
    with pytest.raises(AlgebraError):
        build_algebra(1, 1, 0)
    with pytest.raises(AlgebraError):
        pi_z(build_algebra(1, 1, 1), "e5")
    with pytest.raises(AlgebraError):
        pi_z(build_algebra(1, 1, 1), "x1")


def test_coproduct_of_k_is_grouplike():
    spec = build_algebra(1, 1, 1)
    delta = coproduct(spec, "k1").specialize()
    k = generator_operator(spec, "k1")
    state = (1, 2)
    expected = k.tensor(k).image(state)
    assert delta.coefficient(0).image(state) == expected


@pytest.mark.parametrize("s,t,n", [(1, 2, 1), (1, 1, 2), (2, 2, 2), (2, 1, 2)])
def test_uq_relations(s, t, n):
    result = run_check("uq", {"s": s, "t": t, "n": n, "cutoff": 2})
    assert result.passed, result.witnesses


def test_cyclic_uq_relations():
    result = run_check("uq", {"n": 3, "cutoff": 2, "cyclic": True})
    assert result.passed, result.witnesses


@pytest.mark.parametrize("s,factor", [(1, -IMAG * u_power(-1)), (2, -u_power(-2))])
def test_zigzag_conjugated_e0(s, factor):
    spec = build_algebra(s, 1, 2)
    e0 = generator_operator(spec, "e0")
    conjugated = conjugate_by_k(e0, 2)
    for state in [(0, 0), (1, 0), (2, 1)]:
        assert conjugated.image(state) == e0.image(state) * factor


def test_zigzag_leaves_interior_generators():
    spec = build_algebra(1, 1, 3)
    e1 = generator_operator(spec, "e1")
    for state in [(1, 0, 0), (2, 1, 0), (1, 1, 1)]:
        assert conjugate_by_k(e1, 3).image(state) == e1.image(state)
