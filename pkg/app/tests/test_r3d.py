import pytest

from app.algebra import ONE, Q, Scalar
from app.checks import run_check
from app.fock import FockVector, SiteError
from app.services.r3d_service import (
    SiteClashError,
    apply_chain,
    apply_r,
    coefficient_rows,
    r_coefficient,
    r_image,
    r_operator,
    tetrahedron_sides,
)
from app.utils import box_states


def test_known_coefficients():
    assert r_coefficient(0, 0, 0, 0, 0, 0) == ONE
    assert r_coefficient(0, 1, 0, 0, 1, 0) == -Q
    assert r_coefficient(1, 0, 1, 0, 1, 0) == ONE
    assert r_coefficient(0, 1, 0, 1, 0, 1) == 1 - Q ** 2


def test_r_on_010():
    image = apply_r((1, 2, 3), FockVector.basis((0, 1, 0)))
    assert image == FockVector({(1, 0, 1): ONE, (0, 1, 0): -Q})


def test_coefficients_vanish_off_conservation():
    assert r_coefficient(1, 0, 0, 0, 0, 0).is_zero()
    assert r_coefficient(0, 0, 1, 0, 1, 1).is_zero()


@pytest.mark.parametrize("state", list(box_states(3, 2)))
def test_image_respects_conservation(state):
    i, j, k = state
    for (a, b, c), _ in r_image(i, j, k):
        assert a + b == i + j
        assert b + c == j + k


@pytest.mark.parametrize("state", list(box_states(3, 2)))
def test_r_is_an_involution(state):
    basis = FockVector.basis(state)
    assert apply_r((1, 2, 3), apply_r((1, 2, 3), basis)) == basis


def test_involution_check_counts_states():
    result = run_check("involution", {"cutoff": 2})
    assert result.passed
    assert result.states_checked == 27


def test_intertwining_check():
    result = run_check("intertwining", {"cutoff": 2})
    assert result.passed, result.witnesses
    assert result.states_checked == 27


def test_conservation_check():
    assert run_check("conservation", {"cutoff": 2}).passed


def test_tetrahedron_on_small_states():
    result = run_check("tetrahedron", {"cutoff": 1})
    assert result.passed, result.witnesses
    assert result.states_checked == 64


def test_tetrahedron_sides_agree_on_a_mixed_state():
    lhs, rhs = tetrahedron_sides((2, 0, 1, 1, 0, 2))
    assert lhs == rhs


def test_chain_applies_rightmost_first():
    state = FockVector.basis((0, 1, 0, 0))
    chain = [(1, 2, 3), (2, 3, 4)]
    assert apply_chain(chain, state) == apply_r((1, 2, 3), apply_r((2, 3, 4), state))


def test_site_errors():
    with pytest.raises(SiteClashError):
        apply_r((1, 1, 2), FockVector.basis((0, 0, 0)))
    with pytest.raises(SiteError):
        r_operator((1, 2, 4), 3)


def test_coefficient_rows():
    rows = coefficient_rows(1)
    assert (0, 0, 0, 0, 0, 0, ONE) in rows
    assert all(isinstance(row[-1], Scalar) for row in rows)
    assert all(not row[-1].is_zero() for row in rows)


@pytest.mark.parametrize("k", range(5))
def test_vacuum_pair_is_fixed(k):
    assert dict(r_image(0, 0, k)) == {(0, 0, k): ONE}


@pytest.mark.parametrize("state", list(box_states(3, 3)))
def test_support_size_is_bounded(state):
    i, j, k = state
    assert len(list(r_image(i, j, k))) <= min(i + j, j + k) + 1


def test_tetrahedron_at_cutoff_two():
    result = run_check("tetrahedron", {"cutoff": 2})
    assert result.passed, result.witnesses
    assert result.states_checked == 729
