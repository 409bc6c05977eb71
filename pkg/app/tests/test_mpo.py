import pytest

from app.algebra import LaurentPoly, ONE, Q, Scalar
from app.checks import run_check
from app.checks.exact.mpo_checks import _symmetry_sides
from app.fock import FockVector
from app.services.mpo_service import (
    BoundaryVector,
    boundary_bra_sides,
    boundary_fixed_sides,
    build_S,
    chi_bra_sides,
    chi_ket_sides,
    s_matrix_rows,
    sitewise_conserved,
    vacuum_element,
    vacuum_element_direct,
    zigzag_operator,
    zigzag_transform,
)
from app.utils import box_states


def test_boundary_coefficients():
    assert BoundaryVector(1).coefficient(1) == Scalar(1, LaurentPoly({0: 1, 2: -1}))
    assert BoundaryVector(2).coefficient(1).is_zero()
    assert BoundaryVector(2).coefficient(2) == Scalar(1, LaurentPoly({0: 1, 8: -1}))
    with pytest.raises(ValueError):
        BoundaryVector(3)


@pytest.mark.parametrize("s", [1, 2])
def test_boundary_fixed_point(s):
    for out in box_states(3, 3):
        lhs, rhs = boundary_fixed_sides(s, out)
        assert lhs == rhs, out
        lhs, rhs = boundary_bra_sides(s, out)
        assert lhs == rhs, out


@pytest.mark.parametrize("s", [1, 2])
def test_single_site_boundary_conditions(s):
    for index in range(5):
        for name, (lhs, rhs) in {**chi_ket_sides(s, index), **chi_bra_sides(s, index)}.items():
            assert lhs == rhs, (name, index)


def test_boundary_check():
    result = run_check("boundary", {"s": 2, "cutoff": 2})
    assert result.passed, result.witnesses
    assert result.states_checked == 27 + 3


def test_vacuum_spot_values():
    assert vacuum_element(1, 1, 1, 0) == ONE
    assert vacuum_element(1, 1, 1, 1) == (1 + Q) / (1 - Q)


@pytest.mark.parametrize("order", range(4))
def test_vacuum_matches_direct_summation(order):
    assert vacuum_element(1, 1, 1, order) == vacuum_element_direct(order)


def test_odd_orders_vanish_for_s2():
    series = build_S(2, 1, 1, [0, 1, 2])
    for state in box_states(2, 2):
        assert series.coefficient(1).image(state).is_zero()


def test_s_conserves_each_site():
    for row in s_matrix_rows(1, 2, 1, [0, 1, 2], 2):
        assert sitewise_conserved(row["in_state"], row["out_state"], 1)


@pytest.mark.parametrize("s,t", [(1, 1), (2, 2)])
def test_s_commutes_with_k_tensor_k(s, t):
    n = 1
    series = build_S(s, t, n, range(3))
    kk = zigzag_operator(n).tensor(zigzag_operator(n))
    for order in range(3):
        op = series.coefficient(order)
        for state in box_states(2 * n, 2):
            assert (op @ kk).image(state) == (kk @ op).image(state)


def test_zigzag_scale_cancels():
    series = build_S(1, 1, 1, range(3))
    plain = zigzag_transform(series, 1)
    scaled = zigzag_transform(series, 1, scale=Q)
    for order in range(3):
        for state in box_states(2, 2):
            assert plain.coefficient(order).image(state) == scaled.coefficient(order).image(state)


def test_rmatrix_rows_contain_vacuum_entry():
    rows = s_matrix_rows(1, 1, 1, [0, 1], 1)
    vacuum = [row for row in rows if row["in_state"] == [0, 0] and row["out_state"] == [0, 0]]
    assert {row["z_order"]: row["coeff"] for row in vacuum} == {
        0: "(1)/(1)",
        1: "(1 + u^2)/(1 - u^2)",
    }


@pytest.mark.parametrize("zigzag", [False, True])
def test_yang_baxter(zigzag):
    result = run_check("ybe", {"s": 1, "t": 1, "n": 1, "order": 1, "cutoff": 1, "zigzag": zigzag})
    assert result.passed, result.witnesses


def test_yang_baxter_mixed_boundaries():
    result = run_check("ybe", {"s": 1, "t": 2, "n": 1, "order": 2, "cutoff": 1})
    assert result.passed, result.witnesses


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_symmetry_rank_one(s, t):
    result = run_check("symmetry", {"s": s, "t": t, "n": 1, "order": 2, "cutoff": 1})
    assert result.passed, result.witnesses


def test_symmetry_two_sites():
    result = run_check("symmetry", {"s": 1, "t": 1, "n": 2, "order": 2, "cutoff": 1})
    assert result.passed, result.witnesses


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_yang_baxter_at_cutoff_two(s, t):
    result = run_check("ybe", {"s": s, "t": t, "n": 1, "order": 2, "cutoff": 2})
    assert result.passed, result.witnesses


@pytest.mark.parametrize("s,t", [(1, 1), (2, 2)])
def test_symmetry_at_order_four(s, t):
    result = run_check("symmetry", {"s": s, "t": t, "n": 1, "order": 4, "cutoff": 3})
    assert result.passed, result.witnesses


def test_symmetry_sides_are_reused_within_a_worker():
    _symmetry_sides.cache_clear()
    params = {"s": 1, "t": 1, "n": 1, "order": 1, "cutoff": 1}
    assert run_check("symmetry", params, workers=1).passed
    first = _symmetry_sides.cache_info()
    assert first.misses > 0
    assert run_check("symmetry", params, workers=1).passed
    assert _symmetry_sides.cache_info().hits >= first.misses
