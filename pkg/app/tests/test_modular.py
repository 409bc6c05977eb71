import cmath
import math

import pytest

from app.services.modular_service import (
    KernelPoint,
    RegimeError,
    TailBoundError,
    _chi_route,
    _phi_route,
    _tail_cutoffs,
    appendix_sides,
    chi_b,
    chi_over_sqrt_phi,
    chi_product_identity_sides,
    chi_swap_sides,
    context_from_settings,
    difference_sides,
    gauge_sides,
    kd_weight,
    kernel_eval,
    kernel_relation_sides,
    log_qdilog,
    make_context,
    modular_h,
    modular_S_element,
    nearest_root_residual,
    qdilog,
    qdilog_mpmath,
    reflection_sides,
    spectral_z,
    sqrt_phi_chi,
)

TOL = 1e-8


@pytest.fixture(scope="module")
def strong():
    return context_from_settings("strong-coupling")


@pytest.fixture(scope="module")
def product():
    return context_from_settings("product")


def close(lhs, rhs, tol=TOL):
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))


def test_context_quantities(strong):
    assert strong.strong_coupling
    assert strong.regime == "strong-coupling"
    assert abs(strong.eta - math.cos(math.pi / 5)) < 1e-14
    assert abs(strong.q - cmath.exp(1j * math.pi * strong.b ** 2)) < 1e-14
    assert abs(strong.dual().b - strong.b.conjugate()) < 1e-14


def test_context_rejects_non_positive_b():
    with pytest.raises(RegimeError):
        make_context(complex(-0.5, 0.2))


def test_half_period_ratio_is_two(strong):
    lhs, rhs = difference_sides(0.0, strong)
    assert rhs == 2
    assert close(lhs, 2)


def test_phi_at_zero_has_unit_modulus(strong):
    assert close(abs(qdilog(0.0, strong)), 1.0)


@pytest.mark.parametrize("sigma", [-0.6, 0.0, 0.4, 1.1])
def test_difference_equations(strong, sigma):
    assert close(*difference_sides(sigma, strong))
    assert close(*difference_sides(sigma, strong, dual=True))
    assert close(*gauge_sides(sigma, strong))


@pytest.mark.parametrize("sigma", [-0.8, 0.3, 0.9])
def test_unitarity(strong, sigma):
    assert abs(abs(qdilog(sigma, strong)) - 1) < TOL


def test_routes_agree_in_product_regime(product):
    z = 0.3
    integral = qdilog(z, product, "integral")
    assert abs(integral - qdilog(z, product, "product")) < 1e-10
    assert abs(integral - qdilog_mpmath(z, product)) < 1e-10


def test_contour_offset_does_not_matter(product):
    shifted = product.with_quadrature(contour_offset=0.3)
    assert abs(qdilog(0.2, shifted, "integral") - qdilog(0.2, product, "integral")) < 1e-10


def test_product_route_outside_strip(product):
    z = 0.1 + 1.5j
    assert not product.in_strip(z)
    assert close(
        cmath.exp(log_qdilog(z - 0.5j * product.b, product) - log_qdilog(z + 0.5j * product.b, product)),
        1 + cmath.exp(2 * math.pi * product.b * z),
    )


def test_real_b_squared_has_no_route_outside_strip():
    ctx = make_context(1.0)
    with pytest.raises(RegimeError):
        log_qdilog(2j, ctx)


@pytest.mark.parametrize("sigma", [-0.5, 0.4])
def test_chi_reflection(strong, sigma):
    assert close(*reflection_sides(sigma, strong))


def test_chi_product_identity(strong):
    assert close(*chi_product_identity_sides(0.4, strong))


def test_chi_swap_equations(strong):
    for name, (ratio, radicand) in chi_swap_sides(0.25, strong).items():
        assert nearest_root_residual(ratio, radicand) < TOL, name


def test_strip_edge_avoids_integral(strong):
    edge = 0.25 + 1j / strong.b
    assert abs(abs(edge.imag) - strong.eta.real) < 1e-12
    assert _chi_route(edge, strong, "auto") == "product"
    assert _chi_route(0.25, strong, "auto") == "integral"
    assert _phi_route(0.95j * strong.eta.real + 0.1, strong, "auto") == "product"


@pytest.mark.parametrize("sigma", [-1.1, -0.6, 0.0, 0.6, 1.1])
def test_chi_swap_at_strong_coupling(strong, sigma):
    for name, (ratio, radicand) in chi_swap_sides(sigma, strong).items():
        assert nearest_root_residual(ratio, radicand) < TOL, name


def test_chi_routes_agree_up_to_sign(product):
    integral = chi_b(0.2, product, "integral")
    via_product = chi_b(0.2, product, "product")
    assert min(abs(integral - via_product), abs(integral + via_product)) < 1e-10


def test_product_forms(product):
    sigma = 0.2
    assert close(
        sqrt_phi_chi(sigma, product) / chi_over_sqrt_phi(sigma, product),
        qdilog(sigma, product),
    )


@pytest.mark.parametrize("identity", ["appendixA1", "appendixA2"])
def test_fourier_identities(strong, identity):
    sides = appendix_sides(identity, 0.1, strong)
    assert sides["lambda"].imag > 0
    assert close(sides["lhs"], sides["rhs"], 1e-6)


def test_unknown_fourier_identity(strong):
    with pytest.raises(ValueError):
        appendix_sides("appendixA3", 0.1, strong)


def test_modular_generators(strong):
    sigma, lam = 0.3, 0.1
    z_to_h = cmath.exp(modular_h(sigma, strong) * cmath.log(spectral_z(lam, strong)))
    assert abs(z_to_h - cmath.exp(2j * math.pi * lam * sigma)) < 1e-12


def test_kd_weight(strong):
    assert kd_weight(0.2, 0.2, strong) == 1
    assert abs(kd_weight(0.5, 0.0, strong) - cmath.exp(math.pi * strong.eta * 0.5)) < 1e-12


def test_kernel_points():
    point = KernelPoint.from_free(0.15, (0.3, -0.2, 0.1))
    assert point.conserves()
    assert not KernelPoint((0, 0, 0), (1, 0, 0)).conserves()
    with pytest.raises(ValueError):
        KernelPoint((0, 0), (0, 0, 0))


def test_kernel_vanishes_off_conservation(strong):
    assert kernel_eval(KernelPoint((0, 0, 0), (1, 0, 0)), strong) == 0j
    with pytest.raises(ValueError):
        kernel_eval(KernelPoint((0, 0, 0), (0, 0, 0)), strong, gauge="other")


def test_kernel_is_symmetric_in_b(strong):
    point = KernelPoint.from_free(0.15, (0.3, -0.2, 0.1))
    assert close(kernel_eval(point, strong.dual()), kernel_eval(point, strong))


def test_kernel_relation():
    ctx = make_context(complex(0.4, 0.2))
    assert close(*kernel_relation_sides(0.1, (0.2, -0.1, 0.3), ctx), 1e-5)


def test_kernel_relation_regime(strong):
    with pytest.raises(RegimeError):
        kernel_relation_sides(0.1, (0.2, -0.1, 0.3), strong)


def test_modular_s_element_arguments(strong):
    with pytest.raises(ValueError):
        modular_S_element(1, 1, 0.1, (0, 0, 0, 0), strong, n=2)
    with pytest.raises(ValueError):
        modular_S_element(3, 1, 0.1, (0, 0, 0, 0), strong)
    assert modular_S_element(1, 1, 0.1, (0.1, 0.0, 0.0, 0.0), strong) == (0j, 0.0)


def test_tail_cutoffs():
    lower, upper = _tail_cutoffs(lambda x: math.exp(-abs(x)), 1.0, 1.0, 1e-10)
    assert lower < -20 and upper > 20
    with pytest.raises(TailBoundError):
        _tail_cutoffs(lambda x: 1.0, 1.0, 0.0, 1e-10)
