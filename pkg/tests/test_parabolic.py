import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paratrig import gentrig
from paratrig.numerics import SingularityError, fd_derivative
from paratrig.parabolic import (
    DomainWarning,
    GdMode,
    cosp_closed,
    cosp_hyper,
    cp_sp,
    cubic_residual,
    ep,
    evaluate,
    gdp,
    gdp_many,
    ip,
    reconstruct,
    series,
    sinp_closed,
    tgp,
    value,
)

from conftest import bisect

H = 1e-5
# Y**3 + 3Y - 1 = 0, root from an independent 30-digit mpmath solve
COSP_1 = 0.322185354626085592911
SINP_1 = 1 - COSP_1**2
IP_1 = 0.952350641142189530


def test_cubic_root_oracle_at_one():
    assert bisect(lambda y: cubic_residual(1.0, y), 0.0, 1.0) == pytest.approx(COSP_1, abs=1e-12)


@pytest.mark.parametrize(
    "phi, y",
    [(0.0, 1.0), (4 / 3, 0.0), (8 / 3, -1.0)],
)
def test_cubic_residual_zeros(phi, y):
    assert cubic_residual(phi, y) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize(
    "phi, c, s",
    [(0.0, 1.0, 0.0), (4 / 3, 0.0, 1.0), (8 / 3, -1.0, 0.0), (1.0, COSP_1, SINP_1)],
)
def test_closed_form_special_values(phi, c, s):
    assert cosp_closed(phi) == pytest.approx(c, abs=1e-14)
    assert sinp_closed(phi) == pytest.approx(s, abs=1e-14)


@pytest.mark.parametrize(
    "phi, c, s",
    [(0.0, 1.0, 0.0), (8 / 3, -1.0, 0.0), (4 / 3, 0.0, 1.0)],
)
def test_hyperbolic_special_values(phi, c, s):
    assert cosp_hyper(phi) == pytest.approx((c, s), abs=1e-14)


@settings(max_examples=300)
@given(st.floats(min_value=-50, max_value=50))
def test_closed_form_solves_cubic(phi):
    y = cosp_closed(phi)
    scale = max(1.0, abs(y) ** 3, abs(phi))
    assert abs(cubic_residual(phi, y)) <= 1e-13 * scale


@settings(max_examples=300)
@given(st.floats(min_value=-2, max_value=5))
def test_fundamental_identity(phi):
    assert abs(cosp_closed(phi) ** 2 + sinp_closed(phi) - 1) <= 1e-12


@settings(max_examples=200)
@given(st.floats(min_value=0, max_value=8 / 3))
def test_closed_matches_hyperbolic(phi):
    c, s = cosp_hyper(phi)
    assert abs(cosp_closed(phi) - c) <= 1e-12
    assert abs(sinp_closed(phi) - s) <= 1e-12


def test_large_argument_guard_is_continuous():
    # Cardano and hyperbolic forms meet at |4 - 3 phi| = 8
    for edge in (-4 / 3, 4.0):
        lo, hi = cosp_closed(edge - 1e-12), cosp_closed(edge + 1e-12)
        assert abs(lo - hi) <= 1e-11


def test_monotone_decreasing_extended():
    grid = np.linspace(-10, 12, 4001)
    values = [cosp_closed(x) for x in grid]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_series_coefficients():
    # picks the Phi**4 and Phi**5 coefficients out of the polynomials
    x = 1e-1
    c, s = series(x)
    c_low = 1 - x / 2 - x**2 / 8 - x**3 / 24
    s_low = x - x**3 / 24 - x**4 / 32
    assert (c - c_low + x**5 / 384) / x**4 == pytest.approx(-5 / 384, rel=1e-9)
    assert (s - s_low) / x**5 == pytest.approx(-7 / 384, rel=1e-9)
    assert series(0.0) == (1.0, 0.0)


def test_series_accuracy_and_order():
    def err(x):
        c, s = series(x)
        return abs(cosp_closed(x) - c), abs(sinp_closed(x) - s)

    assert max(err(0.1)) <= 1e-6
    for x in np.linspace(0.001, 0.02, 20):
        assert max(err(x)) <= 1e-9
    for i in (0, 1):
        assert 48 <= err(0.2)[i] / err(0.1)[i] <= 80


def test_ip_values():
    assert ip(0.0) == pytest.approx(1.0, abs=1e-15)
    assert ip(4 / 3) == pytest.approx(1.0, abs=1e-15)
    assert ip(1.0) == pytest.approx(IP_1, abs=1e-12)
    assert all(ip(x) > 0 for x in np.linspace(-3, 6, 50))


@pytest.mark.parametrize("phi, expected", [(0.0, (1.0, 0.0)), (4 / 3, (0.0, 1.0))])
def test_cp_sp_values(phi, expected):
    assert cp_sp(phi) == pytest.approx(expected, abs=1e-15)


def test_cp_sp_unit_circle():
    for x in np.linspace(0, 8 / 3, 200):
        cp, sp = cp_sp(x)
        assert abs(cp * cp + sp * sp - 1) <= 1e-12


@pytest.mark.parametrize("phi", [0.2, 1.0, 1.2])
def test_cp_is_inverse_sqrt_of_one_plus_tangent_squared(phi):
    t = tgp(phi)
    cp, sp = cp_sp(phi)
    assert cp == pytest.approx(1 / math.sqrt(1 + t * t), abs=1e-13)
    assert sp == pytest.approx(t / math.sqrt(1 + t * t), abs=1e-13)


def test_gdp_special_values():
    assert gdp(0.0) == 0.0
    assert gdp(0.0, GdMode.RAW) == pytest.approx(0.0, abs=1e-15)
    assert gdp(4 / 3) == pytest.approx(math.pi / 2, abs=1e-10)
    assert gdp(8 / 3) == pytest.approx(math.pi, abs=1e-10)


def test_gdp_raw_pole():
    with pytest.raises(SingularityError):
        gdp(4 / 3, GdMode.RAW)


def test_gdp_modes_agree_before_quarter_period():
    for x in np.linspace(0, 4 / 3 - 1e-3, 40):
        assert abs(gdp(x, GdMode.RAW) - gdp(x, GdMode.CONTINUOUS)) <= 1e-9


def test_gdp_continuous_is_polar_angle():
    for x in np.linspace(-1, 8 / 3, 30):
        assert gdp(x) == pytest.approx(math.atan2(sinp_closed(x), cosp_closed(x)), abs=1e-10)


def test_gdp_raw_jumps_by_pi():
    below, above = gdp(4 / 3 - 1e-6, "raw"), gdp(4 / 3 + 1e-6, "raw")
    assert below == pytest.approx(math.pi / 2, abs=1e-5)
    assert above == pytest.approx(-math.pi / 2, abs=1e-5)


def test_gdp_many_matches_pointwise():
    grid = np.linspace(0, 8 / 3, 25)
    for x, g in zip(grid, gdp_many(grid)):
        assert g == pytest.approx(gdp(x), abs=1e-11)


def test_gdp_many_rejects_unsorted():
    with pytest.raises(ValueError):
        gdp_many([1.0, 0.5])


def test_gdp_derivative():
    for x in np.linspace(0.05, 8 / 3 - 0.05, 15):
        assert abs(fd_derivative(gdp, x, H) - 1 / ip(x) ** 2) <= 1e-6


def test_parabolic_derivative_rules():
    for x in np.linspace(0.01, 8 / 3 - 0.01, 40):
        c, s = cosp_closed(x), sinp_closed(x)
        den = s + 2 * c * c
        assert abs(fd_derivative(cosp_closed, x, H) + 1 / den) <= 1e-6
        assert abs(fd_derivative(sinp_closed, x, H) - 2 * c / den) <= 1e-6
        assert den == pytest.approx(2 - s, abs=1e-12)


def test_cubic_ode_form():
    for x in np.linspace(-1, 4, 30):
        g = lambda t: cosp_closed(t) + cosp_closed(t) ** 3 / 3
        assert abs(fd_derivative(g, x, H) + 1) <= 1e-6


def test_normalized_derivation_rules():
    for x in np.linspace(0.05, 8 / 3 - 0.05, 20):
        r2 = ip(x) ** 2
        cp, sp = cp_sp(x)
        assert abs(r2 * fd_derivative(lambda t: cp_sp(t)[0], x, H) + sp) <= 1e-6
        assert abs(r2 * fd_derivative(lambda t: cp_sp(t)[1], x, H) - cp) <= 1e-6


def test_ep_values():
    assert ep(0.0) == (1.0, 0.0)
    assert ep(4 / 3) == pytest.approx((0.0, 1.0), abs=1e-10)
    for x in np.linspace(-2, 5, 30):
        re, im = ep(x)
        assert abs(re * re + im * im - 1) <= 1e-12


def test_ep_equals_normalized_pair():
    for x in np.linspace(0, 8 / 3, 30):
        assert ep(x) == pytest.approx(cp_sp(x), abs=1e-9)


def test_reconstruction():
    assert reconstruct(0.0) == pytest.approx((1.0, 0.0), abs=1e-15)
    assert reconstruct(4 / 3) == pytest.approx((0.0, 1.0), abs=1e-10)
    assert reconstruct(1.0) == pytest.approx((COSP_1, SINP_1), abs=1e-9)


@pytest.mark.parametrize("backend", ["closed", "hyper", "area", "ode"])
def test_evaluate_backends(backend):
    v = evaluate(1.0, backend)
    assert (v.cosp, v.sinp) == pytest.approx((COSP_1, SINP_1), abs=1e-8)
    assert v.ip == pytest.approx(IP_1, abs=1e-8)


def test_evaluate_series_and_unknown():
    assert evaluate(0.01, "series").cosp == pytest.approx(cosp_closed(0.01), abs=1e-12)
    with pytest.raises(ValueError):
        evaluate(0.5, "bogus")


def test_family_delegation_matches_closed_form():
    grid = np.linspace(0, 8 / 3, 60)
    ode = gentrig.eval_ode_many(gentrig.PARABOLIC, grid)
    for x, o in zip(grid, ode):
        a = gentrig.eval_area(gentrig.PARABOLIC, x)
        assert abs(a.c - cosp_closed(x)) <= 1e-10
        assert abs(a.s - sinp_closed(x)) <= 1e-10
        assert abs(o.c - cosp_closed(x)) <= 1e-8
        assert abs(o.s - sinp_closed(x)) <= 1e-8


def test_value_warns_outside_window():
    with pytest.warns(DomainWarning):
        value(3.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        value(2.0)


def test_geometric_window_ranges():
    for x in np.linspace(0, 8 / 3, 100):
        c, s = cosp_closed(x), sinp_closed(x)
        assert -1 - 1e-15 <= c <= 1 + 1e-15
        assert -1e-15 <= s <= 1 + 1e-15
