import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmfinsler import geodesics as geo
from bmfinsler.errors import DomainError, RangeError, SpacelikeSeparationError
from bmfinsler.frames import HADAMARD, ORTHONORMAL, tetrad, to_chart
from bmfinsler.metric import metric_function, metric_tensor
from bmfinsler.numerics import rk4_integrate
from bmfinsler.verify import random_geodesic, random_timelike_pair

E = math.e
ONES = np.ones(4)


def test_rhs_examples():
    np.testing.assert_allclose(geo.geodesic_rhs(np.zeros(4), [1, 0, 0, 0])[4:], [-1, 0, 0, 0])
    # Radial motion keeps the transverse velocity at zero.
    np.testing.assert_array_equal(geo.geodesic_rhs(np.zeros(4), [0.7, 0, 0, 0])[5:], 0.0)
    # U0 = 0 with |U|^2 = exp(-2 z0): the first form gives dU0 = -|U|^2.
    z0 = 0.3
    U = np.array([0.0, math.exp(-z0), 0.0, 0.0])
    assert geo.geodesic_rhs([z0, 0, 0, 0], U)[4] == pytest.approx(-math.exp(-2 * z0))


@given(st.floats(-1, 1), st.lists(st.floats(-2, 2), min_size=3, max_size=3))
def test_rhs_second_form(z0, v):
    # For unit timelike U, |U|^2 = U0^2 - exp(-2 z0), so dU0 = exp(-2 z0) - 2 U0^2.
    v = np.array(v)
    U0 = math.sqrt(math.exp(-2 * z0) + v @ v)
    dU0 = geo.geodesic_rhs([z0, 0, 0, 0], np.concatenate([[U0], v]))[4]
    assert dU0 == pytest.approx(math.exp(-2 * z0) - 2 * U0 ** 2, rel=1e-12, abs=1e-12)


def test_radial_ray():
    ivp = geo.solve_ivp(ONES, ONES)
    for s in (0.0, 0.5, 3.0):
        np.testing.assert_allclose(ivp(s), ONES * (1 + s), rtol=1e-14)


def test_ivp_rejects_bad_directions():
    with pytest.raises(DomainError):
        geo.solve_ivp(ONES, [1, -1, 0, 0])  # spacelike
    with pytest.raises(DomainError):
        geo.solve_ivp(ONES, -ONES)  # past-pointing
    with pytest.raises(DomainError):
        geo.GeodesicIVP(a=1.0, b=0.5, n=np.zeros(3), u0=np.zeros(3))


def test_range_checked():
    ivp = geo.solve_ivp(ONES, [2, 1, 1, 1], length=1.0)
    with pytest.raises(RangeError):
        ivp(1.5)
    with pytest.raises(RangeError):
        ivp(-0.1)


@pytest.mark.parametrize("seed", range(4))
def test_metric_function_law_and_unit_speed(seed, constants):
    ivp = random_geodesic(np.random.default_rng(seed), constants, 3.0)
    h = 1e-5
    for s in np.linspace(0.1, 2.9, 8):
        assert metric_function(ivp(s)) == pytest.approx(math.sqrt(ivp.a ** 2 + 2 * ivp.b * s + s * s), rel=1e-12)
        tangent = (ivp(s + h) - ivp(s - h)) / (2 * h)
        assert metric_tensor(ivp(s)).quadratic(tangent) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("seed", range(3))
def test_matches_rk4(seed, constants):
    ivp = random_geodesic(np.random.default_rng(100 + seed), constants, 3.0)
    x0 = np.concatenate([ivp.chart(0.0), ivp.velocity(0.0)])
    tr = rk4_integrate(geo.geodesic_system(), x0, 3.0, 1e-3)
    y_rk = np.exp(tr.states[:, :4] @ constants.C)
    assert np.max(np.abs(y_rk - ivp.sample(tr.s))) < 1e-6


def test_chart_velocity_of_start(constants):
    y = np.array([1.0, 2.0, 0.5, 3.0])
    d = np.array([2.0, 3.0, 1.0, 3.5])
    ivp = geo.solve_ivp(y, d, constants=constants)
    h = 1e-6
    fd = (ivp(h) - ivp(0.0)) / h
    d_unit = d / math.sqrt(metric_tensor(y).quadratic(d))
    np.testing.assert_allclose(fd, d_unit, rtol=1e-5)


def test_bvp_examples():
    sol = geo.solve_bvp(ONES, 4 * ONES)
    assert sol.delta_s == pytest.approx(3.0, abs=1e-12)
    assert sol.ivp.b == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(sol(1.0), 2 * ONES, rtol=1e-14)
    sol = geo.solve_bvp(ONES, [4 * E, 4, 4, 4])
    assert sol.delta_s == pytest.approx(4.01612, abs=1e-5)
    with pytest.raises(SpacelikeSeparationError) as info:
        geo.solve_bvp(ONES, [E, 1, 1, 1])
    assert info.value.interval_sq == pytest.approx(-0.1639, abs=1e-4)
    assert info.value.precondition == "timelike-chord"


def test_bvp_endpoints(constants):
    rng = np.random.default_rng(3)
    for _ in range(20):
        y1, y2, _ = random_timelike_pair(rng, constants)
        sol = geo.solve_bvp(y1, y2, constants)
        np.testing.assert_allclose(sol(0.0), y1, rtol=1e-12)
        np.testing.assert_allclose(sol(sol.delta_s), y2, rtol=1e-10)


def test_point_along_matches_chart_route():
    rng = np.random.default_rng(4)
    for _ in range(20):
        y1, y2, _ = random_timelike_pair(rng, HADAMARD)
        sol = geo.solve_bvp(y1, y2)
        for frac in (0.0, 0.3, 1.0):
            s = frac * sol.delta_s
            np.testing.assert_allclose(geo.point_along(y1, y2, s), sol(s), rtol=1e-10)
        p = geo.point_along(y1, y2, 0.4 * sol.delta_s)
        assert geo.angle(y1, p) + geo.angle(p, y2) == pytest.approx(sol.eta, abs=1e-10)
        with pytest.raises(RangeError):
            geo.point_along(y1, y2, 1.1 * sol.delta_s)


def test_angle_examples():
    assert geo.angle(ONES, ONES) == 0.0
    assert geo.angle([E, 1, 1, 1], ONES) == pytest.approx(math.sqrt(3) / 4, abs=1e-12)
    assert geo.distance(ONES, 4 * ONES) == pytest.approx(3.0, abs=1e-12)
    assert geo.distance(ONES, [4 * E, 4, 4, 4]) == pytest.approx(4.01612, abs=1e-5)


def test_scalar_product_examples():
    assert geo.scalar_product(ONES, 4 * ONES) == pytest.approx(4.0, abs=1e-14)
    value = geo.scalar_product(ONES, [E, 1, 1, 1])
    assert value == pytest.approx(math.exp(0.25) * math.cosh(math.sqrt(3) / 4), abs=1e-14)
    assert value == pytest.approx(1.4062954911548815, abs=1e-13)


@given(st.lists(st.floats(-2, 2), min_size=4, max_size=4), st.lists(st.floats(-2, 2), min_size=4, max_size=4))
def test_angle_is_chart_distance(la, lb):
    a, b = np.exp(la), np.exp(lb)
    eta = geo.angle(a, b)
    assert eta == pytest.approx(geo.angle(b, a), abs=1e-14)
    for C in (HADAMARD, ORTHONORMAL):
        du = to_chart(a, C).u - to_chart(b, C).u
        assert eta == pytest.approx(float(np.linalg.norm(du)), abs=1e-12)


@given(st.lists(st.floats(-2, 2), min_size=4, max_size=4))
def test_scalar_square(la):
    a = np.exp(la)
    assert geo.scalar_product(a, a) == pytest.approx(metric_function(a) ** 2, rel=1e-14)


def test_distance_symmetry_and_x_identity(constants):
    rng = np.random.default_rng(5)
    for _ in range(20):
        y1, y2, eta = random_timelike_pair(rng, constants)
        assert geo.distance(y1, y2) == pytest.approx(geo.distance(y2, y1), rel=1e-13)
        sol = geo.solve_bvp(y1, y2, constants)
        assert float(sol.ivp.X(sol.delta_s)) == pytest.approx(math.exp(2 * sol.eta), rel=1e-12)


def test_two_dimensional_angle():
    assert geo.angle_2d([1, 1], [1, 1]) == 0.0
    assert geo.angle_2d([E, 1], [1, 1]) == pytest.approx(0.5, abs=1e-15)
    rng = np.random.default_rng(6)
    for _ in range(50):
        a = np.array([rng.uniform(1, 3), rng.uniform(0.2, 1)])
        b = np.array([rng.uniform(1, 3), rng.uniform(0.2, 1)])
        assert math.cosh(geo.angle_2d(a, b)) == pytest.approx(geo.minkowski_cosh_2d(a, b), rel=1e-12)
