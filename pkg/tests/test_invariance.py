import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmfinsler import invariance as inv
from bmfinsler.errors import DomainError
from bmfinsler.frames import HADAMARD, ORTHONORMAL, to_chart
from bmfinsler.metric import metric_function

from conftest import up_points

angles = st.builds(inv.RotationAngles, st.floats(0, math.pi), st.floats(0, 2 * math.pi),
                   st.floats(0, 2 * math.pi))
near_one = up_points(math.log10(0.8), math.log10(1.25))


def test_zero_angles_give_identity(constants):
    np.testing.assert_allclose(inv.rotation_exponents((0, 0, 0), constants).f, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(inv.one_angle_exponents(0.0).f, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(inv.one_angle_exponents_printed(0.0)[0], [0.75, -0.25, -0.25, -0.25])


def test_one_angle_quarter_turn():
    np.testing.assert_allclose(inv.one_angle_exponents(math.pi / 2).f[0], [0.5, 0.5, -0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(inv.one_angle_exponents_printed(math.pi / 2)[0], [0.25, 0.25, -0.75, 0.25],
                               atol=1e-15)


@given(st.floats(-6, 6), st.floats(0, 2 * math.pi))
def test_one_angle_is_three_angle_specialisation(eta, psi):
    # The one-angle map rotates (u1, u2) by -eta in the Euler convention.
    A = inv.rotation_exponents(inv.RotationAngles(0.0, psi, -eta - psi), HADAMARD).f
    np.testing.assert_allclose(inv.one_angle_exponents(eta).f, A, atol=1e-14)
    R = inv.one_angle_rotation(eta)
    np.testing.assert_allclose(inv.exponents_from_rotation(R, HADAMARD).f, A, atol=1e-14)


@given(st.floats(-3, 3), near_one)
def test_printed_and_homogenised_agree_on_indicatrix(eta, y):
    l = y / metric_function(y)
    printed = inv.apply_exponents(inv.one_angle_exponents_printed(eta), l)
    np.testing.assert_allclose(printed, inv.one_angle_exponents(eta)(l), rtol=1e-13)


@given(angles)
def test_row_and_column_sums(a):
    for C in (HADAMARD, ORTHONORMAL):
        f = inv.rotation_exponents(a, C).f
        np.testing.assert_allclose(f.sum(axis=0), 1, atol=1e-14)
        np.testing.assert_allclose(f.sum(axis=1), 1, atol=1e-14)


def test_f_invariance_example():
    y = [2, 0.5, 3, 1]
    t = inv.rotation_exponents((0.3, 0.7, -0.2))
    assert metric_function(t(y)) == pytest.approx(3 ** 0.25, abs=1e-12)
    np.testing.assert_allclose(inv.IDENTITY(y), y, rtol=1e-15)


@given(angles, up_points(-2, 2), st.floats(0.01, 100))
def test_equivariance_and_homogeneity(a, y, k):
    for C in (HADAMARD, ORTHONORMAL):
        t = inv.rotation_exponents(a, C)
        R = inv.euler_coefficients(a)
        np.testing.assert_allclose(to_chart(t(y), C).u, R @ to_chart(y, C).u, atol=1e-12)
        np.testing.assert_allclose(t(k * y), k * t(y), rtol=1e-12)
        assert metric_function(t(y)) == pytest.approx(metric_function(y), rel=1e-12)


@given(angles, angles)
def test_rotation_group_closure(a, b):
    t1, t2 = inv.rotation_exponents(a), inv.rotation_exponents(b)
    R = inv.euler_coefficients(b) @ inv.euler_coefficients(a)
    np.testing.assert_allclose(t1.then(t2).f, inv.exponents_from_rotation(R).f, atol=1e-10)


@given(st.floats(-3, 3), st.floats(-3, 3), up_points())
def test_one_angle_group(e1, e2, y):
    t = inv.one_angle_exponents(e1).then(inv.one_angle_exponents(e2))
    np.testing.assert_allclose(t.f, inv.one_angle_exponents(e1 + e2).f, atol=1e-12)
    np.testing.assert_allclose(inv.one_angle_exponents(e2)(inv.one_angle_exponents(e1)(y)),
                               inv.one_angle_exponents(e1 + e2)(y), rtol=1e-12)


def test_dilatation_examples():
    y = np.array([1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(inv.unimodular_dilatation([1, 1, 1, 1], y), y)
    out = inv.unimodular_dilatation([2, 0.5, 1, 1], [1, 1, 1, 1])
    np.testing.assert_allclose(out, [2, 0.5, 1, 1])
    assert metric_function(out) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError) as info:
        inv.unimodular_dilatation([2, 1, 1, 1], y)
    assert info.value.precondition == "unimodular"


@given(up_points(), up_points(-0.5, 0.5))
def test_dilatation_is_chart_translation(y, k):
    k = k / metric_function(k)
    for C in (HADAMARD, ORTHONORMAL):
        shift = to_chart(inv.unimodular_dilatation(k, y), C).u - to_chart(y, C).u
        np.testing.assert_allclose(shift, to_chart(k, C).u, atol=1e-12)
    np.testing.assert_allclose(inv.dilatation_invariance_residual(k, y), 0, atol=1e-12)


def test_identity_residuals_vanish():
    y = np.array([1.2, 0.7, 2.0, 0.9])
    np.testing.assert_array_equal(inv.metricity_residual(inv.IDENTITY, y), 0.0)
    np.testing.assert_allclose(inv.metric_invariance_residual(inv.IDENTITY, y), 0.0, atol=1e-12)


@given(near_one)
def test_metricity_example(y):
    t = inv.rotation_exponents((0.4, 0.1, 0.9))
    assert np.max(np.abs(inv.metricity_residual(t, y, step=1e-3))) < 1e-6


@given(near_one)
def test_metric_invariance_example(y):
    t = inv.one_angle_exponents(math.pi / 6)
    assert np.max(np.abs(inv.metric_invariance_residual(t, y, step=1e-4))) < 1e-6


@given(angles, up_points())
def test_rotations_are_metric_on_wider_range(a, y):
    t = inv.rotation_exponents(a, ORTHONORMAL)
    assert np.max(np.abs(inv.metricity_residual(t, y, richardson=True))) < 1e-6
    assert np.max(np.abs(inv.metric_invariance_residual(t, y, richardson=True))) < 1e-6


def test_negative_control():
    t = inv.perturbed_exponents(inv.rotation_exponents((0.4, 0.1, 0.9)), 0.1)
    y = np.array([1.0, 1.0, 1.0, 1.0])
    assert np.max(np.abs(inv.metricity_residual(t, y))) > 1e-2
    assert np.max(np.abs(inv.metric_invariance_residual(t, y))) > 1e-2


def test_jacobian_matches_finite_differences():
    from bmfinsler.numerics import fd_jacobian
    t = inv.rotation_exponents((0.4, 0.1, 0.9))
    y = np.array([1.5, 0.6, 2.0, 0.8])
    np.testing.assert_allclose(t.jacobian(y), fd_jacobian(t, y), atol=1e-7)


def test_invalid_exponents():
    with pytest.raises(DomainError):
        inv.PowerTransform(np.eye(4) * 2)
    with pytest.raises(DomainError):
        inv.PowerTransform(np.eye(3))
    with pytest.raises(DomainError):
        inv.rotation_exponents((math.nan, 0, 0))
