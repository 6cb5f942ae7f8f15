import math

import numpy as np
import pytest

from bmfinsler.errors import BMError
from bmfinsler.metric import squared_metric_function
from bmfinsler.numerics import FDConfig, ODESystem, fd_gradient, fd_hessian, rk4_integrate

ONES = np.ones(4)


def test_gradient_of_f_squared():
    np.testing.assert_allclose(fd_gradient(squared_metric_function, ONES), [0.5] * 4, atol=1e-8)


def test_gradient_trivial_cases():
    np.testing.assert_allclose(fd_gradient(lambda x: 3.0, ONES), 0.0)
    slope = np.array([1.0, -2.0, 0.5, 4.0])
    np.testing.assert_allclose(fd_gradient(lambda x: slope @ x + 1, ONES), slope, atol=1e-10)


def test_hessian_of_f_squared():
    expected = np.full((4, 4), 0.25) - 0.5 * np.eye(4)
    np.testing.assert_allclose(fd_hessian(squared_metric_function, ONES), expected, atol=1e-6)


def test_hessian_of_quadratic_form():
    A = np.array([[2.0, 1, 0, 0], [1, 3, 0, 1], [0, 0, -1, 0], [0, 1, 0, 5]])
    H = fd_hessian(lambda x: 0.5 * x @ A @ x, np.array([0.3, -1, 2, 0.5]))
    np.testing.assert_allclose(H, A, atol=1e-8)
    np.testing.assert_array_equal(H, H.T)


def test_gradient_error_is_second_order():
    y = np.array([1.3, 0.7, 2.0, 0.9])
    exact = 0.5 * squared_metric_function(y) / y
    errs = [np.max(np.abs(fd_gradient(squared_metric_function, y, FDConfig(step=h)) - exact))
            for h in (1e-2, 5e-3)]
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


def test_richardson_improves_accuracy():
    y = np.array([0.2, 5.0, 1.0, 3.0])
    exact = 0.5 * squared_metric_function(y) / y
    plain = fd_gradient(squared_metric_function, y, FDConfig(step=1e-2))
    rich = fd_gradient(squared_metric_function, y, FDConfig(step=1e-2, richardson=True))
    assert np.max(np.abs(rich - exact)) < 1e-3 * np.max(np.abs(plain - exact))


def test_config_validation():
    with pytest.raises(BMError):
        FDConfig(step=0)
    with pytest.raises(BMError):
        FDConfig(scheme="forward")


def _scalar_growth():
    return ODESystem(1, lambda s, x: x)


def test_rk4_constant():
    tr = rk4_integrate(ODESystem(2, lambda s, x: np.zeros(2)), [1.0, -2.0], 1.0)
    np.testing.assert_array_equal(tr.states, np.tile([1.0, -2.0], (tr.s.size, 1)))


def test_rk4_exponential():
    tr = rk4_integrate(_scalar_growth(), [1.0], 1.0, 1e-3)
    assert tr.s[-1] == pytest.approx(1.0)
    assert abs(tr.final[0] - math.e) < 1e-9


def test_rk4_fourth_order():
    errs = [abs(rk4_integrate(_scalar_growth(), [1.0], 1.0, h).final[0] - math.e)
            for h in (1e-2, 5e-3, 2.5e-3)]
    for a, b in zip(errs, errs[1:]):
        assert a / b == pytest.approx(16.0, rel=0.2)


def test_rk4_partial_final_step():
    tr = rk4_integrate(_scalar_growth(), [1.0], 0.0105, 1e-3)
    assert tr.s[-1] == pytest.approx(0.0105)
    assert tr.s[-2] == pytest.approx(0.010)
    assert tr.final[0] == pytest.approx(math.exp(0.0105), rel=1e-12)


def test_rk4_guards():
    with pytest.raises(BMError):
        rk4_integrate(_scalar_growth(), [1.0], 1.0, step=0)
    with pytest.raises(BMError):
        rk4_integrate(_scalar_growth(), [1.0], -1.0)
    with pytest.raises(BMError):
        rk4_integrate(_scalar_growth(), [1.0, 2.0], 1.0)
    blowup = ODESystem(1, lambda s, x: x * x)
    with pytest.raises(BMError, match="non-finite"):
        rk4_integrate(blowup, [1.0], 2.0, 1e-2)
