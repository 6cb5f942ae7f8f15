"""Nonlinear invariance transformations of the metric.

Rotating the indicatrix coordinates u -> R u induces a product-of-powers map
y'^A = prod_B (y^B)^f[A, B] with

    f = 1/4 + C_spatial.T @ R @ C_inv_spatial

(rows and columns of f sum to one).  Translations of u induce unimodular
dilatations y -> k * y with prod(k) = 1.  The metricity checks below use
finite differences only.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BMError, ChartOverflowError, DomainError
from .frames import resolve_constants
from .metric import _geometric_mean, covariant_vector, metric_tensor, up_vector
from .numerics import FDConfig, fd_jacobian, fd_second_derivatives

SUM_TOL = 1e-12


@dataclass(frozen=True)
class PowerTransform:
    f: np.ndarray

    def __post_init__(self):
        f = np.array(self.f, dtype=float)
        if f.shape != (4, 4) or not np.all(np.isfinite(f)):
            raise DomainError(f"exponent matrix must be 4x4 finite, got shape {f.shape}", "exponents")
        rows, cols = f.sum(axis=1), f.sum(axis=0)
        if np.max(np.abs(rows - 1.0)) > SUM_TOL:
            raise DomainError(f"exponent rows must sum to 1 (degree-1 homogeneity), got {rows.tolist()}",
                              "exponents")
        if np.max(np.abs(cols - 1.0)) > SUM_TOL:
            raise DomainError(f"exponent columns must sum to 1 (F-invariance), got {cols.tolist()}",
                              "exponents")
        f.setflags(write=False)
        object.__setattr__(self, "f", f)

    def __call__(self, y):
        return apply_power_transform(self, y)

    def then(self, other):
        """The transform 'apply self, then other'."""
        return PowerTransform(other.f @ self.f)

    def jacobian(self, y):
        """Exact Jacobian dy'^A/dy^B = f[A, B] y'^A / y^B (for cross-checks)."""
        y = up_vector(y)
        return self.f * np.outer(self(y), 1.0 / y)


IDENTITY = PowerTransform(np.eye(4))


class RotationAngles(NamedTuple):
    theta: float
    psi: float
    phi: float


def euler_coefficients(angles):
    """The rotation rows (l, m, n) built from three Euler angles.

    Returned as a 3x3 array whose rows are (l1, l2, l3), (m1, m2, m3),
    (n1, n2, n3), so new indicatrix coordinates are R @ old.
    """
    theta, psi, phi = (float(x) for x in angles)
    if not all(math.isfinite(x) for x in (theta, psi, phi)):
        raise DomainError("rotation angles must be finite", "angles")
    c1, c2, c3 = math.cos(theta), math.cos(psi), math.cos(phi)
    s1, s2, s3 = math.sin(theta), math.sin(psi), math.sin(phi)
    l = (c2 * c3 - c1 * s2 * s3, -c2 * s3 - c1 * s2 * c3, s1 * s2)
    m = (s2 * c3 + c1 * c2 * s3, -s2 * s3 + c1 * c2 * c3, -s1 * c2)
    n = (s1 * s3, s1 * c3, c1)
    return np.array([l, m, n])


def exponents_from_rotation(R, constants=None):
    """Exponent matrix induced by u -> R u in the chart of ``constants``.

    ``R`` need not be orthogonal; only orthogonal R give metric maps.
    """
    C = resolve_constants(constants)
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise DomainError(f"rotation must be 3x3, got {R.shape}", "rotation")
    return PowerTransform(0.25 + C.spatial.T @ R @ C.C_inv[1:])


def rotation_exponents(angles, constants=None):
    """Power transform realising the Euler rotation of the indicatrix."""
    return exponents_from_rotation(euler_coefficients(angles), constants)


def one_angle_exponents_printed(eta):
    """One-angle coefficients fixing F = 1 only (rows sum to zero).

    These agree with ``one_angle_exponents`` on the indicatrix but are not
    homogeneous of degree one, so they are returned as a bare array.
    """
    c, s = math.cos(eta), math.sin(eta)
    return np.array(
        [
            [2 * c + 1, 2 * s - 1, -2 * s - 1, -2 * c + 1],
            [-2 * s - 1, 2 * c + 1, -2 * c + 1, 2 * s - 1],
            [2 * s - 1, -2 * c + 1, 2 * c + 1, -2 * s - 1],
            [-2 * c + 1, -2 * s - 1, 2 * s - 1, 2 * c + 1],
        ]
    ) / 4.0


def one_angle_exponents(eta):
    """Homogenised one-angle rotation: printed coefficients plus 1/4."""
    if not math.isfinite(eta):
        raise DomainError("rotation angle must be finite", "angles")
    return PowerTransform(one_angle_exponents_printed(eta) + 0.25)


def one_angle_rotation(eta):
    """The 3x3 rotation of (u1, u2) by eta behind ``one_angle_exponents``."""
    c, s = math.cos(eta), math.sin(eta)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def apply_exponents(f, y):
    """y'^A = prod_B (y^B)^f[A, B] for an arbitrary exponent array."""
    y = up_vector(y)
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(np.asarray(f, dtype=float) @ np.log(y))
    if not np.all(np.isfinite(out)) or np.any(out == 0.0):
        raise ChartOverflowError(f"power transform of {y.tolist()} leaves floating range")
    return out


def apply_power_transform(t, y):
    return apply_exponents(t.f, y)


def unimodular_dilatation(k, y, tol=1e-12):
    """Componentwise scaling y^A k^A with k1 k2 k3 k4 = 1."""
    k = np.asarray(k, dtype=float)
    if k.shape != (4,) or np.any(~np.isfinite(k)) or np.any(k <= 0):
        raise DomainError(f"dilatation factors must be 4 positive reals, got {np.ravel(k).tolist()}",
                          "unimodular")
    if abs(np.prod(k) - 1.0) > tol:
        raise DomainError(f"dilatation is not unimodular: product {np.prod(k):.15g}", "unimodular")
    return up_vector(y) * k


def perturbed_exponents(t, eps, pair=(0, 1)):
    """Negative control: shift a 2x2 block of exponents by +-eps.

    Row and column sums are kept, so the result is still homogeneous and
    F-preserving, but it no longer comes from a rotation.
    """
    i, j = pair
    f = np.array(t.f)
    f[i, i] += eps
    f[j, j] += eps
    f[i, j] -= eps
    f[j, i] -= eps
    return PowerTransform(f)


def _check_step(step):
    if not step > 0:
        raise BMError(f"finite-difference step must be positive, got {step}", "step")


def metricity_residual(t, y, step=1e-3, richardson=False, relative=False):
    """Contraction y'_B d^2 y'^B / dy^C dy^D at y, by central differences.

    Vanishes (up to discretisation error) exactly when the transform also
    preserves the metric tensor.  Returns the 4x4 array over (C, D).
    """
    _check_step(step)
    y = up_vector(y)
    cfg = FDConfig(step=step, richardson=richardson, relative=relative)
    second = fd_second_derivatives(lambda x: apply_exponents(t.f, x), y, cfg)
    return np.einsum("b,bcd->cd", covariant_vector(t(y)), second)


def metric_invariance_residual(t, y, step=1e-4, richardson=False, relative=False):
    """g_CD(y) - J^A_C J^B_D g_AB(t(y)) with a finite-difference Jacobian J."""
    _check_step(step)
    y = up_vector(y)
    cfg = FDConfig(step=step, richardson=richardson, relative=relative)
    J = fd_jacobian(lambda x: apply_exponents(t.f, x), y, cfg)
    return metric_tensor(y).g - J.T @ metric_tensor(t(y)).g @ J


def dilatation_invariance_residual(k, y):
    """g(y) - diag(k) g(k y) diag(k): the metric pulled back by a dilatation."""
    yk = unimodular_dilatation(k, y)
    K = np.diag(np.asarray(k, dtype=float))
    return metric_tensor(y).g - K @ metric_tensor(yk).g @ K


def f_invariance_residual(t, y):
    return _geometric_mean(t(y)) - _geometric_mean(up_vector(y))
