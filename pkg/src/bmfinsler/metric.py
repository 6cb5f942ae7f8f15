"""Pointwise Finslerian objects of the quartic metric on the up-sector.

The metric function is F(y) = (y1 y2 y3 y4)^(1/4).  Everything here is a
pure function of a validated 4-vector with strictly positive entries.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DIM = 4
# Floor on components; F^2/(4 y^A y^B) overflows for smaller entries.
MIN_COMPONENT = 1e-300
DET_METRIC = -1.0 / 256.0


def up_vector(y, floor=MIN_COMPONENT):
    """Validate ``y`` as an up-sector point and return it as a float array."""
    arr = np.array(y, dtype=float)
    if arr.shape != (DIM,):
        raise DomainError(f"expected {DIM} components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"non-finite component in {arr.tolist()}")
    if np.any(arr <= 0.0):
        raise DomainError(f"point {arr.tolist()} is outside the up-sector (all components must be > 0)")
    if np.any(arr < floor):
        raise DomainError(f"component below the floor {floor:g} in {arr.tolist()}")
    arr.setflags(write=False)
    return arr


def _geometric_mean(y):
    p = np.prod(y)
    if p == 0.0 or not np.isfinite(p):
        return float(np.exp(np.mean(np.log(y))))
    return float(p ** 0.25)


def metric_function(y):
    """F(y) = fourth root of the product of the components."""
    return _geometric_mean(up_vector(y))


def covariant_vector(y):
    """Covariant vector y_A = F^2 / (4 y^A); it satisfies y_A y^A = F^2."""
    y = up_vector(y)
    F = _geometric_mean(y)
    return F * F / (DIM * y)


def unit_vector(y):
    """l = y / F(y), a point of the indicatrix F = 1."""
    y = up_vector(y)
    return y / _geometric_mean(y)


@dataclass(frozen=True)
class MetricAtPoint:
    base: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray

    @property
    def det(self):
        return float(np.linalg.det(self.g))

    def signature(self, tol=0.0):
        """Counts (positive, negative) of the eigenvalues of g."""
        ev = np.linalg.eigvalsh(self.g)
        return int(np.sum(ev > tol)), int(np.sum(ev < -tol))

    def quadratic(self, v, w=None):
        v = np.asarray(v, dtype=float)
        w = v if w is None else np.asarray(w, dtype=float)
        return float(v @ self.g @ w)


def metric_tensor(y):
    """Covariant metric tensor and its inverse at ``y``.

    g_AB = 2 y_A y_B / F^2 - F^2 / (4 y^A y^B) delta_AB
    g^AB = 2 y^A y^B / F^2 - 4 y^A y^B / F^2 delta^AB
    """
    y = up_vector(y)
    F = _geometric_mean(y)
    F2 = F * F
    yl = F2 / (DIM * y)
    eye = np.eye(DIM)
    g = 2.0 * np.outer(yl, yl) / F2 - F2 / (DIM * np.outer(y, y)) * eye
    yy = np.outer(y, y) / F2
    g_inv = 2.0 * yy - DIM * yy * eye
    return MetricAtPoint(base=y, g=g, g_inv=g_inv)


def squared_metric_function(y):
    """F^2 without validation; used as a finite-difference target."""
    y = np.asarray(y, dtype=float)
    return float(np.prod(y) ** 0.5)
