"""Finite differences and a fixed-step RK4 integrator.

These are the independent oracles used to check closed-form results, so
they deliberately know nothing about the geometry.
"""

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import BMError


@dataclass(frozen=True)
class FDConfig:
    step: float = 1e-4
    scheme: Literal["central"] = "central"
    richardson: bool = False
    # Scale the step by |x_i| per coordinate (useful for power-law maps).
    relative: bool = False

    def __post_init__(self):
        if not self.step > 0:
            raise BMError(f"finite-difference step must be positive, got {self.step}", "step")
        if self.scheme != "central":
            raise BMError(f"unsupported scheme {self.scheme!r}", "scheme")


FIRST_DERIVATIVE = FDConfig(step=1e-4)
SECOND_DERIVATIVE = FDConfig(step=1e-3)


def _steps(x, cfg, scale=1.0):
    h = cfg.step * scale
    if cfg.relative:
        return h * np.maximum(np.abs(x), np.finfo(float).tiny)
    return np.full(x.shape, h)


def _jacobian_once(f, x, h):
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h[i]
        cols.append((np.asarray(f(x + e), dtype=float) - np.asarray(f(x - e), dtype=float)) / (2 * h[i]))
    return np.stack(cols, axis=-1)


def fd_jacobian(f, x, cfg=FIRST_DERIVATIVE):
    """Central-difference Jacobian; J[..., i] = df/dx_i."""
    x = np.asarray(x, dtype=float)
    J = _jacobian_once(f, x, _steps(x, cfg))
    if cfg.richardson:
        J_half = _jacobian_once(f, x, _steps(x, cfg, 0.5))
        J = (4.0 * J_half - J) / 3.0
    return J


def fd_gradient(f, x, cfg=FIRST_DERIVATIVE):
    """Gradient of a scalar field by central differences."""
    return fd_jacobian(f, x, cfg)


def _hessian_once(f, x, h):
    n = x.size
    f0 = np.asarray(f(x), dtype=float)
    H = np.zeros(f0.shape + (n, n))
    E = np.diag(h)
    for i in range(n):
        fp = np.asarray(f(x + E[i]), dtype=float)
        fm = np.asarray(f(x - E[i]), dtype=float)
        H[..., i, i] = (fp - 2.0 * f0 + fm) / h[i] ** 2
        for j in range(i + 1, n):
            fpp = np.asarray(f(x + E[i] + E[j]), dtype=float)
            fpm = np.asarray(f(x + E[i] - E[j]), dtype=float)
            fmp = np.asarray(f(x - E[i] + E[j]), dtype=float)
            fmm = np.asarray(f(x - E[i] - E[j]), dtype=float)
            H[..., i, j] = H[..., j, i] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j])
    return H


def fd_second_derivatives(f, x, cfg=SECOND_DERIVATIVE):
    """Second derivatives of a (possibly vector-valued) map.

    Returns an array of shape ``f(x).shape + (n, n)``, symmetric in the
    last two axes.
    """
    x = np.asarray(x, dtype=float)
    H = _hessian_once(f, x, _steps(x, cfg))
    if cfg.richardson:
        H_half = _hessian_once(f, x, _steps(x, cfg, 0.5))
        H = (4.0 * H_half - H) / 3.0
    return H


def fd_hessian(f, x, cfg=SECOND_DERIVATIVE):
    """Symmetric central-difference Hessian of a scalar field."""
    return fd_second_derivatives(f, x, cfg)


@dataclass(frozen=True)
class ODESystem:
    dimension: int
    rhs: Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Trajectory:
    s: np.ndarray
    states: np.ndarray

    @property
    def final(self):
        return self.states[-1]


def rk4_integrate(system, y0, length, step=1e-3):
    """Classic fourth-order Runge-Kutta with a fixed step.

    The trajectory is sampled at every multiple of ``step``; a final
    shorter step lands exactly on ``length``.
    """
    if not step > 0:
        raise BMError(f"step must be positive, got {step}", "step")
    if not length >= 0:
        raise BMError(f"length must be non-negative, got {length}", "length")
    y = np.array(y0, dtype=float)
    if y.shape != (system.dimension,):
        raise BMError(f"initial state has shape {y.shape}, system dimension is {system.dimension}", "state")

    n_full = int(np.floor(length / step + 1e-9))
    grid = [0.0] + [step * (k + 1) for k in range(n_full)]
    if length - grid[-1] > 1e-12 * max(1.0, length):
        grid.append(length)
    s_grid = np.array(grid)

    out = np.empty((s_grid.size, system.dimension))
    out[0] = y
    f = system.rhs
    for k in range(1, s_grid.size):
        s, h = s_grid[k - 1], s_grid[k] - s_grid[k - 1]
        # Overflow shows up as a non-finite state, reported below.
        with np.errstate(over="ignore", invalid="ignore"):
            k1 = f(s, y)
            k2 = f(s + h / 2, y + h / 2 * k1)
            k3 = f(s + h / 2, y + h / 2 * k2)
            k4 = f(s + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise BMError(f"non-finite state at s={s_grid[k]:.6g}: {y.tolist()}", "finite-state")
        out[k] = y
    return Trajectory(s=s_grid, states=out)
