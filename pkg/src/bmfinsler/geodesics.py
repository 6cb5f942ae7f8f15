"""Closed-form geodesics, angle, distance and scalar product.

In chart coordinates (z0, u) the metric is exp(2 z0) ((dz0)^2 - |du|^2), so
a unit-speed timelike geodesic is

    F(s)^2 = a^2 + 2 b s + s^2,       z0(s) = ln F(s),
    u(s)   = u(0) + n ln sqrt(X(s)),  X(s) = (a^2 + (b + k) s)^2 / (a^2 F(s)^2),

with k = sqrt(b^2 - a^2) and a unit 3-vector n.  Curves are evaluated in the
chart and mapped back through ``frames.from_chart``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError, SpacelikeSeparationError
from .frames import from_chart, resolve_constants, tetrad, to_chart
from .metric import _geometric_mean, metric_tensor, up_vector
from .numerics import ODESystem

# Relative slack on the arc-length range check in point evaluation.
_RANGE_SLACK = 1e-12


def geodesic_rhs(z, U):
    """Right-hand side (dz/ds, dU/ds) of the chart geodesic equations.

    dU0/ds = -((U0)^2 + |U|^2),   dU^a/ds = -2 U^a U0.
    """
    z = np.asarray(z, dtype=float)
    U = np.asarray(U, dtype=float)
    dU = np.empty(4)
    dU[0] = -(U[0] ** 2 + U[1:] @ U[1:])
    dU[1:] = -2.0 * U[1:] * U[0]
    return np.concatenate([U, dU])


def geodesic_system():
    """The 8-dimensional first-order system for ``numerics.rk4_integrate``."""
    return ODESystem(dimension=8, rhs=lambda s, x: geodesic_rhs(x[:4], x[4:]))


@dataclass(frozen=True)
class GeodesicIVP:
    """Initial data (a, b, n) plus the starting chart position.

    ``a`` is F at s = 0, ``b`` fixes dF/ds and ``n`` is the unit chart
    direction (zeros for a radial ray, where b == a).
    """

    a: float
    b: float
    n: np.ndarray
    u0: np.ndarray
    constants: object = None
    length: float = math.inf

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"initial metric value must be positive, got a={self.a}", "geodesic-initial")
        if self.b * self.b < self.a * self.a * (1.0 - 1e-14):
            raise DomainError(f"b^2 < a^2 (a={self.a}, b={self.b}): not a timelike unit geodesic",
                              "geodesic-admissible")

    @property
    def k(self):
        """sqrt(b^2 - a^2), the transverse rate constant."""
        return math.sqrt(max(self.b * self.b - self.a * self.a, 0.0))

    @property
    def m(self):
        """Integration offsets m^a of the logarithmic chart solution."""
        if self.k == 0.0:
            return self.u0.copy()
        return self.u0 - 0.5 * self.n * math.log((self.b - self.k) / (self.b + self.k))

    def F(self, s):
        return np.sqrt(self.a ** 2 + 2.0 * self.b * s + np.square(s))

    def X(self, s):
        s = np.asarray(s, dtype=float)
        return np.square(self.a ** 2 + (self.b + self.k) * s) / (self.a ** 2 * self.F(s) ** 2)

    def _log_sqrt_X(self, s):
        a2 = self.a ** 2
        return np.log(np.abs(a2 + (self.b + self.k) * s)) - 0.5 * np.log(a2) - np.log(self.F(s))

    def _check_range(self, s):
        s_arr = np.asarray(s, dtype=float)
        lo = -_RANGE_SLACK * max(1.0, abs(self.length) if math.isfinite(self.length) else 1.0)
        hi = self.length * (1.0 + _RANGE_SLACK) if math.isfinite(self.length) else math.inf
        if np.any(s_arr < lo) or np.any(s_arr > hi) or not np.all(np.isfinite(s_arr)):
            raise RangeError(f"arc length {s_arr.tolist()} outside [0, {self.length}]")

    def chart(self, s):
        """Chart coordinates (z0, u1, u2, u3) at arc length s."""
        self._check_range(s)
        z0 = math.log(float(self.F(s)))
        u = self.u0 + self.n * float(self._log_sqrt_X(s))
        return np.concatenate([[z0], u])

    def velocity(self, s):
        """Chart velocity U^p = dz^p/ds."""
        F2 = float(self.F(s)) ** 2
        return np.concatenate([[(self.b + s) / F2], self.k * self.n / F2])

    def __call__(self, s):
        return from_chart(self.chart(s), self.constants)

    point = __call__

    def sample(self, s):
        """Points at many arc lengths at once, shape (len(s), 4)."""
        s = np.asarray(s, dtype=float)
        self._check_range(s)
        z = np.empty((s.size, 4))
        z[:, 0] = np.log(self.F(s))
        z[:, 1:] = self.u0 + np.outer(self._log_sqrt_X(s), self.n)
        return np.exp(z @ resolve_constants(self.constants).C)


def chart_velocity(y, direction, constants=None):
    """Convert a tangent vector at y into chart velocity U^p = h^p_A d^A / F."""
    y = up_vector(y)
    d = np.asarray(direction, dtype=float)
    if d.shape != (4,) or not np.all(np.isfinite(d)):
        raise DomainError(f"direction must be 4 finite reals, got {d.tolist()}", "direction")
    return tetrad(y, constants).h @ d / _geometric_mean(y)


def solve_ivp(start, direction, length=math.inf, constants=None):
    """Initial-value geodesic from ``start`` along ``direction``.

    The direction is normalised to unit length in the metric first; it
    must be timelike and future-pointing (dF/ds > 0).
    """
    C = resolve_constants(constants)
    y = up_vector(start)
    d = np.asarray(direction, dtype=float)
    norm2 = metric_tensor(y).quadratic(d) if d.shape == (4,) else float("nan")
    if not norm2 > 0:
        raise DomainError(f"direction {d.tolist()} is not timelike (g(d,d)={norm2:.6g})", "geodesic-admissible")
    U = chart_velocity(y, d / math.sqrt(norm2), C)
    a = _geometric_mean(y)
    b = a * a * U[0]
    if b < a * (1.0 - 1e-12):
        raise DomainError(f"direction is past-pointing (b={b:.6g} < a={a:.6g})", "geodesic-admissible")
    speed = float(np.linalg.norm(U[1:]))
    n = U[1:] / speed if speed > 0 else np.zeros(3)
    # Recover b from the unit condition so that b^2 - a^2 = (a^2 |U|)^2 exactly.
    k = a * a * speed
    b = math.sqrt(a * a + k * k)
    return GeodesicIVP(a=a, b=b, n=n, u0=to_chart(y, C).u, constants=C, length=length)


@dataclass(frozen=True)
class GeodesicSolution:
    ivp: GeodesicIVP
    delta_s: float
    endpoints: tuple
    eta: float

    def __call__(self, s):
        return self.ivp(s)


def angle(a, b):
    """Finslerian angle: sqrt(mean_A (ln(a^A F(b) / (b^A F(a))))^2)."""
    a, b = up_vector(a), up_vector(b)
    r = np.log(a / b) - math.log(_geometric_mean(a) / _geometric_mean(b))
    return float(np.sqrt(np.mean(r * r)))


def interval_squared(a, b):
    """F(a)^2 + F(b)^2 - 2 F(a) F(b) cosh(angle(a, b))."""
    Fa, Fb = metric_function_pair(a, b)
    return Fa * Fa + Fb * Fb - 2.0 * Fa * Fb * math.cosh(angle(a, b))


def metric_function_pair(a, b):
    return _geometric_mean(up_vector(a)), _geometric_mean(up_vector(b))


def distance(a, b):
    """Length of the geodesic chord between the ends of a and b."""
    d2 = interval_squared(a, b)
    if not d2 > 0:
        raise SpacelikeSeparationError(
            f"points are not timelike separated (squared interval {d2:.6g})", d2)
    return math.sqrt(d2)


def scalar_product(a, b):
    """(ab) = F(a) F(b) cosh(angle(a, b))."""
    Fa, Fb = metric_function_pair(a, b)
    return Fa * Fb * math.cosh(angle(a, b))


def solve_bvp(y1, y2, constants=None):
    """Fixed-edge geodesic joining the ends of y1 and y2."""
    C = resolve_constants(constants)
    y1, y2 = up_vector(y1), up_vector(y2)
    a, F2 = metric_function_pair(y1, y2)
    eta = angle(y1, y2)
    d2 = a * a + F2 * F2 - 2.0 * a * F2 * math.cosh(eta)
    if not d2 > 0:
        raise SpacelikeSeparationError(
            f"points are not timelike separated (squared interval {d2:.6g})", d2)
    ds = math.sqrt(d2)
    b = (a * F2 * math.cosh(eta) - a * a) / ds
    u1, u2 = to_chart(y1, C).u, to_chart(y2, C).u
    n = (u2 - u1) / eta if eta > 0 else np.zeros(3)
    ivp = GeodesicIVP(a=a, b=b, n=n, u0=u1, constants=C, length=ds)
    return GeodesicSolution(ivp=ivp, delta_s=ds, endpoints=(y1, y2), eta=eta)


def point_along(y1, y2, s):
    """Point at arc length s on the geodesic from y1 to y2.

    Uses the per-component power law
    a^A(s) = F(s) a^A(0)/F(0) X(s)^(ln(a^A(ds) F(0) / (a^A(0) F(ds))) / (2 eta)),
    which does not go through the chart.
    """
    sol = solve_bvp(y1, y2)
    if not (-_RANGE_SLACK <= s <= sol.delta_s * (1.0 + _RANGE_SLACK)):
        raise RangeError(f"s={s} outside [0, {sol.delta_s}]")
    s = min(max(s, 0.0), sol.delta_s)
    y1, y2 = sol.endpoints
    ivp = sol.ivp
    F0, F1 = metric_function_pair(y1, y2)
    Fs = float(ivp.F(s))
    base = Fs * y1 / F0
    if sol.eta == 0.0:
        return base
    rates = np.log(y2 * F0 / (y1 * F1)) / (2.0 * sol.eta)
    return base * np.exp(rates * 2.0 * float(ivp._log_sqrt_X(s)))


def angle_2d(a, b):
    """Two-dimensional angle ln(a1 F(b) / (b1 F(a))) with F = sqrt(y1 y2)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (2,) or b.shape != (2,) or np.any(a <= 0) or np.any(b <= 0) \
            or not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise DomainError("angle_2d needs two pairs of positive finite reals")
    Fa, Fb = math.sqrt(a[0] * a[1]), math.sqrt(b[0] * b[1])
    return math.log(a[0] * Fb / (b[0] * Fa))


def minkowski_cosh_2d(a, b):
    """cosh of the rapidity between (t, x) = ((y1+y2)/2, (y1-y2)/2) vectors."""
    m1, m2 = (a[0] + a[1]) / 2, (a[0] - a[1]) / 2
    n1, n2 = (b[0] + b[1]) / 2, (b[0] - b[1]) / 2
    return (m1 * n1 - m2 * n2) / (math.sqrt(m1 * m1 - m2 * m2) * math.sqrt(n1 * n1 - n2 * n2))
