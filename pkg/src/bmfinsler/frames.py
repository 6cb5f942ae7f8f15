"""Constants matrix, indicatrix chart, tetrads and the conformal factorisation.

The chart maps an up-sector point y to (z0, u) with z0 = ln F(y) and
u^a = C^a_A ln l^A.  Its inverse is y^A = exp(z0) exp(C^A_a u^a).  Matrix
conventions used throughout:

* ``C[p, A]``     = C^A_p   (row p = 0..3, row 0 is all ones)
* ``C_inv[p, A]`` = C^p_A   (so that C_inv @ C.T = I)
* ``Tetrad.h[p, A]`` = h^p_A and ``Tetrad.h_recip[A, p]`` = h_p^A
"""

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ChartOverflowError, DomainError
from .metric import DIM, _geometric_mean, metric_tensor, up_vector

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])
CONSTANTS_TOL = 1e-12

Region = Literal["above", "on", "below"]


@dataclass(frozen=True)
class ConstantsMatrix:
    C: np.ndarray
    name: str = "custom"
    C_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        C = np.array(self.C, dtype=float)
        if C.shape != (DIM, DIM):
            raise DomainError(f"constants matrix must be 4x4, got {C.shape}", "constants")
        problems = _constants_problems(C)
        if problems:
            raise DomainError("invalid constants matrix: " + "; ".join(problems), "constants")
        C.setflags(write=False)
        C_inv = np.linalg.inv(C.T)
        C_inv.setflags(write=False)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "C_inv", C_inv)

    @property
    def spatial(self):
        """C^A_a as a (3, 4) array."""
        return self.C[1:]


def _constants_problems(C, tol=CONSTANTS_TOL):
    out = []
    if not np.allclose(C[0], 1.0, rtol=0, atol=tol):
        out.append("row 0 must be all ones")
    if not np.allclose(C[1:].sum(axis=1), 0.0, rtol=0, atol=tol):
        out.append("rows 1..3 must sum to zero")
    gram = C[1:] @ C[1:].T / DIM
    if not np.allclose(gram, np.eye(DIM - 1), rtol=0, atol=tol):
        out.append("rows 1..3 must satisfy (1/4) sum_A C^A_a C^A_b = delta_ab")
    return out


_R3 = math.sqrt(3.0)
HADAMARD = ConstantsMatrix(
    np.array(
        [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ]
    ),
    name="hadamard",
)
ORTHONORMAL = ConstantsMatrix(
    np.array(
        [
            [1.0, 1.0, 1.0, 1.0],
            [-_R3, 1.0 / _R3, 1.0 / _R3, 1.0 / _R3],
            [0.0, math.sqrt(8.0 / 3.0), -math.sqrt(2.0 / 3.0), -math.sqrt(2.0 / 3.0)],
            [0.0, 0.0, -math.sqrt(2.0), math.sqrt(2.0)],
        ]
    ),
    name="orthonormal",
)
_CHOICES = {"hadamard": HADAMARD, "orthonormal": ORTHONORMAL}


def constants_matrix(choice="hadamard"):
    """One of the two published constant sets; ``hadamard`` has no roots."""
    try:
        return _CHOICES[choice]
    except KeyError:
        raise DomainError(f"unknown constants choice {choice!r}; expected one of {sorted(_CHOICES)}",
                          "constants") from None


def resolve_constants(constants):
    if constants is None:
        return HADAMARD
    if isinstance(constants, ConstantsMatrix):
        return constants
    if isinstance(constants, str):
        return constants_matrix(constants)
    return ConstantsMatrix(np.asarray(constants, dtype=float))


@dataclass(frozen=True)
class ChartPoint:
    z0: float
    u: np.ndarray
    region: Region

    @property
    def z(self):
        return np.concatenate([[self.z0], self.u])


def classify_region(z0, atol=0.0) -> Region:
    if z0 > atol:
        return "above"
    if z0 < -atol:
        return "below"
    return "on"


def to_chart(y, constants=None, atol=0.0):
    """Chart coordinates (z0, u) of an up-sector point."""
    C = resolve_constants(constants)
    y = up_vector(y)
    z = C.C_inv @ np.log(y / _geometric_mean(y))
    # C^0_A = 1/4 and sum_A ln l^A = 0, so z[0] is ~0; use ln F directly.
    z0 = math.log(_geometric_mean(y))
    return ChartPoint(z0=z0, u=z[1:].copy(), region=classify_region(z0, atol))


def from_chart(z, constants=None):
    """Inverse chart: a ChartPoint or a length-4 array (z0, u1, u2, u3)."""
    C = resolve_constants(constants)
    if isinstance(z, ChartPoint):
        zz = z.z
    else:
        zz = np.asarray(z, dtype=float)
        if zz.shape != (DIM,):
            raise DomainError(f"chart point needs 4 coordinates, got shape {zz.shape}", "chart")
    if not np.all(np.isfinite(zz)):
        raise DomainError(f"non-finite chart coordinates {zz.tolist()}", "chart")
    with np.errstate(over="ignore"):
        y = np.exp(C.C.T @ zz)
    if not np.all(np.isfinite(y)) or np.any(y == 0.0):
        raise ChartOverflowError(f"chart point {zz.tolist()} maps outside floating range")
    return y


def chart_matrix(source, target):
    """Orthogonal 3x3 Q with u_target = Q u_source for every point."""
    s, t = resolve_constants(source), resolve_constants(target)
    return t.C_inv[1:] @ s.C[1:].T


@dataclass(frozen=True)
class Tetrad:
    base: np.ndarray
    h: np.ndarray
    h_recip: np.ndarray

    def metric(self):
        """g_AB = h^p_A h^q_B e_pq."""
        return self.h.T @ MINKOWSKI @ self.h

    def inverse_metric(self):
        return self.h_recip @ MINKOWSKI @ self.h_recip.T


def tetrad(y, constants=None):
    """h^p_A = C^p_A / l^A with the reciprocal obtained by inversion."""
    C = resolve_constants(constants)
    y = up_vector(y)
    l = y / _geometric_mean(y)
    h = C.C_inv / l[np.newaxis, :]
    return Tetrad(base=y, h=h, h_recip=np.linalg.inv(h))


def projection_factors(u, constants=None):
    """t^A_a = dl^A/du^a = C^A_a l^A, returned as a (4, 3) array."""
    C = resolve_constants(constants)
    l = from_chart(np.concatenate([[0.0], np.asarray(u, dtype=float)]), C)
    return (C.spatial * l[np.newaxis, :]).T


def induced_indicatrix_metric(u, constants=None):
    """i_ab = -t^A_a t^B_b g_AB(l(u)) on the indicatrix."""
    C = resolve_constants(constants)
    u = np.asarray(u, dtype=float)
    if u.shape != (DIM - 1,) or not np.all(np.isfinite(u)):
        raise DomainError(f"indicatrix coordinates must be 3 finite reals, got {u.tolist()}", "chart")
    l = from_chart(np.concatenate([[0.0], u]), C)
    t = projection_factors(u, C)
    return -t.T @ metric_tensor(l).g @ t


def conformal_tensor(y, constants=None):
    """c_AB = z^p_A z^q_B e_pq with z^p_A = h^p_A / F; g = F^2 c."""
    y = up_vector(y)
    z = tetrad(y, constants).h / _geometric_mean(y)
    return z.T @ MINKOWSKI @ z
