"""Frame kinematics built on the root-free (Hadamard) tetrads.

A velocity is a 3-vector s whose four bracket factors

    J1 = 1 + s1 + s2 + s3,   J2 = 1 - s1 + s2 - s3,
    J3 = 1 + s1 - s2 - s3,   J4 = 1 - s1 - s2 + s3

are all strictly positive.  The dilatation factor is A(s) = (J1 J2 J3 J4)^(1/4)
and plays the role of 1/gamma.
"""

import numpy as np

from .errors import AdmissibilityError, DomainError
from .frames import HADAMARD, tetrad
from .metric import _geometric_mean, up_vector

# Sign patterns of the bracket factors: J = SIGNS @ (1, s1, s2, s3).
SIGNS = HADAMARD.C.T.copy()
SIGNS.setflags(write=False)


def _vec3(s):
    s = np.array(s, dtype=float)
    if s.shape != (3,) or not np.all(np.isfinite(s)):
        raise AdmissibilityError(f"velocity must be 3 finite reals, got {np.ravel(s).tolist()}")
    return s


def bracket_factors(s):
    """The four bracket factors (J1, J2, J3, J4) of a velocity (unchecked)."""
    s = _vec3(s)
    return SIGNS @ np.concatenate([[1.0], s])


def velocity(s):
    """Validate an admissible velocity and return it as an array."""
    s = _vec3(s)
    J = SIGNS @ np.concatenate([[1.0], s])
    if np.any(J <= 0.0):
        raise AdmissibilityError(f"velocity {s.tolist()} is not admissible: bracket factors {J.tolist()}")
    return s


def is_admissible(s):
    try:
        velocity(s)
    except AdmissibilityError:
        return False
    return True


def dilatation_factor(s):
    """A(s) = (J1 J2 J3 J4)^(1/4)."""
    s = velocity(s)
    return float(np.prod(SIGNS @ np.concatenate([[1.0], s])) ** 0.25)


def dilatation_factor_approx(s):
    """Small-velocity polynomial for A(s), accurate through fourth order."""
    s1, s2, s3 = _vec3(s)
    q2 = s1 * s1 + s2 * s2 + s3 * s3
    q4 = s1 ** 4 + s2 ** 4 + s3 ** 4
    a1 = 1.0 - 0.5 * q2 - 0.125 * q4
    a2 = 2.0 * s1 * s2 * s3 - 1.25 * (s1 * s1 * s2 * s2 + s2 * s2 * s3 * s3 + s1 * s1 * s3 * s3)
    return a1 + a2


def kinematic_matrix(a, b):
    """N^p_q(a, b) = h^p_A(a) h_q^A(b), the change of frame from S{b} to S{a}."""
    return tetrad(a, HADAMARD).h @ tetrad(b, HADAMARD).h_recip


def kinematic_coefficients(a, b):
    """First column N^p_0(a, b) from the explicit ratio sums (no tetrads)."""
    a, b = up_vector(a), up_vector(b)
    ratios = b / a
    return _geometric_mean(a) / (4.0 * _geometric_mean(b)) * (HADAMARD.C @ ratios)


def relative_velocity(a, b):
    """Velocity of frame S{b} relative to S{a}: s^a = N^a_0 / N^0_0."""
    N = kinematic_matrix(a, b)
    return N[1:, 0] / N[0, 0]


def relative_velocity_from_ratios(a, b):
    """Same velocity from the component ratios b^A / a^A alone."""
    a, b = up_vector(a), up_vector(b)
    r = HADAMARD.C @ (b / a)
    return r[1:] / r[0]


def velocity_matrix(s):
    """The symmetric pattern [[1, s1, s2, s3], [s1, 1, s3, s2], ...] (no 1/A)."""
    s1, s2, s3 = s
    return np.array(
        [
            [1.0, s1, s2, s3],
            [s1, 1.0, s3, s2],
            [s2, s3, 1.0, s1],
            [s3, s2, s1, 1.0],
        ]
    )


def matrix_from_velocity(s):
    """Kinematic coefficients as a function of the relative velocity only."""
    s = velocity(s)
    return velocity_matrix(s) / dilatation_factor(s)


def kinematic_residuals(N):
    """Deviations of N from its structural identities (all ~0 when valid)."""
    N = np.asarray(N, dtype=float)
    col = N[:, 0]
    return {
        "det": float(np.linalg.det(N) - 1.0),
        "symmetry": float(np.max(np.abs(N - N.T))),
        "cross": float(max(abs(N[1, 2] - N[3, 0]), abs(N[1, 3] - N[2, 0]), abs(N[2, 3] - N[1, 0]))),
        "quartic": float(np.prod(SIGNS @ col) - 1.0),
    }


def boost(Y, s):
    """Transform frame components Y by velocity s (the extended Lorentz map)."""
    s = velocity(s)
    Y0, Y1, Y2, Y3 = np.asarray(Y, dtype=float)
    s1, s2, s3 = s
    A = dilatation_factor(s)
    return np.array(
        [
            Y0 + s1 * Y1 + s2 * Y2 + s3 * Y3,
            s1 * Y0 + Y1 + s3 * Y2 + s2 * Y3,
            s2 * Y0 + s3 * Y1 + Y2 + s1 * Y3,
            s3 * Y0 + s2 * Y1 + s1 * Y2 + Y3,
        ]
    ) / A


def kinematic_length(Y):
    """Quartic invariant: fourth root of the product of the four combinations."""
    Y = np.asarray(Y, dtype=float)
    if Y.shape != (4,) or not np.all(np.isfinite(Y)):
        raise DomainError(f"vector must be 4 finite reals, got {np.ravel(Y).tolist()}", "future-pointing")
    combos = SIGNS @ Y
    if np.any(combos <= 0.0):
        raise DomainError(f"vector {Y.tolist()} is not future-pointing: combinations {combos.tolist()}",
                          "future-pointing")
    return float(np.prod(combos) ** 0.25)


def compose(s1, s2):
    """Composition s1 (+) s2 by the explicit rational formulas."""
    p, q = velocity(s1), velocity(s2)
    den = 1.0 + p @ q
    s3 = np.array(
        [
            p[0] + q[0] + p[1] * q[2] + p[2] * q[1],
            p[1] + q[1] + p[0] * q[2] + p[2] * q[0],
            p[2] + q[2] + p[0] * q[1] + p[1] * q[0],
        ]
    ) / den
    return velocity(s3)


def compose_brackets(s1, s2):
    """Composition through products of bracket factors, J3 ~ J1 J2."""
    J = bracket_factors(velocity(s1)) * bracket_factors(velocity(s2))
    r = HADAMARD.C @ J
    return velocity(r[1:] / r[0])


def _subtract_ratios(s3, s2):
    J3, J2 = bracket_factors(velocity(s3)), bracket_factors(velocity(s2))
    if np.any(J2 == 0.0):
        raise AdmissibilityError("degenerate subtraction: vanishing bracket factor")
    return J3 / J2


def subtract(s3, s2):
    """Subtraction s3 (-) s2: the s1 with s1 (+) s2 = s3.

    H s1^a is a signed sum of the ratios J3k / J2k and H is their plain sum.
    """
    q = _subtract_ratios(s3, s2)
    H = q[0] + q[1] + q[2] + q[3]
    if H == 0.0:
        raise AdmissibilityError("degenerate subtraction: H vanishes")
    s1 = np.array(
        [
            q[0] - q[1] + q[2] - q[3],
            q[0] + q[1] - q[2] - q[3],
            q[0] - q[1] - q[2] + q[3],
        ]
    ) / H
    return velocity(s1)


def reciprocal_bracket_sum(s):
    """Quarter-sum of signed reciprocal bracket factors, as usually displayed.

    This is the spatial part of the reversed kinematic column before division
    by its time component, so it is not itself the inverse velocity.
    """
    inv = 1.0 / bracket_factors(velocity(s))
    return 0.25 * (HADAMARD.C[1:] @ inv)


def reciprocal_polynomial(s):
    """Same vector as ``reciprocal_bracket_sum`` written as cubics over A(s)^4."""
    s = velocity(s)
    s1, s2, s3 = s
    A4 = float(np.prod(SIGNS @ np.concatenate([[1.0], s])))
    q = s @ s
    return -np.array(
        [
            s1 - 2 * s2 * s3 - s1 ** 3 + s1 * (q - s1 * s1),
            s2 - 2 * s1 * s3 - s2 ** 3 + s2 * (q - s2 * s2),
            s3 - 2 * s1 * s2 - s3 ** 3 + s3 * (q - s3 * s3),
        ]
    ) / A4


def reciprocal(s):
    """Inverse velocity: compose(s, reciprocal(s)) = 0.

    The bracket factors of the inverse are proportional to 1/J, so the
    bracket sum is divided by its time component sum(1/J)/4.
    """
    inv = 1.0 / bracket_factors(velocity(s))
    return velocity(HADAMARD.C[1:] @ inv / inv.sum())
