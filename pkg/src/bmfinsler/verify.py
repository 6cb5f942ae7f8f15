"""Cross-module verification suite behind ``bm verify``.

Each ``criterion_N`` function draws its own samples from a fixed seed and
returns a ``CriterionResult`` made of named sub-checks.  Nothing here is
cached between criteria, so any subset can run on its own.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import geodesics as geo
from . import invariance as inv
from . import kinematics as kin
from .errors import SpacelikeSeparationError
from .frames import HADAMARD, ORTHONORMAL, from_chart, induced_indicatrix_metric, tetrad, to_chart
from .metric import DET_METRIC, metric_tensor, squared_metric_function
from .numerics import FDConfig, fd_hessian, rk4_integrate

BOTH_CONSTANTS = (HADAMARD, ORTHONORMAL)


@dataclass(frozen=True)
class Tolerances:
    exact: float = 1e-12
    fd: float = 1e-6
    det: float = 1e-10
    additivity: float = 1e-10
    ode: float = 1e-6
    unit_speed: float = 1e-8
    coefficients: float = 1e-14
    group: float = 1e-10
    negative_control: float = 1e-2
    expansion_constant: float = 5.0


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 20240917
    tol: Tolerances = field(default_factory=Tolerances)
    # Moderate sample used wherever finite differences or large ratios appear.
    moderate_range: tuple = (0.1, 10.0)
    fd_second: FDConfig = FDConfig(step=1e-3, richardson=True)
    fd_first: FDConfig = FDConfig(step=1e-4, richardson=True)
    ode_step: float = 1e-3
    arc_length: float = 3.0
    n_geodesics: int = 100
    # Bound on J_max / J_min for boosts; rounding grows like eps * J_max / J_min.
    boost_ratio: float = 100.0


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    # "below": pass when measured < tolerance; "above": pass when measured > tolerance.
    sense: str = "below"

    @property
    def passed(self):
        if not math.isfinite(self.measured):
            return False
        if self.sense == "above":
            return bool(self.measured > self.tolerance)
        return bool(self.measured < self.tolerance)


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list
    seconds: float = 0.0

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [
                {"name": c.name, "measured": float(c.measured), "tolerance": c.tolerance,
                 "sense": c.sense, "passed": c.passed}
                for c in self.checks
            ],
        }


def _rng(cfg, offset):
    return np.random.default_rng(cfg.seed + offset)


def log_uniform(rng, lo, hi, size):
    return 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), size)


def random_velocity(rng, max_ratio=None):
    """Uniform over the admissible part of the cube [-1, 1]^3.

    With ``max_ratio`` the bracket factors are also kept within that ratio
    of each other, which bounds the conditioning of boosted vectors.
    """
    while True:
        s = rng.uniform(-1.0, 1.0, 3)
        J = kin.bracket_factors(s)
        if np.all(J > 0.0) and (max_ratio is None or J.max() <= max_ratio * J.min()):
            return s


def random_future_vector(rng):
    """Frame components with all four combinations positive."""
    return HADAMARD.C @ rng.uniform(0.1, 2.0, 4) / 4.0


def criterion_1(cfg):
    pts = log_uniform(_rng(cfg, 1), 1e-3, 1e3, (1000, 4))
    err = max(abs(metric_tensor(y).det - DET_METRIC) for y in pts)
    return [Check("det g + 1/256, 1000 points in [1e-3, 1e3]", err, cfg.tol.det)]


def criterion_2(cfg):
    pts = log_uniform(_rng(cfg, 1), 1e-3, 1e3, (1000, 4))
    failures = sum(metric_tensor(y).signature() != (1, 3) for y in pts)
    return [Check("points with signature other than (+,-,-,-)", float(failures), 0.5)]


def criterion_3(cfg):
    pts = log_uniform(_rng(cfg, 3), *cfg.moderate_range, (100, 4))
    err = 0.0
    for y in pts:
        H = 0.5 * fd_hessian(squared_metric_function, y, cfg.fd_second)
        err = max(err, float(np.max(np.abs(H - metric_tensor(y).g))))
    return [Check("g - Hessian(F^2)/2, 100 points", err, cfg.tol.fd)]


def criterion_4(cfg):
    pts = log_uniform(_rng(cfg, 4), *cfg.moderate_range, (100, 4))
    recip = det = decomp = 0.0
    for C in BOTH_CONSTANTS:
        for y in pts:
            t = tetrad(y, C)
            recip = max(recip, float(np.max(np.abs(t.h @ t.h_recip - np.eye(4)))),
                        float(np.max(np.abs(t.h_recip @ t.h - np.eye(4)))))
            det = max(det, abs(abs(np.linalg.det(t.h)) - 1.0 / 16.0))
            decomp = max(decomp, float(np.max(np.abs(t.metric() - metric_tensor(y).g))))
    tol = cfg.tol.exact
    return [
        Check("tetrad reciprocity, both constant sets", recip, tol),
        Check("|det h| - 1/16, both constant sets", det, tol),
        Check("tetrad decomposition of g, both constant sets", decomp, tol),
    ]


def criterion_5(cfg):
    axis = np.linspace(-1.0, 1.0, 5)
    err = 0.0
    for C in BOTH_CONSTANTS:
        for u in np.stack(np.meshgrid(axis, axis, axis), -1).reshape(-1, 3):
            err = max(err, float(np.max(np.abs(induced_indicatrix_metric(u, C) - np.eye(3)))))
    return [Check("induced indicatrix metric - I, 5x5x5 grid", err, cfg.tol.exact)]


def random_geodesic(rng, constants, length):
    """Random admissible initial data: y0 near the indicatrix, chart speed <= 2."""
    y0 = log_uniform(rng, 10 ** -0.5, 10 ** 0.5, 4)
    F = float(np.prod(y0) ** 0.25)
    v = rng.normal(size=3)
    v *= rng.uniform(0.0, 2.0) / np.linalg.norm(v)
    U = np.concatenate([[math.sqrt(1.0 / F ** 2 + v @ v)], v])
    direction = tetrad(y0, constants).h_recip @ U * F
    return geo.solve_ivp(y0, direction, length=length, constants=constants)


def criterion_6(cfg):
    rng = _rng(cfg, 6)
    system = geo.geodesic_system()
    dev = unit = 0.0
    L, h = cfg.arc_length, 1e-5
    probe = np.linspace(0.05, L - 0.05, 30)
    for i in range(cfg.n_geodesics):
        C = BOTH_CONSTANTS[i % 2]
        ivp = random_geodesic(rng, C, L)
        x0 = np.concatenate([ivp.chart(0.0), ivp.velocity(0.0)])
        tr = rk4_integrate(system, x0, L, cfg.ode_step)
        y_rk = np.exp(tr.states[:, :4] @ C.C)
        dev = max(dev, float(np.max(np.abs(y_rk - ivp.sample(tr.s)))))
        for s in probe:
            ym, yp = ivp.sample([s - h, s + h])
            tangent = (yp - ym) / (2 * h)
            unit = max(unit, abs(metric_tensor(ivp.sample([s])[0]).quadratic(tangent) - 1.0))
    return [
        Check(f"closed form vs RK4, {cfg.n_geodesics} arcs", dev, cfg.tol.ode),
        Check("unit speed g(dy/ds, dy/ds) - 1", unit, cfg.tol.unit_speed),
    ]


def random_timelike_pair(rng, constants):
    """(y1, y2, eta) with y2 in the future cone of y1 and a known chart angle."""
    y1 = log_uniform(rng, 0.3, 3.0, 4)
    eta = rng.uniform(0.0, 1.5)
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    z1 = to_chart(y1, constants)
    F2 = math.exp(z1.z0 + eta) * rng.uniform(1.1, 3.0)
    y2 = from_chart(np.concatenate([[math.log(F2)], z1.u + eta * n]), constants)
    return y1, y2, eta


def criterion_7(cfg):
    rng = _rng(cfg, 7)
    chart = sym = add_eta = add_ds = xe = 0.0
    for i in range(200):
        C = BOTH_CONSTANTS[i % 2]
        y1, y2, eta_true = random_timelike_pair(rng, C)
        eta = geo.angle(y1, y2)
        for D in BOTH_CONSTANTS:
            du = to_chart(y2, D).u - to_chart(y1, D).u
            chart = max(chart, abs(eta - float(np.linalg.norm(du))))
        chart = max(chart, abs(eta - eta_true))
        sym = max(sym, abs(eta - geo.angle(y2, y1)))
        sol = geo.solve_bvp(y1, y2, C)
        s_mid = rng.uniform(0.1, 0.9) * sol.delta_s
        p = sol(s_mid)
        add_eta = max(add_eta, abs(geo.angle(y1, p) + geo.angle(p, y2) - eta))
        add_ds = max(add_ds, abs(geo.distance(y1, p) + geo.distance(p, y2) - sol.delta_s))
        xe = max(xe, abs(float(sol.ivp.X(sol.delta_s)) / math.exp(2 * eta) - 1.0))
    tol = cfg.tol
    return [
        Check("angle vs chart euclidean distance, both constant sets", chart, tol.exact),
        Check("angle symmetry", sym, tol.additivity),
        Check("angle additivity along geodesics", add_eta, tol.additivity),
        Check("distance additivity along geodesics", add_ds, tol.additivity),
        Check("X(ds) / exp(2 eta) - 1", xe, tol.exact),
    ]


def criterion_8(cfg):
    e = math.e
    eta = geo.angle([e, 1, 1, 1], [1, 1, 1, 1])
    ds = geo.distance([1, 1, 1, 1], [4, 4, 4, 4])
    try:
        geo.distance([1, 1, 1, 1], [e, 1, 1, 1])
        raised = 0.0
    except SpacelikeSeparationError:
        raised = 1.0
    tol = cfg.tol.exact
    return [
        Check("angle((e,1,1,1),(1,1,1,1)) - sqrt(3)/4", abs(eta - math.sqrt(3) / 4), tol),
        Check("distance((1,1,1,1),(4,4,4,4)) - 3", abs(ds - 3.0), tol),
        Check("spacelike pair raises the typed error", raised, 0.5, "above"),
    ]


def criterion_9(cfg):
    rng = _rng(cfg, 9)
    det = quart = group = vel = 0.0
    for _ in range(100):
        a, b, c = log_uniform(rng, *cfg.moderate_range, (3, 4))
        N = kin.kinematic_matrix(a, b)
        r = kin.kinematic_residuals(N)
        det, quart = max(det, abs(r["det"])), max(quart, abs(r["quartic"]))
        group = max(group, float(np.max(np.abs(kin.kinematic_matrix(a, c) - N @ kin.kinematic_matrix(b, c)))))
        M = kin.matrix_from_velocity(kin.relative_velocity(a, b))
        vel = max(vel, float(np.max(np.abs(M - N))))
    tol = cfg.tol.exact
    return [
        Check("det N - 1", det, tol),
        Check("quartic identity - 1", quart, tol),
        Check("N(a,c) - N(a,b) N(b,c), 100 triples", group, tol),
        Check("matrix_from_velocity(relative_velocity) - N", vel, tol),
    ]


def criterion_10(cfg):
    rng = _rng(cfg, 10)
    err = 0.0
    for _ in range(1000):
        Y, s = random_future_vector(rng), random_velocity(rng, cfg.boost_ratio)
        L = kin.kinematic_length(Y)
        err = max(err, abs(kin.kinematic_length(kin.boost(Y, s)) - L) / L)
    lorentz = kin.boost([1, 0, 0, 0], [0.5, 0, 0])
    g = 1.0 / math.sqrt(0.75)
    ref = np.array([g, 0.5 * g, 0.0, 0.0])
    return [
        Check("relative change of kinematic length under boost, 1000 pairs", err, cfg.tol.exact),
        Check("boost((1,0,0,0),(0.5,0,0)) vs Lorentz", float(np.max(np.abs(lorentz - ref))), 1e-9),
    ]


def criterion_11(cfg):
    rng = _rng(cfg, 11)
    half = float(np.max(np.abs(kin.compose([0.5, 0, 0], [0.5, 0, 0]) - [0.8, 0, 0])))
    sub = inverse = forms = 0.0
    for _ in range(1000):
        s1, s2, s = random_velocity(rng), random_velocity(rng), random_velocity(rng)
        sub = max(sub, float(np.max(np.abs(kin.subtract(kin.compose(s1, s2), s2) - s1))))
        r = kin.reciprocal(s)
        inverse = max(inverse, float(np.max(np.abs(kin.compose(s, r)))),
                      float(np.max(np.abs(kin.compose(r, s)))))
        forms = max(forms, float(np.max(np.abs(kin.reciprocal_bracket_sum(s) - kin.reciprocal_polynomial(s)))))
    tol = cfg.tol.exact
    return [
        Check("compose((0.5,0,0),(0.5,0,0)) - (0.8,0,0)", half, tol),
        Check("subtract(compose(s1,s2),s2) - s1, 1000 pairs", sub, tol),
        Check("compose(s, reciprocal(s)), 1000 samples", inverse, tol),
        Check("bracket-sum vs polynomial reciprocal forms", forms, tol),
    ]


def expansion_constant(half_width=0.15, n=13):
    """max |A(s) - approx(s)| / |s|^5 over a cubic grid, plus the error at s = 0."""
    axis = np.linspace(-half_width, half_width, n)
    worst, at_origin = 0.0, 0.0
    for s in np.stack(np.meshgrid(axis, axis, axis), -1).reshape(-1, 3):
        diff = abs(kin.dilatation_factor(s) - kin.dilatation_factor_approx(s))
        r = float(np.linalg.norm(s))
        if r == 0.0:
            at_origin = diff
        else:
            worst = max(worst, diff / r ** 5)
    return worst, at_origin


def criterion_12(cfg):
    worst, at_origin = expansion_constant()
    return [
        Check("max |A - (A1 + A2)| / |s|^5 on |s^a| <= 0.15", worst, cfg.tol.expansion_constant),
        Check("|A - (A1 + A2)| at s = 0", at_origin, cfg.tol.exact),
    ]


def criterion_13(cfg):
    rng = _rng(cfg, 13)
    angles = [inv.RotationAngles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
                                 rng.uniform(0, 2 * math.pi)) for _ in range(20)]
    pts = log_uniform(rng, *cfg.moderate_range, (20, 4))
    f_err = g_err = m_err = 0.0
    control = math.inf
    fs, ff = cfg.fd_second, cfg.fd_first
    for i, ang in enumerate(angles):
        t = inv.rotation_exponents(ang)
        for y in pts:
            F = float(np.prod(y) ** 0.25)
            f_err = max(f_err, abs(inv.f_invariance_residual(t, y)) / F)
            g_err = max(g_err, float(np.max(np.abs(inv.metric_invariance_residual(
                t, y, ff.step, ff.richardson, ff.relative)))))
            m_err = max(m_err, float(np.max(np.abs(inv.metricity_residual(
                t, y, fs.step, fs.richardson, fs.relative)))))
        bad = inv.perturbed_exponents(t, 0.1)
        control = min(control, float(np.max(np.abs(inv.metricity_residual(
            bad, pts[i], fs.step, fs.richardson, fs.relative)))))
    coeff = group = 0.0
    for eta in np.linspace(-3.0, 3.0, 25):
        psi = float(rng.uniform(0, 2 * math.pi))
        A = inv.rotation_exponents(inv.RotationAngles(0.0, psi, -eta - psi), HADAMARD).f
        coeff = max(coeff, float(np.max(np.abs(inv.one_angle_exponents(eta).f - A))))
        eta2 = float(rng.uniform(-3.0, 3.0))
        composed = inv.one_angle_exponents(eta).then(inv.one_angle_exponents(eta2)).f
        group = max(group, float(np.max(np.abs(composed - inv.one_angle_exponents(eta + eta2).f))))
    tol = cfg.tol
    return [
        Check("F(t(y)) / F(y) - 1, 20 rotations x 20 points", f_err, tol.exact),
        Check("metric-tensor invariance residual", g_err, tol.fd),
        Check("metricity residual", m_err, tol.fd),
        Check("perturbed transform metricity residual (min)", control, tol.negative_control, "above"),
        Check("one-angle coefficients vs three-angle specialisation", coeff, tol.coefficients),
        Check("one-angle group law in eta", group, tol.group),
    ]


CRITERIA = {
    1: ("metric determinant", criterion_1),
    2: ("metric signature", criterion_2),
    3: ("metric tensor vs finite-difference Hessian", criterion_3),
    4: ("tetrads", criterion_4),
    5: ("flat indicatrix", criterion_5),
    6: ("geodesics vs RK4", criterion_6),
    7: ("angle identities", criterion_7),
    8: ("hand-checkable values", criterion_8),
    9: ("kinematic coefficients", criterion_9),
    10: ("kinematic length under boosts", criterion_10),
    11: ("velocity algebra", criterion_11),
    12: ("small-velocity expansion", criterion_12),
    13: ("invariance transformations", criterion_13),
}

SUITES = {
    "core": (1, 2, 3),
    "frames": (4, 5),
    "geodesics": (6, 7, 8),
    "kinematics": (9, 10, 11, 12),
    "invariance": (13,),
    "all": tuple(range(1, 14)),
}


def run_criterion(number, cfg=None):
    cfg = cfg or VerifyConfig()
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    checks = fn(cfg)
    return CriterionResult(number, title, checks, time.perf_counter() - t0)


def run_suite(name="all", cfg=None):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    return [run_criterion(n, cfg) for n in SUITES[name]]


def format_table(results):
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.number:2d} {r.title} ({r.seconds:.1f}s)")
        for c in r.checks:
            op = ">" if c.sense == "above" else "<"
            mark = "ok" if c.passed else "FAILED"
            lines.append(f"       {mark:6s} {c.name}: {c.measured:.3e} {op} {c.tolerance:.0e}")
    return "\n".join(lines)
