"""Command-line front end: ``bm <op> [flags]``.

Every command prints one document {"op", "inputs", "outputs", "paper_ref",
"config"}.  Exit codes: 0 success, 2 domain or admissibility error,
3 verification failure, 64 usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import geodesics as geo
from . import invariance as inv
from . import kinematics as kin
from .errors import BMError
from .frames import constants_matrix, from_chart, tetrad, to_chart
from .metric import covariant_vector, metric_function, metric_tensor
from .verify import SUITES, Tolerances, VerifyConfig, format_table, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 2, 3, 64

# Governing relation of each operation, echoed as "paper_ref".
PAPER_REF = {
    "metric": "F = (y1 y2 y3 y4)^(1/4); g_AB = (1/2) d^2 F^2 / dy^A dy^B; det g = -1/256",
    "chart": "z0 = ln F, u^a = C^a_A ln(y^A / F)",
    "tetrad": "h^p_A = C^p_A / l^A; g = h^T diag(1,-1,-1,-1) h",
    "geodesic-ivp": "F(s)^2 = a^2 + 2bs + s^2; u(s) = u(0) + n ln sqrt(X(s))",
    "geodesic-bvp": "ds^2 = F1^2 + F2^2 - 2 F1 F2 cosh(eta); n = (u2 - u1) / eta",
    "angle": "eta = sqrt(mean_A ln^2(a^A F(b) / (b^A F(a))))",
    "distance": "ds^2 = F(a)^2 + F(b)^2 - 2 F(a) F(b) cosh(eta)",
    "scalar-product": "(ab) = F(a) F(b) cosh(eta)",
    "boost": "Y' = V(s) Y / A(s), A = (J1 J2 J3 J4)^(1/4)",
    "compose": "J_k(s1 + s2) proportional to J_k(s1) J_k(s2)",
    "subtract": "s1 from the ratios J_k(s3) / J_k(s2)",
    "invert-velocity": "J_k(inverse) proportional to 1 / J_k(s)",
    "kin-length": "L(Y) = fourth root of the product of the four sign combinations",
    "rotate": "y'^A = prod_B (y^B)^f[A,B], f = 1/4 + C_sp^T R C_inv_sp",
    "dilate": "y'^A = k^A y^A with k1 k2 k3 k4 = 1",
    "verify": "cross-module invariant suite",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    constants_choice: str = "hadamard"
    tol_exact: float = 1e-12
    tol_fd: float = 1e-6
    output: str = "json"

    def __post_init__(self):
        if not (self.tol_exact > 0 and self.tol_fd > 0):
            raise UsageError("tolerances must be positive")


def parse_vector(text, n=None):
    if isinstance(text, (list, tuple)):
        vals = [float(x) for x in text]
    else:
        try:
            vals = [float(x) for x in str(text).split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"cannot parse vector {text!r}; use comma-separated numbers") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} components, got {len(vals)} in {text!r}")
    return np.array(vals)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _flatten(prefix, value, out):
    arr = np.asarray(value) if isinstance(value, (list, tuple, np.ndarray)) else None
    if arr is not None and arr.dtype != object and arr.ndim > 0:
        for idx in np.ndindex(arr.shape):
            out[prefix + "".join(f"_{i}" for i in idx)] = arr[idx].item()
    elif isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out[prefix] = value


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(_jsonable(doc), indent=2)
    flat = {}
    _flatten("", _jsonable(doc.get("outputs", doc.get("error", {}))), flat)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(flat.values())
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{k}: {v}" for k, v in flat.items())


def _constants(cfg):
    return constants_matrix(cfg.constants_choice)


def _points(ivp, s_values):
    s_values = [float(s) for s in s_values]
    return {"s": s_values, "y": [ivp(s) for s in s_values]}


def op_metric(a, cfg):
    y = parse_vector(a.y, 4)
    m = metric_tensor(y)
    return {"F": metric_function(y), "y_covariant": covariant_vector(y), "g": m.g, "g_inv": m.g_inv,
            "det": m.det, "signature": list(m.signature())}


def op_chart(a, cfg):
    C = _constants(cfg)
    if a.z is not None:
        z = parse_vector(a.z, 4)
        return {"y": from_chart(z, C)}
    if a.y is None:
        raise UsageError("chart needs --y (forward) or --z (inverse)")
    p = to_chart(parse_vector(a.y, 4), C)
    return {"z0": p.z0, "u": p.u, "region": p.region}


def op_tetrad(a, cfg):
    t = tetrad(parse_vector(a.y, 4), _constants(cfg))
    return {"h": t.h, "h_recip": t.h_recip, "det_h": float(np.linalg.det(t.h))}


def op_geodesic_ivp(a, cfg):
    length = math.inf if a.length is None else float(a.length)
    ivp = geo.solve_ivp(parse_vector(a.y, 4), parse_vector(a.d, 4), length, _constants(cfg))
    s_values = parse_vector(a.s) if a.s is not None else []
    return {"a": ivp.a, "b": ivp.b, "k": ivp.k, "n": ivp.n, "u0": ivp.u0, "points": _points(ivp, s_values)}


def op_geodesic_bvp(a, cfg):
    sol = geo.solve_bvp(parse_vector(a.a, 4), parse_vector(a.b, 4), _constants(cfg))
    s_values = parse_vector(a.s) if a.s is not None else []
    return {"delta_s": sol.delta_s, "eta": sol.eta, "a": sol.ivp.a, "b": sol.ivp.b, "n": sol.ivp.n,
            "points": _points(sol.ivp, s_values)}


def op_angle(a, cfg):
    return {"eta": geo.angle(parse_vector(a.a, 4), parse_vector(a.b, 4))}


def op_distance(a, cfg):
    return {"delta_s": geo.distance(parse_vector(a.a, 4), parse_vector(a.b, 4))}


def op_scalar_product(a, cfg):
    return {"product": geo.scalar_product(parse_vector(a.a, 4), parse_vector(a.b, 4))}


def op_boost(a, cfg):
    Y, s = parse_vector(a.Y, 4), parse_vector(a.s, 3)
    out = kin.boost(Y, s)
    return {"Y_prime": out, "A": kin.dilatation_factor(s)}


def op_compose(a, cfg):
    return {"s3": kin.compose(parse_vector(a.s1, 3), parse_vector(a.s2, 3))}


def op_subtract(a, cfg):
    return {"s1": kin.subtract(parse_vector(a.s3, 3), parse_vector(a.s2, 3))}


def op_invert_velocity(a, cfg):
    s = parse_vector(a.s, 3)
    return {"s_inverse": kin.reciprocal(s), "bracket_sum": kin.reciprocal_bracket_sum(s),
            "polynomial": kin.reciprocal_polynomial(s)}


def op_kin_length(a, cfg):
    return {"length": kin.kinematic_length(parse_vector(a.Y, 4))}


def op_rotate(a, cfg):
    y = parse_vector(a.y, 4)
    if (a.angles is None) == (a.eta is None):
        raise UsageError("rotate needs exactly one of --angles theta,psi,phi or --eta")
    if a.eta is not None:
        t = inv.one_angle_exponents(float(a.eta))
    else:
        t = inv.rotation_exponents(inv.RotationAngles(*parse_vector(a.angles, 3)), _constants(cfg))
    return {"y_prime": t(y), "exponents": t.f, "F_residual": inv.f_invariance_residual(t, y)}


def op_dilate(a, cfg):
    y, k = parse_vector(a.y, 4), parse_vector(a.k, 4)
    return {"y_prime": inv.unimodular_dilatation(k, y)}


OPS = {
    "metric": (op_metric, {"y": "up-sector point"}),
    "chart": (op_chart, {"y": "point to map into the chart", "z": "chart point z0,u1,u2,u3 to map back"}),
    "tetrad": (op_tetrad, {"y": "up-sector point"}),
    "geodesic-ivp": (op_geodesic_ivp, {"y": "start point", "d": "timelike direction",
                                       "length": "arc length limit", "s": "arc lengths to sample"}),
    "geodesic-bvp": (op_geodesic_bvp, {"a": "first end", "b": "second end", "s": "arc lengths to sample"}),
    "angle": (op_angle, {"a": "first vector", "b": "second vector"}),
    "distance": (op_distance, {"a": "first vector", "b": "second vector"}),
    "scalar-product": (op_scalar_product, {"a": "first vector", "b": "second vector"}),
    "boost": (op_boost, {"Y": "frame components Y0..Y3", "s": "velocity s1,s2,s3"}),
    "compose": (op_compose, {"s1": "first velocity", "s2": "second velocity"}),
    "subtract": (op_subtract, {"s3": "composed velocity", "s2": "velocity to remove"}),
    "invert-velocity": (op_invert_velocity, {"s": "velocity"}),
    "kin-length": (op_kin_length, {"Y": "frame components"}),
    "rotate": (op_rotate, {"y": "up-sector point", "angles": "Euler angles theta,psi,phi",
                           "eta": "single rotation angle"}),
    "dilate": (op_dilate, {"y": "up-sector point", "k": "factors with unit product"}),
}
# Flags that may be omitted, per operation.
OPTIONAL = {
    "chart": {"y", "z"},
    "geodesic-ivp": {"length", "s"},
    "geodesic-bvp": {"s"},
    "rotate": {"angles", "eta"},
}


def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--constants", choices=["hadamard", "orthonormal"], default=d(None),
                        help="constant set (default: $BM_CONSTANTS or hadamard)")
    parser.add_argument("--output", choices=["json", "csv", "plain"], default=d("json"))
    parser.add_argument("--tol-exact", type=float, default=d(1e-12))
    parser.add_argument("--tol-fd", type=float, default=d(1e-6))
    parser.add_argument("--input", default=d(None), help="JSON file whose keys mirror the flags")


def build_parser():
    p = _Parser(prog="bm", description="Quartic Finsler geometry of the up-sector.")
    _global_options(p, suppress=False)
    # Same options after the subcommand; suppressed defaults keep earlier values.
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="op", metavar="op")
    for name, (_, flags) in OPS.items():
        sp = sub.add_parser(name, help=PAPER_REF[name], parents=[common])
        for flag, help_text in flags.items():
            sp.add_argument(f"--{flag}", dest=flag, default=None, help=help_text)
    v = sub.add_parser("verify", help=PAPER_REF["verify"], parents=[common])
    v.add_argument("--suite", default="all", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=None)
    return p


def _merge_input(args):
    if not args.input:
        return
    try:
        with open(args.input) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --input {args.input}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("--input must hold a JSON object")
    for key, value in data.items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise UsageError(f"unknown key {key!r} in --input")
        if getattr(args, key) is None:
            setattr(args, key, value)


def _config(args):
    choice = args.constants or os.environ.get("BM_CONSTANTS") or "hadamard"
    if choice not in ("hadamard", "orthonormal"):
        raise UsageError(f"BM_CONSTANTS must be hadamard or orthonormal, got {choice!r}")
    return CliConfig(choice, args.tol_exact, args.tol_fd, args.output)


def _run_verify(args, cfg, out):
    vc = VerifyConfig(tol=Tolerances(exact=cfg.tol_exact, fd=cfg.tol_fd))
    if args.seed is not None:
        vc = VerifyConfig(seed=args.seed, tol=vc.tol)
    results = run_suite(args.suite, vc)
    ok = all(r.passed for r in results)
    doc = {"op": "verify", "inputs": {"suite": args.suite, "seed": vc.seed},
           "outputs": {"passed": ok, "criteria": [r.as_dict() for r in results]},
           "paper_ref": PAPER_REF["verify"], "config": asdict(cfg)}
    if cfg.output == "json":
        print(render(doc, "json"), file=out)
    else:
        print(format_table(results), file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.op is None:
            raise UsageError("missing operation; see bm --help")
        _merge_input(args)
        cfg = _config(args)
        if args.op == "verify":
            return _run_verify(args, cfg, out)
        fn, flags = OPS[args.op]
        optional = OPTIONAL.get(args.op, set())
        missing = [f for f in flags if f not in optional and getattr(args, f) is None]
        if missing:
            raise UsageError(f"{args.op}: missing required flag(s) " + ", ".join("--" + f for f in missing))
        inputs = {f: getattr(args, f) for f in flags if getattr(args, f) is not None}
    except UsageError as exc:
        print(json.dumps({"error": {"type": "usage", "message": str(exc)}}), file=sys.stderr)
        return EXIT_USAGE
    doc = {"op": args.op, "inputs": inputs, "paper_ref": PAPER_REF[args.op], "config": asdict(cfg)}
    try:
        doc["outputs"] = fn(args, cfg)
    except UsageError as exc:
        print(json.dumps({"error": {"type": "usage", "message": str(exc)}}), file=sys.stderr)
        return EXIT_USAGE
    except BMError as exc:
        doc["error"] = {"type": type(exc).__name__, "precondition": exc.precondition, "message": str(exc)}
        print(render(doc, cfg.output if cfg.output == "json" else "plain"), file=out)
        return EXIT_DOMAIN
    print(render(doc, cfg.output), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
