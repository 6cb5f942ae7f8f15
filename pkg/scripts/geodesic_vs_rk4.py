"""Closed-form geodesics against fixed-step RK4, including the step-size trend."""

import argparse

import numpy as np

from bmfinsler import geodesics as geo
from bmfinsler.frames import constants_matrix
from bmfinsler.numerics import rk4_integrate
from bmfinsler.verify import random_geodesic


def max_deviation(ivp, C, length, step):
    x0 = np.concatenate([ivp.chart(0.0), ivp.velocity(0.0)])
    tr = rk4_integrate(geo.geodesic_system(), x0, length, step)
    return float(np.max(np.abs(np.exp(tr.states[:, :4] @ C.C) - ivp.sample(tr.s))))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=20, help="number of random arcs")
    p.add_argument("--length", type=float, default=3.0)
    p.add_argument("--steps", default="1e-1,5e-2,2.5e-2,1e-2,1e-3")
    p.add_argument("--constants", default="hadamard", choices=["hadamard", "orthonormal"])
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    C = constants_matrix(args.constants)
    rng = np.random.default_rng(args.seed)
    arcs = [random_geodesic(rng, C, args.length) for _ in range(args.n)]
    prev = None
    print(f"{'step':>10} {'max dev':>12} {'ratio':>8}")
    for step in (float(s) for s in args.steps.split(",")):
        dev = max(max_deviation(ivp, C, args.length, step) for ivp in arcs)
        ratio = "" if prev is None else f"{prev[1] / dev:8.1f}"
        print(f"{step:10.2e} {dev:12.3e} {ratio}")
        prev = (step, dev)


if __name__ == "__main__":
    main()
