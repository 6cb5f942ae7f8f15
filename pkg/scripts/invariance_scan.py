"""Metricity residuals of rotation-generated and perturbed power transforms.

Shows how the finite-difference residual depends on the step, on Richardson
refinement and on how far the sample strays from component magnitude 1.
"""

import argparse

import numpy as np

from bmfinsler import invariance as inv
from bmfinsler.verify import log_uniform


def worst(transforms, points, **kw):
    return max(float(np.max(np.abs(inv.metricity_residual(t, y, **kw)))) for t in transforms for y in points)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--rotations", type=int, default=10)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    rots = [inv.rotation_exponents(rng.uniform(0, 2 * np.pi, 3)) for _ in range(args.rotations)]
    print(f"{'range':>14} {'step':>8} {'plain':>11} {'richardson':>11}")
    for lo, hi in [(0.8, 1.25), (0.5, 2.0), (0.1, 10.0)]:
        pts = log_uniform(rng, lo, hi, (args.points, 4))
        for step in (1e-2, 1e-3, 1e-4):
            print(f"[{lo:4}, {hi:5}] {step:8.0e} {worst(rots, pts, step=step):11.2e} "
                  f"{worst(rots, pts, step=step, richardson=True):11.2e}")

    print("\nnegative control (perturbed exponents), worst-case point in [0.1, 10]:")
    pts = log_uniform(rng, 0.1, 10.0, (args.points, 4))
    for eps in (1e-3, 1e-2, 1e-1):
        bad = [inv.perturbed_exponents(t, eps) for t in rots]
        smallest = min(float(np.max(np.abs(inv.metricity_residual(t, y, richardson=True))))
                       for t in bad for y in pts)
        print(f"  eps={eps:6.0e}  min over samples of max |residual| = {smallest:.3e}")


if __name__ == "__main__":
    main()
