"""Rounding error of the kinematic length under boosts versus J_max / J_min.

The boosted components carry absolute rounding of order eps * |Y'|, while
the smallest sign combination scales like J_min; the relative error of the
quartic length therefore grows like eps * J_max / J_min near the edge of
the admissible region.
"""

import argparse

import numpy as np

from bmfinsler import kinematics as kin
from bmfinsler.verify import random_future_vector, random_velocity


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=5)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    ratio, err = np.empty(args.samples), np.empty(args.samples)
    for i in range(args.samples):
        Y, s = random_future_vector(rng), random_velocity(rng)
        J = kin.bracket_factors(s)
        L = kin.kinematic_length(Y)
        ratio[i] = J.max() / J.min()
        err[i] = abs(kin.kinematic_length(kin.boost(Y, s)) - L) / L
    edges = [1, 10, 100, 1e3, 1e4, np.inf]
    print(f"{'J_max/J_min':>16} {'share':>7} {'max rel err':>12}")
    for lo, hi in zip(edges, edges[1:]):
        m = (ratio >= lo) & (ratio < hi)
        if m.any():
            print(f"[{lo:6g}, {hi:6g}) {m.mean():7.3f} {err[m].max():12.2e}")


if __name__ == "__main__":
    main()
