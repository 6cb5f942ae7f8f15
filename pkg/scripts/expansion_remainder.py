"""Fit the remainder constant of the small-velocity expansion of A(s)."""

import argparse

import numpy as np

from bmfinsler.verify import expansion_constant


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--widths", default="0.05,0.1,0.15,0.2,0.25")
    p.add_argument("--points", type=int, default=13, help="grid points per axis")
    args = p.parse_args()
    print(f"{'half width':>10} {'max |A - approx| / |s|^5':>26}")
    for w in (float(x) for x in args.widths.split(",")):
        c, _ = expansion_constant(w, args.points)
        print(f"{w:10.3f} {c:26.4f}")


if __name__ == "__main__":
    main()
