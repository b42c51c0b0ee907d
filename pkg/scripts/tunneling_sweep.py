"""Transmission through a single evanescent barrier as a function of its length,
with the thick-barrier asymptote for comparison."""
import argparse

import numpy as np

from guidedphoton import propagate as pg
from guidedphoton.modes import evanescent_kappa


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, default=5.0)
    ap.add_argument("--lead", type=float, default=3.0)
    ap.add_argument("--barrier", type=float, default=6.0)
    ap.add_argument("--max-kappa-length", type=float, default=12.0)
    ap.add_argument("--points", type=int, default=25)
    args = ap.parse_args()

    kappa = evanescent_kappa(args.omega, args.barrier)
    print(f"kappa = {kappa:.6f}")
    print(f"{'kappa L':>8} {'T':>12} {'asymptote':>12} {'T+R-1':>10}")
    lengths = np.linspace(0.25, args.max_kappa_length, args.points) / kappa
    for L in lengths:
        t = pg.helmholtz_mode(args.omega, pg.BarrierProfile.single_barrier(args.lead, args.barrier, L))
        asym = pg.thick_barrier_transmission(args.omega, args.lead, args.barrier, L)
        print(f"{kappa * L:8.3f} {t.T:12.5e} {asym:12.5e} {t.T + t.R - 1:10.1e}")


if __name__ == "__main__":
    main()
