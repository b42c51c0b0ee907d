"""Fitted centroid velocity of single-branch packets against k/E."""
import argparse
import math

from guidedphoton import propagate as pg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-c", type=float, default=3.0)
    ap.add_argument("--k0", type=float, nargs="+", default=[0.5, 1.0, 2.0, 4.0, 8.0])
    ap.add_argument("--duration", type=float, default=30.0)
    ap.add_argument("--points", type=int, default=4096)
    args = ap.parse_args()

    wc = args.omega_c
    grid = pg.Grid1D(200 / wc, args.points)
    print(f"{'k0':>6} {'fitted':>10} {'k0/E':>10} {'rel err':>9}")
    for k0 in args.k0:
        packet = pg.init_gaussian_packet(grid, k0, 10 / wc, wc, center=grid.length / 4)
        traj = pg.record_trajectory(packet, wc, args.duration, 0.1)
        v = pg.fit_group_velocity(traj)
        expected = k0 / math.hypot(k0, wc)
        print(f"{k0:6.2f} {v:10.6f} {expected:10.6f} {(v - expected) / expected:9.2e}")


if __name__ == "__main__":
    main()
