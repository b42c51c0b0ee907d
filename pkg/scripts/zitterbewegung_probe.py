"""Centroid and variance spectra of a packet built from both energy branches.

Prints the dominant frequency of each observable next to 2E, and optionally
writes the trajectory to CSV.
"""
import argparse
import csv
import math

from guidedphoton import propagate as pg
from guidedphoton.errors import DetectionError


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-c", type=float, default=math.pi)
    ap.add_argument("--k0", type=float, default=0.0)
    ap.add_argument("--periods", type=int, default=20, help="beat periods at 2E to record")
    ap.add_argument("--points", type=int, default=2048)
    ap.add_argument("--branch", choices=("plus", "minus", "both"), default="both")
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    wc = args.omega_c
    energy = math.hypot(args.k0, wc)
    duration = args.periods * 2 * math.pi / (2 * energy)
    grid = pg.Grid1D(200 / wc, args.points)
    packet = pg.init_gaussian_packet(grid, args.k0, 10 / wc, wc, args.branch)
    traj = pg.record_trajectory(packet, wc, duration, duration / 800)

    print(f"2E = {2 * energy:.6f}")
    for observable in ("centroid", "variance"):
        try:
            peak = pg.dominant_oscillation(traj, observable)
            print(f"{observable:>9}: peak at {peak.frequency:.6f}, amplitude {peak.amplitude:.3e}")
        except DetectionError as exc:
            print(f"{observable:>9}: {exc}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "centroid", "width", "norm"])
            w.writerows(zip(traj.t, traj.centroid, traj.width, traj.norm))


if __name__ == "__main__":
    main()
