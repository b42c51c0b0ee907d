"""Measure omega(k) from a simulated packet and compare with the mass shell."""
import argparse
import math

from guidedphoton import propagate as pg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-c", type=float, default=3.0)
    ap.add_argument("--snapshots", type=int, default=256)
    ap.add_argument("--points", type=int, default=256)
    ap.add_argument("--length", type=float, default=64.0)
    args = ap.parse_args()

    wc = args.omega_c
    grid = pg.Grid1D(args.length, args.points)
    sigma = 4 / wc if wc > 0 else 2.0
    packet = pg.init_gaussian_packet(grid, 0.0, max(sigma, 4 * grid.spacing), wc)
    dt = (64 / max(wc, 1.0)) / args.snapshots
    history = [pg.evolve_spectral(packet, wc, j * dt) for j in range(args.snapshots)]
    points, resolution = pg.extract_dispersion(history)

    print(f"frequency bin {resolution:.4f}")
    print(f"{'k':>9} {'measured':>10} {'shell':>10} {'bins off':>9}")
    for p in points:
        shell = math.hypot(p.k, wc)
        print(f"{p.k:9.4f} {p.omega:10.4f} {shell:10.4f} {(p.omega - shell) / resolution:9.3f}")
    print(f"spectral floor {min(p.omega for p in points):.4f} (mass {wc})")


if __name__ == "__main__":
    main()
