"""Superoscillating data F_n(x, h) against e^{ihx} for n = 5..100 (t = 0)."""
import argparse
import cmath
from pathlib import Path

from quadprop.io import write_csv
from quadprop.propagator import superosc_data


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=float, default=1.2)
    ap.add_argument("--x", type=float, default=1.0)
    ap.add_argument("--output-dir", default="out")
    args = ap.parse_args()
    target = cmath.exp(1j * args.h * args.x)
    rows = []
    for n in range(5, 101, 5):
        f = superosc_data(n, args.h, args.x)
        d = f - target
        rows.append((n, args.x, 0.0, f.real, f.imag, target.real, target.imag, d.real, d.imag, abs(d)))
        print(f"n={n:3d}  |F_n - e^(ihx)| = {abs(d):.3e}")
    out = Path(args.output_dir) / "data_convergence.csv"
    write_csv(rows, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
