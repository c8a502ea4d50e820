"""Finite-difference solve of the damped model against the closed-form plane wave.

Prints the relative L2 error on the central window for three grid sizes and
the successive error ratios (about 16 for a fourth-order scheme).
"""
import argparse
import cmath

from quadprop.hamiltonians import catalog_model
from quadprop.pdecheck import Grid, central_window, compare_fields, evolve_fd
from quadprop.propagator import model_state_fn, plane_wave


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="caldirola_kanai")
    ap.add_argument("--h", type=float, default=1.2)
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()
    cs = catalog_model(args.model)
    state_fn = model_state_fn(cs)

    def exact(x, t):
        return cmath.exp(1j * args.h * x) if t == 0 else plane_wave(state_fn(t), args.h, x)

    prev = None
    for n_points in (201, 401, 801):
        grid = Grid(-8.0, 8.0, n_points)
        fld = evolve_fd(cs, lambda x: exact(x, 0.0), grid, args.t, args.tol, exact)
        err = compare_fields(fld, lambda x: exact(x, args.t), central_window(grid)).l2_rel
        ratio = f"  ratio {prev / err:.1f}" if prev else ""
        print(f"points={n_points:4d}  l2_rel={err:.3e}{ratio}")
        prev = err


if __name__ == "__main__":
    main()
