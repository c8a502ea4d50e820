"""Command-line front end.

Exit codes: 0 success, 1 computational error, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import cmath
import json
import sys
import time
from pathlib import Path

from .characteristic import characteristic_pair
from .checks import run_checks
from .config import ExperimentConfig, load_config
from .errors import QuadPropError, UsageError
from .hamiltonians import CATALOG, catalog_model
from .io import FIELD_HEADER, field_rows, sweep_rows, write_csv, write_error_svg
from .pdecheck import central_window, compare_fields, evolve_fd
from .propagator import (
    convergence_sweep,
    default_parity,
    evolve_power_data,
    evolve_superposition,
    family_frequency,
    model_state_fn,
    plane_wave,
    plane_wave_solution,
)
from .riccati import COMPONENTS, check_assumption1, riccati_closed_form, riccati_integrate


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _param(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value: object = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def _model(args) -> tuple:
    params = dict(args.param or [])
    cs = catalog_model(args.model, params)
    return cs, characteristic_pair(cs)


def _fmt_c(z: complex) -> str:
    return f"{z.real!r} {z.imag!r}"


def cmd_catalog(args, out) -> int:
    for name, info in CATALOG.items():
        defaults = ", ".join(f"{k}={v}" for k, v in info.defaults.items())
        out.write(f"{name}\t{defaults}\t{info.summary}\n")
        for k, doc in info.params_doc.items():
            out.write(f"    {k}: {doc}\n")
    return 0


def cmd_riccati(args, out) -> int:
    cs, pair = _model(args)
    closed = riccati_closed_form(pair, cs, args.t)
    ode = riccati_integrate(cs, args.t, pair=pair)
    out.write(f"# model={cs.name} t={args.t!r} pair={pair.source}\n")
    out.write("name closed_form ode abs_diff\n")
    for n in (*COMPONENTS, "w"):
        a, b = getattr(closed, n), getattr(ode, n)
        out.write(f"{n} {a!r} {b!r} {abs(a - b):.3e}\n")
    return 0


def cmd_propagate(args, out) -> int:
    cs, pair = _model(args)
    state_fn = model_state_fn(cs, pair)
    if args.n is None:
        if args.p == 1:
            ws = plane_wave_solution(state_fn(args.t), pair, args.h, args.x)
        else:
            nu = family_frequency(args.h, args.p, default_parity(args.p))
            ws = plane_wave_solution(state_fn(args.t), pair, nu, args.x)
        out.write(f"phi {_fmt_c(ws.value)}\n")
        return 0
    if args.p == 1:
        ws = evolve_superposition(state_fn, pair, args.n, args.h, args.x, args.t)
        limit = plane_wave(state_fn(args.t), args.h, args.x)
    else:
        ws = evolve_power_data(state_fn, pair, args.n, args.h, args.p, args.x, args.t)
        limit = plane_wave(state_fn(args.t), family_frequency(args.h, args.p, default_parity(args.p)), args.x)
    out.write(f"psi_n {_fmt_c(ws.value)}\n")
    out.write(f"limit {_fmt_c(limit)}\n")
    out.write(f"err_abs {abs(ws.value - limit)!r}\n")
    out.write(f"precision_loss {ws.precision_loss:.3e}\n")
    return 0


def _output_dir(cfg: ExperimentConfig, args) -> Path:
    return Path(args.output_dir) if getattr(args, "output_dir", None) else cfg.resolved_output_dir()


def cmd_sweep(args, out) -> int:
    cfg = load_config(args.config)
    rows = []
    tables = []
    for x in cfg.xs:
        table = convergence_sweep(cfg.model, cfg.params, cfg.h, cfg.p, x, cfg.t, cfg.n_list)
        tables.append(table)
        rows.extend(sweep_rows(table))
    stem = args.name or Path(args.config).stem
    target = _output_dir(cfg, args)
    write_csv(rows, target / f"{stem}.csv")
    write_error_svg(tables[0], target / f"{stem}.svg")
    for table in tables:
        first, last = table.rows[0], table.rows[-1]
        out.write(f"x={first.x!r} err_abs[n={first.n}]={first.err_abs:.6e} err_abs[n={last.n}]={last.err_abs:.6e}\n")
    out.write(f"wrote {target / (stem + '.csv')}\n")
    return 0


def cmd_pde_compare(args, out) -> int:
    cfg = load_config(args.config)
    if cfg.p != 1:
        raise UsageError("pde-compare evolves plane-wave data (p = 1)")
    cs = catalog_model(cfg.model, cfg.params)
    state_fn = model_state_fn(cs)

    def exact(x, t):
        return cmath.exp(1j * cfg.h * x) if t == 0 else plane_wave(state_fn(t), cfg.h, x)

    start = time.perf_counter()
    fld = evolve_fd(cs, lambda x: exact(x, 0.0), cfg.grid, cfg.t, cfg.tol, exact)
    elapsed = time.perf_counter() - start
    analytic = [exact(float(x), cfg.t) for x in cfg.grid.x]
    window = central_window(cfg.grid)
    cmp = compare_fields(fld, lambda x: exact(x, cfg.t), window)
    stem = args.name or Path(args.config).stem
    target = _output_dir(cfg, args)
    write_csv(field_rows(fld, analytic), target / f"{stem}_field.csv", FIELD_HEADER)
    norms = {"l2_rel": cmp.l2_rel, "linf": cmp.linf, "re_l2": cmp.re_l2, "im_l2": cmp.im_l2,
             "window": list(window), "points": cmp.points, "nfev": fld.nfev, "seconds": elapsed}
    (target / f"{stem}_norms.json").write_text(json.dumps(norms, indent=2) + "\n", encoding="utf-8")
    for k in ("l2_rel", "linf", "re_l2", "im_l2"):
        out.write(f"{k} {norms[k]:.6e}\n")
    out.write(f"wrote {target / (stem + '_field.csv')}\n")
    return 0


def cmd_check(args, out) -> int:
    results = run_checks(args.model)
    failed = [r for r in results if not r.ok]
    for r in results:
        out.write(r.line() + "\n")
    for r in failed:
        sys.stderr.write(r.line() + "\n")
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def cmd_assumption1(args, out) -> int:
    cs, pair = _model(args)
    rep = check_assumption1(cs, args.h, args.T, args.samples, pair)
    out.write(f"max_abs_rho {rep.max_abs_rho!r}\nargmax_t {rep.argmax_t!r}\n")
    out.write(f"samples {rep.samples}\nbounded {str(rep.bounded).lower()}\nskipped {len(rep.skipped)}\n")
    return 0 if rep.bounded else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadprop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", help="list models and parameters")

    def model_args(sp):
        sp.add_argument("--model", required=True)
        sp.add_argument("--param", action="append", type=_param, metavar="KEY=VALUE",
                        help="override a model parameter (repeatable)")

    sp = sub.add_parser("riccati", help="alpha..kappa from the closed forms and the ODE")
    model_args(sp)
    sp.add_argument("--t", type=float, required=True)

    sp = sub.add_parser("propagate", help="evolved plane wave, or psi_n with --n")
    model_args(sp)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int, default=1)

    for name, helptext in (("sweep", "convergence sweep to CSV and SVG"),
                           ("pde-compare", "finite-difference solve against the analytic field")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--config", required=True)
        sp.add_argument("--output-dir")
        sp.add_argument("--name", help="output file stem (default: config file stem)")

    sp = sub.add_parser("check", help="run the invariant suites")
    sp.add_argument("--model")

    sp = sub.add_parser("assumption1", help="sample |rho(t)| of the operator coefficient")
    model_args(sp)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--samples", type=int, default=101)
    return p


COMMANDS = {
    "catalog": cmd_catalog,
    "riccati": cmd_riccati,
    "propagate": cmd_propagate,
    "sweep": cmd_sweep,
    "pde-compare": cmd_pde_compare,
    "check": cmd_check,
    "assumption1": cmd_assumption1,
}


def run_command(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    except QuadPropError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"ValueError: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
