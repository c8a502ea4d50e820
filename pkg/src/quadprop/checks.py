"""Invariant suites aggregated by the ``check`` command.

Each suite yields CheckResult records; a suite never raises for a failed
invariant, only reports it. Library errors raised while checking are caught and
reported as failures carrying the error name.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .characteristic import characteristic_pair, characteristic_residual
from .errors import QuadPropError
from .hamiltonians import CATALOG, catalog_model, eval_coefficients
from .oracles import quadrature_plane_wave
from .pdecheck import Grid, central_window, compare_fields, evolve_fd, pde_residual
from .propagator import (
    convergence_sweep,
    model_state_fn,
    operator_wave,
    plane_wave,
    superosc_coefficients,
    superosc_data,
    superosc_sum,
)
from .riccati import COMPONENTS, riccati_integrate, riccati_residuals


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    value: float
    limit: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.suite} {self.name} value={self.value:.3e} limit={self.limit:.3e} {self.detail}".rstrip()


def _bound(suite: str, name: str, value: float, limit: float, detail: str = "") -> CheckResult:
    return CheckResult(suite, name, bool(value <= limit), float(value), float(limit), detail)


def _sample_times(t_max: float, count: int) -> np.ndarray:
    return np.linspace(0.1 * t_max, 0.95 * t_max, count)


def hamiltonian_suite(model: str) -> Iterator[CheckResult]:
    cs = catalog_model(model)
    vals = np.array([eval_coefficients(cs, float(t)) for t in np.linspace(0, cs.t_max, 101)])
    yield _bound("hamiltonians", f"{model}.finite", float(not np.all(np.isfinite(vals))), 0.0)
    yield CheckResult("hamiltonians", f"{model}.a0_nonzero", cs.a(0.0) != 0, abs(cs.a(0.0)), 0.0)


def characteristic_suite(model: str) -> Iterator[CheckResult]:
    cs = catalog_model(model)
    pair = characteristic_pair(cs)
    ts = np.linspace(0.05 * cs.t_max, cs.t_max - 0.01 * cs.t_max, 40)
    worst = max(max(characteristic_residual(pair.mu0, pair.dmu0, cs, float(t)),
                    characteristic_residual(pair.mu1, pair.dmu1, cs, float(t))) / max(1.0, pair.scale)
                for t in ts)
    yield _bound("characteristic", f"{model}.residual", worst, 1e-8)
    ic = max(abs(pair.mu0(0.0)), abs(pair.dmu0(0.0) - 2 * cs.a(0.0)), abs(pair.mu1(0.0) - 1.0), abs(pair.dmu1(0.0)))
    yield _bound("characteristic", f"{model}.initial_conditions", ic, 1e-10)


def riccati_suite(model: str) -> Iterator[CheckResult]:
    cs = catalog_model(model)
    pair = characteristic_pair(cs)
    state_fn = model_state_fn(cs, pair)
    ts = _sample_times(cs.t_max, 10)
    res = max(float(riccati_residuals(state_fn, cs, float(t)).max()) for t in ts)
    yield _bound("riccati", f"{model}.residual", res, 1e-6)
    gap = 0.0
    for t in ts[::3]:
        a, b = state_fn(float(t)), riccati_integrate(cs, float(t), pair=pair)
        gap = max(gap, max(abs(getattr(a, n) - getattr(b, n)) for n in COMPONENTS))
    yield _bound("riccati", f"{model}.closed_vs_ode", gap, 1e-6)


def propagator_suite(model: str) -> Iterator[CheckResult]:
    cs = catalog_model(model)
    pair = characteristic_pair(cs)
    state_fn = model_state_fn(cs, pair)
    init = max(abs(plane_wave(state_fn(1e-4), h, x) - cmath.exp(1j * h * x))
               for x in (-2, -1, 0, 1, 2) for h in (0.5, 1.2))
    yield _bound("propagator", f"{model}.initial_recovery", init, 1e-3)
    t = float(min(0.5, 0.5 * cs.t_max))
    st = state_fn(t)
    quad_gap = abs(plane_wave(st, 1.2, 1.0) - quadrature_plane_wave(st, pair, 1.2, 1.0))
    yield _bound("propagator", f"{model}.quadrature", quad_gap, 1e-6)
    op_gap = max(abs(operator_wave(state_fn(float(s)), 1.2, x).value - plane_wave(state_fn(float(s)), 1.2, x))
                 for s in _sample_times(cs.t_max, 5) for x in (-1.0, 0.5, 2.0))
    yield _bound("propagator", f"{model}.operator_form", op_gap, 1e-8)
    res = pde_residual(lambda x, s: plane_wave(state_fn(s), 1.2, x), cs, 0.5, t, 1e-3)
    yield _bound("propagator", f"{model}.pde_residual", res, 1e-6)
    tab = convergence_sweep(cs, None, 1.2, 1, 1.0, t, [5, 10, 20, 40, 60, 80])
    e = tab.column("err_abs")
    yield CheckResult("propagator", f"{model}.sweep_tail", bool(e[-1] < e[0] and e[-1] <= e[-2] <= e[-3]),
                      float(e[-1]), float(e[0]))


def data_suite() -> Iterator[CheckResult]:
    # each C_k carries its own rounding error, so the sum is only good relative to sum |C_k|
    worst = 0.0
    for n in (1, 7, 40):
        for h in (0.5, 1.2, 2.0):
            ck = superosc_coefficients(n, h)
            worst = max(worst, abs(math.fsum(ck) - 1.0) / math.fsum(np.abs(ck)))
    yield _bound("propagator", "coefficient_sum", worst, 1e-13)
    gap = max(abs(superosc_data(n, 1.2, x) - superosc_sum(n, 1.2, x)) for n in (3, 12, 30) for x in (-1.0, 1.0, 2.5))
    yield _bound("propagator", "cos_form_expansion", gap, 1e-12)
    f100 = abs(superosc_data(100, 1.2, 1.0) - cmath.exp(1.2j))
    yield _bound("propagator", "cos_form_n100", f100, 1e-2)


def pde_suite() -> Iterator[CheckResult]:
    cs = catalog_model("caldirola_kanai")
    state_fn = model_state_fn(cs)

    def exact(x, t):
        return cmath.exp(1.2j * x) if t == 0 else plane_wave(state_fn(t), 1.2, x)

    grid = Grid(-8.0, 8.0, 201)
    fld = evolve_fd(cs, lambda x: exact(x, 0.0), grid, 1.0, 1e-8, exact)
    cmp = compare_fields(fld, lambda x: exact(x, 1.0), central_window(grid))
    yield _bound("pdecheck", "caldirola_kanai.coarse_l2", cmp.l2_rel, 1e-2)


def _guard(suite: str, model: str, gen: Callable[[], Iterator[CheckResult]]) -> Iterator[CheckResult]:
    try:
        yield from gen()
    except QuadPropError as exc:
        yield CheckResult(suite, f"{model}.error", False, math.nan, math.nan, f"{type(exc).__name__}: {exc}")


def run_checks(model: str | None = None) -> list[CheckResult]:
    if model is not None and model not in CATALOG:
        catalog_model(model)  # raises UnknownModel
    models = [model] if model else list(CATALOG)
    out: list[CheckResult] = []
    for m in models:
        for suite, fn in (("hamiltonians", hamiltonian_suite), ("characteristic", characteristic_suite),
                          ("riccati", riccati_suite), ("propagator", propagator_suite)):
            out.extend(_guard(suite, m, lambda fn=fn, m=m: fn(m)))
    out.extend(_guard("propagator", "data", data_suite))
    if model in (None, "caldirola_kanai"):
        out.extend(_guard("pdecheck", "caldirola_kanai", pde_suite))
    return out
