"""Acceptance criteria 1-11, one test each.

Every test prints a single ``[acceptance] criterion N: PASS|FAIL ...`` line
(outside pytest's capture) before asserting.
"""
import cmath
import math
import time

import numpy as np
import pytest

from quadprop.characteristic import (
    characteristic_pair,
    characteristic_residual,
    closed_form_characteristic,
    ince_residual,
)
from quadprop.hamiltonians import CATALOG, catalog_model
from quadprop.oracles import quadrature_plane_wave, quadrature_superposition
from quadprop.pdecheck import Grid, central_window, compare_fields, evolve_fd
from quadprop.propagator import (
    OperatorSpec,
    convergence_sweep,
    default_parity,
    evolve_power_data,
    family_frequency,
    general_operator_form,
    model_state_fn,
    operator_apply_exponential,
    plane_wave,
    plane_wave_solution,
    sample_points,
    special_operator_form,
    superosc_coefficients,
    superosc_data,
    tail_bound,
)
from quadprop.riccati import (
    COMPONENTS,
    check_assumption1,
    handoff_time,
    riccati_closed_form,
    riccati_integrate_grid,
    riccati_residuals,
)

MODELS = list(CATALOG)
RESIDUAL_STEP = 1e-5


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _riccati_grid(cs):
    # 50 times in (t0, T_max]; the last one sits two stencil steps below T_max
    t0 = handoff_time(cs)
    return np.linspace(t0, cs.t_max - 2 * RESIDUAL_STEP, 51)[1:]


def test_criterion_01_riccati_residuals(report):
    start = time.perf_counter()
    worst = {}
    for name in MODELS:
        cs = catalog_model(name)
        pair = characteristic_pair(cs)
        state_fn = model_state_fn(cs, pair)
        worst[name] = max(float(riccati_residuals(state_fn, cs, float(t), RESIDUAL_STEP).max())
                          for t in _riccati_grid(cs))
    elapsed = time.perf_counter() - start
    top = max(worst.values())
    report(1, top <= 1e-6 and elapsed < 5.0,
           f"max residual {top:.2e} (<= 1e-6) over 7 models x 50 times, {elapsed:.2f}s (< 5s)")


def test_criterion_02_path_agreement(report):
    gaps = {}
    for name in MODELS:
        cs = catalog_model(name)
        pair = characteristic_pair(cs)
        ts = _riccati_grid(cs)
        ode = riccati_integrate_grid(cs, ts, tol=1e-10, pair=pair)
        gaps[name] = max(abs(getattr(riccati_closed_form(pair, cs, float(t)), n) - getattr(s, n))
                         for t, s in zip(ts, ode) for n in COMPONENTS)
    top = max(gaps.values())
    report(2, top <= 1e-6, f"max componentwise |closed - ode| {top:.2e} (<= 1e-6); worst {max(gaps, key=gaps.get)}")


def test_criterion_03_characteristic(report):
    residual, ic = 0.0, 0.0
    for name in ("harmonic", "airy", "caldirola_kanai", "modified_caldirola_kanai",
                 "meiler_cordero_suslov", "degenerate_parametric"):
        cs = catalog_model(name)
        pair = closed_form_characteristic(name)
        for t in np.linspace(0.02, 0.98, 50) * cs.t_max:
            residual = max(residual, characteristic_residual(pair.mu0, pair.dmu0, cs, t),
                           characteristic_residual(pair.mu1, pair.dmu1, cs, t))
        ic = max(ic, abs(pair.mu0(0.0)), abs(pair.dmu0(0.0) - 2 * cs.a(0.0)),
                 abs(pair.mu1(0.0) - 1.0), abs(pair.dmu1(0.0)))
    params = CATALOG["degenerate_parametric"].defaults
    lam, om = float(params["lambda"]), float(params["omega"])
    pair = closed_form_characteristic("degenerate_parametric")
    ince = max(max(ince_residual(pair.mu0, pair.dmu0, lam, om, t), ince_residual(pair.mu1, pair.dmu1, lam, om, t))
               for t in np.linspace(0.05, 1.35, 27))
    ok = residual <= 1e-8 and ic <= 1e-10 and ince <= 1e-8
    report(3, ok, f"ODE residual {residual:.2e}, Ince residual {ince:.2e} (<= 1e-8); IC error {ic:.1e} (<= 1e-10)")


def test_criterion_04_initial_condition(report):
    worst = 0.0
    for name in ("harmonic", "caldirola_kanai"):
        cs = catalog_model(name)
        pair = characteristic_pair(cs)
        state = riccati_closed_form(pair, cs, 1e-4)
        for x in (-2, -1, 0, 1, 2):
            for h in (0.5, 1.2):
                worst = max(worst, abs(plane_wave_solution(state, pair, h, x).value - cmath.exp(1j * h * x)))
    report(4, worst <= 1e-3, f"max |phi_h(x, 1e-4) - e^(ihx)| = {worst:.2e} (<= 1e-3)")


def test_criterion_05_quadrature_oracle(report):
    start = time.perf_counter()
    gaps = []
    for name in ("harmonic", "caldirola_kanai"):
        cs = catalog_model(name)
        pair = characteristic_pair(cs)
        state = riccati_closed_form(pair, cs, 0.5)
        direct = plane_wave_solution(state, pair, 1.2, 1.0).value
        gaps.append(abs(direct - quadrature_plane_wave(state, pair, 1.2, 1.0)))
    elapsed = time.perf_counter() - start
    report(5, max(gaps) <= 1e-6 and elapsed < 10,
           f"|closed form - quadrature| harmonic {gaps[0]:.2e}, caldirola_kanai {gaps[1]:.2e} (<= 1e-6), {elapsed:.2f}s")


def test_criterion_06_persistence_sweep(report):
    ns = list(range(5, 101, 5))
    details, ok = [], True
    for name, params in (("caldirola_kanai", {"lambda": 0.1}), ("harmonic", None)):
        e = convergence_sweep(name, params, 1.2, 1, 1.0, 1.0, ns).column("err_abs")
        good = e[-1] < e[0] and e[-3] >= e[-2] >= e[-1]
        ok &= bool(good)
        details.append(f"{name} err_abs n=5 {e[0]:.3e} -> n=100 {e[-1]:.3e}")
    report(6, ok, "; ".join(details))


def test_criterion_07_superoscillating_data(report):
    errs = [abs(superosc_data(n, 1.2, 1.0) - cmath.exp(1.2j)) for n in range(5, 101)]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    report(7, decreasing and errs[-1] < 1e-2,
           f"|F_n(1,1.2) - e^(1.2i)| strictly decreasing on n=5..100: {decreasing}; n=100 value {errs[-1]:.3e} (< 1e-2)")


def test_criterion_08_operator_representation(report):
    rng = np.random.default_rng(20260101)
    worst, bound_ok, points = 0.0, True, 0
    for name in MODELS:
        cs = catalog_model(name)
        pair = characteristic_pair(cs)
        t0 = handoff_time(cs)
        for _ in range(20):
            t = float(rng.uniform(t0, cs.t_max))
            x = float(rng.uniform(-3, 3))
            state = riccati_closed_form(pair, cs, t)
            direct = plane_wave(state, 1.2, x)
            scale = max(1.0, abs(direct))
            for form in (general_operator_form(state, 1.2), special_operator_form(state, 1.2)):
                worst = max(worst, abs(form.evaluate(x) - direct) / scale)
                for m in (5, 10, 20):
                    spec = OperatorSpec(form.spec.lambda_t, 2, m)
                    tr, cl = operator_apply_exponential(spec, form.q, x)
                    bound_ok &= abs(tr - cl) <= tail_bound(spec, form.q) + 1e-15 * (abs(tr) + abs(cl))
            points += 1
    report(8, worst <= 1e-8 and bound_ok,
           f"max |operator - direct| / max(1,|phi|) = {worst:.2e} (<= 1e-8) at {points} points; "
           f"tail bound M=5,10,20 holds: {bound_ok}")


def test_criterion_09_power_families(report):
    cs = catalog_model("harmonic")
    pair = characteristic_pair(cs)
    state_fn = model_state_fn(cs, pair)
    state = state_fn(0.5)
    gap, tails = 0.0, []
    for p in (2, 3):
        parity = default_parity(p)
        for n in range(1, 9):
            direct = quadrature_superposition(state, pair, superosc_coefficients(n, 1.2),
                                              [family_frequency(hk, p, parity) for hk in sample_points(n)], 1.0)
            gap = max(gap, abs(evolve_power_data(state_fn, pair, n, 1.2, p, 1.0, 0.5).value - direct))
        e = convergence_sweep(cs, None, 1.2, p, 1.0, 0.5, list(range(4, 65, 4))).column("err_abs")
        tails.append(bool(e[-3] >= e[-2] >= e[-1]))
    report(9, gap <= 1e-6 and all(tails),
           f"max |superposition - quadrature| n<=8 = {gap:.2e} (<= 1e-6); last-three non-increasing p=2,3: {tails}")


def test_criterion_10_pde_oracle(report):
    start = time.perf_counter()
    cs = catalog_model("caldirola_kanai", {"lambda": 0.1})
    state_fn = model_state_fn(cs)

    def exact(x, t):
        return cmath.exp(1.2j * x) if t == 0 else plane_wave(state_fn(t), 1.2, x)

    def run(n_points, tol):
        grid = Grid(-8.0, 8.0, n_points)
        fld = evolve_fd(cs, lambda x: exact(x, 0.0), grid, 1.0, tol, exact)
        return compare_fields(fld, lambda x: exact(x, 1.0), central_window(grid)).l2_rel

    main = run(801, 1e-8)
    # refinement with the time error pushed well below the spatial error
    errs = [run(n, 1e-10) for n in (201, 401, 801)]
    ratios = [a / b for a, b in zip(errs, errs[1:])]
    elapsed = time.perf_counter() - start
    ok = main < 1e-2 and min(ratios) >= 8 and elapsed < 60
    report(10, ok, f"l2_rel on [-4,4] {main:.2e} (< 1e-2); refinement ratios "
                   f"{', '.join(f'{r:.1f}' for r in ratios)} (>= 8); {elapsed:.1f}s (< 60s)")


def test_criterion_11_assumption(report):
    reps = {}
    for name in ("harmonic", "caldirola_kanai"):
        cs = catalog_model(name)
        reps[name] = check_assumption1(cs, 1.2, 1.0, 101)
    ok = all(r.bounded and r.samples == 101 and not r.skipped and math.isfinite(r.max_abs_rho) for r in reps.values())
    report(11, ok, "; ".join(f"{k} max|rho| {r.max_abs_rho:.3f}" for k, r in reps.items()) + " (finite, 101 samples)")
