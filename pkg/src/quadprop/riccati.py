"""The six kernel functions alpha..kappa of the Riccati-type system

    alpha' + b + 2c alpha + 4a alpha^2 = 0
    beta'  + (c + 4a alpha) beta = 0
    gamma' + a beta^2 = 0
    delta' + (c + 4a alpha) delta = f + 2 alpha g
    eps'   = (g - 2a delta) beta
    kappa' = g delta - a delta^2

evaluated in closed form from the characteristic pair, or by integrating the
system directly from a small handoff time.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad, solve_ivp

from .characteristic import CharacteristicPair, characteristic_pair
from .errors import (
    AllSamplesCaustic,
    AmbiguousClosedForm,
    Caustic,
    IntegrationFailure,
    OutOfDomain,
    QuadratureFailure,
)
from .hamiltonians import CoefficientSet
from .numerics import d1

CAUSTIC_EPS = 1e-8
QUAD_EPSABS = 1e-10
QUAD_LIMIT = 200
COMPONENTS = ("alpha", "beta", "gamma", "delta", "epsilon", "kappa")


@dataclass(frozen=True)
class RiccatiState:
    t: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    kappa: float
    w: float
    source: str
    # sign changes of mu0 and of 2 mu0 gamma on (0, t]; 0 before the first caustic
    kernel_turns: int = 0
    focal_turns: int = 0

    @property
    def mu0(self) -> float:
        """mu0(t) recovered from beta = -w / mu0."""
        return -self.w / self.beta

    def components(self) -> tuple[float, ...]:
        return tuple(getattr(self, n) for n in COMPONENTS)


@dataclass(frozen=True)
class BoundReport:
    max_abs_rho: float
    argmax_t: float
    samples: int
    bounded: bool
    skipped: tuple[float, ...] = field(default=())


def _quad(fn: Callable, lo: float, hi: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(fn, lo, hi, epsabs=QUAD_EPSABS, epsrel=1e-12, limit=QUAD_LIMIT)
        except IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from exc
    if not math.isfinite(value):
        raise QuadratureFailure("non-finite integral")
    return value


def weight(cs: CoefficientSet, t: float) -> float:
    """w(t) = exp(-int_0^t (c - 2d) ds)."""
    if cs.weight is not None:
        return float(cs.weight(t))
    if cs.is_zero("c") and cs.is_zero("d"):
        return 1.0
    return math.exp(-_quad(lambda s: cs.c(s) - 2 * cs.d(s), 0.0, t))


def _linear_terms(pair: CharacteristicPair, cs: CoefficientSet, t: float) -> tuple[float, float, float, float]:
    """(w, delta, epsilon, kappa) at t for a forced model.

    The running integrals L = int (c - 2d), I = int [(f - d g/a) mu0 + g mu0'/(2a)] / w,
    and the epsilon, kappa quadratures are advanced together in one pass, with
    delta = w I / mu0 (its limit g(0)/(2a(0)) at s = 0).
    """

    def delta_of(s, log_w, integral):
        if s == 0.0:
            return _delta_at_zero(cs)
        return math.exp(-log_w) * integral / pair.mu0(s)

    def rhs(s, y):
        log_w, integral, _, _ = y
        a, _, c, d, f, g = cs.values(s)
        w = math.exp(-log_w)
        dl = delta_of(s, log_w, integral)
        beta = -w / pair.mu0(s) if s > 0 else 0.0
        rate_i = ((f - d * g / a) * pair.mu0(s) + g * pair.dmu0(s) / (2 * a)) / w
        return [c - 2 * d, rate_i, (g - 2 * a * dl) * beta, g * dl - a * dl * dl]

    sol = solve_ivp(rhs, (0.0, t), [0.0, 0.0, -_delta_at_zero(cs), 0.0], method="RK45",
                    rtol=1e-12, atol=QUAD_EPSABS * 1e-2)
    if not sol.success:
        raise QuadratureFailure(sol.message)
    log_w, integral, eps, kappa = sol.y[:, -1]
    return math.exp(-log_w), delta_of(t, log_w, integral), eps, kappa


def _delta_at_zero(cs: CoefficientSet) -> float:
    return cs.g(0.0) / (2 * cs.a(0.0))


def riccati_closed_form(
    pair: CharacteristicPair,
    cs: CoefficientSet,
    t: float,
    caustic_eps: float = CAUSTIC_EPS,
    eps_kappa: str = "quadrature",
) -> RiccatiState:
    """alpha, beta, gamma, delta in closed form from (mu0, mu1).

    epsilon and kappa vanish identically when f = g = 0. Otherwise they are
    obtained by quadrature of their own equations on top of the closed-form
    delta and beta (``eps_kappa="quadrature"``); requesting the printed
    closed forms (``eps_kappa="printed"``) raises AmbiguousClosedForm.
    """
    if not 0.0 < t <= cs.t_max:
        raise OutOfDomain(f"t={t} outside (0, {cs.t_max}]")
    mu0 = pair.mu0(t)
    if abs(mu0) < caustic_eps * pair.scale:
        raise Caustic(f"mu0({t}) = {mu0:.3e}")
    a, _, _, d, _, _ = cs.values(t)
    a0, d0 = cs.a(0.0), cs.d(0.0)
    w = weight(cs, t)
    mu10 = pair.mu1(0.0)
    alpha = pair.dmu0(t) / (4 * a * mu0) - d / (2 * a)
    beta = -w / mu0
    gamma = d0 / (2 * a0) + pair.mu1(t) / (2 * mu10 * mu0)
    if cs.homogeneous:
        delta = epsilon = kappa = 0.0
    else:
        if eps_kappa == "printed":
            raise AmbiguousClosedForm(
                "the printed epsilon/kappa closed forms use an undefined delta_0; "
                "use eps_kappa='quadrature'"
            )
        w, delta, epsilon, kappa = _linear_terms(pair, cs, t)
        beta = -w / mu0

    alpha, beta, gamma, delta, epsilon, kappa, w = map(
        float, (alpha, beta, gamma, delta, epsilon, kappa, w))
    return RiccatiState(
        t=t, alpha=alpha, beta=beta, gamma=gamma, delta=delta, epsilon=epsilon, kappa=kappa,
        w=w, source="closed_form",
        kernel_turns=pair.turns(t), focal_turns=pair.turns(t, d0 / a0, "focal"),
    )


def riccati_rhs(cs: CoefficientSet) -> Callable:
    """Right-hand side for (alpha, beta, gamma, delta, epsilon, kappa, w)."""

    def rhs(t, y):
        al, be, ga, de, ep, ka, w = y
        a, b, c, d, f, g = cs.values(t)
        damp = c + 4 * a * al
        return np.array([
            -b - 2 * c * al - 4 * a * al * al,
            -damp * be,
            -a * be * be,
            f + 2 * al * g - damp * de,
            (g - 2 * a * de) * be,
            g * de - a * de * de,
            -(c - 2 * d) * w,
        ])

    return rhs


def handoff_time(cs: CoefficientSet) -> float:
    return max(1e-6, 1e-3 * cs.t_max)


def riccati_integrate_grid(
    cs: CoefficientSet,
    ts,
    tol: float = 1e-10,
    pair: CharacteristicPair | None = None,
    t0: float | None = None,
) -> list[RiccatiState]:
    """One integration of the Riccati system, reported at every time in ``ts``.

    Initial data at the handoff time t0 come from the closed forms, since
    alpha ~ 1/(4 a(0) t) is singular at t = 0. Times must be ascending and
    not earlier than t0.
    """
    ts = [float(t) for t in ts]
    if not ts:
        return []
    if ts != sorted(ts):
        raise OutOfDomain("times must be ascending")
    if not (0.0 < ts[0] and ts[-1] <= cs.t_max):
        raise OutOfDomain(f"times outside (0, {cs.t_max}]")
    pair = pair or characteristic_pair(cs)
    t0 = handoff_time(cs) if t0 is None else t0
    if ts[0] < t0:
        raise OutOfDomain(f"t={ts[0]} precedes the handoff time {t0}")
    start = riccati_closed_form(pair, cs, t0)
    if ts[-1] == t0:
        return [start] * len(ts)
    y0 = [*start.components(), start.w]
    sol = solve_ivp(riccati_rhs(cs), (t0, ts[-1]), y0, method="RK45", rtol=tol, atol=tol, t_eval=ts)
    if not sol.success:
        if "step size" in sol.message:
            raise Caustic(f"Riccati solution diverges before t={ts[-1]}: {sol.message}")
        raise IntegrationFailure(sol.message)
    if not np.all(np.isfinite(sol.y)):
        raise Caustic(f"non-finite Riccati state before t={ts[-1]}")
    return [start if t == t0 else RiccatiState(t, *map(float, sol.y[:, i]), source="ode")
            for i, t in enumerate(ts)]


def riccati_integrate(
    cs: CoefficientSet,
    t: float,
    tol: float = 1e-10,
    pair: CharacteristicPair | None = None,
    t0: float | None = None,
) -> RiccatiState:
    """Integrate the Riccati system from the handoff time t0 up to t."""
    if not 0.0 < t <= cs.t_max:
        raise OutOfDomain(f"t={t} outside (0, {cs.t_max}]")
    return riccati_integrate_grid(cs, [t], tol, pair, t0)[0]


def riccati_residuals(
    state_fn: Callable[[float], RiccatiState], cs: CoefficientSet, t: float, step: float = 1e-5
) -> np.ndarray:
    """Residuals of the six Riccati equations, derivatives by 4th-order differences."""
    s = state_fn(t)
    al, be, ga, de, ep, ka = s.components()
    dal, dbe, dga, dde, dep, dka = (
        d1(lambda u, n=n: getattr(state_fn(u), n), t, step) for n in COMPONENTS
    )
    a, b, c, d, f, g = cs.values(t)
    damp = c + 4 * a * al
    return np.abs(np.array([
        dal + b + 2 * c * al + 4 * a * al * al,
        dbe + damp * be,
        dga + a * be * be,
        dde + damp * de - f - 2 * al * g,
        dep - (g - 2 * a * de) * be,
        dka - g * de + a * de * de,
    ]))


def assumption_rho(state: RiccatiState, h: float) -> complex:
    """Coefficient of the exponential-operator representation of phi_h.

    i gamma ((eps + h)^2 - 4 kappa gamma) / (2 delta gamma - beta (h + eps))^2,
    which reduces to i gamma / beta^2 when f = g = 0.
    """
    s = state
    num = 1j * s.gamma * ((s.epsilon + h) ** 2 - 4 * s.kappa * s.gamma)
    den = (2 * s.delta * s.gamma - s.beta * (h + s.epsilon)) ** 2
    return num / den


def printed_rho(state: RiccatiState, h: float) -> complex:
    """The bounded-function condition exactly as printed (agrees with
    :func:`assumption_rho` when delta = epsilon = kappa = 0)."""
    s = state
    num = 1j * s.gamma * (h * h - s.epsilon**2 - 4 * s.kappa * s.gamma * h - 2 * s.epsilon * h)
    return num / (2 * s.delta * s.gamma + s.beta * h + s.beta * s.epsilon) ** 2


def check_assumption1(
    cs: CoefficientSet,
    h: float,
    T: float,
    n_samples: int = 101,
    pair: CharacteristicPair | None = None,
) -> BoundReport:
    """Sample |rho(t)| on the uniform grid T*i/n_samples, i = 1..n_samples."""
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    if not 0 < T <= cs.t_max:
        raise OutOfDomain(f"T={T} outside (0, {cs.t_max}]")
    pair = pair or characteristic_pair(cs)
    best, best_t, finite, skipped, used = 0.0, float("nan"), True, [], 0
    for i in range(1, n_samples + 1):
        t = T * i / n_samples
        try:
            state = riccati_closed_form(pair, cs, t)
        except Caustic:
            skipped.append(t)
            continue
        try:
            mag = abs(assumption_rho(state, h))
        except ZeroDivisionError:
            mag = math.inf
        used += 1
        if not math.isfinite(mag):
            finite = False
            continue
        if mag >= best:
            best, best_t = mag, t
    if used == 0:
        raise AllSamplesCaustic(f"every sample of (0, {T}] is at a caustic")
    return BoundReport(best, best_t, n_samples, finite, tuple(skipped))
