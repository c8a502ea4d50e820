"""Green kernel, plane-wave solutions, superoscillating data and their evolution.

A plane wave e^{i nu x} evolves under the quadratic Hamiltonian into

    phi_nu(x, t) = (2 mu0 gamma)^{-1/2}
                   exp(i [alpha x^2 + delta x + kappa - (beta x + eps + nu)^2 / (4 gamma)])

which is what the Gaussian integral of the kernel against e^{i nu y} gives.
Superoscillating data are finite sums of such plane waves, so their evolution
is the same finite sum of phi's.
"""
from __future__ import annotations

import cmath
import decimal
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .characteristic import CharacteristicPair, characteristic_pair
from .errors import (
    Caustic,
    GaussianConditionViolated,
    NonConvergence,
    OutOfRange,
    ParityMismatch,
    Singularity,
    TailBoundExceeded,
)
from .hamiltonians import CoefficientSet, catalog_model
from .riccati import CAUSTIC_EPS, RiccatiState, riccati_closed_form

DEFAULT_N_CAP = 150
SERIES_TARGET = 1e-17
SERIES_MAX_TERMS = 4000

FORMULAS = ("kernel_integral", "plane_wave", "superposition", "operator_series", "corollary1_special")
PARITIES = ("cos_form", "even_power", "odd_power")


@dataclass(frozen=True)
class WaveSample:
    x: float
    t: float
    value: complex
    formula: str
    # max_k |C_k phi_k| / |psi_n| for superpositions; 1 otherwise
    precision_loss: float = 1.0

    def __post_init__(self):
        if self.formula not in FORMULAS:
            raise ValueError(f"unknown formula tag {self.formula!r}")
        if not cmath.isfinite(self.value):
            raise ValueError("non-finite wave value")


@dataclass(frozen=True)
class OperatorSpec:
    """U = sum_m lambda^m / m! d^{p m}, truncated after max_terms."""

    lambda_t: complex
    p: int = 2
    max_terms: int = 40

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.p < 1:
            raise ValueError("p must be >= 1")


@dataclass(frozen=True)
class SweepRow:
    n: int
    x: float
    t: float
    psi_n: complex
    phi_h: complex
    precision_loss: float = 1.0

    @property
    def err_re(self) -> float:
        return self.psi_n.real - self.phi_h.real

    @property
    def err_im(self) -> float:
        return self.psi_n.imag - self.phi_h.imag

    @property
    def err_abs(self) -> float:
        return abs(self.psi_n - self.phi_h)


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ns = [r.n for r in self.rows]
        if ns != sorted(ns):
            raise ValueError("sweep rows must be sorted by n")

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])


# -- branch-tracked square roots ------------------------------------------------

def kernel_prefactor(state: RiccatiState, mu0: float | None = None) -> complex:
    """(2 pi i mu0)^{-1/2}, continued through sign changes of mu0.

    Each zero of mu0 passed on (0, t] shifts the phase by -pi/2.
    """
    mu0 = state.mu0 if mu0 is None else mu0
    if mu0 == 0.0:
        raise Caustic(f"mu0 vanishes at t={state.t}")
    # sign of mu0 just after t = 0 (same as a(0)); the argument of i*mu0 rotates
    # by a further pi at every caustic
    s0 = 1.0 if (mu0 > 0) == (state.kernel_turns % 2 == 0) else -1.0
    arg = s0 * (math.pi / 2 + math.pi * state.kernel_turns)
    return (2 * math.pi * abs(mu0)) ** -0.5 * cmath.exp(-0.5j * arg)


def focal_prefactor(state: RiccatiState) -> complex:
    """(2 mu0 gamma)^{-1/2}; equals 1 at t = 0 and turns by -pi/2 per zero."""
    q = 2 * state.mu0 * state.gamma
    if abs(q) < CAUSTIC_EPS:
        raise Caustic(f"2 mu0 gamma = {q:.3e} at t={state.t}")
    if isinstance(q, complex) or state.focal_turns == 0 and q < 0:
        return complex(q) ** -0.5
    return abs(q) ** -0.5 * cmath.exp(-0.5j * math.pi * state.focal_turns)


# -- kernel and plane waves --------------------------------------------------------

def green_kernel(state: RiccatiState, pair: CharacteristicPair, x: float, y: float) -> complex:
    """G(x, y, t) with mu taken as mu0(t)."""
    s = state
    mu0 = pair.mu0(s.t)
    if abs(mu0) < CAUSTIC_EPS * pair.scale:
        raise Caustic(f"mu0({s.t}) = {mu0:.3e}")
    phase = s.alpha * x * x + s.beta * x * y + s.gamma * y * y + s.delta * x + s.epsilon * y + s.kappa
    return kernel_prefactor(s, mu0) * cmath.exp(1j * phase)


def _check_gamma(state: RiccatiState) -> None:
    g = state.gamma
    if isinstance(g, complex) and g.imag > 0:
        raise GaussianConditionViolated(f"Im(gamma) = {g.imag:.3e} > 0")
    if g == 0:
        raise Caustic(f"gamma vanishes at t={state.t}")


def plane_wave(state: RiccatiState, nu: float, x: float) -> complex:
    """Evolution of e^{i nu x} to time state.t."""
    _check_gamma(state)
    s = state
    lin = s.beta * x + s.epsilon + nu
    phase = s.alpha * x * x + s.delta * x + s.kappa - lin * lin / (4 * s.gamma)
    return focal_prefactor(s) * cmath.exp(1j * phase)


def plane_wave_solution(state: RiccatiState, pair: CharacteristicPair, h: float, x: float) -> WaveSample:
    mu0 = pair.mu0(state.t)
    if abs(mu0) < CAUSTIC_EPS * pair.scale:
        raise Caustic(f"mu0({state.t}) = {mu0:.3e}")
    return WaveSample(x, state.t, plane_wave(state, h, x), "plane_wave")


def model_state_fn(cs: CoefficientSet, pair: CharacteristicPair | None = None) -> Callable[[float], RiccatiState]:
    """Memoized t -> closed-form RiccatiState for one model."""
    pair = pair or characteristic_pair(cs)

    @lru_cache(maxsize=4096)
    def state_fn(t: float) -> RiccatiState:
        return riccati_closed_form(pair, cs, float(t))

    state_fn.pair = pair
    return state_fn


# -- superoscillating data -----------------------------------------------------------

def superosc_coefficient(n: int, k: int, h: float) -> float:
    """C_k(n, h) = binom(n, k) ((1+h)/2)^{n-k} ((1-h)/2)^k, via logarithms."""
    if n < 1 or not 0 <= k <= n:
        raise OutOfRange(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    p, q = (1 + h) / 2, (1 - h) / 2
    if (p == 0 and n - k > 0) or (q == 0 and k > 0):
        return 0.0
    log_mag = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    if n - k:
        log_mag += (n - k) * math.log(abs(p))
    if k:
        log_mag += k * math.log(abs(q))
    sign = (-1 if p < 0 and (n - k) % 2 else 1) * (-1 if q < 0 and k % 2 else 1)
    return sign * math.exp(log_mag)


def superosc_coefficients(n: int, h: float) -> np.ndarray:
    return np.array([superosc_coefficient(n, k, h) for k in range(n + 1)])


def sample_points(n: int) -> np.ndarray:
    """h_k = 1 - 2k/n."""
    return 1.0 - 2.0 * np.arange(n + 1) / n


def family_frequency(hk: float, p: int, parity: str) -> float:
    """Plane-wave frequency nu of the k-th term: e^{i nu x}."""
    if parity == "cos_form":
        if p != 1:
            raise ParityMismatch("cos_form is the p = 1 family")
        return hk
    if parity == "even_power":
        if p % 2:
            raise ParityMismatch(f"even_power needs even p, got {p}")
        # (-i h)^p = (-1)^{p/2} h^p
        return (-1) ** (p // 2) * hk**p
    if parity == "odd_power":
        if p % 2 == 0:
            raise ParityMismatch(f"odd_power needs odd p, got {p}")
        return -(hk**p)
    raise ParityMismatch(f"unknown parity {parity!r}")


def default_parity(p: int) -> str:
    if p == 1:
        return "cos_form"
    return "even_power" if p % 2 == 0 else "odd_power"


def csum(values: Sequence[complex]) -> complex:
    """Correctly rounded sum of real and imaginary parts separately."""
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def superosc_data(n: int, h: float, x: float, p: int = 1, parity: str | None = None) -> complex:
    """F_n (cos_form) or the power families Y_n (even p) and Z_n (odd p)."""
    parity = parity or default_parity(p)
    if parity == "cos_form":
        family_frequency(1.0, p, parity)
        return (math.cos(x / n) + 1j * h * math.sin(x / n)) ** n
    cks = superosc_coefficients(n, h)
    return csum([c * cmath.exp(1j * family_frequency(hk, p, parity) * x)
                 for c, hk in zip(cks, sample_points(n))])


def superosc_sum(n: int, h: float, x: float) -> complex:
    """F_n expanded as sum_k C_k e^{i x (1 - 2k/n)}."""
    cks = superosc_coefficients(n, h)
    return csum([c * cmath.exp(1j * hk * x) for c, hk in zip(cks, sample_points(n))])


def _superpose(state: RiccatiState, n: int, h: float, x: float, p: int, parity: str) -> tuple[complex, float]:
    cks = superosc_coefficients(n, h)
    terms = [c * plane_wave(state, family_frequency(hk, p, parity), x)
             for c, hk in zip(cks, sample_points(n)) if c != 0.0]
    total = csum(terms)
    biggest = max(abs(v) for v in terms)
    loss = biggest / abs(total) if total != 0 else math.inf
    return total, loss


def _check_n(n: int, n_cap: int) -> None:
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    if n > n_cap:
        raise OutOfRange(f"n={n} exceeds the cap {n_cap}; double precision cannot resolve the cancellation")


def evolve_superposition(
    state_fn: Callable[[float], RiccatiState],
    pair: CharacteristicPair,
    n: int,
    h: float,
    x: float,
    t: float,
    n_cap: int = DEFAULT_N_CAP,
) -> WaveSample:
    """psi_n(x, t) = sum_k C_k(n, h) phi_{1-2k/n}(x, t)."""
    _check_n(n, n_cap)
    state = state_fn(t)
    mu0 = pair.mu0(t)
    if abs(mu0) < CAUSTIC_EPS * pair.scale:
        raise Caustic(f"mu0({t}) = {mu0:.3e}")
    value, loss = _superpose(state, n, h, x, 1, "cos_form")
    return WaveSample(x, t, value, "superposition", loss)


def evolve_power_data(
    state_fn: Callable[[float], RiccatiState],
    pair: CharacteristicPair,
    n: int,
    h: float,
    p: int,
    x: float,
    t: float,
    n_cap: int = DEFAULT_N_CAP,
) -> WaveSample:
    """Evolution of Y_n (even p) or Z_n (odd p): each term e^{i nu_k y} becomes phi_{nu_k}."""
    if p < 2:
        raise ParityMismatch("power families need p >= 2")
    _check_n(n, n_cap)
    state = state_fn(t)
    if abs(pair.mu0(t)) < CAUSTIC_EPS * pair.scale:
        raise Caustic(f"mu0({t}) vanishes")
    value, loss = _superpose(state, n, h, x, p, default_parity(p))
    return WaveSample(x, t, value, "superposition", loss)


# -- exponential operator series ------------------------------------------------------

def _series_terms_needed(z_abs: float, target: float = SERIES_TARGET) -> int:
    """Smallest M with |z|^{M+1}/(M+1)! e^{|z|} below target * max(1, e^{-|z|})."""
    log_target = math.log(target)
    m = 0
    while m < SERIES_MAX_TERMS:
        if z_abs == 0:
            return 1
        log_tail = (m + 1) * math.log(z_abs) - math.lgamma(m + 2) + z_abs
        if log_tail < log_target - z_abs and m >= 1:
            return m
        m += 1
    raise NonConvergence(f"|z|={z_abs} needs more than {SERIES_MAX_TERMS} series terms")


def tail_bound(spec: OperatorSpec, q: complex) -> float:
    """Remainder bound |z|^{M+1}/(M+1)! e^{|z|} for z = lambda (iq)^p and M = max_terms."""
    z_abs = abs(spec.lambda_t * (1j * q) ** spec.p)
    m = spec.max_terms
    if z_abs == 0:
        return 0.0
    return math.exp((m + 1) * math.log(z_abs) - math.lgamma(m + 2) + z_abs)


def _exp_partial_sum(z: complex, m_max: int) -> complex:
    """sum_{m<=M} z^m/m! in extended decimal precision.

    For large |z| the terms grow to about e^{|z|} before cancelling; carrying
    enough extra digits keeps the partial sum accurate to double precision.
    """
    digits = 34 + int(abs(z) / math.log(10)) + 1
    ctx = decimal.Context(prec=digits)
    zr, zi = ctx.create_decimal(z.real), ctx.create_decimal(z.imag)
    tr, ti = ctx.create_decimal(1), ctx.create_decimal(0)
    sr, si = tr, ti
    for m in range(1, m_max + 1):
        tr, ti = (
            ctx.divide(ctx.subtract(ctx.multiply(tr, zr), ctx.multiply(ti, zi)), m),
            ctx.divide(ctx.add(ctx.multiply(tr, zi), ctx.multiply(ti, zr)), m),
        )
        sr, si = ctx.add(sr, tr), ctx.add(si, ti)
    return complex(float(sr), float(si))


def operator_apply_exponential(spec: OperatorSpec, q: complex, x: float) -> tuple[complex, complex]:
    """Apply the truncated series U to e^{i q x}.

    Returns (truncated, closed) with closed = e^{lambda (iq)^p} e^{iqx}.
    """
    z = spec.lambda_t * (1j * q) ** spec.p
    base = cmath.exp(1j * q * x)
    truncated = _exp_partial_sum(complex(z), spec.max_terms) * base
    closed = cmath.exp(z) * base
    bound = tail_bound(spec, q) * abs(base)
    # the partial sum is rounded once to double precision at the end
    allowance = bound + 4 * np.finfo(float).eps * (abs(truncated) + abs(closed))
    if abs(truncated - closed) > allowance:
        raise TailBoundExceeded(f"|truncated - closed| = {abs(truncated - closed):.3e} > {allowance:.3e}")
    return truncated, closed


@dataclass(frozen=True)
class OperatorForm:
    """phi = prefactor * e^{i chirp x^2} * U[e^{i q x}] with U's coefficient lam."""

    prefactor: complex
    chirp: float
    q: complex
    spec: OperatorSpec

    def evaluate(self, x: float) -> complex:
        truncated, _ = operator_apply_exponential(self.spec, self.q, x)
        return self.prefactor * cmath.exp(1j * self.chirp * x * x) * truncated


def _with_terms(lam: complex, q: complex, max_terms: int | None) -> OperatorSpec:
    if max_terms is None:
        max_terms = _series_terms_needed(abs(lam * q * q))
    return OperatorSpec(lam, 2, max_terms)


def general_operator_form(state: RiccatiState, nu: float, max_terms: int | None = None) -> OperatorForm:
    """General operator representation of phi_nu, valid for nonzero f, g."""
    _check_gamma(state)
    s = state
    shift = nu + s.epsilon
    den = 2 * s.delta * s.gamma - s.beta * shift
    if den == 0:
        raise Singularity("operator representation needs 2 delta gamma != beta (nu + eps)")
    q = den / (2 * s.gamma)
    lam = 1j * s.gamma * (shift * shift - 4 * s.kappa * s.gamma) / (den * den)
    chirp = (4 * s.alpha * s.gamma - s.beta**2) / (4 * s.gamma)
    return OperatorForm(focal_prefactor(s), chirp, q, _with_terms(lam, q, max_terms))


def special_operator_form(state: RiccatiState, nu: float, max_terms: int | None = None) -> OperatorForm:
    """Operator representation for f = g = 0, coefficient i gamma mu0^2 / w^2."""
    _check_gamma(state)
    s = state
    if s.delta or s.epsilon or s.kappa:
        raise Singularity("the special representation assumes delta = eps = kappa = 0")
    if nu == 0:
        raise Singularity("nu = 0 has no exponential to act on")
    lam = 1j * s.gamma * s.mu0**2 / s.w**2
    q = -s.beta * nu / (2 * s.gamma)
    chirp = (4 * s.alpha * s.gamma - s.beta**2) / (4 * s.gamma)
    return OperatorForm(focal_prefactor(s), chirp, q, _with_terms(lam, q, max_terms))


def operator_wave(state: RiccatiState, nu: float, x: float, special: bool | None = None) -> WaveSample:
    if special is None:
        special = state.delta == 0 and state.epsilon == 0 and state.kappa == 0
    form = special_operator_form(state, nu) if special else general_operator_form(state, nu)
    tag = "corollary1_special" if special else "operator_series"
    return WaveSample(x, state.t, form.evaluate(x), tag)


def power_limit(state: RiccatiState, h: float, p: int, x: float) -> WaveSample:
    """Limit of the evolved power family as n grows: the operator applied with
    the h-form coefficient, i.e. phi_nu at nu = nu(h)."""
    nu = family_frequency(h, p, default_parity(p))
    return operator_wave(state, nu, x)


# -- sweeps ---------------------------------------------------------------------------

def convergence_sweep(
    model: str | CoefficientSet,
    params: dict | None,
    h: float,
    p: int,
    x: float,
    t: float,
    n_list: Sequence[int],
    n_cap: int = DEFAULT_N_CAP,
) -> SweepTable:
    """Error of psi_n against its limit for each n.

    t = 0 compares the data themselves with e^{i nu(h) x} (no evolution).
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise OutOfRange("n_list is empty")
    if n_list != sorted(n_list) or len(set(n_list)) != len(n_list):
        raise OutOfRange("n_list must be strictly ascending")
    for n in n_list:
        _check_n(n, n_cap)
    parity = default_parity(p)
    cs = model if isinstance(model, CoefficientSet) else catalog_model(model, params)
    rows = []
    if t == 0:
        target = cmath.exp(1j * family_frequency(h, p, parity) * x)
        for n in n_list:
            rows.append(SweepRow(n, x, 0.0, superosc_data(n, h, x, p, parity), target))
    else:
        pair = characteristic_pair(cs)
        state_fn = model_state_fn(cs, pair)
        state = state_fn(t)
        if p == 1:
            target = plane_wave_solution(state, pair, h, x).value
        else:
            target = plane_wave(state, family_frequency(h, p, parity), x)
        for n in n_list:
            if p == 1:
                ws = evolve_superposition(state_fn, pair, n, h, x, t, n_cap)
            else:
                ws = evolve_power_data(state_fn, pair, n, h, p, x, t, n_cap)
            rows.append(SweepRow(n, x, t, ws.value, target, ws.precision_loss))
    meta = {"model": cs.name, "params": dict(cs.params), "h": h, "p": p}
    return SweepTable(tuple(rows), meta)
