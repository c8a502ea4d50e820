"""Fundamental pair mu0, mu1 of mu'' - tau(t) mu' + 4 sigma(t) mu = 0.

Normalization throughout: mu0(0) = 0, mu0'(0) = 2 a(0), mu1'(0) = 0 and
mu1(0) = 1 unless a closed form fixes another nonzero value. Printed pairs
that violate this are rescaled; the verbatim printed formulas are kept in
:func:`printed_characteristic` for comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import NoClosedForm, Singularity, UnknownModel
from .hamiltonians import CATALOG, CoefficientSet, catalog_model, characteristic_coefficients
from .numerics import d1, d2, integrate_dense, sign_changes
from .special import bessel_I, bessel_series, gamma

SCALE_SAMPLES = 401


@dataclass(frozen=True)
class CharacteristicPair:
    mu0: Callable[[float], float]
    mu1: Callable[[float], float]
    dmu0: Callable[[float], float]
    dmu1: Callable[[float], float]
    source: str
    valid_interval: tuple[float, float]
    notes: tuple[str, ...] = ()
    scale: float = field(default=0.0, compare=False)
    _samples: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        ts = np.linspace(*self.valid_interval, SCALE_SAMPLES)
        m0 = np.array([self.mu0(float(t)) for t in ts])
        m1 = np.array([self.mu1(float(t)) for t in ts])
        object.__setattr__(self, "_samples", (ts, m0, m1))
        if self.scale == 0.0:
            object.__setattr__(self, "scale", float(np.max(np.abs(m0))))

    def wronskian(self, t: float) -> float:
        return self.dmu0(t) * self.mu1(t) - self.mu0(t) * self.dmu1(t)

    def turns(self, t: float, mix: float = 0.0, which: str = "mu0") -> int:
        """Sign changes on (0, t] of mu0 (``which="mu0"``) or of
        mix*mu0 + mu1/mu1(0) (``which="focal"``), from the sampled grid.

        Used only to pick a continuous square-root branch past caustics.
        """
        ts, m0, m1 = self._samples
        vals = m0 if which == "mu0" else mix * m0 + m1 / m1[0]
        keep = (ts > 0) & (ts <= t)
        return sign_changes(np.append(vals[keep], self.mu0(t) if which == "mu0" else
                                      mix * self.mu0(t) + self.mu1(t) / m1[0]))


# closed forms: (mu0, dmu0, mu1, dmu1, notes), normalized as described above


def _cf_harmonic(p, cs):
    b = cs.b(0.0)
    nu = 2 * math.sqrt(0.5 * b)
    if p["variant"] == "printed":
        return (
            math.sin, math.cos,
            lambda t: 0.5 * math.cos(t), lambda t: -0.5 * math.sin(t),
            (),
        )
    return (
        lambda t: math.sin(nu * t) / nu,
        lambda t: math.cos(nu * t),
        lambda t: math.cos(nu * t),
        lambda t: -nu * math.sin(nu * t),
        ("printed pair sin t, cos t/2 solves b=1/2, not b=1; use variant='printed' for it",),
    )


def _cf_airy(p, cs):
    s = int(p["sign"])
    g13, g23, g43 = gamma(1 / 3), gamma(2 / 3), gamma(4 / 3)

    def z(t):
        return (2.0 / 3.0) * t**1.5

    return (
        lambda t: 0.5 * g43 * t * bessel_series(1 / 3, z(t), s),
        lambda t: 0.5 * g13 * bessel_series(-2 / 3, z(t), s),
        lambda t: g23 * bessel_series(-1 / 3, z(t), s),
        lambda t: s * (g23 / 3.0) * t * t * bessel_series(2 / 3, z(t), s),
        ("printed mu0 has mu0'(0)=1; rescaled by 1/2 so that mu0'(0)=2a(0)=1/2",),
    )


def _cf_caldirola_kanai(p, cs):
    lam = float(p["lambda"])
    om = math.sqrt(1 - lam * lam)
    return (
        lambda t: math.exp(-lam * t) * math.sin(om * t) / om,
        lambda t: math.exp(-lam * t) * (om * math.cos(om * t) - lam * math.sin(om * t)) / om,
        lambda t: math.exp(-lam * t) * (lam * math.sin(om * t) + om * math.cos(om * t)) / om,
        lambda t: -math.exp(-lam * t) * math.sin(om * t) / om,
        (),
    )


def _cf_modified_caldirola_kanai(p, cs):
    lam, w0 = float(p["lambda"]), float(p["omega0"])
    om = math.sqrt(w0 * w0 - lam * lam)
    return (
        lambda t: w0 * math.exp(-lam * t) * math.sin(om * t) / om,
        lambda t: w0 * math.exp(-lam * t) * (om * math.cos(om * t) - lam * math.sin(om * t)) / om,
        lambda t: math.exp(-lam * t) * (om * math.cos(om * t) + lam * math.sin(om * t)) / om,
        lambda t: -w0 * w0 * math.exp(-lam * t) * math.sin(om * t) / om,
        ("printed mu1 = w cos wt - l sin wt does not solve the characteristic equation; "
         "replaced by e^{-lt}(w cos wt + l sin wt)/w",),
    )


def _cf_meiler_cordero_suslov(p, cs):
    if p["variant"] != "consistent":
        raise NoClosedForm("the printed b=sin^2(2t) variant has no known closed-form pair")
    return (
        lambda t: math.cos(t) * math.sinh(t) + math.cosh(t) * math.sin(t),
        lambda t: 2 * math.cos(t) * math.cosh(t),
        lambda t: math.cosh(t) * math.cos(t) + math.sinh(t) * math.sin(t),
        lambda t: 2 * math.sinh(t) * math.cos(t),
        ("printed mu1 = cosh t cos t - sinh t sin t fails the characteristic equation; "
         "sign of the second term corrected",),
    )


def _cf_degenerate_parametric(p, cs):
    lam, om = float(p["lambda"]), float(p["omega"])

    def parts(t):
        return math.sin(om * t), math.cos(om * t), math.sinh(lam * t), math.cosh(lam * t)

    def mu0(t):
        s, c, sh, ch = parts(t)
        return (s * ch + c * sh) / om

    def dmu0(t):
        s, c, sh, ch = parts(t)
        return ((om + lam) * c * ch + (lam - om) * s * sh) / om

    def mu1(t):
        s, c, sh, ch = parts(t)
        return s * sh + c * ch

    def dmu1(t):
        s, c, sh, ch = parts(t)
        return (om + lam) * c * sh + (lam - om) * s * ch

    return (mu0, dmu0, mu1, dmu1,
            ("Ince mu0 has mu0'(0)=omega+lambda; rescaled by 1/omega so that mu0'(0)=2a(0)",))


_CLOSED_FORMS = {
    "harmonic": _cf_harmonic,
    "airy": _cf_airy,
    "caldirola_kanai": _cf_caldirola_kanai,
    "modified_caldirola_kanai": _cf_modified_caldirola_kanai,
    "meiler_cordero_suslov": _cf_meiler_cordero_suslov,
    "degenerate_parametric": _cf_degenerate_parametric,
}


def has_closed_form(cs: CoefficientSet) -> bool:
    if cs.name not in _CLOSED_FORMS:
        return False
    return cs.name != "meiler_cordero_suslov" or cs.params["variant"] == "consistent"


def closed_form_characteristic(model: str, params: Mapping | None = None) -> CharacteristicPair:
    """Closed-form fundamental pair of a catalog model, with analytic derivatives."""
    if model not in CATALOG:
        if model == "custom":
            raise NoClosedForm("custom models have no closed-form pair")
        raise UnknownModel(f"unknown model {model!r}")
    if model not in _CLOSED_FORMS:
        raise NoClosedForm(f"model {model!r} has no printed closed-form pair")
    cs = catalog_model(model, params)
    mu0, dmu0, mu1, dmu1, notes = _CLOSED_FORMS[model](cs.params, cs)
    return CharacteristicPair(mu0, mu1, dmu0, dmu1, "closed_form", (0.0, cs.t_max), notes)


def printed_characteristic(model: str, params: Mapping | None = None) -> tuple[Callable, Callable]:
    """The (mu0, mu1) formulas exactly as printed, without normalization or repair."""
    cs = catalog_model(model, params)
    p = cs.params
    if model == "harmonic":
        return math.sin, lambda t: 0.5 * math.cos(t)
    if model == "airy":
        if int(p["sign"]) != 1:
            raise NoClosedForm("only the + sign is printed in terms of I_v")
        k0, k1 = 3 ** (-2 / 3) * gamma(1 / 3), 3 ** (-1 / 3) * gamma(2 / 3)

        def mu0(t):
            return 0.0 if t == 0 else k0 * math.sqrt(t) * bessel_I(1 / 3, (2 / 3) * t**1.5)

        def mu1(t):
            return 1.0 if t == 0 else k1 * math.sqrt(t) * bessel_I(-1 / 3, (2 / 3) * t**1.5)

        return mu0, mu1
    if model == "caldirola_kanai":
        f = _cf_caldirola_kanai(p, cs)
        return f[0], f[2]
    if model == "modified_caldirola_kanai":
        lam, w0 = float(p["lambda"]), float(p["omega0"])
        om = math.sqrt(w0 * w0 - lam * lam)
        return (
            lambda t: w0 * math.sin(om * t) / (math.exp(lam * t) * om),
            lambda t: om * math.cos(om * t) - lam * math.sin(om * t),
        )
    if model == "meiler_cordero_suslov":
        return (
            lambda t: math.cos(t) * math.sinh(t) + math.cosh(t) * math.sin(t),
            lambda t: math.cosh(t) * math.cos(t) - math.sinh(t) * math.sin(t),
        )
    if model == "degenerate_parametric":
        lam, om = float(p["lambda"]), float(p["omega"])
        return (
            lambda t: math.sinh(lam * t) * math.cos(om * t) + math.cosh(lam * t) * math.sin(om * t),
            lambda t: math.sinh(lam * t) * math.sin(om * t) + math.cosh(lam * t) * math.cos(om * t),
        )
    raise NoClosedForm(f"model {model!r} has no printed pair")


def solve_characteristic_numeric(
    cs: CoefficientSet,
    t_max: float | None = None,
    tol: float = 1e-10,
    max_step: float | None = None,
) -> CharacteristicPair:
    """Integrate both fundamental solutions with RK45 on [0, t_max]."""
    t_max = cs.t_max if t_max is None else t_max
    if max_step is None:
        max_step = t_max / 400

    def rhs(t, y):
        cc = characteristic_coefficients(cs, t)
        return np.array([
            y[1], cc.tau * y[1] - 4 * cc.sigma * y[0],
            y[3], cc.tau * y[3] - 4 * cc.sigma * y[2],
        ])

    y0 = [0.0, 2.0 * cs.a(0.0), 1.0, 0.0]
    dense = integrate_dense(rhs, (0.0, t_max), y0, rtol=tol, atol=tol, max_step=max_step)

    def component(i):
        return lambda t: float(dense(t)[i])

    return CharacteristicPair(
        component(0), component(2), component(1), component(3), "numeric", (0.0, t_max)
    )


def characteristic_pair(cs: CoefficientSet, tol: float = 1e-10) -> CharacteristicPair:
    """Closed form when one exists for this model, otherwise the numeric solve."""
    if cs.name != "custom" and has_closed_form(cs):
        pair = closed_form_characteristic(cs.name, dict(cs.params))
        if pair.valid_interval[1] != cs.t_max:
            pair = CharacteristicPair(pair.mu0, pair.mu1, pair.dmu0, pair.dmu1,
                                      pair.source, (0.0, cs.t_max), pair.notes)
        return pair
    return solve_characteristic_numeric(cs, tol=tol)


def characteristic_residual(
    mu: Callable, dmu: Callable, cs: CoefficientSet, t: float, step: float = 2.5e-3
) -> float:
    """|mu'' - tau mu' + 4 sigma mu| with mu'' from a fourth-order stencil."""
    cc = characteristic_coefficients(cs, t)
    return abs(d2(mu, t, step) - cc.tau * dmu(t) + 4 * cc.sigma * mu(t))


def ince_residual(
    mu: Callable, dmu: Callable, lam: float, omega: float, t: float, step: float = 1e-3
) -> float:
    """Residual of the Ince-type equation of the degenerate parametric oscillator."""
    c2 = math.cos(2 * omega * t)
    den = omega + lam * c2
    if abs(den) < 1e-14:
        raise Singularity(f"omega + lambda cos(2 omega t) vanishes at t={t}")
    damping = 2 * lam * omega * math.sin(2 * omega * t) / den
    stiffness = (omega**3 - 3 * omega * lam**2 - (omega**2 * lam + lam**3) * c2) / den
    return abs(d2(mu, t, step) + damping * dmu(t) + stiffness * mu(t))


def derivative_mismatch(mu: Callable, dmu: Callable, t: float, step: float = 1e-4) -> float:
    """|dmu(t) - fourth-order difference of mu|, a check on analytic derivatives."""
    return abs(dmu(t) - d1(mu, t, step))
