"""Coefficient functions of the quadratic Schroedinger equation

    i psi_t = -a psi_xx + b x^2 psi - i c x psi_x - i d psi - f x psi + i g psi_x

and a catalog of named models.

Sign mapping of the catalog entries onto (a, b, c, d, f, g), from the printed
``i psi_t = ...`` forms:

* harmonic: ``i psi_t + psi_xx/2 - x^2 psi = 0`` gives a=1/2, b=1 ("derived",
  default). Its printed fundamental pair sin t, cos t/2 belongs to b=1/2
  ("printed" variant).
* airy: ``i psi_t + psi_xx/4 +/- t x^2 psi = 0`` gives a=1/4, b=-sign*t.
* caldirola_kanai: a=e^{-2 lt}/2, b=e^{2 lt}/2.
* modified_caldirola_kanai: the term ``+i(2l x psi_x + l psi)`` maps to
  c=-2l, d=-l; a, b carry the extra factor omega0.
* meiler_cordero_suslov: ``-i(sin 2t x psi_x + sin(2t)/2 psi)`` maps to
  c=sin 2t, d=sin(2t)/2; a=cos^2 t and b=sin^2 t, i.e. H=(p cos t + x sin t)^2.
  The printed x^2 coefficient sin^2(2t) is kept as variant "printed"; it is
  inconsistent with the printed fundamental pair.
* degenerate_parametric: a=(1+(l/w)cos 2wt)/2, b=(1-(l/w)cos 2wt) w^2/2,
  c=l sin 2wt, d=(l/2) sin 2wt.
* damped: ``i psi_t = -a psi_xx + (b/2) x^2 psi`` with the printed a(t) and
  b=-w^2/(4a), so the equation's b is -w^2/(8a). The damping rate is the
  parameter ``gamma`` (unrelated to the Riccati function of the same name).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidParameter, OutOfDomain, Singularity, UnknownModel
from .numerics import d1

COEFFICIENT_NAMES = ("a", "b", "c", "d", "f", "g")
DEFAULT_FD_STEP = 1e-5


def _zero(t):
    return np.zeros_like(t, dtype=float) if np.ndim(t) else 0.0


def _const(value: float) -> Callable:
    def fn(t):
        return np.full_like(t, value, dtype=float) if np.ndim(t) else float(value)

    return fn


@dataclass(frozen=True)
class CoefficientSet:
    name: str
    params: Mapping[str, object]
    a: Callable
    b: Callable
    c: Callable
    d: Callable
    f: Callable
    g: Callable
    t_max: float
    da: Callable | None = None
    dd: Callable | None = None
    weight: Callable | None = None
    zero: frozenset = frozenset()
    notes: tuple[str, ...] = ()
    fd_step: float = DEFAULT_FD_STEP

    def is_zero(self, coeff: str) -> bool:
        """True when the coefficient is identically zero (declared, not sampled)."""
        return coeff in self.zero

    @property
    def homogeneous(self) -> bool:
        """No linear forcing terms: f = g = 0."""
        return self.is_zero("f") and self.is_zero("g")

    def a_prime(self, t: float) -> float:
        return self.da(t) if self.da is not None else d1(self.a, t, self.fd_step)

    def d_prime(self, t: float) -> float:
        if self.is_zero("d"):
            return 0.0
        return self.dd(t) if self.dd is not None else d1(self.d, t, self.fd_step)

    def values(self, t: float) -> tuple[float, ...]:
        return tuple(float(getattr(self, n)(t)) for n in COEFFICIENT_NAMES)


@dataclass(frozen=True)
class CharacteristicCoefficients:
    tau: float
    sigma: float
    t: float


@dataclass(frozen=True)
class ModelInfo:
    name: str
    defaults: Mapping[str, object]
    summary: str
    closed_form: bool = True
    params_doc: Mapping[str, str] = field(default_factory=dict)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameter(msg)


def _harmonic(p):
    variant = p["variant"]
    _require(variant in ("derived", "printed"), "harmonic variant must be 'derived' or 'printed'")
    b = 1.0 if variant == "derived" else 0.5
    nu = 2.0 * math.sqrt(0.5 * b)
    return dict(
        a=_const(0.5), b=_const(b), da=_const(0.0), weight=_const(1.0),
        zero={"c", "d", "f", "g"}, t_max=0.9 * math.pi / nu,
    )


def _airy(p):
    sign = int(p["sign"])
    _require(sign in (1, -1), "airy sign must be +1 or -1")
    # first zero of mu0 for sign=-1 is t = (1.5 * j_{1/3,1})^(2/3) ~ 2.666
    return dict(
        a=_const(0.25), b=lambda t: -sign * t, da=_const(0.0), weight=_const(1.0),
        zero={"c", "d", "f", "g"}, t_max=3.0 if sign == 1 else 2.4,
    )


def _caldirola_kanai(p):
    lam = float(p["lambda"])
    _require(0.0 < lam < 1.0, "caldirola_kanai requires 0 < lambda < 1")
    omega = math.sqrt(1.0 - lam * lam)
    return dict(
        a=lambda t: 0.5 * np.exp(-2 * lam * t),
        b=lambda t: 0.5 * np.exp(2 * lam * t),
        da=lambda t: -lam * np.exp(-2 * lam * t),
        weight=_const(1.0),
        zero={"c", "d", "f", "g"},
        t_max=0.9 * math.pi / omega,
    )


def _modified_caldirola_kanai(p):
    lam, w0 = float(p["lambda"]), float(p["omega0"])
    _require(w0 > 0 and 0.0 < lam < w0, "modified_caldirola_kanai requires 0 < lambda < omega0")
    omega = math.sqrt(w0 * w0 - lam * lam)
    return dict(
        a=lambda t: 0.5 * w0 * np.exp(-2 * lam * t),
        b=lambda t: 0.5 * w0 * np.exp(2 * lam * t),
        c=_const(-2 * lam),
        d=_const(-lam),
        da=lambda t: -lam * w0 * np.exp(-2 * lam * t),
        dd=_const(0.0),
        # c - 2d = 0
        weight=_const(1.0),
        zero={"f", "g"},
        t_max=0.9 * math.pi / omega,
    )


def _meiler_cordero_suslov(p):
    variant = p["variant"]
    _require(variant in ("consistent", "printed"), "variant must be 'consistent' or 'printed'")
    if variant == "consistent":
        b = lambda t: np.sin(t) ** 2
    else:
        b = lambda t: np.sin(2 * t) ** 2
    return dict(
        a=lambda t: np.cos(t) ** 2,
        b=b,
        c=lambda t: np.sin(2 * t),
        d=lambda t: 0.5 * np.sin(2 * t),
        da=lambda t: -np.sin(2 * t),
        dd=lambda t: np.cos(2 * t),
        weight=_const(1.0),
        zero={"f", "g"},
        # a = cos^2 t vanishes at pi/2, before the first zero of mu0
        t_max=0.9 * math.pi / 2,
    )


def _degenerate_parametric(p):
    lam, om = float(p["lambda"]), float(p["omega"])
    _require(om > 0 and 0.0 <= lam < om, "degenerate_parametric requires 0 <= lambda < omega")
    r = lam / om

    def mu0(t):
        return math.sin(om * t) * math.cosh(lam * t) + math.cos(om * t) * math.sinh(lam * t)

    hi = math.pi / om
    first_zero = hi if lam == 0 else brentq(mu0, 0.5 * hi, hi, xtol=1e-14)
    return dict(
        a=lambda t: 0.5 * (1 + r * np.cos(2 * om * t)),
        b=lambda t: 0.5 * (1 - r * np.cos(2 * om * t)) * om * om,
        c=lambda t: lam * np.sin(2 * om * t),
        d=lambda t: 0.5 * lam * np.sin(2 * om * t),
        da=lambda t: -lam * np.sin(2 * om * t),
        dd=lambda t: lam * om * np.cos(2 * om * t),
        weight=_const(1.0),
        zero={"f", "g"},
        t_max=0.9 * first_zero,
    )


def _damped(p):
    om, gam = float(p["omega"]), float(p["gamma"])
    _require(om > 0 and 0.0 < gam < min(om, 0.5), "damped requires 0 < gamma < min(omega, 1/2)")
    big = math.sqrt(om * om - gam * gam)

    def num(t):
        return big**2 * np.cos(big * t) - gam * np.sin(big * t) * np.tan(big * t)

    def den(t):
        return np.cosh(gam * t) * (np.cos(gam * t) * np.cosh(gam * t) - 2 * gam)

    def a(t):
        return num(t) / den(t)

    def da(t):
        s, c = np.sin(big * t), np.cos(big * t)
        dnum = -big**3 * s - gam * big * (s + s / c**2)
        ch, sh = np.cosh(gam * t), np.sinh(gam * t)
        dden = -gam * np.sin(gam * t) * ch**2 + 2 * gam * np.cos(gam * t) * ch * sh - 2 * gam**2 * sh
        return (dnum * den(t) - num(t) * dden) / den(t) ** 2

    # a(t) first vanishes where tan(big t) = big / sqrt(gamma)
    t_a = math.atan(big / math.sqrt(gam)) / big
    return dict(
        a=a,
        b=lambda t: -(om**2) / (8 * a(t)),
        da=da,
        weight=_const(1.0),
        zero={"c", "d", "f", "g"},
        t_max=0.8 * t_a,
    )


_BUILDERS = {
    "harmonic": _harmonic,
    "airy": _airy,
    "caldirola_kanai": _caldirola_kanai,
    "modified_caldirola_kanai": _modified_caldirola_kanai,
    "meiler_cordero_suslov": _meiler_cordero_suslov,
    "degenerate_parametric": _degenerate_parametric,
    "damped": _damped,
}

CATALOG: dict[str, ModelInfo] = {
    "harmonic": ModelInfo(
        "harmonic", {"variant": "derived"},
        "Quantum harmonic oscillator (Mehler kernel)",
        params_doc={"variant": "'derived' (b=1) or 'printed' (b=1/2, pair sin t, cos t/2)"},
    ),
    "airy": ModelInfo(
        "airy", {"sign": 1}, "Linear-in-time potential (modified Bessel pair)",
        params_doc={"sign": "+1 for +t x^2 (modified Bessel), -1 for -t x^2"},
    ),
    "caldirola_kanai": ModelInfo(
        "caldirola_kanai", {"lambda": 0.1}, "Caldirola-Kanai damped oscillator",
        params_doc={"lambda": "damping, 0 < lambda < 1"},
    ),
    "modified_caldirola_kanai": ModelInfo(
        "modified_caldirola_kanai", {"lambda": 0.1, "omega0": 1.0},
        "Modified Caldirola-Kanai oscillator",
        params_doc={"lambda": "0 < lambda < omega0", "omega0": "frequency > 0"},
    ),
    "meiler_cordero_suslov": ModelInfo(
        "meiler_cordero_suslov", {"variant": "consistent"},
        "Meiler, Cordero-Soto, Suslov Hamiltonian",
        params_doc={"variant": "'consistent' (b=sin^2 t) or 'printed' (b=sin^2 2t, numeric only)"},
    ),
    "degenerate_parametric": ModelInfo(
        "degenerate_parametric", {"lambda": 0.05, "omega": 1.0},
        "Degenerate parametric oscillator (Ince pair)",
        params_doc={"lambda": "0 <= lambda < omega", "omega": "frequency > 0"},
    ),
    "damped": ModelInfo(
        "damped", {"omega": 1.0, "gamma": 0.1}, "Damped oscillator (numeric pair only)",
        closed_form=False,
        params_doc={"omega": "frequency > 0", "gamma": "damping, 0 < gamma < min(omega, 1/2)"},
    ),
}


def _merge_params(name: str, params: Mapping | None) -> dict:
    merged = dict(CATALOG[name].defaults)
    for key, value in (params or {}).items():
        if key != "t_max" and key not in merged:
            raise InvalidParameter(f"model {name!r} has no parameter {key!r}")
        merged[key] = value
    for key, value in merged.items():
        if isinstance(value, (int, float)) and not math.isfinite(value):
            raise InvalidParameter(f"parameter {key!r} must be finite")
    return merged


def _apply_t_max(built: dict, params: dict) -> None:
    if "t_max" in params:
        t_max = float(params["t_max"])
        _require(t_max > 0 and math.isfinite(t_max), "t_max must be positive and finite")
        built["t_max"] = t_max


def catalog_model(
    name: str,
    params: Mapping | None = None,
    coefficients: Mapping[str, Callable] | None = None,
) -> CoefficientSet:
    """Build a :class:`CoefficientSet` for a named model.

    ``params`` may override the model defaults and ``t_max``. For ``custom``
    the callables in ``coefficients`` (keys a..g, optional da, dd, weight)
    are wrapped unchanged; missing a..g entries are identically zero.
    """
    if name == "custom":
        return _custom(dict(params or {}), dict(coefficients or {}))
    if name not in _BUILDERS:
        raise UnknownModel(f"unknown model {name!r}; known: {', '.join(sorted(CATALOG))}, custom")
    merged = _merge_params(name, params)
    built = _BUILDERS[name](merged)
    _apply_t_max(built, merged)
    zero = frozenset(built.pop("zero"))
    fns = {n: built.pop(n, _zero) for n in COEFFICIENT_NAMES}
    cs = CoefficientSet(name=name, params=MappingProxyType(merged), zero=zero, **fns, **built)
    _check_a0(cs)
    return cs


def _custom(params: dict, coefficients: dict) -> CoefficientSet:
    unknown = set(coefficients) - set(COEFFICIENT_NAMES) - {"da", "dd", "weight"}
    if unknown:
        raise InvalidParameter(f"unknown custom coefficient keys: {sorted(unknown)}")
    if "a" not in coefficients:
        raise InvalidParameter("custom model needs at least a(t)")
    t_max = float(params.get("t_max", 1.0))
    _require(t_max > 0 and math.isfinite(t_max), "t_max must be positive and finite")
    zero = frozenset(n for n in COEFFICIENT_NAMES if coefficients.get(n) is None)
    fns = {n: coefficients.get(n) or _zero for n in COEFFICIENT_NAMES}
    cs = CoefficientSet(
        name="custom",
        params=MappingProxyType(dict(params)),
        t_max=t_max,
        da=coefficients.get("da"),
        dd=coefficients.get("dd"),
        weight=coefficients.get("weight"),
        zero=zero,
        fd_step=float(params.get("fd_step", DEFAULT_FD_STEP)),
        **fns,
    )
    _check_a0(cs)
    return cs


def _check_a0(cs: CoefficientSet) -> None:
    a0 = cs.a(0.0)
    if not math.isfinite(a0) or a0 == 0:
        raise InvalidParameter(f"a(0) must be finite and nonzero, got {a0}")


def eval_coefficients(cs: CoefficientSet, t: float) -> tuple[float, ...]:
    """The six coefficient values (a, b, c, d, f, g) at time t."""
    if not 0.0 <= t <= cs.t_max:
        raise OutOfDomain(f"t={t} outside [0, {cs.t_max}] for model {cs.name}")
    return cs.values(t)


def characteristic_coefficients(cs: CoefficientSet, t: float) -> CharacteristicCoefficients:
    """tau(t) and sigma(t) of mu'' - tau mu' + 4 sigma mu = 0.

    The sigma term (d/2)(a'/a - d'/d) is evaluated as (d a'/a - d')/2, its
    continuous extension through zeros of d.
    """
    a, b, c, d, _, _ = cs.values(t)
    if a == 0 or not math.isfinite(a):
        raise Singularity(f"a({t}) = {a}")
    la = cs.a_prime(t) / a
    tau = la - 2 * c + 4 * d
    sigma = a * b - c * d + d * d
    if not cs.is_zero("d"):
        sigma += 0.5 * (d * la - cs.d_prime(t))
    if not (math.isfinite(tau) and math.isfinite(sigma)):
        raise Singularity(f"tau or sigma not finite at t={t}")
    return CharacteristicCoefficients(tau=float(tau), sigma=float(sigma), t=t)
