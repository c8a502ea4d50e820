"""Gamma function (Lanczos) and power-series modified Bessel functions."""
from __future__ import annotations

import math

from .errors import InvalidParameter, NonConvergence, Singularity

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_MAX_TERMS = 200
SERIES_RTOL = 1e-16


def gamma(x: float) -> float:
    """Gamma function by the Lanczos approximation, with reflection below 1/2."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise Singularity(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i)
    tt = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * tt ** (x + 0.5) * math.exp(-tt) * acc


def bessel_series(v: float, z: float, sign: int = 1) -> float:
    """Sum over k of (sign * z^2/4)^k / (k! Gamma(v+k+1)).

    This is I_v(z) / (z/2)^v for ``sign=+1`` and J_v(z) / (z/2)^v for
    ``sign=-1``; it is entire in z, so it stays finite at z = 0 for any v.
    """
    if v + 1 <= 0 and v == math.floor(v):
        raise InvalidParameter("negative integer orders are not supported")
    q = sign * z * z / 4.0
    term = 1.0 / gamma(v + 1.0)
    total = term
    scale = abs(term)
    for k in range(1, SERIES_MAX_TERMS):
        term *= q / (k * (v + k))
        total += term
        scale += abs(term)
        if abs(term) < SERIES_RTOL * (abs(total) if sign > 0 else scale):
            return total
    raise NonConvergence(f"bessel series for v={v}, z={z} needs more than {SERIES_MAX_TERMS} terms")


def bessel_I(v: float, z: float) -> float:
    """Modified Bessel function of the first kind from its power series.

    Defined for z >= 0 and real v > -1.
    """
    if z < 0:
        raise InvalidParameter("bessel_I requires z >= 0")
    if v <= -1:
        raise InvalidParameter("bessel_I requires v > -1")
    if z == 0:
        if v > 0:
            return 0.0
        if v == 0:
            return 1.0
        raise Singularity(f"I_{v}(z) diverges at z=0 for v<0")
    return (z / 2.0) ** v * bessel_series(v, z, 1)
