"""Direct oscillatory quadrature of the superposition integral.

int G(x, y, t) e^{i nu y} dy is computed on a finite window [-Y, Y] with
adaptive Gauss-Kronrod on short chunks, plus an asymptotic expansion of the
two remaining tails. With phi(y) = gamma y^2 + B y and L = phi'(y),

    int_Y^inf e^{i phi} dy = -e^{i phi(Y)} sum_j c_j / L(Y)^{2j+1},
    c_0 = -i,   c_{j+1} = -2i gamma (2j+1) c_j,

obtained by repeated integration by parts (the phase is exactly quadratic, so
the series has no other terms). The window edge is placed where |L| is large
enough that the series is many orders below the target before it diverges.
"""
from __future__ import annotations

import cmath
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .characteristic import CharacteristicPair
from .errors import QuadratureFailure
from .propagator import kernel_prefactor
from .riccati import RiccatiState

EDGE_SLOPE = 40.0
CHUNK_OSCILLATIONS = 2.0
CHUNK_EPSABS = 1e-14


def _tail(gamma: float, slope: float) -> complex:
    """sum_j c_j / L^{2j+1}, stopped at its smallest term."""
    c = -1j
    total = 0j
    prev = math.inf
    for j in range(200):
        term = c / slope ** (2 * j + 1)
        if abs(term) > prev:
            break
        total += term
        prev = abs(term)
        if prev < 1e-18 * abs(total):
            break
        c = -2j * gamma * (2 * j + 1) * c
    return total


def window_edge(gamma: float, lin: float) -> float:
    """Y with |2 gamma (+-Y) + lin| >= max(EDGE_SLOPE, 20 sqrt|gamma|)."""
    target = max(EDGE_SLOPE, 20 * math.sqrt(abs(gamma)))
    return (target + abs(lin)) / (2 * abs(gamma))


def _chunked_quad(fn, lo: float, hi: float, width: float) -> complex:
    edges = np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / width)) + 1))
    total = 0j
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            try:
                val, _ = quad(fn, a, b, complex_func=True, epsabs=CHUNK_EPSABS, epsrel=1e-13, limit=200)
            except IntegrationWarning as exc:
                raise QuadratureFailure(f"chunk [{a}, {b}]: {exc}") from exc
            total += val
    return total


def phase_integral(gamma: float, lin: float) -> complex:
    """int_R e^{i (gamma y^2 + lin y)} dy by windowed quadrature plus tail series."""
    if gamma == 0:
        raise QuadratureFailure("the integral needs gamma != 0")
    Y = window_edge(gamma, lin)

    def phase(y):
        return gamma * y * y + lin * y

    def integrand(y):
        return cmath.exp(1j * phase(y))

    slope_max = 2 * abs(gamma) * Y + abs(lin)
    width = CHUNK_OSCILLATIONS * 2 * math.pi / slope_max
    inner = _chunked_quad(integrand, -Y, Y, width)
    upper = -cmath.exp(1j * phase(Y)) * _tail(gamma, 2 * gamma * Y + lin)
    lower = cmath.exp(1j * phase(-Y)) * _tail(gamma, -2 * gamma * Y + lin)
    return inner + upper + lower


def quadrature_plane_wave(state: RiccatiState, pair: CharacteristicPair, nu: float, x: float) -> complex:
    """int G(x, y, t) e^{i nu y} dy, evaluated from the kernel itself."""
    s = state
    mu0 = pair.mu0(s.t)
    outer = s.alpha * x * x + s.delta * x + s.kappa
    lin = s.beta * x + s.epsilon + nu
    return kernel_prefactor(s, mu0) * cmath.exp(1j * outer) * phase_integral(s.gamma, lin)


def quadrature_superposition(state, pair, coefficients, frequencies, x: float) -> complex:
    """int G(x, y, t) sum_k C_k e^{i nu_k y} dy, term by term."""
    parts = [c * quadrature_plane_wave(state, pair, nu, x) for c, nu in zip(coefficients, frequencies) if c]
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
