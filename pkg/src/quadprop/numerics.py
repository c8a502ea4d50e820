"""Finite-difference stencils and a dense-output wrapper around RK45."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import IntegrationFailure, UnstableStep


def d1(fn: Callable, t: float, step: float):
    """Fourth-order centered first derivative."""
    return (-fn(t + 2 * step) + 8 * fn(t + step) - 8 * fn(t - step) + fn(t - 2 * step)) / (12 * step)


def d2(fn: Callable, t: float, step: float):
    """Fourth-order centered second derivative."""
    return (
        -fn(t + 2 * step) + 16 * fn(t + step) - 30 * fn(t) + 16 * fn(t - step) - fn(t - 2 * step)
    ) / (12 * step * step)


def sign_changes(values) -> int:
    """Number of strict sign flips in a sampled real sequence, ignoring exact zeros."""
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass(frozen=True)
class DenseSolution:
    """Piecewise cubic Hermite interpolant through the accepted RK45 steps.

    Calling it returns the state vector at ``t`` (shape ``(n,)`` for scalar t).
    """

    t_nodes: np.ndarray
    spline: CubicHermiteSpline
    nfev: int

    @property
    def t_span(self) -> tuple[float, float]:
        return float(self.t_nodes[0]), float(self.t_nodes[-1])

    def __call__(self, t):
        lo, hi = self.t_span
        slack = 1e-12 * max(1.0, abs(hi))
        if np.any(np.asarray(t) < lo - slack) or np.any(np.asarray(t) > hi + slack):
            raise IntegrationFailure(f"t={t} outside dense interval [{lo}, {hi}]")
        return self.spline(t)


def integrate_dense(
    rhs: Callable,
    t_span: tuple[float, float],
    y0,
    rtol: float,
    atol: float,
    max_step: float = np.inf,
) -> DenseSolution:
    """Embedded Dormand-Prince 5(4) solve; dense output by cubic Hermite."""
    try:
        sol = solve_ivp(
            rhs, t_span, np.asarray(y0), method="RK45", rtol=rtol, atol=atol, max_step=max_step
        )
    except FloatingPointError as exc:  # pragma: no cover - numpy errstate dependent
        raise IntegrationFailure(str(exc)) from exc
    if not sol.success:
        if "step size" in sol.message:
            raise UnstableStep(sol.message)
        raise IntegrationFailure(sol.message)
    ys = sol.y
    if not np.all(np.isfinite(ys)):
        raise IntegrationFailure("non-finite state encountered")
    dys = np.stack([np.asarray(rhs(ti, ys[:, i])) for i, ti in enumerate(sol.t)], axis=1)
    return DenseSolution(sol.t, CubicHermiteSpline(sol.t, ys, dys, axis=1), sol.nfev)
