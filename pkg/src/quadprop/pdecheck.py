"""Method-of-lines solver for the quadratic-Hamiltonian Schroedinger equation.

Space is discretized with 5-point fourth-order centered differences; the two
outermost nodes on each side are pinned to a supplied boundary function
(normally the analytic solution), and the remaining ODE system is advanced with
Dormand-Prince 5(4). This is meant as an independent check of the analytic
propagator, not as a general solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import EmptyWindow, IntegrationFailure, OutOfDomain, UnstableStep
from .hamiltonians import CoefficientSet

PAD = 2  # pinned nodes per side


@dataclass(frozen=True)
class Grid:
    x_min: float = -8.0
    x_max: float = 8.0
    n_points: int = 801
    bc: str = "analytic_dirichlet"

    def __post_init__(self):
        if self.n_points < 16:
            raise ValueError("a grid needs at least 16 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.bc != "analytic_dirichlet":
            raise ValueError(f"unsupported boundary condition {self.bc!r}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refined(self) -> "Grid":
        """Same interval, dx halved."""
        return Grid(self.x_min, self.x_max, 2 * self.n_points - 1, self.bc)


@dataclass(frozen=True)
class WaveField:
    grid: Grid
    t: float
    values: np.ndarray
    nfev: int = 0

    def __post_init__(self):
        if len(self.values) != self.grid.n_points:
            raise ValueError("field length does not match the grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite field values")


@dataclass(frozen=True)
class FieldComparison:
    l2_rel: float
    linf: float
    re_l2: float
    im_l2: float
    points: int


def _sample(fn: Callable, xs: np.ndarray, *args) -> np.ndarray:
    return np.array([fn(float(x), *args) for x in xs], dtype=complex)


def _rhs(cs: CoefficientSet, grid: Grid, boundary: Callable) -> Callable:
    x = grid.x
    xi = x[PAD:-PAD]
    dx = grid.dx
    left, right = x[:PAD], x[-PAD:]

    def rhs(t, u_int):
        u = np.empty(grid.n_points, dtype=complex)
        u[PAD:-PAD] = u_int
        u[:PAD] = _sample(boundary, left, t)
        u[-PAD:] = _sample(boundary, right, t)
        um2, um1, u0, up1, up2 = u[:-4], u[1:-3], u[2:-2], u[3:-1], u[4:]
        uxx = (-up2 + 16 * up1 - 30 * u0 + 16 * um1 - um2) / (12 * dx * dx)
        ux = (-up2 + 8 * up1 - 8 * um1 + um2) / (12 * dx)
        a, b, c, d, f, g = cs.values(t)
        # i psi_t = -a psi_xx + b x^2 psi - i c x psi_x - i d psi - f x psi + i g psi_x
        return 1j * a * uxx - 1j * b * xi * xi * u0 - c * xi * ux - d * u0 + 1j * f * xi * u0 + g * ux

    return rhs


def evolve_fd(
    cs: CoefficientSet,
    initial: Callable[[float], complex],
    grid: Grid,
    t_final: float,
    tol: float,
    boundary: Callable[[float, float], complex],
) -> WaveField:
    """Advance the sampled initial data to t_final."""
    if t_final == 0:
        return WaveField(grid, 0.0, _sample(initial, grid.x))
    if not 0 < t_final <= cs.t_max:
        raise OutOfDomain(f"t_final={t_final} outside (0, {cs.t_max}]")
    u0 = _sample(initial, grid.x)
    sol = solve_ivp(_rhs(cs, grid, boundary), (0.0, t_final), u0[PAD:-PAD],
                    method="RK45", rtol=tol, atol=tol, t_eval=[t_final])
    if not sol.success:
        if "step size" in sol.message:
            raise UnstableStep(sol.message)
        raise IntegrationFailure(sol.message)
    u = np.empty(grid.n_points, dtype=complex)
    u[PAD:-PAD] = sol.y[:, -1]
    u[:PAD] = _sample(boundary, grid.x[:PAD], t_final)
    u[-PAD:] = _sample(boundary, grid.x[-PAD:], t_final)
    if not np.all(np.isfinite(u)):
        raise IntegrationFailure("non-finite field at t_final")
    return WaveField(grid, t_final, u, sol.nfev)


def central_window(grid: Grid, fraction: float = 0.5) -> tuple[float, float]:
    mid = 0.5 * (grid.x_min + grid.x_max)
    half = 0.5 * fraction * (grid.x_max - grid.x_min)
    return mid - half, mid + half


def compare_fields(numeric: WaveField, analytic: Callable[[float], complex], window: tuple[float, float]) -> FieldComparison:
    lo, hi = window
    g = numeric.grid
    if lo < g.x_min or hi > g.x_max or lo > hi:
        raise EmptyWindow(f"window {window} not inside [{g.x_min}, {g.x_max}]")
    x = g.x
    mask = (x >= lo - 1e-12) & (x <= hi + 1e-12)
    if not mask.any():
        raise EmptyWindow(f"no grid points in {window}")
    num = numeric.values[mask]
    ana = _sample(analytic, x[mask])
    diff = num - ana
    norm = np.linalg.norm(ana)
    return FieldComparison(
        l2_rel=float(np.linalg.norm(diff) / norm) if norm else float(np.linalg.norm(diff)),
        linf=float(np.max(np.abs(diff))),
        re_l2=float(np.linalg.norm(diff.real) / np.linalg.norm(ana.real)) if np.any(ana.real) else 0.0,
        im_l2=float(np.linalg.norm(diff.imag) / np.linalg.norm(ana.imag)) if np.any(ana.imag) else 0.0,
        points=int(mask.sum()),
    )


def pde_residual(solution: Callable[[float, float], complex], cs: CoefficientSet, x: float, t: float, step: float) -> float:
    """|i psi_t + a psi_xx - b x^2 psi + i c x psi_x + i d psi + f x psi - i g psi_x|."""
    if t - 2 * step <= 0 or t + 2 * step > cs.t_max:
        raise OutOfDomain(f"stencil around t={t} leaves (0, {cs.t_max}]")

    def at_x(u):
        return solution(u, t)

    def at_t(s):
        return solution(x, s)

    psi = solution(x, t)
    pt = (-at_t(t + 2 * step) + 8 * at_t(t + step) - 8 * at_t(t - step) + at_t(t - 2 * step)) / (12 * step)
    px = (-at_x(x + 2 * step) + 8 * at_x(x + step) - 8 * at_x(x - step) + at_x(x - 2 * step)) / (12 * step)
    pxx = (-at_x(x + 2 * step) + 16 * at_x(x + step) - 30 * psi + 16 * at_x(x - step) - at_x(x - 2 * step)) / (
        12 * step * step
    )
    a, b, c, d, f, g = cs.values(t)
    r = 1j * pt + a * pxx - b * x * x * psi + 1j * c * x * px + 1j * d * psi + f * x * psi - 1j * g * px
    return abs(r)
