"""Oscillator with a coefficient-dependent frequency.

For ``A(phi) y'' + (A'(phi)/2) y' + y = 0`` the phase
``theta(phi) = int_0^phi dsigma / sqrt(A(sigma))`` turns the equation into
``y'' = -y`` in theta, hence ``y = alpha cos(theta) + beta sin(theta)``.
The damping coefficient is always A'/2; it is never an independent input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from . import parabolic
from .numerics import DEFAULT_TOL, DomainError, Tolerances, integrate_adaptive

__all__ = [
    "Coefficient",
    "BUILTIN_COEFFICIENTS",
    "builtin",
    "OscillatorProblem",
    "phase",
    "solve",
    "residual",
]


@dataclass(frozen=True)
class Coefficient:
    """A named positive coefficient function A(phi)."""

    name: str
    func: Callable[[float], float] = field(repr=False, compare=False)

    def __call__(self, phi: float) -> float:
        return self.func(phi)

    @classmethod
    def constant(cls, value: float = 1.0) -> "Coefficient":
        value = float(value)
        return cls("constant", lambda _phi: value)

    @classmethod
    def tabulated(cls, phis: Sequence[float], values: Sequence[float]) -> "Coefficient":
        """Natural cubic spline through samples of A."""
        spline = CubicSpline(np.asarray(phis, float), np.asarray(values, float), bc_type="natural")
        return cls("tabulated", lambda phi: float(spline(phi)))


def _ip4(phi):
    r2 = parabolic.cosp_closed(phi) ** 2 + parabolic.sinp_closed(phi) ** 2
    return r2 * r2


BUILTIN_COEFFICIENTS = {
    "constant": Coefficient.constant(1.0),
    "one_plus_phi_squared": Coefficient("one_plus_phi_squared", lambda phi: 1.0 + phi * phi),
    "ip4_parabolic": Coefficient("ip4_parabolic", _ip4),
}


def builtin(name: str) -> Coefficient:
    try:
        return BUILTIN_COEFFICIENTS[name]
    except KeyError:
        raise ValueError(
            f"unknown coefficient {name!r}; choose from {sorted(BUILTIN_COEFFICIENTS)}"
        ) from None


@dataclass(frozen=True)
class OscillatorProblem:
    coefficient: Coefficient
    alpha: float
    beta: float
    grid: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size < 3:
            raise DomainError("the grid needs at least 3 points")
        if grid[0] != 0.0:
            raise DomainError(f"the grid must start at 0, not {grid[0]!r}")
        if not np.all(np.diff(grid) > 0):
            raise DomainError("the grid must be strictly increasing")
        values = np.array([self.coefficient(x) for x in grid])
        if not np.all(values > 0):
            bad = grid[np.argmax(~(values > 0))]
            raise DomainError(f"A({bad!r}) is not positive")
        object.__setattr__(self, "grid", grid)


def phase(problem: OscillatorProblem, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Cumulative ``int_0^phi dsigma / sqrt(A)`` at every grid point."""
    a = problem.coefficient

    def integrand(sigma):
        v = a(sigma)
        if not v > 0:
            raise DomainError(f"A({sigma!r}) = {v!r} is not positive")
        return 1.0 / math.sqrt(v)

    grid = problem.grid
    theta = np.empty_like(grid)
    theta[0] = 0.0
    for i in range(1, grid.size):
        seg, _ = integrate_adaptive(integrand, grid[i - 1], grid[i], tol)
        theta[i] = theta[i - 1] + seg
    return theta


def solve(problem: OscillatorProblem, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Samples of ``alpha cos(theta) + beta sin(theta)`` on the grid.

    Each sample satisfies y(0) = alpha and y'(0) = beta / sqrt(A(0)).
    """
    theta = phase(problem, tol)
    return problem.alpha * np.cos(theta) + problem.beta * np.sin(theta)


def residual(problem: OscillatorProblem, y_samples: Sequence[float]) -> float:
    """Sup over interior grid points of ``|A y'' + (A'/2) y' + y|``.

    Derivatives of y and A use the three-point central formulas for the
    (possibly non-uniform) grid, so the result scales like h**2.
    """
    grid = problem.grid
    y = np.asarray(y_samples, dtype=float)
    if grid.size < 3:
        raise DomainError("the grid needs at least 3 points")
    if y.shape != grid.shape:
        raise ValueError(f"{y.size} samples for a grid of {grid.size} points")
    a = np.array([problem.coefficient(x) for x in grid])

    h1 = grid[1:-1] - grid[:-2]
    h2 = grid[2:] - grid[1:-1]
    w_m = -h2 / (h1 * (h1 + h2))
    w_0 = (h2 - h1) / (h1 * h2)
    w_p = h1 / (h2 * (h1 + h2))

    def d1(v):
        return w_m * v[:-2] + w_0 * v[1:-1] + w_p * v[2:]

    def d2(v):
        return 2.0 * (v[:-2] / (h1 * (h1 + h2)) - v[1:-1] / (h1 * h2) + v[2:] / (h2 * (h1 + h2)))

    res = a[1:-1] * d2(y) + 0.5 * d1(a) * d1(y) + y[1:-1]
    return float(np.max(np.abs(res)))
