"""Quintic cosine and sine, the (4, 1) member of the family.

cosm is the unique real root of ``3 Y**5 + 5 Y - 8 + 5 phi = 0`` (the left
side is strictly increasing in Y) and ``sinm = 1 - cosm**4``. The geometric
window is [0, 16/5], with cosm(8/5) = 0 and cosm(16/5) = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerics import DEFAULT_TOL, Tolerances, solve_bracketed

__all__ = ["PHI_STAR", "PHI_END", "QuinticValue", "quintic_residual", "cosm", "sinm", "value"]

PHI_STAR = 8.0 / 5.0
PHI_END = 16.0 / 5.0


@dataclass(frozen=True)
class QuinticValue:
    phi: float
    cosm: float
    sinm: float


def quintic_residual(phi: float, y: float) -> float:
    return 3.0 * y**5 + 5.0 * y - 8.0 + 5.0 * phi


def cosm(phi: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Root of the quintic by Newton steps kept inside a bracket.

    Any root with |Y| > 1 satisfies ``5|Y| < |8 - 5 phi|``, which gives the
    bracket; the first guess ``1 - phi/2`` is the two-term Taylor start.
    """
    rhs = 8.0 - 5.0 * phi
    bound = max(1.0, abs(rhs) / 5.0)
    return solve_bracketed(
        lambda y: quintic_residual(phi, y),
        -bound,
        bound,
        tol,
        fprime=lambda y: 15.0 * y**4 + 5.0,
        x0=1.0 - 0.5 * phi,
    )


def sinm(phi: float, tol: Tolerances = DEFAULT_TOL) -> float:
    return 1.0 - cosm(phi, tol) ** 4


def value(phi: float, tol: Tolerances = DEFAULT_TOL) -> QuinticValue:
    c = cosm(phi, tol)
    return QuinticValue(phi, c, 1.0 - c**4)
