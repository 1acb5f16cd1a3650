"""Parabolic cosine and sine, the (2, 1) member of the family.

The point (cosp, sinp) runs along the parabola ``y + x**2 = 1``. cosp is the
unique real root of ``Y**3 + 3Y + 3 phi - 4 = 0``, so both functions are
defined for every real phi; the geometric window [0, 8/3] runs from (1, 0)
through (0, 1) at phi* = 4/3 to (-1, 0).

Backends: Cardano radicals (:func:`cosp_closed`), the hyperbolic form
(:func:`cosp_hyper`), the degree-5 Maclaurin truncation (:func:`series`) and
the general family (:func:`paratrig.gentrig.eval_area` / ``eval_ode`` with
``PARABOLIC``).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import gentrig
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    integrate_adaptive,
    real_cbrt,
)

__all__ = [
    "PHI_STAR",
    "PHI_END",
    "SERIES_WINDOW",
    "ParabolicValue",
    "GdMode",
    "DomainWarning",
    "cubic_residual",
    "cosp_closed",
    "sinp_closed",
    "cosp_hyper",
    "series",
    "ip",
    "cp_sp",
    "gdp",
    "gdp_many",
    "ep",
    "tgp",
    "reconstruct",
    "value",
    "evaluate",
    "BACKENDS",
]

PHI_STAR = 4.0 / 3.0
PHI_END = 8.0 / 3.0
SERIES_WINDOW = 0.5

# beyond this |4 - 3 phi| the difference of the two radicals cancels badly
_CARDANO_LIMIT = 8.0


class DomainWarning(UserWarning):
    """phi lies outside the geometric window [0, 8/3]."""


@dataclass(frozen=True)
class ParabolicValue:
    phi: float
    cosp: float
    sinp: float

    @property
    def ip(self) -> float:
        return math.hypot(self.cosp, self.sinp)


class GdMode(enum.Enum):
    """How the parabolic Gudermann angle is reported.

    RAW is the principal arctangent of sinp/cosp and jumps from pi/2 to
    -pi/2 at phi*; CONTINUOUS integrates 1/Ip**2 and is the polar angle.
    """

    RAW = "raw"
    CONTINUOUS = "continuous"


def cubic_residual(phi: float, y: float) -> float:
    return y**3 + 3.0 * y + 3.0 * phi - 4.0


def _radicals(phi):
    k = 4.0 - 3.0 * phi
    root = math.sqrt(1.0 + 0.25 * k * k)
    return real_cbrt(0.5 * k + root), real_cbrt(root - 0.5 * k)


def cosp_closed(phi: float) -> float:
    """cosp by Cardano's formula, switching to the hyperbolic form for large |4 - 3 phi|."""
    if abs(4.0 - 3.0 * phi) > _CARDANO_LIMIT:
        return cosp_hyper(phi)[0]
    u, v = _radicals(phi)
    return u - v


def sinp_closed(phi: float) -> float:
    """sinp as ``3 - u**2 - v**2`` from the same radicals (``u*v = 1``)."""
    if abs(4.0 - 3.0 * phi) > _CARDANO_LIMIT:
        return cosp_hyper(phi)[1]
    u, v = _radicals(phi)
    return 3.0 - u * u - v * v


def cosp_hyper(phi: float) -> tuple[float, float]:
    """(cosp, sinp) through ``asinh((3 phi - 4)/2)``."""
    w = math.asinh(0.5 * (3.0 * phi - 4.0))
    return -2.0 * math.sinh(w / 3.0), 3.0 - 2.0 * math.cosh(2.0 * w / 3.0)


def series(phi: float) -> tuple[float, float]:
    """Degree-5 Maclaurin polynomials of (cosp, sinp); error is O(phi**6)."""
    x = phi
    c = 1.0 - x / 2 - x**2 / 8 - x**3 / 24 - (5 * x**4 + x**5) / 384
    s = x - x**3 / 24 - x**4 / 32 - 7 * x**5 / 384
    return c, s


def _warn_outside(phi):
    if not 0.0 <= phi <= PHI_END:
        warnings.warn(
            f"phi = {phi!r} is outside the geometric window [0, 8/3]",
            DomainWarning,
            stacklevel=3,
        )


BACKENDS = ("closed", "hyper", "series", "area", "ode")


def evaluate(phi: float, backend: str = "closed", tol: Tolerances = DEFAULT_TOL) -> ParabolicValue:
    """(cosp, sinp) from the named backend.

    ``area`` and ``ode`` delegate to the general family and only accept the
    geometric window; the other backends are total.
    """
    if backend == "closed":
        c, s = cosp_closed(phi), sinp_closed(phi)
    elif backend == "hyper":
        c, s = cosp_hyper(phi)
    elif backend == "series":
        c, s = series(phi)
    elif backend == "area":
        v = gentrig.eval_area(gentrig.PARABOLIC, phi, tol)
        c, s = v.c, v.s
    elif backend == "ode":
        v = gentrig.eval_ode(gentrig.PARABOLIC, phi)
        c, s = v.c, v.s
    else:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return ParabolicValue(phi, c, s)


def value(phi: float) -> ParabolicValue:
    """Closed-form evaluation; warns (does not fail) outside [0, 8/3]."""
    _warn_outside(phi)
    return evaluate(phi, "closed")


def ip(phi: float) -> float:
    """Distance from the origin to (cosp, sinp), called the parabolic secant."""
    return math.hypot(cosp_closed(phi), sinp_closed(phi))


def _ip_squared(phi):
    c = cosp_closed(phi)
    s = sinp_closed(phi)
    return c * c + s * s


def cp_sp(phi: float) -> tuple[float, float]:
    """Normalized pair (cosp/Ip, sinp/Ip) on the unit circle."""
    c = cosp_closed(phi)
    s = sinp_closed(phi)
    r = math.hypot(c, s)
    return c / r, s / r


def _inv_ip2(sigma):
    return 1.0 / _ip_squared(sigma)


def _phase(a, b, tol):
    if b >= a:
        return integrate_adaptive(_inv_ip2, a, b, tol)[0]
    return -integrate_adaptive(_inv_ip2, b, a, tol)[0]


def gdp(phi: float, mode: GdMode = GdMode.CONTINUOUS, tol: Tolerances = DEFAULT_TOL) -> float:
    """Parabolic Gudermann angle.

    In RAW mode ``atan(tgp(phi))`` with the tangent taken from
    :func:`paratrig.gentrig.tangent`; raises :class:`SingularityError` at
    phi*. In CONTINUOUS mode the integral of ``1/Ip**2`` from 0 to phi.
    """
    mode = GdMode(mode)
    if mode is GdMode.RAW:
        return math.atan(gentrig.tangent(gentrig.PARABOLIC, phi, tol))
    return _phase(0.0, phi, tol)


def gdp_many(phis: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> list[float]:
    """Continuous gdp on a sorted grid by summing segment integrals."""
    out = []
    total = 0.0
    prev = 0.0
    for x in phis:
        x = float(x)
        if out and x < prev:
            raise ValueError("grid must be non-decreasing")
        total += _phase(prev, x, tol)
        prev = x
        out.append(total)
    return out


def ep(phi: float, tol: Tolerances = DEFAULT_TOL) -> tuple[float, float]:
    """Real and imaginary parts of ``exp(i * gdp(phi))``."""
    theta = gdp(phi, GdMode.CONTINUOUS, tol)
    return math.cos(theta), math.sin(theta)


def reconstruct(phi: float, tol: Tolerances = DEFAULT_TOL) -> tuple[float, float]:
    """(cosp, sinp) rebuilt as ``Ip * (cos, sin)`` of the accumulated phase."""
    theta = gdp(phi, GdMode.CONTINUOUS, tol)
    r = ip(phi)
    return r * math.cos(theta), r * math.sin(theta)


def tgp(phi: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Parabolic tangent sinp/cosp (alias of the family tangent at (2, 1))."""
    return gentrig.tangent(gentrig.PARABOLIC, phi, tol)
