"""The generalized trigonometric family C(phi|p,q), S(phi|p,q).

A member of the family traces the curve ``C**p + S**q = 1`` starting from
(1, 0); the argument ``phi`` is twice the area of the sector swept between
the x-axis, the curve and the radius to the point. Two independent
evaluations are provided: :func:`eval_area` inverts the area relation with
a bracketed root solve, :func:`eval_ode` integrates the derivative system.

Only the branch with ``S >= 0`` is supported. For even ``p`` this covers
``C`` in [-1, 1], i.e. ``phi`` in [0, 2 phi*]; for odd ``p`` the curve
escapes to infinity for negative ``C`` and support stops at ``phi*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .numerics import (
    DEFAULT_TOL,
    DomainError,
    SingularityError,
    Tolerances,
    integrate_adaptive,
    ode_integrate_through,
    solve_bracketed,
)

__all__ = [
    "Params",
    "TrigValue",
    "PARABOLIC",
    "QUINTIC",
    "CIRCULAR",
    "ODE_TOL",
    "MAX_ORDER",
    "quarter_period",
    "phi_max",
    "eval_area",
    "eval_ode",
    "eval_ode_many",
    "eval_best",
    "family_field",
    "derivatives",
    "tangent",
    "gd_classical",
    "gd_polar",
]

MAX_ORDER = 16

# The area backend is the reference; the ODE backend is the check and runs
# tighter so that long integrations stay inside the cross-backend budget.
ODE_TOL = Tolerances(abs_tol=1e-13, rel_tol=1e-12)

# phi values this close outside the domain are rounding, not user error
_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class Params:
    """Exponents selecting a family member.

    (2, 1) is the parabolic pair, (4, 1) the quintic pair, (n, n) the
    Ferrari functions and (2, 2) the circular functions.
    """

    p: int
    q: int

    def __post_init__(self):
        for name in ("p", "q"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ValueError(f"{name} must be an integer, got {value!r}")
            if not 1 <= value <= MAX_ORDER:
                raise ValueError(f"{name} must lie in [1, {MAX_ORDER}], got {value!r}")
            object.__setattr__(self, name, int(value))

    def __str__(self):
        return f"({self.p},{self.q})"


PARABOLIC = Params(2, 1)
QUINTIC = Params(4, 1)
CIRCULAR = Params(2, 2)


@dataclass(frozen=True)
class TrigValue:
    phi: float
    c: float
    s: float

    def curve_residual(self, params: Params) -> float:
        return self.c**params.p + self.s**params.q - 1.0


def _poly(p, x):
    # 1 + x + ... + x**(p-1), so that 1 - x**p = (1 - x) * _poly(p, x)
    acc = 1.0
    for _ in range(p - 1):
        acc = acc * x + 1.0
    return acc


def _point(params, t):
    """(|C|, S) on the curve at ``t = (1 - |C|)**(1/q)``.

    Writing S = t * poly(1 - t**q)**(1/q) avoids the cancellation in
    1 - C**p near C = 1.
    """
    p, q = params.p, params.q
    tq = t**q
    c = 1.0 - tq
    poly = _poly(p, c)
    return c, t * (poly if q == 1 else poly ** (1.0 / q))


def _tail_integrand(params):
    # int_{1-t**q}^{1} (1 - xi**p)**(1/q) dxi with xi = 1 - tau**q: the
    # substitution removes the infinite slope at xi = 1 when q > 1.
    p, q = params.p, params.q
    inv_q = 1.0 / q

    def g(tau):
        tq = tau**q
        poly = _poly(p, 1.0 - tq)
        return q * tq * (poly if q == 1 else poly**inv_q)

    return g


def _tail_area(params, t, tol):
    if t <= 0.0:
        return 0.0
    value, _ = integrate_adaptive(_tail_integrand(params), 0.0, t, tol)
    return value


def _quad_tol(tol):
    return Tolerances(abs_tol=0.1 * tol.abs_tol, rel_tol=0.0, max_iter=tol.max_iter)


@lru_cache(maxsize=None)
def _quarter_period_cached(params, tol):
    return 2.0 * _tail_area(params, 1.0, _quad_tol(tol))


def quarter_period(params: Params, tol: Tolerances = DEFAULT_TOL) -> float:
    """Parameter value phi* where the curve reaches (0, 1).

    ``phi* = 2 * int_0^1 (1 - xi**p)**(1/q) dxi``; 4/3 for the parabola and
    pi/2 for the circle.
    """
    return _quarter_period_cached(params, tol)


def phi_max(params: Params, tol: Tolerances = DEFAULT_TOL) -> float:
    """Upper end of the supported domain: 2 phi* for even p, phi* for odd p."""
    star = quarter_period(params, tol)
    return 2.0 * star if params.p % 2 == 0 else star


def _check_domain(params, phi, tol):
    if not math.isfinite(phi):
        raise DomainError(f"phi must be finite, got {phi!r}")
    top = phi_max(params, tol)
    if phi < -_DOMAIN_SLACK or phi > top * (1 + _DOMAIN_SLACK) + _DOMAIN_SLACK:
        raise DomainError(
            f"phi = {phi!r} outside [0, {top!r}] supported for params {params}"
        )
    return min(max(phi, 0.0), top)


def eval_area(params: Params, phi: float, tol: Tolerances = DEFAULT_TOL) -> TrigValue:
    """Evaluate (C, S) by inverting the sector-area relation.

    The unknown is ``t = (1 - |C|)**(1/q)`` in [0, 1]; the half-area
    ``C*S/2 + int_C^1 (1 - xi**p)**(1/q) dxi`` is strictly increasing in it
    and close to linear at both ends. For even p and ``phi > phi*`` the
    mirror symmetry ``C(phi) = -C(2 phi* - phi)`` is used.
    """
    phi = _check_domain(params, phi, tol)
    star = quarter_period(params, tol)
    sign = 1.0
    target = phi
    if phi > star:
        sign = -1.0
        target = max(2.0 * star - phi, 0.0)
    half_target = 0.5 * target
    quad_tol = _quad_tol(tol)
    p, q = params.p, params.q

    def residual(t):
        c, s = _point(params, t)
        return 0.5 * c * s + _tail_area(params, t, quad_tol) - half_target

    def slope(t):
        c, s = _point(params, t)
        poly = _poly(p, c)
        return 0.5 * (p * c**p + q * s**q) / poly ** ((q - 1) / q)

    if target <= 0.0:
        t = 0.0
    elif target >= star:
        t = 1.0
    else:
        t = solve_bracketed(residual, 0.0, 1.0, tol, fprime=slope, x0=target / star)
    c, s = _point(params, t)
    return TrigValue(phi, sign * c, s)


def family_field(params: Params):
    """Right-hand side ``(t, (C, S)) -> (dC, dS)`` of the derivative system."""
    p, q = params.p, params.q

    def field(_t, y):
        c, s = y[0], y[1]
        den = q * s**q + p * c**p
        return (-q * s ** (q - 1) / den, p * c ** (p - 1) / den)

    return field


def eval_ode(params: Params, phi: float, tol: Tolerances | None = None) -> TrigValue:
    """Evaluate (C, S) by integrating the derivative system from (1, 0)."""
    return eval_ode_many(params, [phi], tol)[0]


def eval_ode_many(
    params: Params, phis: Iterable[float], tol: Tolerances | None = None
) -> list[TrigValue]:
    """ODE backend on a non-decreasing sequence of phi, in one sweep."""
    tol = ODE_TOL if tol is None else tol
    phis = [_check_domain(params, float(x), DEFAULT_TOL) for x in phis]
    if any(b < a for a, b in zip(phis, phis[1:])):
        raise DomainError("phi values must be non-decreasing")
    states = ode_integrate_through(family_field(params), (1.0, 0.0), 0.0, phis, tol)
    return [TrigValue(x, float(y[0]), float(y[1])) for x, y in zip(phis, states)]


def eval_best(params: Params, phi: float, tol: Tolerances = DEFAULT_TOL) -> TrigValue:
    """Most accurate available evaluation: explicit formulas where they exist."""
    if params == PARABOLIC:
        from . import parabolic

        c = parabolic.cosp_closed(phi)
        return TrigValue(phi, c, parabolic.sinp_closed(phi))
    if params == QUINTIC:
        from . import quintic

        c = quintic.cosm(phi, tol)
        return TrigValue(phi, c, 1.0 - c**4)
    return eval_area(params, phi, tol)


def derivatives(params: Params, at: TrigValue) -> tuple[float, float]:
    """(dC/dphi, dS/dphi) at a point of the curve."""
    p, q = params.p, params.q
    den = q * at.s**q + p * at.c**p
    if not den > 0:
        raise SingularityError(
            f"derivative denominator {den!r} is not positive at ({at.c!r}, {at.s!r})"
        )
    return -q * at.s ** (q - 1) / den, p * at.c ** (p - 1) / den


def tangent(params: Params, phi: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """T = S / C; its derivative is 1 / C**2."""
    v = eval_best(params, phi, tol)
    if abs(v.c) <= 1e-14:
        raise SingularityError(f"tangent has a pole at phi = {phi!r} (C = {v.c!r})")
    return v.s / v.c


def gd_classical(phi: float) -> float:
    """Gudermann function, the integral of sech from 0 to phi.

    Odd, increasing, with range (-pi/2, pi/2).
    """
    return 2.0 * math.atan(math.tanh(0.5 * phi))


def gd_polar(phi: float) -> float:
    """Polar angle of (cosh phi, sinh phi), ``atan(tanh(phi))``.

    Its derivative is sech(2 phi) and it tends to pi/4; it is the hyperbolic
    analogue of the parabolic Gudermann function, not :func:`gd_classical`.
    """
    return math.atan(math.tanh(phi))
