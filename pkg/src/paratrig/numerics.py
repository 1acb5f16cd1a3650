"""Numerical kernels shared by the rest of the package.

Everything here is a pure function of its arguments: Gauss-Kronrod
adaptive quadrature, a bracketed Newton/bisection hybrid, a Dormand-Prince
5(4) stepper, a sign-preserving cube root and a central difference.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "NumericalError",
    "ConvergenceError",
    "BracketError",
    "QuadratureError",
    "StepSizeError",
    "DomainError",
    "SingularityError",
    "real_cbrt",
    "integrate_adaptive",
    "solve_bracketed",
    "ode_integrate",
    "ode_integrate_through",
    "fd_derivative",
]


class NumericalError(ArithmeticError):
    """Base class for failures of the numerical kernels."""


class ConvergenceError(NumericalError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class QuadratureError(ConvergenceError):
    def __init__(self, message, interval, estimate, err_est):
        super().__init__(message, best=estimate)
        self.interval = interval
        self.estimate = estimate
        self.err_est = err_est


class StepSizeError(NumericalError):
    def __init__(self, message, last_t, last_y):
        super().__init__(message)
        self.last_t = last_t
        self.last_y = last_y


class SingularityError(NumericalError):
    """A formula hit a pole or a vanishing denominator."""


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


class DomainError(ValueError):
    """An argument lies outside the supported domain of a function."""


@dataclass(frozen=True)
class Tolerances:
    """Accuracy targets for the solvers.

    ``fd_step`` is the step of the central-difference oracle and
    ``max_iter`` bounds root-solver iterations and quadrature refinements.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    fd_step: float = 1e-5
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol >= 0 and self.rel_tol >= 0):
            raise ValueError("tolerances must be non-negative")
        if not self.abs_tol + self.rel_tol > 0:
            raise ValueError("abs_tol + rel_tol must be positive")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")

    def bound(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_TOL = Tolerances()


def real_cbrt(x: float) -> float:
    """Real cube root with the sign of ``x``."""
    return float(np.cbrt(x))


# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    res_k = _WGK[7] * fc
    res_g = _WG[3] * fc
    for j in range(7):
        dx = half * _XGK[j]
        pair = f(center - dx) + f(center + dx)
        res_k += _WGK[j] * pair
        if j % 2 == 1:
            res_g += _WG[j // 2] * pair
    value = res_k * half
    err = abs((res_k - res_g) * half)
    if not math.isfinite(value):
        raise QuadratureError(
            f"non-finite integrand on [{a!r}, {b!r}]", (a, b), value, math.inf
        )
    return value, err


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[float, float]:
    """Globally adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over [a, b].

    The interval with the largest error estimate is bisected until the summed
    estimate drops below ``max(abs_tol, rel_tol * |value|)``.

    Returns
    -------
    value, err_est : float
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a > b:
        raise DomainError(f"lower limit {a!r} exceeds upper limit {b!r}")
    if a == b:
        return 0.0, 0.0

    value, err = _gk15(f, a, b)
    # max-heap on error: (-err, a, b, value)
    heap = [(-err, a, b, value)]
    total = value
    total_err = err
    for _ in range(tol.max_iter):
        if total_err <= tol.bound(total):
            break
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # interval cannot be split further in floating point
            heapq.heappush(heap, (neg_err, lo, hi, v))
            break
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        # re-sum from scratch to avoid drift from repeated subtraction
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)

    if total_err > tol.bound(total):
        worst = min(heap)
        raise QuadratureError(
            f"quadrature did not converge on [{a!r}, {b!r}]: estimate {total!r}, "
            f"error {total_err:.3g}, worst subinterval [{worst[1]!r}, {worst[2]!r}]",
            (a, b),
            total,
            total_err,
        )
    return total, total_err


def _polish(f, fprime, x, fx, lo, hi):
    # one extra Newton step once converged; kept only if it helps
    if fprime is None or fx == 0.0:
        return x
    d = fprime(x)
    if not (d != 0 and math.isfinite(d)):
        return x
    xn = x - fx / d
    if not lo <= xn <= hi:
        return x
    return xn if abs(f(xn)) < abs(fx) else x


def solve_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOL,
    fprime: Callable[[float], float] | None = None,
    x0: float | None = None,
) -> float:
    """Root of a monotone ``f`` inside [lo, hi].

    Newton steps (or secant steps when ``fprime`` is not given) are taken
    while they land strictly inside the current bracket and at least halve
    the previous step; otherwise the bracket is bisected.

    Raises
    ------
    BracketError
        If ``f(lo)`` and ``f(hi)`` have the same strict sign.
    ConvergenceError
        After ``tol.max_iter`` iterations, carrying the best iterate.
    """
    if lo > hi:
        lo, hi = hi, lo
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(
            f"f({lo!r}) = {flo!r} and f({hi!r}) = {fhi!r} have the same sign"
        )

    a, fa, b, fb = lo, flo, hi, fhi
    x = 0.5 * (a + b) if x0 is None else min(max(x0, a), b)
    prev_x = prev_fx = None
    last_step = b - a
    best_x, best_f = (a, fa) if abs(fa) < abs(fb) else (b, fb)

    for _ in range(tol.max_iter):
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if abs(fx) <= tol.abs_tol:
            return _polish(f, fprime, x, fx, min(a, b), max(a, b))
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if abs(b - a) <= tol.abs_tol + tol.rel_tol * abs(x):
            return best_x

        step = None
        if fprime is not None:
            d = fprime(x)
            if d != 0 and math.isfinite(d):
                step = fx / d
        elif prev_x is not None and fx != prev_fx:
            step = fx * (x - prev_x) / (fx - prev_fx)

        lo_b, hi_b = min(a, b), max(a, b)
        candidate = None if step is None else x - step
        if (
            candidate is None
            or not math.isfinite(candidate)
            or not lo_b < candidate < hi_b
            or abs(step) > 0.5 * abs(last_step)
        ):
            candidate = 0.5 * (a + b)
            last_step = 0.5 * (hi_b - lo_b)
        else:
            last_step = step
        prev_x, prev_fx = x, fx
        if candidate == x:
            return best_x
        x = candidate

    raise ConvergenceError(
        f"root solve did not converge in {tol.max_iter} iterations; "
        f"best iterate {best_x!r} with residual {best_f!r}",
        best=best_x,
    )


# Dormand-Prince 5(4) tableau.
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B = _DP_A[6]
_DP_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

MAX_ODE_STEPS = 200_000


def _err_norm(err, y, y_new, tol):
    scale = tol.abs_tol + tol.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(field, t, y, f0, direction, tol):
    scale = tol.abs_tol + tol.rel_tol * np.abs(y)
    d0 = float(np.sqrt(np.mean((y / scale) ** 2)))
    d1 = float(np.sqrt(np.mean((f0 / scale) ** 2)))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y + direction * h0 * f0
    f1 = np.asarray(field(t + direction * h0, y1), dtype=float)
    d2 = float(np.sqrt(np.mean(((f1 - f0) / scale) ** 2))) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1)


def ode_integrate_through(
    field: Callable[[float, np.ndarray], Sequence[float]],
    y0: Sequence[float],
    start: float,
    stops: Iterable[float],
    tol: Tolerances = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Integrate once from ``start`` and return the state at each stop.

    ``stops`` must be monotone in one direction away from ``start``; the
    stepper lands exactly on each of them in turn.
    """
    y = np.array(y0, dtype=float)
    t = float(start)
    stops = [float(s) for s in stops]
    out = []
    if not stops:
        return out
    direction = 1.0 if stops[-1] >= t else -1.0
    for s0, s1 in zip([t] + stops[:-1], stops):
        if (s1 - s0) * direction < 0:
            raise DomainError("stops must be monotone away from the start point")

    k1 = None
    h = None
    steps = 0
    for target in stops:
        while (target - t) * direction > 0:
            if k1 is None:
                k1 = np.asarray(field(t, y), dtype=float)
                h = _initial_step(field, t, y, k1, direction, tol)
            remaining = abs(target - t)
            last = h >= remaining
            h_try = remaining if last else h
            if h_try <= 16 * np.finfo(float).eps * max(abs(t), 1.0):
                raise StepSizeError(
                    f"step size underflow at t = {t!r}", last_t=t, last_y=y.copy()
                )
            dt = direction * h_try
            ks = [k1]
            for i in range(1, 7):
                yi = y + dt * sum(a * k for a, k in zip(_DP_A[i], ks))
                ks.append(np.asarray(field(t + _DP_C[i] * dt, yi), dtype=float))
            # stage 7 is evaluated at the 5th order solution (FSAL)
            y_new = y + dt * sum(b * k for b, k in zip(_DP_B, ks[:6]))
            err = dt * sum(e * k for e, k in zip(_DP_E, ks))
            norm = _err_norm(err, y, y_new, tol)
            if not np.all(np.isfinite(y_new)):
                norm = math.inf
            steps += 1
            if steps > MAX_ODE_STEPS:
                raise StepSizeError(
                    f"too many steps ({MAX_ODE_STEPS}) before reaching {target!r}",
                    last_t=t,
                    last_y=y.copy(),
                )
            if norm <= 1.0:
                t = target if last else t + dt
                y = y_new
                k1 = ks[6]
                fac = 5.0 if norm == 0 else min(5.0, 0.9 * norm ** (-0.2))
                # the clipped final step says nothing about the natural size
                if not last:
                    h = h_try * fac
            else:
                h = h_try * max(0.2, 0.9 * norm ** (-0.2))
        out.append(y.copy())
    return out


def ode_integrate(
    field: Callable[[float, np.ndarray], Sequence[float]],
    y0: Sequence[float],
    start: float,
    stop: float,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """State at ``stop`` of ``y' = field(t, y)`` with ``y(start) = y0``.

    Adaptive Dormand-Prince 5(4) with local extrapolation; the error test
    mixes ``abs_tol`` and ``rel_tol`` componentwise. Integrates backwards
    when ``stop < start``.
    """
    if start == stop:
        return np.array(y0, dtype=float)
    return ode_integrate_through(field, y0, start, [stop], tol)[0]


def fd_derivative(f: Callable[[float], float], x: float, h: float = 1e-5) -> float:
    """Central difference ``(f(x + h) - f(x - h)) / (2h)``."""
    return (f(x + h) - f(x - h)) / (2 * h)
