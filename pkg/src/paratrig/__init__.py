"""Parabolic and generalized trigonometric functions with cross-checked backends."""

from .gentrig import (
    CIRCULAR,
    PARABOLIC,
    QUINTIC,
    Params,
    TrigValue,
    derivatives,
    eval_area,
    eval_best,
    eval_ode,
    gd_classical,
    quarter_period,
    tangent,
)
from .numerics import DEFAULT_TOL, Tolerances
from .parabolic import cosp_closed, gdp, ip, sinp_closed
from .quintic import cosm, sinm

__version__ = "0.1.0"
