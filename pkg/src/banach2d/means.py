"""Power means of two nonnegative numbers over the extended parameter line.

The parameter t ranges over [-inf, +inf].  Finite nonzero t gives
((a^t + b^t)/2)^(1/t); the values -inf, 0 and +inf select the minimum, the
geometric mean and the maximum (the analytic limits).  Python floats already
model the extended real line, so t is a plain float and the infinities are
``math.inf`` / ``-math.inf``.
"""

from __future__ import annotations

import math

import numpy as np

ZERO_T_EPS = 1e-12  # |t| below this routes to the geometric-mean branch
_EXP_GUARD = 700.0  # beyond this t*log(min/max) would overflow exp


def parse_t(text: str) -> float:
    """Parse a mean parameter: a decimal literal or '-inf' / '+inf'."""
    s = str(text).strip().lower()
    if s in ("-inf", "-infinity"):
        return -math.inf
    if s in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    value = float(s)
    if math.isnan(value):
        raise ValueError("mean parameter must not be NaN")
    return value


def format_t(t: float) -> str:
    if t == -math.inf:
        return "-inf"
    if t == math.inf:
        return "+inf"
    return f"{t:.12g}"


def generalized_mean(t: float, a, b):
    """The t-power mean of a, b >= 0, with the limit conventions above.

    Accepts scalars or equal-shaped numpy arrays.  When the smaller argument
    is 0 and t <= 0 the analytic limit 0 is returned; for t > 0 the power
    formula applies directly.
    """
    t = float(t)
    if math.isnan(t):
        raise ValueError("mean parameter must not be NaN")
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    if np.any(a_arr < 0.0) or np.any(b_arr < 0.0):
        raise ValueError("generalized_mean requires nonnegative arguments")
    if not (np.all(np.isfinite(a_arr)) and np.all(np.isfinite(b_arr))):
        raise ValueError("generalized_mean requires finite arguments")

    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    if t == -math.inf:
        out = np.minimum(a_arr, b_arr)
    elif t == math.inf:
        out = np.maximum(a_arr, b_arr)
    elif abs(t) < ZERO_T_EPS:
        out = np.sqrt(a_arr * b_arr)
    else:
        out = _power_mean(t, a_arr, b_arr)
    return float(out) if scalar else out


def _power_mean(t: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    hi = np.maximum(a, b)
    lo = np.minimum(a, b)
    # Factor out hi, so r = lo/hi is in [0, 1] and the formula becomes
    # hi * ((1 + r^t)/2)^(1/t), evaluated in the log domain for stability.
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = np.where(hi > 0.0, lo / np.where(hi > 0.0, hi, 1.0), 1.0)
        w = t * np.log(np.where(r > 0.0, r, 1.0))
        core = np.exp(np.log1p(np.expm1(w) / 2.0) / t)
    out = hi * core
    out = np.where(lo == hi, hi, out)
    if t > 0.0:
        out = np.where(lo == 0.0, hi * 2.0 ** (-1.0 / t), out)
    else:
        out = np.where(w > _EXP_GUARD, lo, out)  # clamp where r^t would overflow
        out = np.where(lo == 0.0, 0.0, out)
    return np.where(hi == 0.0, 0.0, out)
