"""Geometric constants of two-dimensional normed spaces.

The central quantity is the skew James-type value: the supremum over
unit-sphere pairs (x1, x2) of the t-power mean of ‖x1 + τx2‖ and ‖τx1 − x2‖.
On spaces whose unit ball is a polygon and for finite t >= 1 the supremum is
attained on ordered pairs of extreme points, so an exact enumeration path is
available; everything else goes through the deterministic grid search.

When several t parameters are requested together for the same (space, τ),
all of them are evaluated over one shared set of search points, which keeps
the returned values consistent with the pointwise monotonicity of power
means (no spurious inversions between nearly equal constants).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import means
from .geometry import NormSpace, Vec2
from .means import ZERO_T_EPS, format_t, generalized_mean
from .search import (
    SearchConfig,
    SearchResult,
    constrained_infimum,
    maximize_scores,
    pair_maximize,
    scan_config,
    _unit_points,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_TAU_SCAN_POINTS = 201
_GOLDEN_ITERS = 40
NONSQUARE_GAP = 1e-3  # James constant must sit below 2 by this margin


@dataclass(frozen=True)
class ConstantValue:
    """Result of one constant computation."""

    value: float
    witnesses: tuple[Vec2, Vec2] | None
    method_used: str  # "exact" | "grid"
    tau_star: float | None = None


@dataclass(frozen=True)
class ConstantRequest:
    """Parameters of a skew James-type evaluation."""

    space: NormSpace
    t: float
    tau: float
    method: str = "auto"
    cfg: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self):
        _validate_tau(self.tau)
        if self.method not in ("auto", "exact", "grid"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "exact":
            _require_exact(self.space, self.t)

    def evaluate(self) -> ConstantValue:
        return skew_james(self.space, self.t, self.tau, method=self.method, cfg=self.cfg)


def _validate_tau(tau: float) -> None:
    if not (math.isfinite(tau) and tau >= 0.0):
        raise ValueError(f"tau must be a finite nonnegative real, got {tau}")


def _exact_available(space: NormSpace, t: float) -> bool:
    return space.extreme_points() is not None and math.isfinite(t) and t >= 1.0


def _require_exact(space: NormSpace, t: float) -> None:
    if space.extreme_points() is None:
        raise ValueError("exact method requires a space with listed extreme points")
    if not (math.isfinite(t) and t >= 1.0):
        raise ValueError(
            "exact method requires finite t >= 1 (the extreme-point reduction "
            f"does not apply to t = {format_t(t)})"
        )


def _canonical_ts(ts: Sequence[float]) -> tuple[float, ...]:
    vals = set()
    for t in ts:
        t = float(t)
        if math.isnan(t):
            raise ValueError("t must not be NaN")
        vals.add(t + 0.0)
    return tuple(sorted(vals))


def _pair_norms(space, x1, x2, tau, skew):
    a = space.norm_batch(x1 + tau * x2)
    if skew:
        b = space.norm_batch(tau * x1 - x2)
    else:
        b = space.norm_batch(x1 - tau * x2)
    return a, b


def _rank_scores(ts, a, b) -> np.ndarray:
    """Monotone transforms of the t-means, one channel per t, cheap to rank by."""
    out = np.empty((len(ts),) + a.shape)
    la = lb = None
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for k, t in enumerate(ts):
            if t == -math.inf:
                out[k] = np.minimum(a, b)
            elif t == math.inf:
                out[k] = np.maximum(a, b)
            elif abs(t) < ZERO_T_EPS:
                out[k] = a * b
            else:
                if la is None:
                    la = np.log(a)
                    lb = np.log(b)
                s = np.logaddexp(t * la, t * lb)
                out[k] = s if t > 0 else -s
    return out


def _scalar_pair_norms(space, w1: Vec2, w2: Vec2, tau, skew) -> tuple[float, float]:
    x1 = np.array([w1.x1, w1.x2])
    x2 = np.array([w2.x1, w2.x2])
    a, b = _pair_norms(space, x1, x2, tau, skew)
    return float(a), float(b)


def _exact_family(space, ts, tau, skew) -> dict[float, ConstantValue]:
    ext = space.extreme_points()
    pts = np.array([[v.x1, v.x2] for v in ext])
    a, b = _pair_norms(space, pts[:, None, :], pts[None, :, :], tau, skew)
    out = {}
    for t in ts:
        vals = np.asarray(generalized_mean(t, a, b))
        flat = int(np.argmax(vals))
        i, j = divmod(flat, len(ext))
        out[t] = ConstantValue(float(vals[i, j]), (ext[i], ext[j]), "exact")
    return out


def _grid_family(space, ts, tau, skew, cfg) -> dict[float, ConstantValue]:
    def scorer(x1, x2):
        a, b = _pair_norms(space, x1, x2, tau, skew)
        return _rank_scores(ts, a, b)

    results = maximize_scores(space, scorer, len(ts), cfg)
    out = {}
    for t, (_, a1, a2) in zip(ts, results):
        w1 = Vec2(*_unit_points(space, np.array([a1]))[0])
        w2 = Vec2(*_unit_points(space, np.array([a2]))[0])
        a, b = _scalar_pair_norms(space, w1, w2, tau, skew)
        out[t] = ConstantValue(generalized_mean(t, a, b), (w1, w2), "grid")
    return out


@lru_cache(maxsize=4096)
def _family_cached(space, ts, tau, skew, method, cfg) -> dict[float, ConstantValue]:
    if method == "exact":
        return _exact_family(space, ts, tau, skew)
    if method == "grid":
        return _grid_family(space, ts, tau, skew, cfg)
    exact_ts = tuple(t for t in ts if _exact_available(space, t))
    grid_ts = tuple(t for t in ts if not _exact_available(space, t))
    out: dict[float, ConstantValue] = {}
    if exact_ts:
        out.update(_exact_family(space, exact_ts, tau, skew))
    if grid_ts:
        out.update(_grid_family(space, grid_ts, tau, skew, cfg))
    return out


def _family(space, ts, tau, skew, method, cfg) -> dict[float, ConstantValue]:
    _validate_tau(tau)
    if method not in ("auto", "exact", "grid"):
        raise ValueError(f"unknown method {method!r}")
    key = _canonical_ts(ts)
    if method == "exact":
        for t in key:
            _require_exact(space, t)
    if cfg is None:
        cfg = SearchConfig()
    if not skew and float(tau) == 1.0:
        # at τ = 1 the skew and plain objectives are the same function
        skew = True
    return _family_cached(space, key, float(tau), skew, method, cfg)


def skew_james_family(
    space: NormSpace,
    ts: Sequence[float],
    tau: float,
    method: str = "auto",
    cfg: SearchConfig | None = None,
) -> dict[float, ConstantValue]:
    """Skew James-type values for several t at once, on shared search grids."""
    fam = _family(space, ts, tau, True, method, cfg)
    return {float(t) + 0.0: fam[float(t) + 0.0] for t in ts}


def james_type_family(
    space: NormSpace,
    ts: Sequence[float],
    tau: float,
    method: str = "auto",
    cfg: SearchConfig | None = None,
) -> dict[float, ConstantValue]:
    """Plain (non-skew) James-type values, ‖x1 + τx2‖ paired with ‖x1 − τx2‖."""
    fam = _family(space, ts, tau, False, method, cfg)
    return {float(t) + 0.0: fam[float(t) + 0.0] for t in ts}


def skew_james(
    space: NormSpace,
    t: float,
    tau: float,
    method: str = "auto",
    cfg: SearchConfig | None = None,
) -> ConstantValue:
    """The skew James-type constant: sup of M_t(‖x1 + τx2‖, ‖τx1 − x2‖) on S_X."""
    return skew_james_family(space, (t,), tau, method, cfg)[float(t) + 0.0]


def james_type(
    space: NormSpace,
    t: float,
    tau: float,
    method: str = "auto",
    cfg: SearchConfig | None = None,
) -> ConstantValue:
    """The James-type constant: sup of M_t(‖x1 + τx2‖, ‖x1 − τx2‖) on S_X."""
    return james_type_family(space, (t,), tau, method, cfg)[float(t) + 0.0]


def james_constant(space: NormSpace, cfg: SearchConfig | None = None) -> ConstantValue:
    """sup of min(‖x1 + x2‖, ‖x1 − x2‖): 2 exactly on spaces that are not
    uniformly non-square, and in [√2, 2) otherwise."""
    return skew_james(space, -math.inf, 1.0, cfg=cfg)


def uniformly_nonsquare(space: NormSpace, cfg: SearchConfig | None = None) -> bool:
    return james_constant(space, cfg).value < 2.0 - NONSQUARE_GAP


def modulus_of_convexity(
    space: NormSpace, eps: float, cfg: SearchConfig | None = None
) -> float:
    """δ_X(eps): the convexity-modulus infimum at separation eps."""
    if cfg is None:
        cfg = SearchConfig()
    return constrained_infimum(space, eps, cfg).value


@lru_cache(maxsize=64)
def _delta_profile_cached(space, eps_values, cfg) -> np.ndarray:
    out = np.array([constrained_infimum(space, e, cfg).value for e in eps_values])
    out.setflags(write=False)
    return out


def delta_profile(
    space: NormSpace, eps_values: Sequence[float], cfg: SearchConfig | None = None
) -> np.ndarray:
    """δ_X evaluated on a grid of eps values (cached per grid)."""
    if cfg is None:
        cfg = SearchConfig()
    return _delta_profile_cached(space, tuple(float(e) for e in eps_values), cfg)


DELTA_ZERO_TOL = 1e-6


def convexity_coefficient(space: NormSpace, cfg: SearchConfig | None = None) -> float:
    """The largest eps at which δ_X still vanishes (within DELTA_ZERO_TOL).

    Scans an eps grid, then bisects between the last vanishing and the first
    positive grid point down to cfg.tol.
    """
    if cfg is None:
        cfg = SearchConfig()
    grid = np.linspace(0.0, 2.0, 81)
    deltas = delta_profile(space, grid, cfg)
    zero = deltas <= DELTA_ZERO_TOL
    if not np.any(zero):
        return 0.0
    last = int(np.max(np.flatnonzero(zero)))
    if last == len(grid) - 1:
        return 2.0
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > cfg.tol:
        mid = 0.5 * (lo + hi)
        if modulus_of_convexity(space, mid, cfg) <= DELTA_ZERO_TOL:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Outer suprema over the skew parameter τ in [0, 1].
# ---------------------------------------------------------------------------


def _golden_max(f, lo: float, hi: float, iters: int) -> float:
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def _ratio_supremum(space, t, cfg, skew) -> ConstantValue:
    """sup over τ in [0, 1] of J_t(τ)² / (1 + τ²).

    A uniform τ-scan (cheap inner grids) locates the basin, golden-section
    sharpens τ, and the final value is re-evaluated at the caller's full
    configuration at both candidate maximizers.
    """
    if cfg is None:
        cfg = SearchConfig()
    fam = skew_james_family if skew else james_type_family
    light = scan_config(cfg)

    def ratio(tau: float, use_cfg) -> float:
        value = fam(space, (t,), tau, "auto", use_cfg)[float(t) + 0.0].value
        return value * value / (1.0 + tau * tau)

    taus = np.linspace(0.0, 1.0, _TAU_SCAN_POINTS)
    scan = np.array([ratio(float(tau), light) for tau in taus])
    k = int(np.argmax(scan))
    lo = float(taus[max(k - 1, 0)])
    hi = float(taus[min(k + 1, len(taus) - 1)])
    tau_golden = _golden_max(lambda x: ratio(x, light), lo, hi, _GOLDEN_ITERS)

    best_tau, best_val = None, -math.inf
    for tau in sorted({float(taus[k]), float(tau_golden)}):
        val = ratio(tau, cfg)
        if val > best_val:
            best_tau, best_val = tau, val
    inner = fam(space, (t,), best_tau, "auto", cfg)[float(t) + 0.0]
    return ConstantValue(best_val, inner.witnesses, inner.method_used, tau_star=best_tau)


def g_constant(space: NormSpace, t: float, cfg: SearchConfig | None = None) -> ConstantValue:
    """sup over τ in [0, 1] of (skew James-type value)² / (1 + τ²)."""
    return _ratio_supremum(space, float(t), cfg, skew=True)


def c_t_constant(space: NormSpace, t: float, cfg: SearchConfig | None = None) -> ConstantValue:
    """The von Neumann–Jordan-type supremum over τ in [0, 1] (non-skew)."""
    return _ratio_supremum(space, float(t), cfg, skew=False)


def von_neumann_jordan(space: NormSpace, cfg: SearchConfig | None = None) -> ConstantValue:
    return c_t_constant(space, 2.0, cfg)


def zbaganu(space: NormSpace, cfg: SearchConfig | None = None) -> ConstantValue:
    return c_t_constant(space, 0.0, cfg)


def gao_skew(space: NormSpace, tau: float, cfg: SearchConfig | None = None) -> float:
    """Skew Gao parameter: twice the squared skew James-type value at t = 2."""
    _validate_tau(tau)
    value = skew_james(space, 2.0, tau, cfg=cfg).value
    return 2.0 * value * value


LYJ_CROSS_CHECK_TOL = 5e-3


def lyj_constant(
    space: NormSpace, lam: float, mu: float, cfg: SearchConfig | None = None
) -> float:
    """sup of (‖λx1 + μx2‖² + ‖μx1 − λx2‖²) / (2(λ² + μ²)) over S_X × S_X."""
    if lam < 0.0 or mu < 0.0 or not (math.isfinite(lam) and math.isfinite(mu)):
        raise ValueError("lam and mu must be finite and nonnegative")
    if lam == 0.0 and mu == 0.0:
        raise ValueError("lam and mu must not both be zero")
    if cfg is None:
        cfg = SearchConfig()
    denom = 2.0 * (lam * lam + mu * mu)

    def objective(x1, x2):
        a = space.norm_batch(lam * x1 + mu * x2)
        b = space.norm_batch(mu * x1 - lam * x2)
        return (a * a + b * b) / denom

    value = pair_maximize(space, objective, cfg).value
    if lam == 1.0:
        j2 = skew_james(space, 2.0, mu, cfg=cfg).value
        cross = j2 * j2 / (1.0 + mu * mu)
        if abs(value - cross) > LYJ_CROSS_CHECK_TOL:
            raise RuntimeError(
                f"search inconsistency: direct quotient {value} vs squared-mean "
                f"route {cross} at mu={mu}"
            )
    return value


def thm33_bound(j: float) -> float:
    """Closed-form upper bound for the t = -inf ratio supremum as a function of
    the James constant J in [1, 2].

    At J = 1 the quotient degenerates to 0/0; the analytic limit 1 is
    returned (the expression simplifies to (J-1)² + 1 on (1, 2]).
    """
    j = float(j)
    if not (1.0 - 1e-12 <= j <= 2.0 + 1e-12):
        raise ValueError(f"James constant must lie in [1, 2], got {j}")
    j = min(2.0, max(1.0, j))
    if j - 1.0 < 1e-12:
        return 1.0
    jm1_sq = (j - 1.0) ** 2
    a = math.sqrt((2.0 * j - j * j) ** 2 + 4.0 * jm1_sq)
    return jm1_sq + 4.0 * jm1_sq * a / ((j * j - 2.0 * j + a) ** 2 + 4.0 * jm1_sq)


def constant_record(
    name: str,
    space: NormSpace,
    result: ConstantValue | float,
    t: float | None = None,
    tau: float | None = None,
) -> dict:
    """JSON-ready record for one computed constant."""
    if isinstance(result, ConstantValue):
        value = result.value
        method = result.method_used
        witnesses = (
            [[w.x1, w.x2] for w in result.witnesses] if result.witnesses else None
        )
        tau_star = result.tau_star
    else:
        value = float(result)
        method = "grid"
        witnesses = None
        tau_star = None
    return {
        "constant": name,
        "space": space.label,
        "t": None if t is None else format_t(t),
        "tau": tau,
        "value": value,
        "method": method,
        "witnesses": witnesses,
        "tau_star": tau_star,
    }
