"""Deterministic global search over unit-sphere pairs.

Pairs are parametrized by angles (θ1, θ2) in [0, π) × [0, 2π); the θ1 range
is halved because every objective in this artifact is even, f(-x, -y) =
f(x, y).  A uniform coarse grid is followed by rounds of local re-gridding
around the best cells, shrinking the spacing geometrically.  Everything is
pure numpy with explicit lexicographic tie-breaking, so results are
deterministic for a fixed configuration regardless of how callers schedule
concurrent searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .geometry import NormSpace, Vec2

FEASIBILITY_TOL = 1e-9  # slack when enforcing the distance constraint
_LOCAL_POINTS = 21  # points per axis in each refinement grid


@dataclass(frozen=True)
class SearchConfig:
    """Grid resolution, refinement schedule and tolerances for sphere searches."""

    coarse_grid: int = 1024
    refine_rounds: int = 3
    refine_shrink: float = 0.1
    top_cells: int = 8
    tol: float = 1e-4

    def __post_init__(self):
        if self.coarse_grid < 16:
            raise ValueError("coarse_grid must be >= 16")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be >= 0")
        if not (0.0 < self.refine_shrink < 1.0):
            raise ValueError("refine_shrink must be in (0, 1)")
        if self.top_cells < 1:
            raise ValueError("top_cells must be >= 1")
        if not (self.tol > 0.0):
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class SearchResult:
    value: float
    arg: tuple[float, float]
    witnesses: tuple[Vec2, Vec2]
    method: str  # "exact" | "grid"


def _unit_points(space: NormSpace, angles: np.ndarray) -> np.ndarray:
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    return dirs / space.norm_batch(dirs)[..., None]


@lru_cache(maxsize=64)
def _sphere_table(space: NormSpace, n: int, full: bool):
    span = 2.0 * math.pi if full else math.pi
    angles = span * np.arange(n) / n
    points = _unit_points(space, angles)
    angles.setflags(write=False)
    points.setflags(write=False)
    return angles, points


class _Track:
    """Running maximum with ties broken toward the smallest (θ1, θ2)."""

    __slots__ = ("value", "th1", "th2")

    def __init__(self):
        self.value = -math.inf
        self.th1 = math.nan
        self.th2 = math.nan

    def offer(self, value: float, th1: float, th2: float) -> None:
        if value > self.value or (
            value == self.value and (th1, th2) < (self.th1, self.th2)
        ):
            self.value = value
            self.th1 = th1
            self.th2 = th2


def _top_cells(values: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest entries, ordered by (-value, index)."""
    flat = values.ravel()
    k = min(k, flat.size)
    idx = np.argpartition(flat, flat.size - k)[flat.size - k:]
    return idx[np.lexsort((idx, -flat[idx]))]


def maximize_scores(
    space: NormSpace,
    scorer: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n_scores: int,
    cfg: SearchConfig,
) -> list[tuple[float, float, float]]:
    """Maximize several score channels over S_X × S_X on shared grids.

    ``scorer(x1, x2)`` must broadcast its (..., 2) inputs and return an array
    with a leading channel axis of length ``n_scores``.  Every channel is
    evaluated at exactly the same set of pair points (coarse grid plus the
    union of all refinement grids), so channels that dominate one another
    pointwise keep that ordering in the returned maxima.  Returns one
    ``(score, θ1, θ2)`` triple per channel.
    """
    n = cfg.coarse_grid
    th1, p1 = _sphere_table(space, n, False)
    th2, p2 = _sphere_table(space, n, True)

    tracks = [_Track() for _ in range(n_scores)]
    tops: list[list[tuple[float, int, int]]] = [[] for _ in range(n_scores)]
    chunk = max(8, min(n, 2_000_000 // n))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        block = scorer(p1[lo:hi, None, :], p2[None, :, :])
        for k in range(n_scores):
            vals = block[k]
            for flat in _top_cells(vals, cfg.top_cells):
                i, j = divmod(int(flat), n)
                tops[k].append((float(vals[i, j]), lo + i, j))
    seeds: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for k in range(n_scores):
        tops[k].sort(key=lambda t: (-t[0], t[1], t[2]))
        tops[k] = tops[k][: cfg.top_cells]
        for val, i, j in tops[k]:
            tracks[k].offer(val, float(th1[i]), float(th2[j]))
        for _, i, j in tops[k]:
            if (i, j) not in seen:
                seen.add((i, j))
                seeds.append((i, j, k))

    h1 = math.pi / n
    h2 = 2.0 * math.pi / n
    m = _LOCAL_POINTS
    for i, j, owner in seeds:
        c1, c2 = float(th1[i]), float(th2[j])
        w1, w2 = h1, h2
        for _ in range(cfg.refine_rounds):
            g1 = np.linspace(c1 - w1, c1 + w1, m)
            g2 = np.linspace(c2 - w2, c2 + w2, m)
            q1 = _unit_points(space, g1)
            q2 = _unit_points(space, g2)
            block = scorer(q1[:, None, :], q2[None, :, :])
            for k in range(n_scores):
                flat = int(np.argmax(block[k]))
                a, b = divmod(flat, m)
                tracks[k].offer(float(block[k, a, b]), float(g1[a]), float(g2[b]))
            flat = int(np.argmax(block[owner]))
            a, b = divmod(flat, m)
            c1, c2 = float(g1[a]), float(g2[b])
            w1 *= cfg.refine_shrink
            w2 *= cfg.refine_shrink
    return [(tr.value, tr.th1, tr.th2) for tr in tracks]


def pair_maximize(
    space: NormSpace,
    objective: Callable[[np.ndarray, np.ndarray], np.ndarray],
    cfg: SearchConfig = SearchConfig(),
) -> SearchResult:
    """Maximize a continuous even objective over S_X × S_X.

    ``objective(x1, x2)`` must be vectorized: given broadcastable arrays of
    shape (..., 2) on the unit sphere it returns the objective values with
    the trailing coordinate axis reduced away.  The returned value is a lower
    bound on the true supremum; refinement shrinks the gap geometrically for
    Lipschitz objectives.
    """
    score, a1, a2 = maximize_scores(
        space, lambda x1, x2: objective(x1, x2)[None, ...], 1, cfg
    )[0]
    w1 = _unit_points(space, np.array([a1]))[0]
    w2 = _unit_points(space, np.array([a2]))[0]
    return SearchResult(
        value=float(score),
        arg=(float(a1), float(a2)),
        witnesses=(Vec2(*w1), Vec2(*w2)),
        method="grid",
    )


# ---------------------------------------------------------------------------
# Constrained infimum: delta_X(eps) = inf{1 - |x1+x2|/2 : |x1-x2| >= eps}.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _PairTables:
    n: int
    th1: np.ndarray
    th2: np.ndarray
    s_flat: np.ndarray
    d_flat: np.ndarray
    order: np.ndarray
    d_sorted: np.ndarray
    suffix_max_s: np.ndarray
    suffix_arg_flat: np.ndarray


@lru_cache(maxsize=8)
def _pair_tables(space: NormSpace, n: int) -> _PairTables:
    th1, p1 = _sphere_table(space, n, False)
    th2, p2 = _sphere_table(space, n, True)
    s = np.empty((n, n))
    d = np.empty((n, n))
    chunk = max(8, min(n, 2_000_000 // n))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        x1 = p1[lo:hi, None, :]
        x2 = p2[None, :, :]
        s[lo:hi] = space.norm_batch(x1 + x2)
        d[lo:hi] = space.norm_batch(x1 - x2)
    s_flat = s.ravel()
    d_flat = d.ravel()
    order = np.argsort(d_flat, kind="stable")
    d_sorted = d_flat[order]
    s_sorted = s_flat[order]
    suffix_max_s = np.maximum.accumulate(s_sorted[::-1])[::-1]
    rev = s_sorted[::-1]
    cummax = np.maximum.accumulate(rev)
    improved = np.concatenate(([True], rev[1:] > cummax[:-1]))
    rev_arg = np.maximum.accumulate(np.where(improved, np.arange(rev.size), 0))
    suffix_arg_sorted = (rev.size - 1) - rev_arg[::-1]
    suffix_arg_flat = order[suffix_arg_sorted]
    for arr in (s_flat, d_flat, order, d_sorted, suffix_max_s, suffix_arg_flat):
        arr.setflags(write=False)
    return _PairTables(n, th1, th2, s_flat, d_flat, order, d_sorted, suffix_max_s, suffix_arg_flat)


def _refine_constrained(space, eps, c1, c2, w1, w2, cfg, track) -> list[tuple[float, float]]:
    """Refine one seed; returns the centre visited after each round."""
    m = _LOCAL_POINTS
    centers = []
    for _ in range(cfg.refine_rounds):
        g1 = np.linspace(c1 - w1, c1 + w1, m)
        g2 = np.linspace(c2 - w2, c2 + w2, m)
        q1 = _unit_points(space, g1)
        q2 = _unit_points(space, g2)
        s = space.norm_batch(q1[:, None, :] + q2[None, :, :])
        d = space.norm_batch(q1[:, None, :] - q2[None, :, :])
        feasible = d >= eps - FEASIBILITY_TOL
        if np.any(feasible):
            masked = np.where(feasible, s, -np.inf)
            flat = int(np.argmax(masked))
            a, b = divmod(flat, m)
            track.offer(float(masked[a, b]), float(g1[a]), float(g2[b]))
        else:
            flat = int(np.argmax(d))  # march toward feasibility
            a, b = divmod(flat, m)
        c1, c2 = float(g1[a]), float(g2[b])
        centers.append((c1, c2))
        w1 *= cfg.refine_shrink
        w2 *= cfg.refine_shrink
    return centers


def constrained_infimum(
    space: NormSpace, eps: float, cfg: SearchConfig = SearchConfig()
) -> SearchResult:
    """Approximate the convexity-modulus infimum at separation eps.

    Uses the ">= eps" form of the constraint (equivalent to the "= eps"
    form), enforced within FEASIBILITY_TOL.  Because only feasible pairs are
    evaluated, the returned value approaches the true infimum from above.
    The result is clamped to [0, 1].
    """
    eps = float(eps)
    if not (0.0 <= eps <= 2.0):
        raise ValueError(f"eps must lie in [0, 2], got {eps}")
    n = cfg.coarse_grid
    tab = _pair_tables(space, n)
    total = tab.d_sorted.size
    track = _Track()  # maximizes |x1 + x2| over the feasible set

    candidates: list[int] = []
    i0 = int(np.searchsorted(tab.d_sorted, eps - FEASIBILITY_TOL, side="left"))
    if i0 < total:
        flat0 = int(tab.suffix_arg_flat[i0])
        track.offer(float(tab.s_flat[flat0]), *_cell_angles(tab, flat0))
        candidates.append(flat0)
    window = 8.0 * (2.0 * math.pi / n)
    wlo = int(np.searchsorted(tab.d_sorted, eps - window, side="left"))
    whi = int(np.searchsorted(tab.d_sorted, eps + window, side="right"))
    if whi > wlo:
        idxs = tab.order[wlo:whi]
        svals = tab.s_flat[idxs]
        ranked = idxs[np.lexsort((idxs, -svals))]
        # one candidate per θ1 row (the optimum often has several symmetric
        # copies and the exactly-on-grid row must get a boundary probe),
        # preferring the best feasible cell of the row when there is one
        rows = ranked // n
        feas = tab.d_flat[ranked] >= eps - FEASIBILITY_TOL
        first_any = np.unique(rows, return_index=True)[1]
        best_any = dict(zip(rows[first_any].tolist(), ranked[first_any].tolist()))
        fr = rows[feas]
        first_feas = np.unique(fr, return_index=True)[1]
        best_feasible = dict(zip(fr[first_feas].tolist(), ranked[feas][first_feas].tolist()))
        anchor = {r: best_feasible.get(r, f) for r, f in best_any.items()}
        scores = tab.s_flat[np.fromiter(anchor.values(), dtype=np.int64)]
        row_list = np.fromiter(anchor.keys(), dtype=np.int64)
        ranked_rows = row_list[np.lexsort((row_list, -scores))]
        for row in ranked_rows[: cfg.top_cells].tolist():
            for flat in (best_feasible.get(row), best_any[row]):
                if flat is not None and flat not in candidates:
                    candidates.append(flat)
    if not candidates:
        candidates.append(int(np.argmax(tab.d_flat)))

    h1 = math.pi / n
    h2 = 2.0 * math.pi / n
    crossings: list[tuple[float, float, float]] = []  # (θ1, feasible θ2, infeasible θ2)

    def _boundary_probe(b1: float, b2: float) -> None:
        # span the full d-window around the seed: near-boundary candidate
        # cells may sit several coarse cells away from the constraint boundary
        probe = np.linspace(b2 - 10.0 * h2, b2 + 10.0 * h2, 81)
        x1 = _unit_points(space, np.array([b1]))[0]
        p2 = _unit_points(space, probe)
        d = space.norm_batch(x1 - p2)
        s = space.norm_batch(x1 + p2)
        feas = d >= eps - FEASIBILITY_TOL
        if np.any(feas):
            best = int(np.argmax(np.where(feas, s, -np.inf)))
            track.offer(float(s[best]), b1, float(probe[best]))
        for i in np.flatnonzero(feas[:-1] != feas[1:]).tolist():
            lo, hi = (probe[i], probe[i + 1]) if feas[i] else (probe[i + 1], probe[i])
            crossings.append((b1, float(lo), float(hi)))

    for flat in candidates[: 2 * cfg.top_cells + 1]:
        a1, a2 = _cell_angles(tab, flat)
        # probe the raw seed row first: when the optimal θ1 sits exactly on the
        # coarse grid, refinement re-centering would otherwise wander off it.
        # Probing after every round keeps the evaluation set of a k-round run
        # a subset of the (k+1)-round run, so refinement is monotone.
        _boundary_probe(a1, a2)
        for c1, c2 in _refine_constrained(space, eps, a1, a2, h1, h2, cfg, track):
            _boundary_probe(c1, c2)

    if crossings:
        arr = np.array(crossings[:128])
        th1s, los, his = arr[:, 0], arr[:, 1], arr[:, 2]
        x1 = _unit_points(space, th1s)
        for _ in range(60):
            mid = 0.5 * (los + his)
            x2 = _unit_points(space, mid)
            feas = space.norm_batch(x1 - x2) >= eps - FEASIBILITY_TOL
            los = np.where(feas, mid, los)
            his = np.where(feas, his, mid)
        s = space.norm_batch(x1 + _unit_points(space, los))
        for i in range(len(los)):
            track.offer(float(s[i]), float(th1s[i]), float(los[i]))

    if not math.isfinite(track.value):
        # No feasible pair found anywhere: the infimum over an empty set.
        flat = int(np.argmax(tab.d_flat))
        a1, a2 = _cell_angles(tab, flat)
        w1 = _unit_points(space, np.array([a1]))[0]
        w2 = _unit_points(space, np.array([a2]))[0]
        return SearchResult(1.0, (a1, a2), (Vec2(*w1), Vec2(*w2)), "grid")

    value = min(1.0, max(0.0, 1.0 - track.value / 2.0))
    w1 = _unit_points(space, np.array([track.th1]))[0]
    w2 = _unit_points(space, np.array([track.th2]))[0]
    return SearchResult(
        value=value,
        arg=(track.th1, track.th2),
        witnesses=(Vec2(*w1), Vec2(*w2)),
        method="grid",
    )


def _cell_angles(tab: _PairTables, flat: int) -> tuple[float, float]:
    i, j = divmod(flat, tab.n)
    return float(tab.th1[i]), float(tab.th2[j])


def scan_config(cfg: SearchConfig) -> SearchConfig:
    """A cheaper configuration used while scanning one-parameter families."""
    return replace(cfg, coarse_grid=max(192, cfg.coarse_grid // 4))
