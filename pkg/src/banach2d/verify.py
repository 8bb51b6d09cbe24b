"""Numerical certificates for the proved inequalities.

Each check evaluates both sides of one inequality on a concrete space and
parameter point and records the margin rhs - lhs.  A certificate passes when
the margin is nonnegative (up to a 1e-9 rounding floor), fails when it is
below -tol, and is reported "inconclusive (refine grids)" in between: with
both sides carrying one-sided grid error, a tiny negative margin is noise,
not a counterexample.

Claim identifiers: thm31 (the t1/t2 sandwich), cor31 (its t1 = 1 corollary),
rmk32 (the 2^(t-1) two-sided bound), prop34 (the convexity-modulus mean
bound), thm32 (the uniformly-non-square modulus bound), thm33 (the closed
-form bound on the t = -inf ratio supremum), prop31_convexity (midpoint
convexity of τ ↦ J_t(τ)^t).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import constants
from .constants import NONSQUARE_GAP, thm33_bound
from .geometry import NormSpace, builtin_space, euclidean
from .means import format_t, generalized_mean
from .search import SearchConfig

CLAIM_IDS = (
    "thm31",
    "cor31",
    "rmk32",
    "prop34",
    "thm32",
    "thm33",
    "prop31_convexity",
)

CERT_TOL = 5e-3
NOISE_FLOOR = 1e-9  # margins above this are rounding noise, not violations
EPS_GRID_SIZE = 401
_POLISH_TRIGGER = 0.02  # polish the eps-supremum only when the margin is close
_POLISH_ITERS = 32

DEFAULT_TAUS = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_TS = (0.5, 1.0, 2.0, 4.0)
DEFAULT_T_PAIRS = ((1.0, 1.0), (1.0, 2.0), (1.0, 4.0), (2.0, 2.0), (2.0, 4.0), (4.0, 4.0))
DEFAULT_CONVEXITY_TS = (1.0, 2.0, 4.0)
DEFAULT_CONVEXITY_TAUS = tuple(np.linspace(0.0, 2.0, 9))


def default_spaces() -> tuple[NormSpace, ...]:
    """The four spaces every claim is certified on."""
    return (
        builtin_space("hexagon"),
        builtin_space("l1_linf_hybrid"),
        builtin_space("day_james_l2_l1"),
        euclidean(),
    )


@dataclass(frozen=True)
class Certificate:
    """Outcome of one inequality check (lhs <= rhs expected)."""

    claim_id: str
    space: str
    params: tuple[tuple[str, float], ...]
    lhs: float
    rhs: float
    margin: float
    tol: float
    status: str  # "pass" | "inconclusive" | "fail" | "skipped"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def _certificate(claim_id, space, params, lhs, rhs, tol, note="") -> Certificate:
    margin = rhs - lhs
    if margin >= -NOISE_FLOOR:
        status = "pass"
    elif margin >= -tol:
        status = "inconclusive"
    else:
        status = "fail"
    return Certificate(
        claim_id=claim_id,
        space=space.label,
        params=tuple(params),
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        tol=tol,
        status=status,
        note=note,
    )


def _skipped(claim_id, space, params, tol, note) -> Certificate:
    return Certificate(
        claim_id, space.label, tuple(params), math.nan, math.nan, math.nan, tol, "skipped", note
    )


def _j_values(space, ts, tau, cfg) -> dict[float, float]:
    fam = constants.skew_james_family(space, ts, tau, "auto", cfg)
    return {t: cv.value for t, cv in fam.items()}


def check_theorem31(
    space: NormSpace,
    t1: float,
    t2: float,
    tau: float,
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> tuple[Certificate, Certificate]:
    """Both sides of the t1/t2 sandwich for the skew James-type values."""
    if not (t2 >= t1 >= 1.0):
        raise ValueError(f"need t2 >= t1 >= 1, got t1={t1}, t2={t2}")
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"need 0 <= tau <= 1, got {tau}")
    j = _j_values(space, (t1, t2), tau, cfg)
    j1, j2 = j[float(t1)], j[float(t2)]
    params = (("t1", t1), ("t2", t2), ("tau", tau))
    lower = _certificate(
        "thm31", space, params + (("side", 0.0),), j1**t2, j2**t2, tol, "lower sandwich"
    )
    bracket = max(2.0 * j1**t1 - (1.0 + tau) ** t1, 0.0)
    rhs = ((1.0 + tau) ** t2 + bracket ** (t2 / t1)) / 2.0
    upper = _certificate(
        "thm31", space, params + (("side", 1.0),), j2**t2, rhs, tol, "upper sandwich"
    )
    return lower, upper


def check_corollary31(
    space: NormSpace,
    t: float,
    tau: float,
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> tuple[Certificate, Certificate]:
    """The t1 = 1 specialization of the sandwich."""
    if t < 1.0:
        raise ValueError(f"need t >= 1, got {t}")
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"need 0 <= tau <= 1, got {tau}")
    j = _j_values(space, (1.0, t), tau, cfg)
    j1, jt = j[1.0], j[float(t)]
    params = (("t", t), ("tau", tau))
    lower = _certificate(
        "cor31", space, params + (("side", 0.0),), j1**t, jt**t, tol, "lower sandwich"
    )
    bracket = max(2.0 * j1 - (1.0 + tau), 0.0)
    rhs = ((1.0 + tau) ** t + bracket**t) / 2.0
    upper = _certificate(
        "cor31", space, params + (("side", 1.0),), jt**t, rhs, tol, "upper sandwich"
    )
    return lower, upper


def check_remark32(
    space: NormSpace,
    t: float,
    tau: float,
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> tuple[Certificate, Certificate]:
    """Two-sided 2^(t-1) bounds relating J_t to J_1 (direction flips at t = 1)."""
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"need finite t > 0, got {t}")
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"need 0 <= tau <= 1, got {tau}")
    j = _j_values(space, (1.0, t), tau, cfg)
    j1, jt = j[1.0], j[float(t)]
    params = (("t", t), ("tau", tau))
    scale = 2.0 ** (t - 1.0)
    if t >= 1.0:
        lower = _certificate(
            "rmk32", space, params + (("side", 0.0),), j1**t, jt**t, tol, "lower"
        )
        upper = _certificate(
            "rmk32", space, params + (("side", 1.0),), jt**t, scale * j1**t, tol, "upper"
        )
    else:
        lower = _certificate(
            "rmk32", space, params + (("side", 0.0),), scale * j1**t, jt**t, tol, "lower"
        )
        upper = _certificate(
            "rmk32", space, params + (("side", 1.0),), jt**t, j1**t, tol, "upper"
        )
    return lower, upper


def _eps_supremum(f, grid: np.ndarray, values: np.ndarray, near: bool) -> tuple[float, str]:
    """Max of f over the grid, golden-polished around the best cell when near-tight."""
    k = int(np.argmax(values))
    best = float(values[k])
    note = f"eps_grid={len(grid)}"
    if near:
        lo = float(grid[max(k - 1, 0)])
        hi = float(grid[min(k + 1, len(grid) - 1)])
        gr = (math.sqrt(5.0) - 1.0) / 2.0
        c, d = hi - gr * (hi - lo), lo + gr * (hi - lo)
        fc, fd = f(c), f(d)
        for _ in range(_POLISH_ITERS):
            if fc >= fd:
                hi, d, fd = d, c, fc
                c = hi - gr * (hi - lo)
                fc = f(c)
            else:
                lo, c, fc = c, d, fd
                d = lo + gr * (hi - lo)
                fd = f(d)
        best = max(best, fc, fd)
        note += ";polished"
    return best, note


def check_prop34(
    space: NormSpace,
    t: float,
    tau: float,
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> Certificate:
    """Mean bound on the skew value through the convexity modulus.

    Certified for tau in [0, 1] only (the two norm estimates behind the bound
    need 1 - tau >= 0); the restriction is recorded in the note.
    """
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"certification restricted to 0 <= tau <= 1, got {tau}")
    if cfg is None:
        cfg = SearchConfig()
    lhs = _j_values(space, (t,), tau, cfg)[float(t) + 0.0]
    grid = np.linspace(0.0, 2.0, EPS_GRID_SIZE)
    deltas = constants.delta_profile(space, grid, cfg)
    values = np.asarray(
        generalized_mean(t, 3.0 - 2.0 * deltas - tau, tau * grid + 1.0 - tau)
    )

    def f(eps: float) -> float:
        delta = constants.modulus_of_convexity(space, eps, cfg)
        return generalized_mean(t, 3.0 - 2.0 * delta - tau, tau * eps + 1.0 - tau)

    near = float(np.max(values)) - lhs < _POLISH_TRIGGER
    rhs, note = _eps_supremum(f, grid, values, near)
    return _certificate(
        "prop34",
        space,
        (("t", t), ("tau", tau)),
        lhs,
        rhs,
        tol,
        note + ";tau restricted to [0,1]",
    )


def check_thm32(
    space: NormSpace,
    t: float,
    tau: float,
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> Certificate:
    """Modulus-based bound on (J_t)^t, valid on uniformly non-square spaces.

    Spaces whose computed James constant is not below 2 - 1e-3 are skipped
    with notice rather than certified (the bound is vacuous at J = 2).
    """
    if t < 1.0:
        raise ValueError(f"need t >= 1, got {t}")
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"need 0 <= tau <= 1, got {tau}")
    if cfg is None:
        cfg = SearchConfig()
    params = (("t", t), ("tau", tau))
    james = constants.james_constant(space, cfg).value
    if james >= 2.0 - NONSQUARE_GAP:
        return _skipped(
            "thm32", space, params, tol, f"skipped: James constant {james:.6f} not < 2"
        )
    lhs = _j_values(space, (t,), tau, cfg)[float(t) + 0.0] ** t
    grid = np.linspace(james, 2.0, EPS_GRID_SIZE)
    deltas = constants.delta_profile(space, grid, cfg)
    values = (
        (1.0 - tau + tau * grid) ** t + (1.0 + tau - 2.0 * tau * deltas) ** t
    ) / 2.0

    def f(eps: float) -> float:
        delta = constants.modulus_of_convexity(space, eps, cfg)
        return ((1.0 - tau + tau * eps) ** t + (1.0 + tau - 2.0 * tau * delta) ** t) / 2.0

    near = float(np.max(values)) - lhs < _POLISH_TRIGGER
    rhs, note = _eps_supremum(f, grid, values, near)
    return _certificate("thm32", space, params, lhs, rhs, tol, note)


def check_thm33(
    space: NormSpace, cfg: SearchConfig | None = None, tol: float = CERT_TOL
) -> Certificate:
    """The closed-form James-constant bound on the t = -inf ratio supremum."""
    if cfg is None:
        cfg = SearchConfig()
    lhs = constants.g_constant(space, -math.inf, cfg).value
    james = constants.james_constant(space, cfg).value
    rhs = thm33_bound(min(2.0, max(1.0, james)))
    return _certificate("thm33", space, (("james", james),), lhs, rhs, tol)


def check_prop31_convexity(
    space: NormSpace,
    t: float,
    tau_grid: Sequence[float],
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> list[Certificate]:
    """Midpoint-convexity certificates for τ ↦ J_t(τ)^t, one per grid triple."""
    if not (math.isfinite(t) and t >= 1.0):
        raise ValueError(f"need finite t >= 1, got {t}")
    taus = sorted(float(x) for x in tau_grid)
    if len(taus) < 3:
        return []
    f = {tau: _j_values(space, (t,), tau, cfg)[float(t) + 0.0] ** t for tau in taus}
    certs = []
    for left, mid, right in zip(taus, taus[1:], taus[2:]):
        frac = (mid - left) / (right - left)
        interp = f[left] + (f[right] - f[left]) * frac
        certs.append(
            _certificate(
                "prop31_convexity",
                space,
                (("t", t), ("tau1", left), ("tau2", mid), ("tau3", right)),
                f[mid],
                interp,
                tol,
            )
        )
    return certs


def run_claims(
    spaces: Sequence[NormSpace] | None = None,
    claims: Sequence[str] = ("all",),
    cfg: SearchConfig | None = None,
    tol: float = CERT_TOL,
) -> list[Certificate]:
    """Run the standard certification grid; deterministic order of results."""
    if spaces is None:
        spaces = default_spaces()
    if cfg is None:
        cfg = SearchConfig()
    wanted = set(CLAIM_IDS) if "all" in claims else set(claims)
    unknown = wanted - set(CLAIM_IDS)
    if unknown:
        raise ValueError(f"unknown claim ids: {sorted(unknown)}; known: {CLAIM_IDS}")

    certs: list[Certificate] = []
    for claim in CLAIM_IDS:
        if claim not in wanted:
            continue
        for space in spaces:
            if claim == "thm31":
                for t1, t2 in DEFAULT_T_PAIRS:
                    for tau in DEFAULT_TAUS:
                        certs.extend(check_theorem31(space, t1, t2, tau, cfg, tol))
            elif claim == "cor31":
                for t in DEFAULT_CONVEXITY_TS:
                    for tau in DEFAULT_TAUS:
                        certs.extend(check_corollary31(space, t, tau, cfg, tol))
            elif claim == "rmk32":
                for t in DEFAULT_TS:
                    for tau in DEFAULT_TAUS:
                        certs.extend(check_remark32(space, t, tau, cfg, tol))
            elif claim == "prop34":
                for t in DEFAULT_TS:
                    for tau in DEFAULT_TAUS:
                        certs.append(check_prop34(space, t, tau, cfg, tol))
            elif claim == "thm32":
                for t in DEFAULT_CONVEXITY_TS:
                    for tau in DEFAULT_TAUS:
                        certs.append(check_thm32(space, t, tau, cfg, tol))
            elif claim == "thm33":
                certs.append(check_thm33(space, cfg, tol))
            elif claim == "prop31_convexity":
                for t in DEFAULT_CONVEXITY_TS:
                    certs.extend(
                        check_prop31_convexity(space, t, DEFAULT_CONVEXITY_TAUS, cfg, tol)
                    )
    return certs


def certificate_to_dict(cert: Certificate) -> dict:
    def _num(x):
        return None if (isinstance(x, float) and math.isnan(x)) else x

    return {
        "claim": cert.claim_id,
        "space": cert.space,
        "params": {k: v for k, v in cert.params},
        "lhs": _num(cert.lhs),
        "rhs": _num(cert.rhs),
        "margin": _num(cert.margin),
        "tol": cert.tol,
        "status": cert.status,
        "passed": cert.passed,
        "note": cert.note,
    }


def certificates_to_jsonl(certs: Sequence[Certificate]) -> str:
    return "\n".join(
        json.dumps(certificate_to_dict(c), sort_keys=True) for c in certs
    ) + ("\n" if certs else "")


def format_certificate_table(certs: Sequence[Certificate]) -> str:
    def _fmt(x):
        return "-" if (isinstance(x, float) and math.isnan(x)) else f"{x:.12g}"

    rows = [["claim", "space", "params", "lhs", "rhs", "margin", "status"]]
    for c in certs:
        params = ",".join(f"{k}={v:g}" for k, v in c.params)
        rows.append(
            [c.claim_id, c.space, params, _fmt(c.lhs), _fmt(c.rhs), _fmt(c.margin), c.status]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def summarize(certs: Sequence[Certificate]) -> dict:
    counts = {"pass": 0, "inconclusive": 0, "fail": 0, "skipped": 0}
    for c in certs:
        counts[c.status] += 1
    counts["total"] = len(certs)
    return counts
