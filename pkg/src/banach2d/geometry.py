"""Two-dimensional normed spaces.

A space is described by one of four descriptors: an explicit symmetric polygon
(``PolytopalNorm``), a classical p-norm (``PNormSpace``), a quadrant hybrid
that switches between two norms by the sign of ``x1*x2``
(``QuadrantHybridNorm``), or a named built-in.  Every descriptor knows how to
evaluate its norm on single vectors and on numpy batches, how to parametrize
its unit sphere by angle, and (for polygonal balls) how to list the extreme
points of the unit ball.

All descriptors are immutable and hashable, so they are safe to share between
concurrent workers and to use as cache keys.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

AXIS_MATCH_TOL = 1e-12
TRIANGLE_TOL = 1e-12
_HULL_AREA_TOL = 1e-12
_SQRT3 = math.sqrt(3.0)

BUILTIN_IDS = ("hexagon", "l1_linf_hybrid", "day_james_l2_l1")


@dataclass(frozen=True)
class Vec2:
    """A point of the plane in norm-space coordinates."""

    x1: float
    x2: float

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise ValueError(f"Vec2 components must be finite, got ({self.x1}, {self.x2})")

    def __iter__(self):
        yield self.x1
        yield self.x2

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x1, -self.x2)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x1 - other.x1, self.x2 - other.x2)

    def scaled(self, factor: float) -> "Vec2":
        return Vec2(factor * self.x1, factor * self.x2)


def _as_xy(v) -> np.ndarray:
    """Coerce a Vec2 / pair / array-like into a float array of shape (..., 2)."""
    if isinstance(v, Vec2):
        arr = np.array([v.x1, v.x2], dtype=float)
    else:
        arr = np.asarray(v, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"expected 2D coordinates, got shape {arr.shape}")
    return arr


class NormSpace(ABC):
    """A two-dimensional real normed space."""

    builtin_id: str | None = None

    @property
    @abstractmethod
    def label(self) -> str:
        """Short human/machine-readable identifier used in output records."""

    @abstractmethod
    def norm_batch(self, xy: np.ndarray) -> np.ndarray:
        """Evaluate the norm on an array of shape (..., 2); returns shape (...)."""

    @abstractmethod
    def to_spec(self) -> dict:
        """JSON-compatible descriptor that round-trips through space_from_spec."""

    def norm(self, v) -> float:
        """Norm of a single vector (Vec2 or pair). Rejects non-finite input."""
        xy = _as_xy(v)
        if xy.ndim != 1:
            raise ValueError("norm() takes a single vector; use norm_batch for arrays")
        if not np.all(np.isfinite(xy)):
            raise ValueError(f"vector components must be finite, got {tuple(xy)}")
        return float(self.norm_batch(xy))

    def extreme_points(self) -> tuple[Vec2, ...] | None:
        """Extreme points of the unit ball, or None when the ball is not a polygon."""
        return None

    def sphere_point(self, theta: float) -> Vec2:
        return sphere_point(self, theta)


def _hull_ccw(points: np.ndarray) -> np.ndarray:
    """Convex hull (Andrew's monotone chain) of an (n, 2) array, CCW order.

    Collinear points interior to an edge are dropped, so the result lists the
    extreme points only.
    """
    pts = np.unique(points, axis=0)
    if len(pts) < 3:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def _half(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and np.cross(out[-1] - out[-2], p - out[-2]) <= _HULL_AREA_TOL:
                out.pop()
            out.append(p)
        return out

    lower = _half(pts)
    upper = _half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def _polygon_area(hull: np.ndarray) -> float:
    x, y = hull[:, 0], hull[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _vertices_to_vec2(hull: np.ndarray) -> tuple[Vec2, ...]:
    # canonical order: CCW starting from the smallest angle in [0, 2pi)
    ang = np.mod(np.arctan2(hull[:, 1], hull[:, 0]), 2.0 * math.pi)
    start = int(np.argmin(ang))
    rolled = np.roll(hull, -start, axis=0)
    return tuple(Vec2(float(p[0]), float(p[1])) for p in rolled)


def _edge_functionals(hull: np.ndarray) -> np.ndarray:
    """Rows f_i with gauge(v) = max_i f_i . v for the polygon hull(±vertices)."""
    nxt = np.roll(hull, -1, axis=0)
    edge = nxt - hull
    normal = np.stack([edge[:, 1], -edge[:, 0]], axis=1)  # outward for CCW order
    offset = np.einsum("ij,ij->i", normal, hull)
    if np.any(offset <= _HULL_AREA_TOL):
        raise ValueError("polytopal unit ball does not contain the origin in its interior")
    return normal / offset[:, None]


@dataclass(frozen=True)
class PNormSpace(NormSpace):
    """The plane under the classical p-norm, 1 <= p <= inf."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise ValueError(f"p-norm exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def label(self) -> str:
        return "pnorm:inf" if math.isinf(self.p) else f"pnorm:{self.p:g}"

    def norm_batch(self, xy: np.ndarray) -> np.ndarray:
        a = np.abs(xy[..., 0])
        b = np.abs(xy[..., 1])
        if math.isinf(self.p):
            return np.maximum(a, b)
        if self.p == 1.0:
            return a + b
        if self.p == 2.0:
            return np.hypot(a, b)
        hi = np.maximum(a, b)
        lo = np.minimum(a, b)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0)
            out = hi * (1.0 + r**self.p) ** (1.0 / self.p)
        return np.where(hi > 0, out, 0.0)

    def extreme_points(self) -> tuple[Vec2, ...] | None:
        if self.p == 1.0:
            return (Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1))
        if math.isinf(self.p):
            return (Vec2(1, 1), Vec2(-1, 1), Vec2(-1, -1), Vec2(1, -1))
        return None

    def to_spec(self) -> dict:
        return {"kind": "pnorm", "p": "inf" if math.isinf(self.p) else self.p}


@dataclass(frozen=True)
class PolytopalNorm(NormSpace):
    """Gauge of the symmetric polygon hull(±vertices).

    The gauge is evaluated as the maximum of one linear functional per hull
    edge, precomputed at construction; this is exact and vectorizes over
    batches.
    """

    vertices: tuple[Vec2, ...]
    _hull: tuple[Vec2, ...] = field(init=False, repr=False, compare=False)
    _functionals: np.ndarray = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable):
        verts = tuple(v if isinstance(v, Vec2) else Vec2(*_as_xy(v)) for v in vertices)
        if not verts:
            raise ValueError("polytopal descriptor needs at least one vertex")
        arr = np.array([[v.x1, v.x2] for v in verts], dtype=float)
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                if abs(float(np.cross(arr[i], arr[j]))) <= _HULL_AREA_TOL:
                    raise ValueError(
                        f"vertices {verts[i]} and {verts[j]} are proportional"
                    )
        sym = np.vstack([arr, -arr])
        hull = _hull_ccw(sym)
        if len(hull) < 3 or _polygon_area(hull) <= _HULL_AREA_TOL:
            raise ValueError("hull of ±vertices is degenerate (origin not interior)")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_hull", _vertices_to_vec2(hull))
        funcs = _edge_functionals(np.array([[v.x1, v.x2] for v in self._hull]))
        funcs.setflags(write=False)
        object.__setattr__(self, "_functionals", funcs)

    @property
    def label(self) -> str:
        return f"polytopal[{len(self._hull)}]"

    def norm_batch(self, xy: np.ndarray) -> np.ndarray:
        return np.max(xy @ self._functionals.T, axis=-1)

    def extreme_points(self) -> tuple[Vec2, ...]:
        return self._hull

    def to_spec(self) -> dict:
        return {"kind": "polytopal", "vertices": [[v.x1, v.x2] for v in self.vertices]}


@dataclass(frozen=True)
class QuadrantHybridNorm(NormSpace):
    """Norm chosen by the sign of x1*x2 (Day-James construction).

    ``same_sign`` applies where x1*x2 >= 0 and ``opposite_sign`` elsewhere.
    The two constituents must agree on the coordinate axes, which makes the
    piecewise norm well defined and continuous there.
    """

    same_sign: NormSpace
    opposite_sign: NormSpace
    builtin_id: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for axis in ((1.0, 0.0), (0.0, 1.0)):
            a = self.same_sign.norm(axis)
            b = self.opposite_sign.norm(axis)
            if abs(a - b) > AXIS_MATCH_TOL * max(1.0, a, b):
                raise ValueError(
                    f"hybrid constituents disagree on axis {axis}: {a} vs {b}"
                )

    @property
    def label(self) -> str:
        if self.builtin_id:
            return self.builtin_id
        return f"hybrid({self.same_sign.label},{self.opposite_sign.label})"

    def norm_batch(self, xy: np.ndarray) -> np.ndarray:
        same = self.same_sign.norm_batch(xy)
        opp = self.opposite_sign.norm_batch(xy)
        return np.where(xy[..., 0] * xy[..., 1] >= 0.0, same, opp)

    def extreme_points(self) -> tuple[Vec2, ...] | None:
        ext_s = self.same_sign.extreme_points()
        ext_o = self.opposite_sign.extreme_points()
        if ext_s is None or ext_o is None:
            return None
        candidates: list[list[float]] = []
        for v in ext_s:
            if v.x1 * v.x2 > _HULL_AREA_TOL:
                candidates.append([v.x1, v.x2])
        for v in ext_o:
            if v.x1 * v.x2 < -_HULL_AREA_TOL:
                candidates.append([v.x1, v.x2])
        for axis in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
            c = self.norm(axis)
            candidates.append(list(axis / c))
        arr = np.array(candidates)
        hull = _hull_ccw(np.vstack([arr, -arr]))
        return _vertices_to_vec2(hull)

    def to_spec(self) -> dict:
        if self.builtin_id:
            return {"kind": "builtin", "id": self.builtin_id}
        return {
            "kind": "quadrant_hybrid",
            "same_sign": self.same_sign.to_spec(),
            "opposite_sign": self.opposite_sign.to_spec(),
        }


@dataclass(frozen=True)
class HexagonNorm(NormSpace):
    """The regular-hexagon norm max{|x1 + x2/√3|, |x1 − x2/√3|, (2/√3)|x2|}.

    The norm is kept as its explicit three-term max formula; the six extreme
    points of the unit ball are exposed separately and cross-checked against
    the polytopal gauge in the test suite.
    """

    builtin_id: str = field(default="hexagon", compare=False)

    @property
    def label(self) -> str:
        return "hexagon"

    def norm_batch(self, xy: np.ndarray) -> np.ndarray:
        a = xy[..., 0]
        b = xy[..., 1] / _SQRT3
        return np.maximum(np.maximum(np.abs(a + b), np.abs(a - b)), 2.0 * np.abs(b))

    def extreme_points(self) -> tuple[Vec2, ...]:
        h = _SQRT3 / 2.0
        return (
            Vec2(1, 0),
            Vec2(0.5, h),
            Vec2(-0.5, h),
            Vec2(-1, 0),
            Vec2(-0.5, -h),
            Vec2(0.5, -h),
        )

    def to_spec(self) -> dict:
        return {"kind": "builtin", "id": "hexagon"}


def builtin_space(builtin_id: str) -> NormSpace:
    """Construct one of the named built-in spaces."""
    if builtin_id == "hexagon":
        return HexagonNorm()
    if builtin_id == "l1_linf_hybrid":
        return QuadrantHybridNorm(PNormSpace(math.inf), PNormSpace(1.0), builtin_id=builtin_id)
    if builtin_id == "day_james_l2_l1":
        return QuadrantHybridNorm(PNormSpace(2.0), PNormSpace(1.0), builtin_id=builtin_id)
    raise ValueError(f"unknown builtin space {builtin_id!r}; known: {BUILTIN_IDS}")


def euclidean() -> PNormSpace:
    return PNormSpace(2.0)


def space_from_spec(obj: dict) -> NormSpace:
    """Build a space from its JSON-compatible descriptor."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("space descriptor must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "polytopal":
        return PolytopalNorm(obj["vertices"])
    if kind == "pnorm":
        p = obj["p"]
        return PNormSpace(math.inf if p == "inf" else float(p))
    if kind == "quadrant_hybrid":
        return QuadrantHybridNorm(
            space_from_spec(obj["same_sign"]), space_from_spec(obj["opposite_sign"])
        )
    if kind == "builtin":
        return builtin_space(obj["id"])
    raise ValueError(f"unknown space kind {kind!r}")


def load_space(path) -> NormSpace:
    with open(path, "r", encoding="utf-8") as handle:
        return space_from_spec(json.load(handle))


def sphere_point(space: NormSpace, theta: float) -> Vec2:
    """The unit-sphere point in direction theta: (cos θ, sin θ)/‖(cos θ, sin θ)‖."""
    theta = math.fmod(float(theta), 2.0 * math.pi)
    if theta < 0.0:
        theta += 2.0 * math.pi
    d = np.array([math.cos(theta), math.sin(theta)])
    return Vec2(*(d / space.norm_batch(d)))


@dataclass(frozen=True)
class NormViolation:
    kind: str  # "symmetry" | "homogeneity" | "triangle" | "positivity"
    u: tuple[float, float]
    v: tuple[float, float] | None
    lhs: float
    rhs: float


@dataclass(frozen=True)
class NormCheckReport:
    ok: bool
    samples: int
    violations: tuple[NormViolation, ...]


def validate_norm(space: NormSpace, samples: int, max_witnesses: int = 10) -> NormCheckReport:
    """Spot-check the norm axioms on a deterministic sample of vector pairs.

    Checks symmetry, positive homogeneity, the triangle inequality (with a
    1e-12 slack) and positivity away from the origin.  Returns a failing
    report rather than raising, so callers can surface bad user-supplied
    descriptors.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(90731)
    # axis and diagonal probes first, so degenerate gauges cannot slip through
    special = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])
    u = np.vstack([special, rng.uniform(-2.0, 2.0, size=(samples, 2))])
    v = np.vstack([special[::-1], rng.uniform(-2.0, 2.0, size=(samples, 2))])
    lam = rng.uniform(-3.0, 3.0, size=samples + 4)
    samples = len(u)

    nu = space.norm_batch(u)
    nv = space.norm_batch(v)
    violations: list[NormViolation] = []

    def _collect(mask, kind, lhs, rhs, with_v):
        for i in np.flatnonzero(mask)[:max_witnesses]:
            violations.append(
                NormViolation(
                    kind,
                    (float(u[i, 0]), float(u[i, 1])),
                    (float(v[i, 0]), float(v[i, 1])) if with_v else None,
                    float(lhs[i]),
                    float(rhs[i]),
                )
            )

    scale = np.maximum(1.0, nu)
    sym = space.norm_batch(-u)
    _collect(np.abs(sym - nu) > 1e-12 * scale, "symmetry", sym, nu, False)

    hom = space.norm_batch(lam[:, None] * u)
    expected = np.abs(lam) * nu
    _collect(
        np.abs(hom - expected) > 1e-12 * np.maximum(1.0, expected),
        "homogeneity",
        hom,
        expected,
        False,
    )

    tri = space.norm_batch(u + v)
    _collect(tri > nu + nv + TRIANGLE_TOL, "triangle", tri, nu + nv, True)

    nontrivial = np.max(np.abs(u), axis=1) > 1e-9
    _collect(nontrivial & (nu <= 0.0), "positivity", nu, np.zeros(samples), False)

    return NormCheckReport(ok=not violations, samples=samples, violations=tuple(violations))
