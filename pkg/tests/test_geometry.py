import json
import math

import numpy as np
import pytest

from banach2d.geometry import (
    BUILTIN_IDS,
    HexagonNorm,
    NormSpace,
    PNormSpace,
    PolytopalNorm,
    QuadrantHybridNorm,
    Vec2,
    builtin_space,
    euclidean,
    space_from_spec,
    sphere_point,
    validate_norm,
)

SQ3 = math.sqrt(3.0)

HEX_VERTICES = [
    (1, 0),
    (0.5, SQ3 / 2),
    (-0.5, SQ3 / 2),
    (-1, 0),
    (-0.5, -SQ3 / 2),
    (0.5, -SQ3 / 2),
]


def all_spaces():
    return [
        builtin_space("hexagon"),
        builtin_space("l1_linf_hybrid"),
        builtin_space("day_james_l2_l1"),
        PNormSpace(1.0),
        euclidean(),
        PNormSpace(3.0),
        PNormSpace(math.inf),
        PolytopalNorm([(1, 0), (0, 1)]),
    ]


def test_vec2_rejects_nonfinite():
    with pytest.raises(ValueError):
        Vec2(math.nan, 0.0)
    with pytest.raises(ValueError):
        Vec2(1.0, math.inf)


def test_hexagon_values():
    hx = builtin_space("hexagon")
    assert hx.norm((1, 0)) == 1.0
    assert hx.norm((0, 0)) == 0.0
    for v in HEX_VERTICES:
        assert hx.norm(v) == pytest.approx(1.0, abs=1e-15)
    # midpoint of an edge stays on the sphere (flat boundary)
    mid = (0.75, SQ3 / 4)
    assert hx.norm(mid) == pytest.approx(1.0, abs=1e-15)


def test_hexagon_formula_matches_polytopal_gauge():
    hx = HexagonNorm()
    poly = PolytopalNorm(HEX_VERTICES[:3])
    thetas = np.linspace(0.0, 2.0 * math.pi, 733)
    pts = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1) * 1.7
    assert np.max(np.abs(hx.norm_batch(pts) - poly.norm_batch(pts))) < 1e-12


def test_hybrid_branch_values():
    hyb = builtin_space("l1_linf_hybrid")
    assert hyb.norm((1, -1)) == 2.0  # opposite signs: sum norm
    assert hyb.norm((1, 1)) == 1.0  # same signs: max norm
    dj = builtin_space("day_james_l2_l1")
    assert dj.norm((3, 4)) == 5.0
    assert dj.norm((3, -4)) == 7.0


def test_hybrid_axis_continuity():
    for sid in ("l1_linf_hybrid", "day_james_l2_l1"):
        space = builtin_space(sid)
        assert isinstance(space, QuadrantHybridNorm)
        for axis in ((1.0, 0.0), (0.0, 1.0), (-2.5, 0.0), (0.0, 3.0)):
            a = space.same_sign.norm(axis)
            b = space.opposite_sign.norm(axis)
            assert a == pytest.approx(b, abs=1e-12)


def test_hybrid_axis_mismatch_rejected():
    stretched = PolytopalNorm([(2, 0), (0, 1)])  # |(1,0)| = 0.5 here
    with pytest.raises(ValueError):
        QuadrantHybridNorm(stretched, PNormSpace(1.0))


def test_pnorm_values():
    assert PNormSpace(1.0).norm((3, -4)) == 7.0
    assert euclidean().norm((3, 4)) == 5.0
    assert PNormSpace(math.inf).norm((3, -4)) == 4.0
    assert PNormSpace(3.0).norm((1, 1)) == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-14)
    # no overflow on huge components
    assert PNormSpace(4.0).norm((1e200, 1e200)) == pytest.approx(
        1e200 * 2.0**0.25, rel=1e-12
    )
    with pytest.raises(ValueError):
        PNormSpace(0.5)


def test_norm_symmetry_and_homogeneity_everywhere():
    rng = np.random.default_rng(23)
    pts = rng.uniform(-3.0, 3.0, size=(200, 2))
    for space in all_spaces():
        n = space.norm_batch(pts)
        assert np.allclose(space.norm_batch(-pts), n, atol=1e-12)
        assert np.allclose(space.norm_batch(2.5 * pts), 2.5 * n, rtol=1e-12)


def test_norm_rejects_nonfinite_vector():
    hx = builtin_space("hexagon")
    with pytest.raises(ValueError):
        hx.norm((math.inf, 0.0))


def test_sphere_point_basics():
    assert sphere_point(euclidean(), math.pi / 2).x2 == pytest.approx(1.0, abs=1e-12)
    assert abs(sphere_point(euclidean(), math.pi / 2).x1) < 1e-12
    p = sphere_point(builtin_space("hexagon"), 0.0)
    assert (p.x1, p.x2) == (1.0, 0.0)
    q = sphere_point(PNormSpace(1.0), math.pi / 4)
    assert q.x1 == pytest.approx(0.5, abs=1e-14)
    assert q.x2 == pytest.approx(0.5, abs=1e-14)


def test_sphere_point_has_unit_norm():
    thetas = np.linspace(-1.0, 9.0, 101)  # includes angles outside [0, 2pi)
    for space in all_spaces():
        for theta in thetas:
            p = sphere_point(space, float(theta))
            assert abs(space.norm(p) - 1.0) <= 1e-12


def test_extreme_points_builtin_lists():
    hx = builtin_space("hexagon")
    got = sorted((round(v.x1, 9), round(v.x2, 9)) for v in hx.extreme_points())
    want = sorted((round(a, 9), round(b, 9)) for a, b in HEX_VERTICES)
    assert got == want

    hyb = builtin_space("l1_linf_hybrid")
    got = sorted((round(v.x1, 9), round(v.x2, 9)) for v in hyb.extreme_points())
    want = sorted([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    assert got == want


def test_extreme_points_absent_for_smooth_norms():
    assert euclidean().extreme_points() is None
    assert PNormSpace(3.0).extreme_points() is None
    assert builtin_space("day_james_l2_l1").extreme_points() is None


def test_extreme_points_pnorm_polytopes():
    assert len(PNormSpace(1.0).extreme_points()) == 4
    assert len(PNormSpace(math.inf).extreme_points()) == 4


def test_extreme_points_lie_on_sphere_and_are_minimal():
    for space in all_spaces():
        ext = space.extreme_points()
        if ext is None:
            continue
        pts = np.array([[v.x1, v.x2] for v in ext])
        assert np.allclose(space.norm_batch(pts), 1.0, atol=1e-12)
        # no point is a convex combination of its neighbours: strict turns
        m = len(pts)
        for i in range(m):
            prev_pt = pts[(i - 1) % m]
            nxt = pts[(i + 1) % m]
            cross = np.cross(pts[i] - prev_pt, nxt - pts[i])
            assert abs(cross) > 1e-9


def test_polytopal_drops_redundant_vertex():
    poly = PolytopalNorm([(1, 0), (0, 1), (0.2, 0.2)])  # third point interior
    ext = poly.extreme_points()
    assert len(ext) == 4
    assert poly.norm((1, 1)) == pytest.approx(2.0, rel=1e-14)


def test_polytopal_construction_rejections():
    with pytest.raises(ValueError):
        PolytopalNorm([])
    with pytest.raises(ValueError):
        PolytopalNorm([(1, 0), (2, 0)])  # proportional pair
    with pytest.raises(ValueError):
        PolytopalNorm([(1, 0), (-0.5, 0)])  # antipodal direction, degenerate hull
    with pytest.raises(ValueError):
        PolytopalNorm([(1, 1)])  # segment through the origin


def test_spec_roundtrip():
    for space in all_spaces():
        again = space_from_spec(json.loads(json.dumps(space.to_spec())))
        pts = np.random.default_rng(5).uniform(-2, 2, size=(50, 2))
        assert np.allclose(space.norm_batch(pts), again.norm_batch(pts), atol=1e-14)


def test_spec_parse_errors():
    with pytest.raises(ValueError):
        space_from_spec({"kind": "mystery"})
    with pytest.raises(ValueError):
        space_from_spec({"no": "kind"})
    with pytest.raises(ValueError):
        builtin_space("octagon")
    assert set(BUILTIN_IDS) == {"hexagon", "l1_linf_hybrid", "day_james_l2_l1"}


def test_validate_norm_passes_on_real_norms():
    assert validate_norm(builtin_space("hexagon"), 1000).ok
    assert validate_norm(PolytopalNorm([(1, 0), (0, 1)]), 1000).ok
    assert validate_norm(builtin_space("day_james_l2_l1"), 1000).ok


def test_validate_norm_flags_violations():
    class Skewed(NormSpace):
        # deliberately asymmetric gauge: fails the symmetry axiom
        @property
        def label(self):
            return "broken"

        def norm_batch(self, xy):
            return np.abs(xy[..., 0]) + np.maximum(xy[..., 1], 0.0)

        def to_spec(self):
            return {"kind": "broken"}

    report = validate_norm(Skewed(), 500)
    assert not report.ok
    assert any(v.kind == "symmetry" for v in report.violations)

    class Collapsing(NormSpace):
        # vanishes on the x2 axis: fails positivity
        @property
        def label(self):
            return "seminorm"

        def norm_batch(self, xy):
            return np.abs(xy[..., 0])

        def to_spec(self):
            return {"kind": "seminorm"}

    report = validate_norm(Collapsing(), 500)
    assert not report.ok

    with pytest.raises(ValueError):
        validate_norm(builtin_space("hexagon"), 0)
