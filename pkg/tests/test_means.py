import math

import numpy as np
import pytest

from banach2d.means import format_t, generalized_mean, parse_t

T_GRID = (-math.inf, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0, math.inf)


def test_arithmetic_mean():
    assert generalized_mean(1.0, 2.0, 4.0) == pytest.approx(3.0, abs=1e-14)


def test_geometric_mean():
    assert generalized_mean(0.0, 1.0, 4.0) == pytest.approx(2.0, abs=1e-14)


def test_min_max_limits():
    assert generalized_mean(-math.inf, 2.0, 3.0) == 2.0
    assert generalized_mean(math.inf, 2.0, 3.0) == 3.0


def test_zero_argument_conventions():
    # analytic limit for t <= 0; direct power formula for t > 0
    assert generalized_mean(-1.0, 2.0, 0.0) == 0.0
    assert generalized_mean(-math.inf, 0.0, 5.0) == 0.0
    assert generalized_mean(0.0, 0.0, 5.0) == 0.0
    assert generalized_mean(2.0, 2.0, 0.0) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert generalized_mean(1.0, 3.0, 0.0) == pytest.approx(1.5, rel=1e-14)


def test_idempotence():
    for t in T_GRID:
        for a in (0.0, 1e-8, 0.3, 1.0, 7.5):
            assert abs(generalized_mean(t, a, a) - a) <= 1e-13


def test_symmetry_and_homogeneity():
    rng = np.random.default_rng(7)
    for _ in range(200):
        a, b = rng.uniform(0.01, 10.0, size=2)
        lam = rng.uniform(0.1, 5.0)
        for t in T_GRID:
            m = generalized_mean(t, a, b)
            assert generalized_mean(t, b, a) == pytest.approx(m, rel=1e-13)
            assert generalized_mean(t, lam * a, lam * b) == pytest.approx(
                lam * m, rel=1e-12
            )


def test_bounded_by_min_max():
    rng = np.random.default_rng(11)
    for _ in range(500):
        a, b = rng.uniform(0.0, 10.0, size=2)
        for t in T_GRID:
            m = generalized_mean(t, a, b)
            assert min(a, b) - 1e-12 <= m <= max(a, b) + 1e-12


def test_monotone_in_t():
    rng = np.random.default_rng(13)
    for _ in range(2000):
        a, b = rng.uniform(0.0, 10.0, size=2)
        values = [generalized_mean(t, a, b) for t in T_GRID]
        for lo, hi in zip(values, values[1:]):
            assert lo <= hi + 1e-12


def test_limit_consistency_large_t():
    rng = np.random.default_rng(17)
    for _ in range(200):
        a, b = rng.uniform(0.5, 2.0, size=2)
        assert abs(generalized_mean(1e6, a, b) - max(a, b)) <= 1e-4
        assert abs(generalized_mean(-1e6, a, b) - min(a, b)) <= 1e-4
        assert abs(generalized_mean(1e-9, a, b) - math.sqrt(a * b)) <= 1e-6


def test_extreme_t_no_overflow():
    assert generalized_mean(-1e300, 0.5, 2.0) == 0.5
    assert generalized_mean(1e300, 0.5, 2.0) == 2.0
    assert generalized_mean(-50.0, 1e-200, 1.0) == pytest.approx(1e-200, rel=1e-6)


def test_array_matches_scalar():
    rng = np.random.default_rng(19)
    a = rng.uniform(0.0, 5.0, size=64)
    b = rng.uniform(0.0, 5.0, size=64)
    for t in T_GRID:
        arr = generalized_mean(t, a, b)
        for i in range(len(a)):
            assert arr[i] == pytest.approx(generalized_mean(t, a[i], b[i]), abs=1e-15)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        generalized_mean(1.0, -0.1, 2.0)
    with pytest.raises(ValueError):
        generalized_mean(1.0, 1.0, math.nan)
    with pytest.raises(ValueError):
        generalized_mean(math.nan, 1.0, 1.0)
    with pytest.raises(ValueError):
        generalized_mean(1.0, math.inf, 1.0)


def test_parse_and_format_t():
    assert parse_t("-inf") == -math.inf
    assert parse_t("+inf") == math.inf
    assert parse_t("inf") == math.inf
    assert parse_t("0") == 0.0
    assert parse_t("2.5") == 2.5
    assert format_t(-math.inf) == "-inf"
    assert format_t(math.inf) == "+inf"
    assert format_t(0.5) == "0.5"
    with pytest.raises(ValueError):
        parse_t("nan")
    with pytest.raises(ValueError):
        parse_t("abc")
