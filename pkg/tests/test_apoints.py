"""Root scanner: winding counts, located roots, trivial a-points."""

import numpy as np
import pytest

import oracles
from zetapoints import apoints, engine

# first critical-line zeros, frozen from an independent high-precision
# computation (mpmath.zetazero)
FIRST_ZEROS = [14.134725141734693, 21.022039638771555, 25.010857580145688,
               30.424876125859513, 32.935061587739190]


def _window(a, t_high):
    win = apoints.default_window(a, 0.0, t_high)
    return apoints.nudge_window(a, win)


def test_first_zeros_located():
    pts = apoints.locate_apoints(0.0, _window(0.0, 35.0))
    assert len(pts) == len(FIRST_ZEROS)
    for p, ref in zip(pts, FIRST_ZEROS):
        assert p.gamma == pytest.approx(ref, abs=1e-9)
        assert p.beta == pytest.approx(0.5, abs=1e-9)
        assert p.residual < 1e-9


def test_count_matches_sign_change_oracle():
    eff = _window(0.0, 60.0)
    assert apoints.count_apoints(0.0, eff) == oracles.zero_count_on_line(60.0)


def test_count_equals_locate_for_complex_level():
    a = 1j
    eff = _window(a, 100.0)
    pts = apoints.locate_apoints(a, eff)
    assert apoints.count_apoints(a, eff) == len(pts)
    for p in pts:
        assert abs(engine.zeta(p.s) - a) < 1e-9
    gammas = [p.gamma for p in pts]
    assert gammas == sorted(gammas)


def test_expected_count_levels():
    # the main-term count is level-independent except at a = 1
    n0 = apoints.expected_count(0.0, 200.0)
    ni = apoints.expected_count(1j, 200.0)
    n1 = apoints.expected_count(1.0, 200.0)
    assert n0 == pytest.approx(ni)
    assert n1 != pytest.approx(n0)


def test_thread_independence():
    a = 0.5
    eff = _window(a, 120.0)
    one = apoints.locate_apoints(a, eff, workers=1)
    three = apoints.locate_apoints(a, eff, workers=3)
    assert [(p.beta, p.gamma) for p in one] == [(p.beta, p.gamma)
                                               for p in three]


def test_scan_floor_clamps_low_edge():
    # windows reaching below t = 1 are clamped (pole of zeta at s = 1
    # sits on the t = 0 edge), so these two scans agree
    a = 0.0
    w_zero = apoints.nudge_window(a, apoints.default_window(a, 0.0, 40.0))
    w_one = apoints.nudge_window(a, apoints.default_window(a, 1.0, 40.0))
    assert apoints.count_apoints(a, w_zero) == apoints.count_apoints(a, w_one)


def test_window_validation():
    with pytest.raises(ValueError):
        apoints.ScanWindow(t_low=10.0, t_high=5.0)


def test_trivial_apoints_near_even_integers():
    pts = apoints.trivial_apoints(0.3, 8, 12)
    assert len(pts) == 5
    dists = []
    for p, k in zip(pts, range(8, 13)):
        assert abs(p.s + 2.0 * k) < 0.5
        assert p.residual < 1e-9
        dists.append(abs(p.s + 2.0 * k))
    assert all(b < a for a, b in zip(dists, dists[1:]))


def test_trivial_apoints_zero_level():
    # for a = 0 the trivial zeros are exactly at -2k
    pts = apoints.trivial_apoints(0.0, 3, 6)
    assert len(pts) == 4
    for p, k in zip(pts, range(3, 7)):
        assert p.s == pytest.approx(-2.0 * k, abs=1e-10)
