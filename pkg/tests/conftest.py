"""Shared fixtures: located point sets are expensive, so they are
computed once per session and sliced by the tests that need them."""

from __future__ import annotations

import os

import pytest

from zetapoints import apoints

WORKERS = min(4, os.cpu_count() or 1)


def _locate(a, t_high):
    win = apoints.default_window(a, 0.0, t_high)
    eff = apoints.nudge_window(a, win)
    return apoints.locate_apoints(a, eff, workers=WORKERS), eff.t_high


@pytest.fixture(scope="session")
def zeros_2000():
    """Zeros of zeta up to height 2000: (points, T_effective)."""
    return _locate(0.0, 2000.0)


@pytest.fixture(scope="session")
def apts_half_i_2000():
    """a-points for a = 0.5 + 0.5i up to height 2000."""
    return _locate(0.5 + 0.5j, 2000.0)


@pytest.fixture(scope="session")
def apts_half_1000():
    """a-points for a = 0.5 up to height 1000."""
    return _locate(0.5, 1000.0)
