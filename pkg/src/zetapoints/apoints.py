"""Locating and counting a-points of zeta(s) - a in rectangles.

Counting is the argument principle: the winding number
(1/2 pi i) * contour integral of zeta'/(zeta - a) around the rectangle,
by trapezoid quadrature with step halving until the value is close to an
integer.  Rectangles are sliced horizontally at heights chosen to stay
away from roots; slices holding one root are resolved by Newton
iteration on zeta(s) - a, slices holding several are bisected further.

The effective scan floor is t = 1: below that the pole of zeta at s = 1
sits on or near the bottom edge, and the finitely many possible a-points
near s = 0 are outside the supported region anyway.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import engine
from .engine import DEFAULT_OPTS

_STEP0 = 0.05            # initial quadrature step on each edge
_COARSE_FACTOR = 6       # step multiplier right of sigma = 2.5
_DEFECT_ACCEPT = 0.06    # immediate-accept winding defect
_DEFECT_LIMIT = 0.25     # hard defect limit after refinement
_MAX_HALVINGS = 7
# Near a simple root |zeta'/(zeta-a)| ~ 1/|s - rho|, so a sampling step h
# and threshold G reject any cut with a root closer than about
# sqrt(1/G^2 - h^2/4).  The pairs below give clearance >= 0.1 for
# interior slice cuts and >= 0.0097 for the window's own t-edges.
_CUT_STEP, _CUT_GRAD_LIMIT = 0.06, 9.0
_EDGE_STEP, _EDGE_GRAD_LIMIT = 0.005, 100.0
_PATH_GRAD_LIMIT = 400.0  # anything above this on a quadrature path is a bug
_SLICE_HEIGHT = 0.9
_CHUNK_HEIGHT = 32.0     # fixed so results do not depend on worker count
_MIN_BOX_HEIGHT = 1e-6
_SCAN_FLOOR = 1.0


class ScanError(RuntimeError):
    """Base class for scan failures; carries the offending sub-box."""


class BoundaryError(ScanError):
    pass


class QuadratureError(ScanError):
    pass


class NewtonError(ScanError):
    pass


class MultipleRootError(ScanError):
    pass


@dataclass(frozen=True)
class ScanWindow:
    t_low: float
    t_high: float
    sigma_low: float = -1.0
    sigma_high: float = 6.0

    def __post_init__(self):
        if not (self.t_low < self.t_high and self.sigma_low < self.sigma_high):
            raise ValueError(f"degenerate window {self}")


@dataclass(frozen=True)
class APoint:
    a: complex
    beta: float
    gamma: float
    residual: float

    @property
    def s(self) -> complex:
        return complex(self.beta, self.gamma)


def default_window(a: complex, t_low: float, t_high: float) -> ScanWindow:
    """Window wide enough that all nontrivial a-points of this level fit.

    zeta -> 1 to the right, so roots of zeta - a need |1 - a| small-ish;
    widening by log2(1+|a|) covers every level we support.
    """
    sigma_high = 4.0 + math.log2(1.0 + abs(complex(a)))
    return ScanWindow(t_low=t_low, t_high=t_high,
                      sigma_low=-1.0, sigma_high=sigma_high)


def expected_count(a: complex, big_t: float) -> float:
    """Main term (T/2pi) log(T/(2 pi e c_a)) of the a-point count N_a(T);
    c_a = 1 except c_1 = 2."""
    c_a = 2.0 if abs(complex(a) - 1.0) < 1e-12 else 1.0
    if big_t <= 2.0 * math.pi * math.e * c_a:
        raise ValueError("expected_count: T must exceed 2 pi e c_a")
    return big_t / (2.0 * math.pi) * math.log(big_t / (2.0 * math.pi * math.e * c_a))


# ----------------------------------------------------------------------
# boundary paths and winding values


def _segment(z0: complex, z1: complex, step: float) -> np.ndarray:
    n = max(1, int(math.ceil(abs(z1 - z0) / step)))
    return z0 + (z1 - z0) * np.arange(n + 1) / n


def _boundary_path(box: ScanWindow, step: float) -> np.ndarray:
    """Closed counterclockwise polyline; coarser sampling right of 2.5
    where the integrand is tiny."""
    lo, hi = box.sigma_low, box.sigma_high
    mid = min(2.5, hi)
    parts = []

    def horizontal(t, reverse):
        segs = [_segment(complex(lo, t), complex(mid, t), step)]
        if hi > mid:
            segs.append(_segment(complex(mid, t), complex(hi, t),
                                 step * _COARSE_FACTOR)[1:])
        line = np.concatenate(segs)
        return line[::-1] if reverse else line

    parts.append(horizontal(box.t_low, reverse=False))
    parts.append(_segment(complex(hi, box.t_low), complex(hi, box.t_high), step)[1:])
    parts.append(horizontal(box.t_high, reverse=True)[1:])
    parts.append(_segment(complex(lo, box.t_high), complex(lo, box.t_low), step)[1:])
    return np.concatenate(parts)


def _winding_value(a, path, opts):
    jet = engine.zeta_many(path, 1, opts)
    f = jet[0] - a
    absf = np.abs(f)
    g = jet[1] / f
    integral = np.sum(0.5 * (g[:-1] + g[1:]) * np.diff(path))
    w = integral / (2j * math.pi)
    return w, float(absf.min()), float(np.abs(g).max())


def _box_count(a, box, opts):
    # thin boxes arise while separating close roots; start finer there so
    # the trapezoid rule resolves poles at the matching clearance scale
    step0 = min(_STEP0, (box.t_high - box.t_low) / 8.0)
    prev = None
    for k in range(_MAX_HALVINGS):
        path = _boundary_path(box, step0 / 2 ** k)
        w, min_f, max_g = _winding_value(a, path, opts)
        if max_g > _PATH_GRAD_LIMIT:
            raise BoundaryError(f"root nearly on the boundary of {box}")
        n = int(round(w.real))
        defect = abs(w - n)
        if defect < _DEFECT_ACCEPT and n >= 0:
            return n
        if (defect < _DEFECT_LIMIT and prev is not None
                and abs(w - prev) < 0.1 and n >= 0):
            return n
        prev = w
    raise QuadratureError(f"winding defect stuck at {defect:.3f} for {box}")


# ----------------------------------------------------------------------
# cut placement


def _cut_badness(a, t, box, opts, step=_CUT_STEP):
    """max |zeta'/(zeta-a)| sampled along a candidate horizontal cut."""
    lo = max(box.sigma_low, -0.9)
    hi = min(box.sigma_high, 3.2)
    sig = np.linspace(lo, hi, int(math.ceil((hi - lo) / step)) + 1)
    jet = engine.zeta_many(sig + 1j * t, 1, opts)
    f = jet[0] - a
    if np.any(np.abs(f) == 0.0):
        return math.inf
    return float(np.abs(jet[1] / f).max())


def _good_cut(a, t0, box, wiggle, opts, clearance=0.1):
    """A cut height near t0 with no root within `clearance`; raises if
    none of the candidate offsets is admissible."""
    step = min(_CUT_STEP, clearance / 2.0)
    limit = 0.95 / clearance
    for off in (0.0, 0.2, -0.2, 0.45, -0.45, 0.7, -0.7, 0.95, -0.95):
        t = t0 + off * wiggle
        if not box.t_low + 1e-9 < t < box.t_high - 1e-9:
            continue
        if _cut_badness(a, t, box, opts, step=step) < limit:
            return t
    raise BoundaryError(f"no admissible cut near t={t0} in {box}")


# ----------------------------------------------------------------------
# Newton refinement


def _newton_from(a, seed, box, opts, margin=0.75):
    s = complex(seed)
    for _ in range(40):
        jet = engine.zeta_many(np.array([s]), 1, opts)
        f = jet[0, 0] - a
        fp = jet[1, 0]
        if fp == 0.0:
            return None
        delta = f / fp
        s -= delta
        if (s.imag < box.t_low - margin or s.imag > box.t_high + margin
                or s.real < box.sigma_low - margin
                or s.real > box.sigma_high + margin):
            return None
        if abs(delta) < 1e-13:
            break
    resid = abs(complex(engine.zeta_many(np.array([s]), 0, opts)[0, 0]) - a)
    if resid >= 1e-9:
        return None
    if not (box.t_low < s.imag <= box.t_high):
        return None
    return APoint(a=complex(a), beta=s.real, gamma=s.imag, residual=resid)


def _newton_in_box(a, box, opts):
    lo = max(box.sigma_low, -0.75)
    hi = min(box.sigma_high, 3.0)
    sig = np.linspace(lo, hi, 14)
    ts = np.linspace(box.t_low, box.t_high, 9)[1:-1]
    grid = (sig[None, :] + 1j * ts[:, None]).ravel()
    jet = engine.zeta_many(grid, 1, opts)
    # rank seeds by the Newton step |f/f'| ~ distance to the nearest
    # root, not by |f|: a small |f| can belong to a root outside the box
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.abs((jet[0] - a) / jet[1])
    step[~np.isfinite(step)] = np.inf
    order = np.argsort(step)
    for idx in order[:6]:
        pt = _newton_from(a, grid[idx], box, opts)
        if pt is not None:
            return pt
    return None


def _newton_collect(a, box, count, opts):
    """Try to pin down all `count` roots of a small box by Newton from
    many seeds; None if fewer than `count` distinct in-box roots show up.
    The box count is already certified by the argument principle, so
    finding `count` distinct residual-checked points settles the box."""
    lo = max(box.sigma_low, -0.75)
    hi = min(box.sigma_high, 3.0)
    sig = np.linspace(lo, hi, 18)
    ts = np.linspace(box.t_low, box.t_high, 13)[1:-1]
    grid = (sig[None, :] + 1j * ts[:, None]).ravel()
    jet = engine.zeta_many(grid, 1, opts)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.abs((jet[0] - a) / jet[1])
    step[~np.isfinite(step)] = np.inf
    found: list[APoint] = []
    for idx in np.argsort(step)[:30]:
        pt = _newton_from(a, grid[idx], box, opts)
        if pt is None:
            continue
        if all(abs(pt.s - q.s) > 1e-8 for q in found):
            found.append(pt)
            if len(found) == count:
                return found
    return None


# ----------------------------------------------------------------------
# recursive resolution of a counted box


def _resolve(a, box, count, opts, depth=0):
    if count == 0:
        return []
    if count == 1:
        pt = _newton_in_box(a, box, opts)
        if pt is not None:
            return [pt]
        if box.t_high - box.t_low < _MIN_BOX_HEIGHT:
            raise NewtonError(f"Newton failed to converge inside {box}")
    if count >= 2:
        pts = _newton_collect(a, box, count, opts)
        if pts is not None:
            return pts
    if box.t_high - box.t_low < _MIN_BOX_HEIGHT:
        raise MultipleRootError(
            f"{count} roots refuse to separate in {box}; multiple root suspected")
    height = box.t_high - box.t_low
    mid = 0.5 * (box.t_low + box.t_high)
    cut = _good_cut(a, mid, box, 0.35 * height, opts,
                    clearance=min(0.1, 0.15 * height))
    lower = ScanWindow(box.t_low, cut, box.sigma_low, box.sigma_high)
    upper = ScanWindow(cut, box.t_high, box.sigma_low, box.sigma_high)
    n_low = _box_count(a, lower, opts)
    n_up = count - n_low
    if n_up < 0:
        raise QuadratureError(f"inconsistent sub-box counts in {box}")
    return (_resolve(a, lower, n_low, opts, depth + 1)
            + _resolve(a, upper, n_up, opts, depth + 1))


# ----------------------------------------------------------------------
# slicing a chunk


def _chunk_boxes(a, t_lo, t_hi, win, opts):
    """Horizontal slices of ~_SLICE_HEIGHT with root-free cuts."""
    n_slices = max(1, int(round((t_hi - t_lo) / _SLICE_HEIGHT)))
    cuts = [t_lo]
    for i in range(1, n_slices):
        t0 = t_lo + (t_hi - t_lo) * i / n_slices
        cuts.append(_good_cut(
            a, t0, ScanWindow(t_lo, t_hi, win.sigma_low, win.sigma_high),
            0.3 * (t_hi - t_lo) / n_slices, opts))
    cuts.append(t_hi)
    return [ScanWindow(cuts[i], cuts[i + 1], win.sigma_low, win.sigma_high)
            for i in range(n_slices)]


def _count_boxes_batched(a, boxes, opts):
    """First-pass winding counts for many boxes with one engine call."""
    paths = [_boundary_path(b, _STEP0) for b in boxes]
    offsets = np.cumsum([0] + [p.size for p in paths])
    allpts = np.concatenate(paths) if paths else np.empty(0, complex)
    jet = engine.zeta_many(allpts, 1, opts) if allpts.size else None
    counts = []
    for i, box in enumerate(boxes):
        sl = slice(offsets[i], offsets[i + 1])
        f = jet[0, sl] - a
        g = jet[1, sl] / f
        path = allpts[sl]
        w = np.sum(0.5 * (g[:-1] + g[1:]) * np.diff(path)) / (2j * math.pi)
        n = int(round(w.real))
        if abs(w - n) < _DEFECT_ACCEPT and n >= 0 and np.abs(g).max() < 60.0:
            counts.append(n)
        else:
            counts.append(_box_count(a, box, opts))
    return counts


def _scan_chunk(a, t_lo, t_hi, win, opts):
    boxes = _chunk_boxes(a, t_lo, t_hi, win, opts)
    counts = _count_boxes_batched(a, boxes, opts)
    points = []
    for box, cnt in zip(boxes, counts):
        points.extend(_resolve(a, box, cnt, opts))
    return points


# ----------------------------------------------------------------------
# public scan operations


def nudge_window(a, w: ScanWindow, opts=DEFAULT_OPTS) -> ScanWindow:
    """Shift t_high away from any root by +0.01/log T, up to 5 times.

    Mirrors the restriction min_{rho_a} |T - gamma_a| >= 1/log T that the
    asymptotics assume; callers can inspect the returned window for the
    effective T actually scanned.
    """
    w = ScanWindow(max(w.t_low, _SCAN_FLOOR - 1e-12) if w.t_low < _SCAN_FLOOR
                   else w.t_low, w.t_high, w.sigma_low, w.sigma_high)
    shift = 0.01 / max(1.0, math.log(max(w.t_high, 2.0)))
    if _cut_badness(a, w.t_low, w, opts, step=_EDGE_STEP) >= _EDGE_GRAD_LIMIT:
        raise BoundaryError(f"root too close to the bottom edge of {w}")
    for _ in range(5):
        if _cut_badness(a, w.t_high, w, opts, step=_EDGE_STEP) < _EDGE_GRAD_LIMIT:
            return w
        w = ScanWindow(w.t_low, w.t_high + shift, w.sigma_low, w.sigma_high)
    raise BoundaryError(f"could not nudge t_high clear of roots for {w}")


def _effective_window(a, w, opts):
    t_low = max(w.t_low, _SCAN_FLOOR)
    if t_low >= w.t_high:
        return None
    return nudge_window(a, ScanWindow(t_low, w.t_high, w.sigma_low, w.sigma_high),
                        opts)


def _chunk_edges(a, w, opts):
    """Deterministic chunk boundaries, independent of the worker count."""
    edges = [w.t_low]
    t = w.t_low
    while t + _CHUNK_HEIGHT < w.t_high - 1e-9:
        t0 = t + _CHUNK_HEIGHT
        edges.append(_good_cut(a, t0, w, 0.3, opts))
        t = edges[-1]
    edges.append(w.t_high)
    return edges


def count_apoints(a, w: ScanWindow, opts=DEFAULT_OPTS) -> int:
    """Number of a-points inside the window, by the argument principle."""
    a = complex(a)
    eff = _effective_window(a, w, opts)
    if eff is None:
        return 0
    edges = _chunk_edges(a, eff, opts)
    total = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        boxes = _chunk_boxes(a, lo, hi, eff, opts)
        total += sum(_count_boxes_batched(a, boxes, opts))
    return total


def locate_apoints(a, w: ScanWindow, opts=DEFAULT_OPTS, workers=1) -> list[APoint]:
    """All a-points in the window, Newton-refined, sorted by ordinate."""
    a = complex(a)
    eff = _effective_window(a, w, opts)
    if eff is None:
        return []
    edges = _chunk_edges(a, eff, opts)
    jobs = list(zip(edges[:-1], edges[1:]))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda lh: _scan_chunk(a, lh[0], lh[1], eff, opts), jobs))
    else:
        parts = [_scan_chunk(a, lo, hi, eff, opts) for lo, hi in jobs]
    points = [p for part in parts for p in part]
    points.sort(key=lambda p: p.gamma)
    for p, q in zip(points[:-1], points[1:]):
        if abs(q.s - p.s) <= 1e-6:
            raise MultipleRootError(f"points {p.s} and {q.s} not separated")
    return points


def trivial_apoints(a, k_min: int, k_max: int, opts=DEFAULT_OPTS) -> list[APoint]:
    """The one simple a-point near each trivial zero s = -2k, k in range.

    Newton seeded at -2k; a per-k failure (Newton leaving the disk
    |s + 2k| < 1/2) is reported by omission, not fatally.
    """
    a = complex(a)
    if not 1 <= k_min <= k_max:
        raise ValueError("trivial_apoints: need 1 <= k_min <= k_max")
    out = []
    for k in range(k_min, k_max + 1):
        s = complex(-2.0 * k)
        ok = True
        for _ in range(60):
            jet = engine.zeta_many(np.array([s]), 1, opts)
            f = jet[0, 0] - a
            fp = jet[1, 0]
            if fp == 0.0:
                ok = False
                break
            delta = f / fp
            s -= delta
            if abs(s + 2.0 * k) >= 0.5:
                ok = False
                break
            if abs(delta) < 1e-14:
                break
        if not ok:
            continue
        resid = abs(complex(engine.zeta_many(np.array([s]), 0, opts)[0, 0]) - a)
        if resid < 1e-9:
            out.append(APoint(a=a, beta=s.real, gamma=s.imag, residual=resid))
    return out
