"""Double-precision evaluation of the Riemann zeta function and friends.

The continuation scheme is Euler-Maclaurin summation,

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k),

with N = ceil|t| + em_terms_base, which keeps |s|/(2 pi N) < ~1/(2 pi) and
makes the Bernoulli corrections shrink geometrically.  Derivatives come
from differentiating the formula term by term (log-power factors), so
the same cutoff policy covers every order.

Left of the critical strip the direct formula loses absolute accuracy,
so for Re(s) < 0.4 (away from s = 0) we reflect through the functional
equation zeta(s) = chi(s) * zeta(1-s), with chi evaluated in log space:

    log chi(s) = s log 2 + (s-1) log pi + log sin(pi s/2) + lgamma(1-s).

lgamma and its derivatives use a shifted Stirling series; log sin and
cot are computed from one-sided exponentials for large |Im| so nothing
overflows.  All public operations are pure functions of their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
LOG_2 = math.log(2.0)
LOG_PI = math.log(math.pi)

# Euler-Mascheroni constant C0 and the first Laurent coefficient
# C1 = -gamma_1 of zeta(s) = 1/(s-1) + C0 + C1 (s-1) + ...
EULER_GAMMA = 0.5772156649015328606
LAURENT_C1 = 0.0728158454836767249

# B_2, B_4, ..., B_24
_BERNOULLI_EVEN = [
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
    854513.0 / 138, -236364091.0 / 2730,
]

_T_SUPPORTED = 10000.0
_POLE_RADIUS = 1e-12
_REFLECT_SIGMA = 0.4
_CHI_SIGMA_MAX = 200.0


class EngineError(ValueError):
    """Base class for evaluation-domain errors."""


class PoleError(EngineError):
    """s is within the guard radius of the pole at s = 1."""


class CutoffError(EngineError):
    """|Im s| exceeds the scale the cutoff policy supports."""


class NearZeroError(EngineError):
    """zeta(s) is numerically zero where a quotient was requested."""


class ChiOverflowError(EngineError):
    """|Re s| too large for the chi factor in double precision."""


@dataclass(frozen=True)
class EvalOptions:
    """Knobs of the Euler-Maclaurin evaluation."""

    em_terms_base: int = 20
    em_bernoulli_order: int = 8
    deriv_order_max: int = 4

    def __post_init__(self):
        if self.em_terms_base < 10:
            raise ValueError("em_terms_base must be >= 10")
        if not 1 <= self.em_bernoulli_order <= 12:
            raise ValueError("em_bernoulli_order must be in 1..12")
        if not 0 <= self.deriv_order_max <= 4:
            raise ValueError("deriv_order_max must be in 0..4")


DEFAULT_OPTS = EvalOptions()


@dataclass(frozen=True)
class LaurentConstants:
    c0: float
    c1: float


def laurent_constants() -> LaurentConstants:
    """Constants C0, C1 of the Laurent expansion of zeta at s = 1."""
    lc = LaurentConstants(EULER_GAMMA, LAURENT_C1)
    if not (0.57 < lc.c0 < 0.58 and 0.07 < lc.c1 < 0.08):
        raise AssertionError("Laurent constants out of their sanity window")
    return lc


# ----------------------------------------------------------------------
# jet helpers: a "jet" is an array F of shape (order+1, n) holding the
# derivatives F[j] = f^(j)(s) at n points simultaneously.


def _binom(j, i):
    return math.comb(j, i)


def _leibniz(u, v, order):
    w = np.zeros_like(u)
    for j in range(order + 1):
        for i in range(j + 1):
            w[j] += _binom(j, i) * u[i] * v[j - i]
    return w


def _exp_jet(g, order):
    """Jet of exp(g) given the jet of g, hardcoded through order 4."""
    e = np.exp(g[0])
    out = np.zeros_like(g)
    out[0] = e
    if order >= 1:
        out[1] = e * g[1]
    if order >= 2:
        out[2] = e * (g[2] + g[1] ** 2)
    if order >= 3:
        out[3] = e * (g[3] + 3 * g[1] * g[2] + g[1] ** 3)
    if order >= 4:
        out[4] = e * (g[4] + 4 * g[1] * g[3] + 3 * g[2] ** 2
                      + 6 * g[1] ** 2 * g[2] + g[1] ** 4)
    return out


def _power_jet(base_log, expo, order):
    """Jet of exp(expo * base_log) in s where expo = c - s (c constant).

    Used for N^(c-s): derivative j is (-log N)^j * N^(c-s).
    """
    val = np.exp(expo * base_log)
    out = np.zeros((order + 1,) + val.shape, dtype=complex)
    for j in range(order + 1):
        out[j] = (-base_log) ** j * val
    return out


# ----------------------------------------------------------------------
# lgamma, digamma, log sin, cot


def _log_jet(z, order):
    """Jet of log(z+const) as a function whose derivative in s is 1."""
    out = np.zeros((order + 1,) + z.shape, dtype=complex)
    out[0] = np.log(z)
    fact = 1.0
    for k in range(1, order + 1):
        out[k] = fact * (-1.0) ** (k - 1) / z ** k
        fact *= k
    return out


def lgamma_jet(z, order=0):
    """Derivatives d^k/dz^k lgamma(z) for k = 0..order, vectorized.

    Shifted Stirling series; valid away from the poles of Gamma.  The
    branch is the standard continuous lgamma on Re z > 0.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)

    # per-point shift so the working argument sits where Stirling converges
    need_big = np.abs(z.imag) < 12.0
    k_shift = np.where(need_big,
                       np.maximum(0, np.ceil(12.0 - z.real)),
                       np.maximum(0, np.ceil(2.0 - z.real))).astype(int)
    k_max = int(k_shift.max()) if z.size else 0

    shift_jets = np.zeros((order + 1,) + z.shape, dtype=complex)
    for j in range(k_max):
        mask = j < k_shift
        if not mask.any():
            break
        lj = _log_jet(z[mask] + j, order)
        shift_jets[:, mask] += lj

    w = z + k_shift

    # Stirling: (w - 1/2) log w - w + log(2 pi)/2 + sum B_2n/(2n(2n-1)) w^(1-2n)
    out = np.zeros((order + 1,) + z.shape, dtype=complex)
    logw = _log_jet(w, order)
    lin = np.zeros_like(logw)
    lin[0] = w - 0.5
    if order >= 1:
        lin[1] = 1.0
    out += _leibniz(lin, logw, order)
    out[0] += -w + 0.5 * math.log(TWO_PI)
    if order >= 1:
        out[1] += -1.0

    for nb in range(1, 9):
        coef = _BERNOULLI_EVEN[nb - 1] / ((2 * nb) * (2 * nb - 1))
        p = 1 - 2 * nb
        ff = 1.0
        for k in range(order + 1):
            out[k] += coef * ff * w ** (p - k)
            ff *= (p - k)

    out -= shift_jets
    if scalar:
        return out[:, 0]
    return out


def digamma(z):
    """psi(z) for complex z (scalar or array)."""
    return lgamma_jet(z, 1)[1]


def _log_sin(z):
    """log(sin z), branch-irrelevant (consumed by exp), overflow-safe."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    im = z.imag
    small = np.abs(im) <= 20.0
    out[small] = np.log(np.sin(z[small]))
    up = im > 20.0
    if up.any():
        zz = z[up]
        out[up] = -1j * zz + (math.log(0.5) + 0.5j * math.pi) \
            + np.log1p(-np.exp(2j * zz))
    dn = im < -20.0
    if dn.any():
        zz = np.conj(z[dn])
        out[dn] = np.conj(-1j * zz + (math.log(0.5) + 0.5j * math.pi)
                          + np.log1p(-np.exp(2j * zz)))
    return out


def _cot(z):
    """cot z, overflow-safe for large |Im z|."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    im = z.imag
    small = np.abs(im) <= 20.0
    out[small] = np.cos(z[small]) / np.sin(z[small])
    up = im > 20.0
    if up.any():
        q = np.exp(2j * z[up])
        out[up] = 1j * (q + 1.0) / (q - 1.0)
    dn = im < -20.0
    if dn.any():
        q = np.exp(2j * np.conj(z[dn]))
        out[dn] = np.conj(1j * (q + 1.0) / (q - 1.0))
    return out


# ----------------------------------------------------------------------
# chi


def log_chi_jet(s, order=0):
    """Jet of log chi(s), chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s)."""
    s = np.asarray(s, dtype=complex)
    z = 0.5 * math.pi * s
    c = _cot(z)
    lg = lgamma_jet(1.0 - s, order)
    g = np.zeros((order + 1,) + s.shape, dtype=complex)
    g[0] = s * LOG_2 + (s - 1.0) * LOG_PI + _log_sin(z) + lg[0]
    h = 0.5 * math.pi
    if order >= 1:
        g[1] = LOG_2 + LOG_PI + h * c - lg[1]
    if order >= 2:
        g[2] = -h ** 2 * (1.0 + c * c) + lg[2]
    if order >= 3:
        g[3] = h ** 3 * 2.0 * c * (1.0 + c * c) - lg[3]
    if order >= 4:
        g[4] = -h ** 4 * (1.0 + c * c) * (2.0 + 6.0 * c * c) + lg[4]
    return g


def chi_jet(s, order=0):
    """chi(s) and derivatives, via exp of the log-chi jet."""
    return _exp_jet(log_chi_jet(s, order), order)


def chi(s):
    """The factor of the functional equation zeta(1-s) = chi(1-s) zeta(s).

    At positive even integers the sin zero cancels the Gamma pole; the
    finite limit is returned there.
    """
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise EngineError("chi: non-finite argument")
    if abs(s.real) > _CHI_SIGMA_MAX:
        raise ChiOverflowError(f"chi: |Re s| > {_CHI_SIGMA_MAX} at s={s}")
    m = round(s.real / 2.0)
    if m >= 1 and abs(s - 2.0 * m) < 1e-8:
        # limit value at s = 2m
        return complex((-1.0) ** (m + 1) * 2.0 ** (2 * m - 1)
                       * math.pi ** (2 * m) / math.factorial(2 * m - 1))
    return complex(chi_jet(np.array([s]), 0)[0][0])


# ----------------------------------------------------------------------
# Euler-Maclaurin core


def _em_cutoff(t_abs, opts):
    n = int(math.ceil(t_abs)) + opts.em_terms_base
    return ((n + 63) // 64) * 64


def _em_jet(s, big_n, order, opts):
    """Euler-Maclaurin jet at points s (1-D array), common cutoff big_n."""
    n_pts = s.shape[0]
    out = np.zeros((order + 1, n_pts), dtype=complex)

    # direct sum, chunked to bound the outer-product matrix
    logn = np.log(np.arange(1, big_n, dtype=float))
    chunk = max(1, 4_000_000 // big_n)
    for lo in range(0, n_pts, chunk):
        sl = s[lo:lo + chunk]
        mat = np.exp(-np.multiply.outer(sl, logn))
        for j in range(order + 1):
            out[j, lo:lo + chunk] += mat @ ((-logn) ** j)

    big_l = math.log(big_n)

    # N^(1-s)/(s-1)
    u = _power_jet(big_l, 1.0 - s, order)
    v = np.zeros_like(u)
    fact = 1.0
    for j in range(order + 1):
        v[j] = fact * (-1.0) ** j / (s - 1.0) ** (j + 1)
        fact *= (j + 1)
    out += _leibniz(u, v, order)

    # N^-s / 2
    out += 0.5 * _power_jet(big_l, -s, order)

    # Bernoulli corrections
    pow_jet = _power_jet(big_l, -s, order)
    for k in range(1, opts.em_bernoulli_order + 1):
        ck = _BERNOULLI_EVEN[k - 1] / math.factorial(2 * k)
        # jet of the rising-factorial polynomial s(s+1)...(s+2k-2)
        p = np.zeros((order + 1, n_pts), dtype=complex)
        p[0] = 1.0
        for j in range(2 * k - 1):
            p_new = np.zeros_like(p)
            for m in range(order + 1):
                p_new[m] = (s + j) * p[m]
                if m >= 1:
                    p_new[m] += m * p[m - 1]
            p = p_new
        out += ck * float(big_n) ** (1 - 2 * k) * _leibniz(pow_jet, p, order)
    return out


def _zeta_jet_upper(s, order, opts):
    """Jet for points with Im s >= 0, dispatching EM vs reflection."""
    n_pts = s.shape[0]
    out = np.zeros((order + 1, n_pts), dtype=complex)

    reflect = (s.real < _REFLECT_SIGMA) & (np.abs(s) >= 0.5)
    direct = ~reflect

    if direct.any():
        sd = s[direct]
        res = np.zeros((order + 1, sd.shape[0]), dtype=complex)
        cutoffs = np.array([_em_cutoff(t, opts) for t in sd.imag])
        for big_n in np.unique(cutoffs):
            grp = cutoffs == big_n
            res[:, grp] = _em_jet(sd[grp], int(big_n), order, opts)
        out[:, direct] = res

    if reflect.any():
        sr = s[reflect]
        w = 1.0 - sr                      # Re w > 0.6, Im w <= 0
        zw = np.conj(_zeta_jet_upper(np.conj(w), order, opts))
        cj = chi_jet(sr, order)
        res = np.zeros((order + 1, sr.shape[0]), dtype=complex)
        for j in range(order + 1):
            for i in range(j + 1):
                res[j] += _binom(j, i) * cj[i] * (-1.0) ** (j - i) * zw[j - i]
        out[:, reflect] = res

    return out


def zeta_many(s, order=0, opts=DEFAULT_OPTS):
    """zeta and derivatives at an array of points.

    Returns an array of shape (order+1, len(s)); row j holds zeta^(j).
    """
    s = np.asarray(s, dtype=complex).ravel()
    if s.size and not np.all(np.isfinite(s)):
        raise EngineError("zeta: non-finite input point")
    if np.any(np.abs(s - 1.0) < _POLE_RADIUS):
        raise PoleError("zeta: point within guard radius of the pole s = 1")
    if np.any(np.abs(s.imag) > _T_SUPPORTED):
        raise CutoffError(f"zeta: |Im s| beyond supported {_T_SUPPORTED}")
    if not 0 <= order <= opts.deriv_order_max:
        raise EngineError(f"zeta: derivative order {order} out of range")

    out = np.zeros((order + 1, s.size), dtype=complex)
    lower = s.imag < 0.0
    if lower.any():
        out[:, lower] = np.conj(_zeta_jet_upper(np.conj(s[lower]), order, opts))
    upper = ~lower
    if upper.any():
        out[:, upper] = _zeta_jet_upper(s[upper], order, opts)
    return out


def zeta(s, opts=DEFAULT_OPTS):
    """zeta(s) for a single complex point."""
    return complex(zeta_many(np.array([complex(s)]), 0, opts)[0, 0])


def zeta_deriv(s, n=1, opts=DEFAULT_OPTS):
    """zeta^(n)(s) for a single complex point; n = 0 is zeta itself."""
    if not 0 <= n <= opts.deriv_order_max:
        raise EngineError(f"zeta_deriv: order {n} out of 0..{opts.deriv_order_max}")
    return complex(zeta_many(np.array([complex(s)]), n, opts)[n, 0])


def log_deriv_zeta(s, opts=DEFAULT_OPTS):
    """zeta'(s)/zeta(s)."""
    jet = zeta_many(np.array([complex(s)]), 1, opts)
    z0, z1 = jet[0, 0], jet[1, 0]
    if abs(z0) <= 1e-12:
        raise NearZeroError(f"zeta'(s)/zeta(s): zeta numerically zero at s={s}")
    return complex(z1 / z0)


def xi_log_deriv(s, opts=DEFAULT_OPTS):
    """xi'(s)/xi(s) for the completed zeta xi(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s)."""
    s = complex(s)
    if abs(s) < _POLE_RADIUS or abs(s - 1.0) < _POLE_RADIUS:
        raise PoleError("xi'/xi: s at 0 or 1")
    return (1.0 / s + 1.0 / (s - 1.0) - 0.5 * LOG_PI
            + 0.5 * complex(digamma(np.array([s / 2.0]))[0])
            + log_deriv_zeta(s, opts))
