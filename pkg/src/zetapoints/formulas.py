"""Direct sums over located points and the closed-form main terms they
should approach.

The central object is S_T(a, delta) = sum over a-points with
tau < gamma_a <= T of zeta'(rho_a + i delta) X^rho_a.  Each evaluator
returns a term-by-term breakdown of one main-term formula for such a
sum (or for the auxiliary prime sums feeding them), so verification
tables can show which group drives a deviation.  Error terms are never
added in; their magnitude scale is reported alongside so deviations can
be normalized.

All finite sums (over m*r = X, over ordered factorizations of 1/X, over
m*r <= T/2piX, ...) are enumerated directly; no term is approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import arith, engine
from .arith import LevelOneError

TWO_PI = 2.0 * math.pi


class FormulaError(ValueError):
    """Base for parameter-domain failures of the evaluators."""


class ParameterDomainError(FormulaError):
    pass


class DeltaZeroError(FormulaError):
    pass


class NonIntegerXError(FormulaError):
    pass


class WindowMismatchError(FormulaError):
    pass


def error_scales(big_t: float) -> tuple[float, float]:
    """(unconditional, on-RH) magnitude scales of the error envelope:
    T e^{-sqrt(log T)} and T^{1/2}.  The unconditional branch has an
    unspecified absolute constant in the exponent; we use 1, so these
    are normalization scales for trend diagnostics, not bounds."""
    if big_t <= 1.0:
        raise ParameterDomainError("error_scales: T must exceed 1")
    return big_t * math.exp(-math.sqrt(math.log(big_t))), math.sqrt(big_t)


@dataclass(frozen=True)
class SumParams:
    """Parameters (a, X, alpha, tau, T) of one weighted a-point sum.

    delta = 2 pi alpha / log(T / 2 pi X) is derived; alpha = 0 encodes
    the delta -> 0 limit formulas.
    """

    a: complex
    X: float
    alpha: float
    tau: float
    T: float

    def __post_init__(self):
        if self.X <= 0.0:
            raise ParameterDomainError("X must be positive")
        if self.T / (TWO_PI * self.X) <= math.e:
            raise ParameterDomainError("need T/(2 pi X) > e")
        if self.tau < abs(self.delta) + 1.0:
            raise ParameterDomainError("need tau >= |delta| + 1")

    @property
    def delta(self) -> float:
        if self.alpha == 0.0:
            return 0.0
        return TWO_PI * self.alpha / math.log(self.T / (TWO_PI * self.X))


@dataclass(frozen=True)
class TermBreakdown:
    labels: tuple[str, ...]
    values: tuple[complex, ...]
    total: complex
    error_scale: float
    rh_error_scale: float | None = None


def _breakdown(pairs, error_scale, rh_error_scale=None) -> TermBreakdown:
    labels = tuple(name for name, _ in pairs)
    values = tuple(complex(v) for _, v in pairs)
    return TermBreakdown(labels=labels, values=values, total=sum(values, 0j),
                         error_scale=float(error_scale),
                         rh_error_scale=rh_error_scale)


@dataclass(frozen=True)
class VerificationRow:
    T: float
    lhs: complex
    rhs: complex
    abs_dev: float
    norm_dev: float
    rel_dev: float

    @classmethod
    def build(cls, big_t, lhs, rhs, error_scale) -> "VerificationRow":
        abs_dev = abs(lhs - rhs)
        return cls(T=float(big_t), lhs=complex(lhs), rhs=complex(rhs),
                   abs_dev=abs_dev, norm_dev=abs_dev / error_scale,
                   rel_dev=abs_dev / abs(rhs) if rhs != 0 else math.inf)


# ----------------------------------------------------------------------
# direct sums over located points


def lhs_sum(points, p: SumParams, n: int = 1) -> complex:
    """sum over the given a-points of zeta^(n)(rho_a + i delta) X^rho_a."""
    if not 1 <= n <= 4:
        raise ParameterDomainError("lhs_sum: need 1 <= n <= 4")
    if n > 1 and p.delta != 0.0:
        raise ParameterDomainError("lhs_sum: n > 1 only in the delta = 0 limit")
    if not points:
        return 0j
    rho = np.array([pt.s for pt in points])
    bad = (rho.imag <= p.tau) | (rho.imag > p.T)
    if np.any(bad):
        raise WindowMismatchError(
            f"{int(bad.sum())} point(s) outside (tau, T] = ({p.tau}, {p.T}]")
    jet = engine.zeta_many(rho + 1j * p.delta, n)
    return complex(np.sum(jet[n] * np.exp(rho * math.log(p.X))))


# ----------------------------------------------------------------------
# finite arithmetic sums shared by the evaluators


def _divisor_pairs(x: float):
    """Ordered pairs (m, r) with m * r = round(x), or [] when Delta(x)=0."""
    if arith.delta_indicator(x) == 0:
        return []
    n = round(x)
    return [(m, n // m) for m in range(1, n + 1) if n % m == 0]


def _ordered_factorizations(n: int, parts: int):
    """All ordered tuples of `parts` positive integers with product n."""
    if parts == 1:
        return [(n,)]
    out = []
    for d in range(1, n + 1):
        if n % d == 0:
            out.extend((d,) + rest
                       for rest in _ordered_factorizations(n // d, parts - 1))
    return out


def _mr_eq_x_sum(x: float, delta: float, with_ca: complex | None = None):
    """sum over m r = X of (Lambda(r) [+ c_a(r)]) m^{-i delta} log m."""
    pairs = _divisor_pairs(x)
    if not pairs:
        return 0j
    table = arith.default_table()
    ca = None
    if with_ca is not None:
        top = max((r for _, r in pairs), default=1)
        if top >= 2:
            ca = arith.c_a_coefficients(with_ca, top)
    total = 0j
    for m, r in pairs:
        weight = arith.mangoldt(r, table)
        if ca is not None and r >= 2:
            weight = weight + ca[r]
        if weight != 0 and m > 1:
            total += weight * m ** (-1j * delta) * math.log(m)
    return total


def _geometric_sum(q: complex, count: int) -> complex:
    """q + q^2 + ... + q^count, stable when q is (nearly) 1."""
    if count <= 0:
        return 0j
    if abs(q - 1.0) < 1e-12:
        return complex(count)
    return q * (q ** count - 1.0) / (q - 1.0)


def _exp_m_sums(x: float, big_m: int):
    """sum over m <= M of e^{2 pi i m X} * {1, log m, log^2 m}."""
    if big_m < 1:
        return 0j, 0j, 0j
    m = np.arange(1, big_m + 1)
    phase = np.exp(2j * math.pi * ((m * x) % 1.0))
    logm = np.log(m)
    return (complex(phase.sum()), complex((phase * logm).sum()),
            complex((phase * logm ** 2).sum()))


def _exp_mr_sums(x: float, big_m: int, delta: float):
    """The three double sums over m r <= M, r running over prime powers:
    e^{2 pi i m r X} Lambda(r) r^{-i delta} * {1, log r, log m}."""
    s_plain = 0j
    s_logr = 0j
    s_logm = 0j
    if big_m < 2:
        return s_plain, s_logr, s_logm
    rs, lam = arith.prime_powers_up_to(big_m)
    for r, logp in zip(rs.tolist(), lam.tolist()):
        count = big_m // r
        q = np.exp(2j * math.pi * ((r * x) % 1.0))
        rw = logp * r ** (-1j * delta)
        s_plain += rw * _geometric_sum(q, count)
        s_logr += rw * math.log(r) * _geometric_sum(q, count)
        m = np.arange(1, count + 1)
        phase = np.exp(2j * math.pi * ((m * (r * x)) % 1.0))
        s_logm += rw * complex((phase * np.log(m)).sum())
    return s_plain, s_logr, s_logm


# ----------------------------------------------------------------------
# zero-sum main-term formulas


def theorem1_rhs(p: SumParams) -> TermBreakdown:
    """Main terms of sum over zeros of zeta'(rho + i delta) X^rho.

    Four groups: a Delta(X)-gated T-linear group, two oscillating sums
    weighted by log X, and the Lambda-weighted double sum; error scale
    T^{1/2} log^3 T.
    """
    if p.alpha == 0.0:
        raise DeltaZeroError("theorem1_rhs: alpha must be nonzero "
                             "(use fujii_weighted_rhs for the limit)")
    delta = p.delta
    x, big_t = p.X, p.T
    logx = math.log(x)
    log_t2pi = math.log(big_t / TWO_PI)
    big_m = int(math.floor(big_t / (TWO_PI * x)))
    xmid = x ** (-1j * delta)
    xfac = x * xmid

    e1, e_logm, _ = _exp_m_sums(x, big_m)
    d_plain, d_logr, d_logm = _exp_mr_sums(x, big_m, delta)

    g1 = -arith.delta_indicator(x) * big_t / TWO_PI * (
        xmid * logx * (0.5 * log_t2pi - 0.5 + 0.25j * math.pi)
        - _mr_eq_x_sum(x, delta))
    g2 = -xfac * logx * (0.5 * logx - 0.25j * math.pi) * e1
    g3 = xfac * logx * (d_plain - 0.5 * e_logm)
    g4 = xfac * d_logr
    scale = math.sqrt(big_t) * log_t2pi ** 3
    return _breakdown([("delta_group", g1), ("oscillating_plain", g2),
                       ("mixed_logx", g3), ("lambda_logr", g4)], scale)


def fujii_weighted_rhs(x: float, big_t: float) -> TermBreakdown:
    """The delta = 0 limit formula for sum of zeta'(rho) X^rho."""
    if x <= 0.0 or big_t / (TWO_PI * x) <= 1.0:
        raise ParameterDomainError("fujii_weighted_rhs: need T/(2 pi X) > 1")
    logx = math.log(x)
    log_t2pi = math.log(big_t / TWO_PI)
    big_m = int(math.floor(big_t / (TWO_PI * x)))

    e1, e_logm, e_log2m = _exp_m_sums(x, big_m)
    _, _, d_logm = _exp_mr_sums(x, big_m, 0.0)
    mr_sum = sum(arith.mangoldt(r) * math.log(m)
                 for m, r in _divisor_pairs(x) if m > 1)

    g1 = -arith.delta_indicator(x) * big_t / TWO_PI * (
        (0.5 * log_t2pi - 0.5 + 0.25j * math.pi) * logx - mr_sum)
    g2 = x * e_log2m
    g3 = 0.5 * x * logx * e_logm
    g4 = -0.25 * x * logx * (2.0 * logx - 1j * math.pi) * e1
    g5 = -x * d_logm
    scale = math.sqrt(big_t) * log_t2pi ** 3
    return _breakdown([("delta_group", g1), ("log2m", g2), ("logx_logm", g3),
                       ("logx_plain", g4), ("lambda_logm", g5)], scale)


def fujii_zero_sum_rhs(big_t: float) -> TermBreakdown:
    """Main terms of sum over zeros of zeta'(rho) (the X = 1 case),
    in terms of the Laurent constants C0, C1 of zeta at s = 1."""
    if big_t <= TWO_PI:
        raise ParameterDomainError("fujii_zero_sum_rhs: need T > 2 pi")
    lc = engine.laurent_constants()
    c0, c1 = lc.c0, lc.c1
    log_t2pi = math.log(big_t / TWO_PI)
    t2pi = big_t / TWO_PI
    terms = [
        ("log2_term", 0.5 * t2pi * log_t2pi ** 2),
        ("log_term", (c0 - 1.0) * t2pi * log_t2pi),
        ("constant_term", (1.0 - c0 - c0 ** 2 + 3.0 * c1) * t2pi),
    ]
    unc, rh = error_scales(big_t)
    return _breakdown(terms, unc, rh_error_scale=rh)


# ----------------------------------------------------------------------
# the integer-X corollary for zeros


def z_delta(x: float, delta: float) -> complex:
    """Z_delta(x), the residue block of the integer-X zero-sum formula."""
    if delta == 0.0:
        raise DeltaZeroError("z_delta: delta must be nonzero")
    if x <= 1.0:
        raise ParameterDomainError("z_delta: need x > 1")
    w = 1.0 - 1j * delta
    jet = engine.zeta_many(np.array([complex(1.0, delta), w]), 2)
    zp_up = jet[1, 0]                       # zeta'(1 + i delta)
    z, zp, zpp = jet[0, 1], jet[1, 1], jet[2, 1]
    quot = (zpp * z - zp ** 2) / z ** 2
    return zp_up + x ** (-1j * delta) / w * (
        quot + (zp / z) * (math.log(x) - 1.0 / w))


def corollary2_rhs(p: SumParams) -> TermBreakdown:
    """Integer-X closed form for sum of zeta'(rho + i delta) X^rho."""
    if p.alpha == 0.0:
        raise DeltaZeroError("corollary2_rhs: alpha must be nonzero")
    if arith.delta_indicator(p.X) == 0:
        raise NonIntegerXError("corollary2_rhs: X must be a positive integer")
    delta = p.delta
    x, big_t = p.X, p.T
    t2pi = big_t / TWO_PI
    ratio = big_t / (TWO_PI * x)
    w = 1.0 - 1j * delta
    jet = engine.zeta_many(np.array([complex(1.0, delta), w]), 1)
    zlog_up = jet[1, 0] / jet[0, 0]          # zeta'/zeta (1 + i delta)
    z_down = jet[0, 1]                       # zeta(1 - i delta)
    xmid = x ** (-1j * delta)

    t1 = t2pi * _mr_eq_x_sum(x, delta)
    t2 = -xmid * t2pi * z_delta(ratio, delta)
    t3 = -xmid * math.log(x) * t2pi * (
        math.log(t2pi) - 1.0 + zlog_up - z_down / w * ratio ** (-1j * delta))
    unc, rh = error_scales(big_t)
    return _breakdown([("mr_eq_X", t1), ("z_delta_term", t2),
                       ("logX_term", t3)], unc, rh_error_scale=rh)


# ----------------------------------------------------------------------
# the a-point correction terms


def k_delta_2(x: float, delta: float) -> complex:
    """x^{1-i delta} (log^2 x / w - 2 log x / w^2 + 2 / w^3), w = 1 - i delta."""
    if x <= 0.0:
        raise ParameterDomainError("k_delta_2: need x > 0")
    w = 1.0 - 1j * delta
    logx = math.log(x)
    return x ** (1.0 - 1j * delta) * (
        logx ** 2 / w - 2.0 * logx / w ** 2 + 2.0 / w ** 3)


def k_delta_1(x: float, delta: float, big_x: float) -> complex:
    """The Delta(1/X)-gated correction built from ordered factorizations
    of 1/X with mu and Lambda weights; identically 0 unless 1/X is a
    positive integer, and equal to k_delta_2(x, delta) at X = 1."""
    if x <= 1.0:
        raise ParameterDomainError("k_delta_1: need x > 1")
    if big_x <= 0.0 or arith.delta_indicator(1.0 / big_x) == 0:
        return 0j
    n0 = round(1.0 / big_x)
    table = arith.default_table()
    w = 1.0 - 1j * delta
    logx = math.log(x)
    xw = x ** (1.0 - 1j * delta)

    s1 = sum(arith.moebius(m, table) * n ** (1j * delta)
             for m, n in _ordered_factorizations(n0, 2))
    s2 = sum(arith.mangoldt(m, table) * (m ** (1j * delta) + 1.0)
             * n ** (1j * delta) * arith.moebius(r, table)
             for m, n, r in _ordered_factorizations(n0, 3)
             if arith.mangoldt(m, table) != 0.0)
    s3 = sum(arith.mangoldt(m, table) * (m * n) ** (1j * delta)
             * arith.moebius(r, table) * arith.mangoldt(el, table)
             for m, n, r, el in _ordered_factorizations(n0, 4)
             if arith.mangoldt(m, table) != 0.0)

    return (s1 * xw * (logx ** 2 / w - 2.0 * logx / w ** 2 + 2.0 / w ** 3)
            + s2 * xw * (logx / w - 1.0 / w ** 2)
            + s3 * xw / w)


def theorem3_rhs(p: SumParams, zero_sum: complex) -> TermBreakdown:
    """a-point sum from the zero sum: zero_sum minus the Delta(X)-gated
    (Lambda + c_a) group minus a * K^(1)_delta(T/2pi).

    zero_sum is the independently computed sum over ordinary zeros of
    zeta'(rho + i delta) X^rho; it is injected, not recomputed, so this
    evaluator stays a pure formula.
    """
    a = complex(p.a)
    if abs(a - 1.0) < 1e-12:
        raise LevelOneError("theorem3_rhs: level a = 1 not covered by c_a")
    if p.alpha == 0.0:
        raise DeltaZeroError("theorem3_rhs: alpha must be nonzero")
    delta = p.delta
    t2pi = p.T / TWO_PI
    terms = [
        ("zero_sum", complex(zero_sum)),
        ("mr_eq_X_group", -t2pi * _mr_eq_x_sum(p.X, delta, with_ca=a)),
        ("k1_term", -a * k_delta_1(t2pi, delta, p.X)),
    ]
    scale = math.sqrt(p.T) * math.log(p.T) ** 7
    return _breakdown(terms, scale)


def corollary_jm_rhs(a: complex, big_x: int, big_t: float) -> TermBreakdown:
    """The delta = 0 closed form for sum of zeta'(rho_a) X^rho_a over
    1 < gamma_a <= T, integer X, in Laurent constants C0, C1."""
    a = complex(a)
    if abs(a - 1.0) < 1e-12:
        raise LevelOneError("corollary_jm_rhs: level a = 1 not covered by c_a")
    if arith.delta_indicator(big_x) == 0 or big_x < 1:
        raise NonIntegerXError("corollary_jm_rhs: X must be a positive integer")
    if big_t <= TWO_PI:
        raise ParameterDomainError("corollary_jm_rhs: need T > 2 pi")
    big_x = round(big_x)
    ind = 1.0 if big_x == 1 else 0.0
    lc = engine.laurent_constants()
    c0, c1 = lc.c0, lc.c1
    t2pi = big_t / TWO_PI
    log_t2pi = math.log(t2pi)
    logx = math.log(big_x)

    ca_logm = 0j
    if big_x >= 2:
        ca = arith.c_a_coefficients(a, big_x)
        ca_logm = sum(ca[r] * math.log(m) for m, r in _divisor_pairs(big_x)
                      if m > 1 and r >= 2)

    # the X = 1 level terms are the delta -> 0 limit of the K-correction
    # -a x (log^2 x - 2 log x + 2), hence the +2a log coefficient
    t1 = (0.5 - a * ind) * t2pi * log_t2pi ** 2
    t2 = (c0 - 1.0 - logx + 2.0 * a * ind) * t2pi * log_t2pi
    t3 = (1.0 - c0 - c0 ** 2 + 3.0 * c1 - 2.0 * a * ind
          - ca_logm - (c0 - 1.0 + 0.5 * logx) * logx) * t2pi
    unc, rh = error_scales(big_t)
    return _breakdown([("log2_term", t1), ("log_term", t2),
                       ("constant_term", t3)], unc, rh_error_scale=rh)


def legacy_jm_rhs(a: complex, big_x: float, big_t: float) -> TermBreakdown:
    """The superseded formula this library's corrected forms replace:
    zero sum minus (aT/2pi){log^2(T/2pi) - 2 log(T/2pi) + 2}.  Exposed
    only for side-by-side tables; no correctness is claimed for it."""
    zero_part = fujii_weighted_rhs(big_x, big_t)
    log_t2pi = math.log(big_t / TWO_PI)
    bracket = log_t2pi ** 2 - 2.0 * log_t2pi + 2.0
    terms = list(zip(zero_part.labels, zero_part.values))
    terms.append(("a_bracket", -complex(a) * big_t / TWO_PI * bracket))
    return _breakdown(terms, zero_part.error_scale)


# ----------------------------------------------------------------------
# the auxiliary prime sums of the residue computation


def l_sum_direct(x: float, delta: float) -> complex:
    """sum over m r <= x of Lambda(m) r^{i delta} log r (note +i delta).

    These are the Dirichlet coefficients of (zeta'/zeta)(s) zeta'(s - i
    delta), the integrand whose residues l_sum_residue evaluates; the
    von Mangoldt weight sits on the index without the log factor.
    """
    if x < 2.0:
        raise ParameterDomainError("l_sum_direct: need x >= 2")
    n = int(math.floor(x))
    lam_by_m = np.zeros(n + 1)
    rs, lam = arith.prime_powers_up_to(x)
    lam_by_m[rs] = lam
    psi = np.cumsum(lam_by_m)            # Chebyshev psi at integer args
    r = np.arange(2, n + 1)
    return complex(np.sum(np.log(r) * r ** (1j * delta) * psi[n // r]))


def l_sum_residue(x: float, delta: float) -> complex:
    """Residue main terms for l_sum_direct (error term dropped)."""
    if delta == 0.0:
        raise DeltaZeroError("l_sum_residue: delta must be nonzero")
    if x <= 1.0:
        raise ParameterDomainError("l_sum_residue: need x > 1")
    w = 1.0 + 1j * delta
    jet = engine.zeta_many(np.array([w]), 2)
    z, zp, zpp = jet[0, 0], jet[1, 0], jet[2, 0]
    jet_down = engine.zeta_many(np.array([1.0 - 1j * delta]), 1)
    zp_down = jet_down[1, 0]
    quot = (zpp * z - zp ** 2) / z ** 2
    return (-zp_down * x
            - x ** w / w * (quot + (zp / z) * (math.log(x) - 1.0 / w)))


def fujii_estimate_pair(x: float, delta: float):
    """(direct, main-term) pair for sum over m r <= x of Lambda(r) r^{i delta}."""
    if delta == 0.0:
        raise DeltaZeroError("fujii_estimate_pair: delta must be nonzero")
    if x < 2.0:
        raise ParameterDomainError("fujii_estimate_pair: need x >= 2")
    rs, lam = arith.prime_powers_up_to(x)
    counts = np.floor(x / rs)
    direct = complex(np.sum(lam * rs ** (1j * delta) * counts))
    w = 1.0 + 1j * delta
    jet_up = engine.zeta_many(np.array([w]), 0)
    jet_down = engine.zeta_many(np.array([1.0 - 1j * delta]), 1)
    zlog_down = jet_down[1, 0] / jet_down[0, 0]
    main = jet_up[0, 0] / w * x ** w - zlog_down * x
    return direct, main


# ----------------------------------------------------------------------
# the higher-derivative correction sums


@lru_cache(maxsize=256)
def a1_sum(k: int, n: int, big_t: float) -> float:
    """A_1(k; T) = sum over m <= T/2pi of Lambda_k(m) log^{n-k+1} m."""
    if not (0 <= k <= n <= 4):
        raise ParameterDomainError("a1_sum: need 0 <= k <= n <= 4")
    if big_t <= TWO_PI:
        raise ParameterDomainError("a1_sum: need T > 2 pi")
    big_m = int(math.floor(big_t / TWO_PI))
    table = arith.default_table()
    total = 0.0
    for m in range(1, big_m + 1):
        lk = arith.mangoldt_k(m, k, table)
        if lk != 0.0 and m > 1:
            total += lk * math.log(m) ** (n - k + 1)
    return total


@lru_cache(maxsize=256)
def a2_sum(k: int, n: int, big_t: float) -> float:
    """A_2(k; T) = sum over m r <= T/2pi of Lambda(r) Lambda_k(m) log^{n-k}(mr)."""
    if not (0 <= k <= n <= 4):
        raise ParameterDomainError("a2_sum: need 0 <= k <= n <= 4")
    if big_t <= TWO_PI:
        raise ParameterDomainError("a2_sum: need T > 2 pi")
    big_m = int(math.floor(big_t / TWO_PI))
    table = arith.default_table()
    total = 0.0
    for m in range(1, big_m + 1):
        lk = arith.mangoldt_k(m, k, table)
        if lk == 0.0:
            continue
        top = big_m // m
        if top < 2:
            continue
        rs, lam = arith.prime_powers_up_to(top, table)
        total += lk * float(np.sum(lam * np.log(m * rs) ** (n - k)))
    return total


def theorem_nderiv_rhs(a: complex, n: int, big_t: float,
                       zero_nderiv_sum: complex) -> TermBreakdown:
    """sum of zeta^(n)(rho_a) from the zero sum plus the level correction.

    The correction is obtained by differentiating the delta-deformed
    X = 1 a-point formula n - 1 times in delta at 0: writing M = T/2pi,

        correction = -a * d^{n+1}/dw^{n+1} [M^w / w]  at w = 1
                   = -a M sum_i C(n+1, i) (-1)^i (n+1-i)! log^i M,

    which for n = 1 is the familiar -a M (log^2 M - 2 log M + 2) and in
    general equals -a * sum_{m <= M} log^{n+1} m up to O(log^{n+1} T).
    (The binomial A_1/A_2 combination over a1_sum/a2_sum grows only like
    a M log M and does not reproduce the n = 1 case; it is kept exposed
    for inspection but not used here.)
    """
    if not 1 <= n <= 3:
        raise ParameterDomainError("theorem_nderiv_rhs: need 1 <= n <= 3")
    if big_t <= TWO_PI:
        raise ParameterDomainError("theorem_nderiv_rhs: need T > 2 pi")
    a = complex(a)
    big_m = big_t / TWO_PI
    logm = math.log(big_m)
    poly = sum(math.comb(n + 1, i) * (-1) ** i * math.factorial(n + 1 - i)
               * logm ** i for i in range(n + 2))
    terms = [("zero_nderiv_sum", complex(zero_nderiv_sum)),
             ("a_correction", -a * big_m * poly)]
    scale = math.sqrt(big_t) * math.log(big_t) ** (n + 6)
    return _breakdown(terms, scale)
