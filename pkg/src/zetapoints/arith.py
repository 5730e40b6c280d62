"""Integer-arithmetic kernels: von Mangoldt Lambda, Moebius mu, the
higher von Mangoldt functions Lambda_k(m) = sum_{d|m} mu(d) log^k(m/d),
and the Dirichlet coefficients c_a(r) of zeta'(s)/(zeta(s)-a).

Everything is backed by one smallest-prime-factor sieve, built once and
immutable afterwards; all queries are read-only.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

DEFAULT_SIEVE_LIMIT = 2_000_000
INTEGER_TOLERANCE = 1e-9


class SieveRangeError(ValueError):
    """Query beyond the sieve limit."""


class LevelOneError(ValueError):
    """c_a(r) requested at the excluded level a = 1."""


@dataclass(frozen=True)
class SieveTable:
    """Smallest-prime-factor table for 2..limit."""

    limit: int
    smallest_prime_factor: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "SieveTable":
        if limit < 2:
            raise ValueError("sieve limit must be >= 2")
        spf = np.zeros(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p::p]
                block[block == 0] = p
        untouched = spf == 0
        spf[untouched] = np.arange(limit + 1)[untouched]
        spf[0] = spf[1] = 0
        spf.setflags(write=False)
        return cls(limit=limit, smallest_prime_factor=spf)

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise SieveRangeError(f"{n} outside sieve range 1..{self.limit}")

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization [(p, e), ...] with p ascending."""
        self._check(n)
        spf = self.smallest_prime_factor
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def primes(self, up_to: int) -> np.ndarray:
        self._check(max(2, up_to))
        idx = np.arange(up_to + 1)
        return idx[(idx >= 2) & (self.smallest_prime_factor[:up_to + 1] == idx)]


_default_table: SieveTable | None = None


def default_table() -> SieveTable:
    """The lazily built process-wide sieve (APOINT_SIEVE_LIMIT overrides size)."""
    global _default_table
    if _default_table is None:
        limit = int(os.environ.get("APOINT_SIEVE_LIMIT", DEFAULT_SIEVE_LIMIT))
        _default_table = SieveTable.build(limit)
    return _default_table


def mangoldt(r: int, table: SieveTable | None = None) -> float:
    """Lambda(r): log p if r is a prime power p^k, else 0."""
    table = table or default_table()
    table._check(r)
    if r == 1:
        return 0.0
    fac = table.factorize(r)
    if len(fac) == 1:
        return math.log(fac[0][0])
    return 0.0


def moebius(m: int, table: SieveTable | None = None) -> int:
    """mu(m) in {-1, 0, 1}."""
    table = table or default_table()
    table._check(m)
    fac = table.factorize(m)
    if any(e >= 2 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def mangoldt_k(m: int, k: int, table: SieveTable | None = None) -> float:
    """Lambda_k(m) = sum_{d|m} mu(d) log^k(m/d).

    Lambda_0 is the indicator of m = 1 (mu * 1 = delta); Lambda_1 is the
    usual von Mangoldt function.  Only squarefree divisors contribute,
    so the sum runs over subsets of the distinct primes of m.
    """
    table = table or default_table()
    table._check(m)
    if not 0 <= k <= 6:
        raise ValueError("mangoldt_k: k must be in 0..6")
    if k == 0:
        return 1.0 if m == 1 else 0.0
    if m == 1:
        return 0.0
    primes = [p for p, _ in table.factorize(m)]
    logm = math.log(m)
    total = 0.0
    for r in range(len(primes) + 1):
        sign = -1.0 if r % 2 else 1.0
        for subset in combinations(primes, r):
            d = math.prod(subset)
            total += sign * (logm - math.log(d)) ** k
    return total


def prime_powers_up_to(x: float, table: SieveTable | None = None):
    """Arrays (r, Lambda(r)) over all prime powers r <= x, ascending."""
    table = table or default_table()
    n = int(math.floor(x))
    table._check(max(2, min(n, table.limit)))
    if n > table.limit:
        raise SieveRangeError(f"{n} beyond sieve limit {table.limit}")
    primes = table.primes(n)
    rs: list[int] = []
    lam: list[float] = []
    for p in primes:
        logp = math.log(p)
        q = int(p)
        while q <= n:
            rs.append(q)
            lam.append(logp)
            q *= int(p)
    order = np.argsort(rs, kind="stable")
    return np.asarray(rs, dtype=np.int64)[order], np.asarray(lam)[order]


def delta_indicator(x: float) -> int:
    """Delta(X): 1 iff X is within 1e-9 of a positive integer."""
    if x <= 0:
        raise ValueError("delta_indicator: X must be positive")
    near = round(x)
    return 1 if near >= 1 and abs(x - near) < INTEGER_TOLERANCE else 0


@dataclass(frozen=True)
class CaCoefficients:
    """Coefficients c_a(r) of zeta'(s)/(zeta(s)-a) = sum_r c_a(r) r^-s."""

    a: complex
    limit: int
    values: np.ndarray = field(repr=False)   # index r, entry 0 unused

    def __getitem__(self, r: int) -> complex:
        if not 1 <= r <= self.limit:
            raise SieveRangeError(f"c_a({r}) outside 1..{self.limit}")
        return complex(self.values[r])


def c_a_coefficients(a: complex, limit: int) -> CaCoefficients:
    """Compute c_a(r) for r <= limit by the convolution recursion.

    Matching Dirichlet coefficients of zeta'(s) = (zeta(s) - a) * sum c_a(r) r^-s
    gives, for every k >= 2,

        (1 - a) c_a(k) + sum_{d|k, d<k} c_a(d) = -log k,

    with c_a(1) = 0, hence the forward recursion below.  The level a = 1
    is excluded: there the series support changes and this expansion does
    not apply.
    """
    a = complex(a)
    if abs(a - 1.0) < 1e-12:
        raise LevelOneError("c_a(r) is not defined by this recursion at a = 1")
    if limit < 2:
        raise ValueError("c_a_coefficients: limit must be >= 2")
    vals = np.zeros(limit + 1, dtype=complex)
    divsum = np.zeros(limit + 1, dtype=complex)
    logk = np.log(np.arange(1, limit + 1, dtype=float))
    for k in range(2, limit + 1):
        ck = -(logk[k - 1] + divsum[k]) / (1.0 - a)
        vals[k] = ck
        if ck != 0.0 and 2 * k <= limit:
            divsum[2 * k::k] += ck
    vals.setflags(write=False)
    return CaCoefficients(a=a, limit=limit, values=vals)
