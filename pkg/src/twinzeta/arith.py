"""Sieved arithmetic functions and the divisor-sum identity machinery.

The central quantity is the divisor sum S(n) = sum_{d|n} mu(d) log^2 d.
It depends only on the distinct primes of n: one prime p gives -log^2 p,
two primes p, q give 2 log p log q, three or more give 0. For a pair of
coprime prime powers x = p^i, y = q^j this collapses to
S(x*y) = 2 Lambda(x) Lambda(y), which is what the range verifier checks.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import fsum, gcd, log
from typing import Literal

import numpy as np

from .exceptions import DomainError, SearchError
from .sieve import FactorSieve

Parity = Literal["odd", "even"]

GOLOMB_REL_TOL = 1e-9  # |lhs - rhs| <= tol * (1 + |lhs|) on the coprime stratum


def mobius(sieve: FactorSieve, n: int) -> int:
    """Mobius function of n <= sieve limit."""
    n = int(n)
    if n == 1:
        return 1
    sign = 1
    for _, e in sieve.factorize(n):
        if e > 1:
            return 0
        sign = -sign
    return sign


def mangoldt(sieve: FactorSieve, n: int) -> float:
    """von Mangoldt Lambda(n): log p for prime powers p^k, else 0."""
    n = int(n)
    if n == 1:
        return 0.0
    fac = sieve.factorize(n)
    if len(fac) == 1:
        return log(fac[0][0])
    return 0.0


def mangoldt_array(sieve: FactorSieve, n_max: int) -> np.ndarray:
    """Lambda(0..n_max) as a float array."""
    n_max = int(n_max)
    if n_max > sieve.limit:
        raise DomainError(f"n_max={n_max} beyond sieve limit {sieve.limit}")
    out = np.zeros(n_max + 1)
    for p in sieve.primes().tolist():
        if p > n_max:
            break
        lp = log(p)
        q = p
        while q <= n_max:
            out[q] = lp
            q *= p
    return out


def golomb_sum_fast(sieve: FactorSieve, n: int) -> float:
    """S(n) = sum_{d|n} mu(d) log^2 d via the distinct-prime classification."""
    n = int(n)
    if n < 2:
        raise DomainError(f"n={n} must be >= 2")
    ps = sieve.distinct_primes(n)
    if len(ps) == 1:
        return -log(ps[0]) ** 2
    if len(ps) == 2:
        return 2.0 * log(ps[0]) * log(ps[1])
    return 0.0


def golomb_sum_array(sieve: FactorSieve, n_max: int) -> np.ndarray:
    """S(n) for all n <= n_max, by sieving distinct-prime statistics."""
    n_max = int(n_max)
    if n_max > sieve.limit:
        raise DomainError(f"n_max={n_max} beyond sieve limit {sieve.limit}")
    cnt = np.zeros(n_max + 1, dtype=np.int8)
    logsum = np.zeros(n_max + 1)
    logsq = np.zeros(n_max + 1)
    for p in sieve.primes().tolist():
        if p > n_max:
            break
        lp = log(p)
        sl = slice(p, n_max + 1, p)
        cnt[sl] += 1
        logsum[sl] += lp
        logsq[sl] += lp * lp
    out = np.where(cnt == 1, -logsq,
                   np.where(cnt == 2, logsum * logsum - logsq, 0.0))
    out[:2] = 0.0
    return out


def golomb_sum_oracle(sieve: FactorSieve, n: int) -> float:
    """S(n) by literal enumeration of the squarefree divisors of n.

    Accepts n up to sieve limit**2 (factored by trial division). Kept
    independent of the classified path so the two can check each other.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"n={n} must be >= 2")
    logs = [log(p) for p, _ in sieve.factorize_wide(n)]
    k = len(logs)
    terms = []
    for mask in range(1, 1 << k):
        ld = 0.0
        bits = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                ld += logs[i]
                bits += 1
            m >>= 1
            i += 1
        terms.append((ld * ld) if bits % 2 == 0 else -(ld * ld))
    return fsum(terms)


@dataclass(frozen=True)
class TwinConfig:
    """One generalized twin family: pairs (median - d, median + d).

    Odd d: median 2a. Even d (6 not dividing d): median 3(2a-1).
    a_start is the least index whose pair members are both prime.
    """
    d: int
    parity: Parity
    a_start: int

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"d must be positive, got {self.d}")
        if self.parity == "odd":
            if self.d % 2 == 0:
                raise DomainError(f"odd parity needs odd d, got {self.d}")
        elif self.parity == "even":
            if self.d % 2 or self.d % 6 == 0:
                raise DomainError(
                    f"even parity needs even d not divisible by 6, got {self.d}")
        else:
            raise DomainError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        if self.a_start < 1:
            raise DomainError(f"a_start must be positive, got {self.a_start}")

    def median(self, a: int) -> int:
        return 2 * a if self.parity == "odd" else 3 * (2 * a - 1)

    def members(self, a: int) -> tuple[int, int]:
        m = self.median(a)
        return m - self.d, m + self.d

    def family_start(self) -> int:
        """least a with a positive series base median^2 - d^2"""
        if self.parity == "odd":
            return self.d // 2 + 1
        a = self.d // 6 + 1
        while self.median(a) <= self.d:
            a += 1
        return a

    def verify_start(self) -> int:
        """least a with both pair members >= 2 (below it the identity degenerates)"""
        a = self.family_start()
        while self.median(a) - self.d < 2:
            a += 1
        return a


def first_a(sieve: FactorSieve, d: int, parity: Parity) -> int:
    """least a whose pair members are both prime"""
    cfg = TwinConfig(d, parity, 1)
    a = cfg.family_start()
    while True:
        x, y = cfg.members(a)
        if y > sieve.limit:
            raise SearchError(
                f"no prime pair for d={d} ({parity}) within sieve limit {sieve.limit}")
        if x >= 2 and sieve.is_prime(x) and sieve.is_prime(y):
            return a
        a += 1


def twin_config(sieve: FactorSieve, d: int, parity: Parity | None = None) -> TwinConfig:
    """build a TwinConfig with parity inferred from d and a_start discovered"""
    if parity is None:
        parity = "odd" if d % 2 else "even"
    return TwinConfig(d, parity, first_a(sieve, d, parity))


def twin_coefficient(sieve: FactorSieve, cfg: TwinConfig, a: int) -> float:
    """2 Lambda(median - d) Lambda(median + d) for the pair at index a"""
    x, y = cfg.members(int(a))
    if x < 1:
        raise DomainError(f"pair member {x} not positive at a={a}")
    if y > sieve.limit:
        raise DomainError(f"pair member {y} beyond sieve limit {sieve.limit}")
    return 2.0 * mangoldt(sieve, x) * mangoldt(sieve, y)


@dataclass
class GolombReport:
    """Result of verifying S(x*y) = 2 Lambda(x) Lambda(y) over a range of a.

    The identity is asserted only on the coprime stratum; indices with
    gcd(pair) > 1 where it fails are collected in `exceptional`.
    """
    d: int
    parity: Parity
    a_begin: int
    a_max: int
    checked: int = 0
    max_abs_dev: float = 0.0
    exceptional: list[tuple[int, float, float]] = field(default_factory=list)
    coprime_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.coprime_failures


def _verify_chunk(sieve, cfg, a_lo, a_hi):
    max_dev = 0.0
    checked = 0
    exceptional = []
    failures = []
    for a in range(a_lo, a_hi):
        x, y = cfg.members(a)
        lhs = 2.0 * mangoldt(sieve, x) * mangoldt(sieve, y)
        rhs = golomb_sum_oracle(sieve, x * y)
        dev = abs(lhs - rhs)
        checked += 1
        if gcd(x, y) == 1:
            if dev > max_dev:
                max_dev = dev
            if dev > GOLOMB_REL_TOL * (1.0 + abs(lhs)):
                failures.append(a)
        elif dev > GOLOMB_REL_TOL * (1.0 + abs(lhs)):
            exceptional.append((a, lhs, rhs))
    return max_dev, checked, exceptional, failures


def verify_golomb_range(sieve: FactorSieve, cfg: TwinConfig, a_max: int,
                        threads: int = 1) -> GolombReport:
    """Check the divisor-sum identity for every index of the family up to a_max.

    The range starts at the first index with both members >= 2; for d with
    prime-power coincidences (e.g. d=3, pair (3,9)) the gcd>1 stratum is
    reported rather than asserted.
    """
    a_begin = cfg.verify_start()
    report = GolombReport(cfg.d, cfg.parity, a_begin, a_max)
    if a_max < a_begin:
        return report
    _, y_top = cfg.members(a_max)
    if y_top > sieve.limit:
        raise DomainError(
            f"pair member {y_top} at a_max={a_max} beyond sieve limit {sieve.limit}")
    threads = max(1, int(threads))
    if threads == 1:
        chunks = [_verify_chunk(sieve, cfg, a_begin, a_max + 1)]
    else:
        bounds = np.linspace(a_begin, a_max + 1, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_verify_chunk, sieve, cfg, int(lo), int(hi))
                    for lo, hi in zip(bounds[:-1], bounds[1:])]
            chunks = [f.result() for f in futs]
    for max_dev, checked, exceptional, failures in chunks:
        report.max_abs_dev = max(report.max_abs_dev, max_dev)
        report.checked += checked
        report.exceptional.extend(exceptional)
        report.coprime_failures.extend(failures)
    report.exceptional.sort()
    report.coprime_failures.sort()
    return report
