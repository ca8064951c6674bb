"""Smallest-prime-factor sieve and integer factorization.

The sieve stores spf[n] for 2 <= n <= limit. Numbers up to limit factor in
O(log n) by repeated spf division; numbers up to limit**2 factor by trial
division over sieved primes, switching back to the spf walk as soon as the
remaining cofactor fits under the limit.
"""
from __future__ import annotations

import os
import struct
from math import isqrt

import numpy as np

from .exceptions import CapacityError, DomainError, ZeroTableError

SIEVE_MAGIC = b"GZSV1"
MAX_SIEVE_LIMIT = 200_000_000  # uint32 spf entries; ~800 MB at the cap


def _build_spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p:: p]
            block[block == 0] = p
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    return spf


class FactorSieve:
    """Immutable table of smallest prime factors for 2..limit."""

    def __init__(self, limit: int, _spf: np.ndarray | None = None):
        limit = int(limit)
        if limit < 2:
            raise DomainError(f"sieve limit must be >= 2, got {limit}")
        if limit > MAX_SIEVE_LIMIT:
            raise CapacityError(
                f"sieve limit {limit} exceeds cap {MAX_SIEVE_LIMIT}")
        self.limit = limit
        self.spf = _spf if _spf is not None else _build_spf(limit)
        self._primes: np.ndarray | None = None
        self._primes_list: list[int] | None = None

    def __repr__(self):
        return f"FactorSieve(limit={self.limit})"

    def _check(self, n: int, lo: int = 1) -> int:
        n = int(n)
        if not lo <= n <= self.limit:
            raise DomainError(f"n={n} outside [{lo}, {self.limit}]")
        return n

    def smallest_factor(self, n: int) -> int:
        return int(self.spf[self._check(n, 2)])

    def is_prime(self, n: int) -> bool:
        n = int(n)
        if n < 2 or n > self.limit:
            raise DomainError(f"n={n} outside [2, {self.limit}]")
        return int(self.spf[n]) == n

    def primes(self) -> np.ndarray:
        """ascending array of all primes <= limit"""
        if self._primes is None:
            idx = np.arange(self.limit + 1, dtype=np.uint32)
            self._primes = np.nonzero(self.spf == idx)[0][1:].astype(np.int64)
        return self._primes

    def _plist(self) -> list[int]:
        if self._primes_list is None:
            self._primes_list = self.primes().tolist()
        return self._primes_list

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """prime factorization of n <= limit via the spf walk"""
        n = self._check(n)
        out: list[tuple[int, int]] = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def factorize_wide(self, n: int) -> list[tuple[int, int]]:
        """factorization for n up to limit**2 (trial division + spf walk)"""
        n = int(n)
        if n < 1:
            raise DomainError(f"n={n} must be positive")
        if n <= self.limit:
            return self.factorize(n)
        if n > self.limit * self.limit:
            raise CapacityError(
                f"n={n} exceeds factorization budget limit^2={self.limit**2}")
        out: list[tuple[int, int]] = []
        m = n
        for p in self._plist():
            if p * p > m:
                break
            if m <= self.limit:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
        if m > 1:
            if m <= self.limit:
                out.extend(self.factorize(m))
            else:
                out.append((m, 1))  # cofactor prime: no sieved p <= sqrt(m) divides
        out.sort()
        return out

    def distinct_primes(self, n: int) -> list[int]:
        return [p for p, _ in self.factorize(n)]

    # ---- binary cache -------------------------------------------------
    def save(self, path: str | os.PathLike) -> None:
        """little-endian cache: magic 'GZSV1', u64 limit, packed u32 spf[2:]"""
        with open(path, "wb") as f:
            f.write(SIEVE_MAGIC)
            f.write(struct.pack("<Q", self.limit))
            f.write(self.spf[2:].astype("<u4").tobytes())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "FactorSieve":
        with open(path, "rb") as f:
            magic = f.read(len(SIEVE_MAGIC))
            if magic != SIEVE_MAGIC:
                raise ZeroTableError(f"bad sieve cache magic {magic!r} in {path}")
            (limit,) = struct.unpack("<Q", f.read(8))
            if not 2 <= limit <= MAX_SIEVE_LIMIT:
                raise ZeroTableError(f"implausible sieve cache limit {limit}")
            data = np.frombuffer(f.read(), dtype="<u4")
        if data.size != limit - 1:
            raise ZeroTableError(
                f"sieve cache truncated: {data.size} entries for limit {limit}")
        spf = np.zeros(limit + 1, dtype=np.uint32)
        spf[2:] = data
        if spf[2] != 2:
            raise ZeroTableError("sieve cache corrupt: spf[2] != 2")
        return cls(int(limit), _spf=spf)


def build_sieve(limit: int) -> FactorSieve:
    return FactorSieve(limit)
