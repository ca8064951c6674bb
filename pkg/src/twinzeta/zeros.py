"""Nontrivial-zero tables: ingestion, validation, zero sums, and a
self-contained critical-line root finder for the low zeros.

Tables hold only the positive ordinates gamma; all downstream zero sums
assume beta = 1/2 and pair each zero with its conjugate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.optimize import brentq

from .exceptions import DomainError, ZeroTableError
from .special import SeriesValue, log_gamma, zeta_em, zeta_em_array, _zero_tail_density

FIRST_ZERO = 14.134725
FIRST_ZERO_TOL = 1e-4
COUNT_TOL = 2.0


def rvm_estimate(t) -> np.ndarray | float:
    """Riemann-von Mangoldt zero count estimate (T/2pi) log(T/2pi e) + 7/8."""
    t = np.asarray(t, dtype=float)
    out = t / (2 * np.pi) * np.log(t / (2 * np.pi * math.e)) + 7.0 / 8.0
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ZetaZeros:
    """Ascending positive zero ordinates, validated on construction."""
    gammas: np.ndarray
    source_id: str

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float)
        if g.size == 0:
            raise ZeroTableError(f"{self.source_id}: empty zero table")
        object.__setattr__(self, "gammas", g)
        if not np.all(np.diff(g) > 0):
            bad = int(np.nonzero(np.diff(g) <= 0)[0][0]) + 2
            raise ZeroTableError(
                f"{self.source_id}: ordinates not strictly increasing at entry {bad}")
        if abs(g[0] - FIRST_ZERO) > FIRST_ZERO_TOL:
            raise ZeroTableError(
                f"{self.source_id}: first ordinate {g[0]} not within "
                f"{FIRST_ZERO_TOL} of {FIRST_ZERO}")
        mean_gap = 2 * np.pi / math.log(max(g[-1], 18.0) / (2 * np.pi))
        mids = np.concatenate([0.5 * (g[:-1] + g[1:]), [g[-1] + 0.5 * mean_gap]])
        dev = np.abs(np.arange(1, g.size + 1) - rvm_estimate(mids))
        if dev.max() > COUNT_TOL:
            k = int(dev.argmax()) + 1
            raise ZeroTableError(
                f"{self.source_id}: prefix count at zero #{k} deviates "
                f"{dev.max():.2f} (> {COUNT_TOL}) from the Riemann-von Mangoldt estimate")

    def __len__(self) -> int:
        return int(self.gammas.size)

    @property
    def max_gamma(self) -> float:
        return float(self.gammas[-1])

    def upto(self, t_max: float) -> np.ndarray:
        """ordinates with gamma <= t_max"""
        if t_max > self.max_gamma + 1e-9:
            raise DomainError(
                f"t_max={t_max} beyond table extent {self.max_gamma}")
        return self.gammas[: int(np.searchsorted(self.gammas, t_max, side="right"))]

    def count_below(self, t_max: float) -> int:
        return int(np.searchsorted(self.gammas, t_max, side="right"))

    def head(self, n: int) -> "ZetaZeros":
        if not 1 <= n <= len(self):
            raise DomainError(f"cannot take {n} zeros from table of {len(self)}")
        return ZetaZeros(self.gammas[:n], f"{self.source_id}[:{n}]")


def load_zeros(path) -> ZetaZeros:
    """Load a zero table: one positive decimal per line, ascending,
    '#'-prefixed comment lines allowed, UTF-8, LF or CRLF."""
    gammas = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                val = float(line)
            except ValueError as exc:
                raise ZeroTableError(f"{path}:{lineno}: unparseable ordinate "
                                     f"{line!r}") from exc
            if not math.isfinite(val) or val <= 0:
                raise ZeroTableError(f"{path}:{lineno}: ordinate must be a "
                                     f"positive finite number, got {line!r}")
            if gammas and val <= gammas[-1]:
                raise ZeroTableError(f"{path}:{lineno}: ordinate {val} not "
                                     f"above predecessor {gammas[-1]}")
            gammas.append(val)
    if not gammas:
        raise ZeroTableError(f"{path}: no ordinates found")
    return ZetaZeros(np.asarray(gammas), str(path))


def bundled_zeros(name: str = "large") -> ZetaZeros:
    """bundled tables: 'small' = first 100 zeros, 'large' = first 100000"""
    fname = {"small": "zeros_100.txt", "large": "zeros_100000.txt"}.get(name)
    if fname is None:
        raise DomainError(f"unknown bundled table {name!r}")
    ref = resources.files("twinzeta").joinpath("data", fname)
    with resources.as_file(ref) as p:
        return load_zeros(p)


def sum_rho_reciprocal(zeros: ZetaZeros, t_max: float) -> SeriesValue:
    """sum over zeros with |gamma| < t_max of 1/(rho (1-rho)), conjugate pairs
    combined: each pair contributes 2/(1/4 + gamma^2). Tail estimated by
    integral comparison against the zero-counting density."""
    g = zeros.upto(t_max)
    val = float((2.0 / (0.25 + g * g)).sum())
    tail = _zero_tail_density(max(t_max, 14.0), 2.0)
    return SeriesValue(complex(val), tail, int(g.size), heuristic=True)


# ---------------------------------------------------------------------------
# critical-line root finding (self-contained check of the low zeros)
# ---------------------------------------------------------------------------

def _theta_array(t: np.ndarray) -> np.ndarray:
    return np.array([log_gamma(0.25 + 0.5j * tt).imag for tt in t]) \
        - t / 2.0 * math.log(math.pi)


def hardy_z(t: float) -> float:
    """Hardy's Z(t): real on the real line, vanishing exactly at the zeros."""
    if t <= 0:
        raise DomainError("hardy_z defined here for t > 0")
    theta = log_gamma(0.25 + 0.5j * t).imag - t / 2.0 * math.log(math.pi)
    z = zeta_em(complex(0.5, t)).value
    return (complex(math.cos(theta), math.sin(theta)) * z).real


def find_critical_zeros(count: int = 100, t_start: float = 10.0) -> np.ndarray:
    """Locate the first `count` critical-line ordinates by scanning Hardy's Z
    for sign changes and refining with Brent's method. Desk-scale helper for
    validating tables; not meant for bulk production."""
    if count < 1:
        raise DomainError("count must be positive")
    found: list[float] = []
    t = t_start
    while len(found) < count:
        t_hi = t + 40.0
        gap = 2 * np.pi / math.log(t_hi / (2 * np.pi))
        grid = np.arange(t, t_hi, gap / 8.0)
        zv, _, _ = zeta_em_array(0.5 + 1j * grid)
        zg = (np.exp(1j * _theta_array(grid)) * zv).real
        for i in np.nonzero(np.sign(zg[:-1]) * np.sign(zg[1:]) < 0)[0]:
            root = brentq(hardy_z, grid[i], grid[i + 1], xtol=1e-10, rtol=1e-14)
            found.append(float(root))
            if len(found) == count:
                break
        t = float(grid[-1])  # windows share an endpoint: no seam gaps
        if t > 1e4:
            raise DomainError("root search left the zeta validity window")
    return np.asarray(found)
