"""The prime-pair generating series Z(s) = sum_{n>=2} S(n) n^{-s}, where
S(n) is the squarefree divisor sum from arith. Four routes:

* z_direct  -- sieved summation, absolutely convergent for Re(s) > 1;
* z_formula -- 2 (zeta'/zeta)^2 - zeta''/zeta;
* z_poles   -- the meromorphic pole expansion over the critical-strip
               zeros (conjugate-paired, truncated at |gamma| < T);
* residues at s=1 and s=rho, plus the functional-equation residual.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .arith import golomb_sum_array
from .exceptions import ConditioningError, DomainError
from .numutil import log_power_tail
from .sieve import FactorSieve
from .special import (EULER_GAMMA, LOG_2PI, SeriesValue, ZETA_ZERO_THRESHOLD,
                      _zero_tail_density, digamma, trigamma, zero_pair_sums,
                      zeta_derivs, zeta_logderiv)
from .zeros import ZetaZeros

EXCLUSION_RADIUS = 0.05  # no pole-expansion evaluation closer than this to a pole


def z_direct(sieve: FactorSieve, s: complex, n_max: int) -> SeriesValue:
    """direct sum of S(n) n^{-s} for n <= n_max; requires Re(s) > 1.

    |S(n)| <= log^2 n, so the tail is bounded by the log-power integral.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError(f"z_direct needs Re(s) > 1, got {s.real}")
    n_max = int(n_max)
    if n_max > sieve.limit:
        raise DomainError(f"n_max={n_max} beyond sieve limit {sieve.limit}")
    coeff = golomb_sum_array(sieve, n_max)
    n = np.arange(2, n_max + 1, dtype=float)
    c = coeff[2:]
    total = 0.0 + 0.0j
    blk = 1 << 18
    for i in range(0, n.size, blk):
        total += (c[i:i + blk] * np.exp(-s * np.log(n[i:i + blk]))).sum()
    tail = log_power_tail(s.real, float(n_max))
    return SeriesValue(complex(total), tail, n_max - 1)


def z_formula(s: complex) -> complex:
    """Z(s) = 2 (zeta'/zeta)^2 - zeta''/zeta."""
    s = complex(s)
    if abs(s - 1) < 1e-4:
        raise ConditioningError(f"s={s} too close to the pole at 1")
    z0, z1, z2 = zeta_derivs(s, order=2)
    if abs(z0) < ZETA_ZERO_THRESHOLD:
        raise ConditioningError(f"|zeta({s})| = {abs(z0)} below threshold")
    r = z1 / z0
    return 2.0 * r * r - z2 / z0


def _exclusion_check(s: complex, gammas: np.ndarray) -> None:
    if abs(s - 1) < EXCLUSION_RADIUS:
        raise ConditioningError(f"s={s} within {EXCLUSION_RADIUS} of the pole at 1")
    if gammas.size:
        d2 = (s.real - 0.5) ** 2 + (np.abs(s.imag) - gammas) ** 2
        if float(d2.min()) < EXCLUSION_RADIUS ** 2:
            raise ConditioningError(f"s={s} within {EXCLUSION_RADIUS} of a zero")
    if s.real < 0:
        near_even = 2.0 * round(s.real / 2.0)
        if abs(s - near_even) < EXCLUSION_RADIUS and near_even <= -2.0:
            raise ConditioningError(f"s={s} within {EXCLUSION_RADIUS} of a trivial zero")


def z_poles(s: complex, zeros: ZetaZeros, t_max: float) -> SeriesValue:
    """pole expansion of Z(s), both zero sums truncated at |gamma| < t_max.

    The squared bracket reuses the same truncated pair sum so cancellations
    stay consistent; the trivial-zero ladder enters through digamma and
    trigamma of s/2 + 1.
    """
    s = complex(s)
    g = zeros.upto(t_max)
    _exclusion_check(s, g)
    s2, s1 = zero_pair_sums(s, g)
    bracket = (1.0 + EULER_GAMMA / 2.0 - LOG_2PI + 1.0 / (s - 1)
               + 0.5 * digamma(s / 2.0 + 1.0) - s1)
    val = (-1.0 / (s - 1) ** 2 + s2 + 0.25 * trigamma(s / 2.0 + 1.0)
           + bracket * bracket)
    t0 = max(t_max, 14.0)
    d1 = _zero_tail_density(t0, 2.0 * abs(s - 0.5) + 1.0)
    d2 = _zero_tail_density(t0, 2.0)
    tail = d2 + d1 * (2.0 * abs(bracket) + d1)
    return SeriesValue(val, tail, 2 * g.size, heuristic=True)


def residue_z_at_1(zeros: ZetaZeros, t_max: float) -> SeriesValue:
    """residue of Z at its simple pole s=1:
    2(1 - log 2pi) + gamma + psi(3/2) - 2 sum_rho 1/(rho(1-rho))."""
    from .zeros import sum_rho_reciprocal
    srr = sum_rho_reciprocal(zeros, t_max)
    val = (2.0 * (1.0 - LOG_2PI) + EULER_GAMMA + digamma(1.5).real
           - 2.0 * srr.value.real)
    return SeriesValue(complex(val), 2.0 * srr.tail_bound, srr.terms_used,
                       heuristic=True)


def residue_z_at_rho(rho: complex) -> complex:
    """the closed-form bracket at a zero rho:
    -2(1 - log 2pi) - 2/(rho-1) + 2/rho - gamma - psi(1 + rho/2).

    This is the single-zero part of the residue of Z at rho; the full
    Laurent residue adds the sum over the other zeros (see
    residue_z_at_rho_corrected), which the contour oracle confirms.
    """
    rho = complex(rho)
    return (-2.0 * (1.0 - LOG_2PI) - 2.0 / (rho - 1) + 2.0 / rho
            - EULER_GAMMA - digamma(1.0 + rho / 2.0))


def residue_z_at_rho_corrected(rho: complex, zeros: ZetaZeros,
                               t_max: float) -> SeriesValue:
    """full residue of Z at rho: the closed-form bracket plus
    2 sum_{rho' != rho} (1/(rho - rho') + 1/rho'), truncated at t_max."""
    rho = complex(rho)
    g = zeros.upto(t_max)
    gr = rho.imag
    keep = np.abs(g - abs(gr)) > 1e-9
    go = g[keep]
    if keep.sum() == g.size:
        raise DomainError(f"rho={rho} is not in the zero table")
    # partner at conjugate height plus all other pairs
    other = 1.0 / (rho - np.conj(rho)) + 1.0 / np.conj(rho)
    u = rho - 0.5
    other += ((2.0 * u / (u * u + go * go)).sum()
              + (1.0 / (0.25 + go * go)).sum())
    val = residue_z_at_rho(rho) + 2.0 * other
    tail = 2.0 * _zero_tail_density(max(t_max, 14.0), 2.0 * abs(u) + 1.0)
    return SeriesValue(val, tail, 2 * g.size - 1, heuristic=True)


def functional_residual(s: complex) -> float:
    """|LHS - RHS| of the functional equation of Z:
    Z(1-s) + psi'(s) - (pi/2)^2 / cos^2(pi s/2)
      = Z(s) + G(s)^2 + 2 (zeta'/zeta)(s) G(s),
    with G(s) = psi(s) - log 2pi - (pi/2) tan(pi s/2)."""
    s = complex(s)
    G = digamma(s) - LOG_2PI - (math.pi / 2.0) * cmath.tan(s * math.pi / 2.0)
    lhs = (z_formula(1.0 - s) + trigamma(s)
           - (math.pi / 2.0) ** 2 / cmath.cos(s * math.pi / 2.0) ** 2)
    rhs = z_formula(s) + G * G + 2.0 * zeta_logderiv(s) * G
    return abs(lhs - rhs)
