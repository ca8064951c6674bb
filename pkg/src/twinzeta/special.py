"""Complex special functions on binary64: Euler-Maclaurin zeta and its
Cauchy-quadrature derivatives, digamma / trigamma / log-gamma, and the
logarithmic derivative of zeta (direct and via a zero table).

Validity window for the zeta evaluator: Re(s) > -3, |Im(s)| <= 1e4, s != 1.
Beyond |t| ~ 1e4 the node count grows past the desk-scale budget.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConditioningError, DomainError
from .numutil import bernoulli_even

EULER_GAMMA = 0.5772156649015328606
LOG_2PI = math.log(2.0 * math.pi)

T_MAX = 1.0e4
SIGMA_MIN = -3.0
ZETA_ZERO_THRESHOLD = 1e-10

_EM_ORDER_DEFAULT = 12
_DERIV_RADIUS = 0.25
_DERIV_NODES = 64


@dataclass(frozen=True)
class SeriesValue:
    """A truncated-evaluation result.

    tail_bound estimates the truncation error; `heuristic` marks bounds
    that rest on unproven density assumptions rather than remainder
    formulas.
    """
    value: complex
    tail_bound: float
    terms_used: int
    heuristic: bool = False

    @property
    def real(self) -> float:
        return self.value.real


def _auto_terms(t_abs: float) -> int:
    return max(24, int(1.3 * t_abs) + 24)


def zeta_em_array(s: np.ndarray, n_terms: int | None = None,
                  em_order: int = _EM_ORDER_DEFAULT):
    """Euler-Maclaurin zeta on an array of points (window unchecked).

    Returns (values, first-omitted-term tail estimates, N).
    """
    s = np.asarray(s, dtype=complex)
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    N = int(n_terms) if n_terms else _auto_terms(tmax)
    flat = s.reshape(-1)
    ln = np.log(np.arange(1, N, dtype=float))
    main = np.empty(flat.shape, complex)
    blk = max(1, int(4e6 / max(N, 1)))
    for i in range(0, flat.size, blk):
        main[i:i + blk] = np.exp(-np.multiply.outer(flat[i:i + blk], ln)).sum(axis=1)
    npow = np.exp(-flat * math.log(N))
    val = main + npow * N / (flat - 1) + npow / 2.0
    rf = flat.copy()          # rising factorial (s)_{2k-1}
    nk = npow / N             # N^{-s-2k+1}
    fact = 2.0                # (2k)!
    for k in range(1, em_order + 1):
        val = val + (bernoulli_even(k) / fact) * rf * nk
        rf = rf * (flat + 2 * k - 1) * (flat + 2 * k)
        nk = nk / (N * N)
        fact *= (2 * k + 1) * (2 * k + 2)
    omitted = np.abs(bernoulli_even(em_order + 1) / fact * rf * nk)
    safety = np.abs(flat + 2 * em_order + 1) / np.maximum(
        flat.real + 2 * em_order + 1, 1.0)
    tail = omitted * safety
    return val.reshape(s.shape), tail.reshape(s.shape), N


def _check_window(s: complex, what: str = "zeta") -> complex:
    s = complex(s)
    if s == 1:
        raise DomainError(f"{what}: pole at s=1")
    if s.real <= SIGMA_MIN:
        raise DomainError(f"{what}: Re(s)={s.real} outside validity (> {SIGMA_MIN})")
    if abs(s.imag) > T_MAX:
        raise DomainError(f"{what}: |Im(s)|={abs(s.imag)} beyond window {T_MAX}")
    return s


def zeta_em(s: complex, n_terms: int | None = None,
            em_order: int = _EM_ORDER_DEFAULT) -> SeriesValue:
    """zeta(s) by Euler-Maclaurin summation with Bernoulli corrections."""
    s = _check_window(s)
    val, tail, N = zeta_em_array(np.array([s]), n_terms, em_order)
    return SeriesValue(complex(val[0]), float(tail[0]), N)


def _deriv_radius(s: complex, radius: float) -> float:
    # keep the pole at 1 outside the circle, and stay inside the strip
    r = min(radius, 0.45 * abs(s - 1), s.real - SIGMA_MIN - 1e-3)
    if r <= 1e-8:
        raise DomainError(f"no usable quadrature circle around s={s}")
    return r


def zeta_derivs_array(s: np.ndarray, order: int = 2, radius: float = _DERIV_RADIUS,
                      nodes: int = _DERIV_NODES) -> list[np.ndarray]:
    """zeta and derivatives on an array of points by Cauchy circle quadrature.

    A single circle radius is used for the whole batch (the minimum of the
    per-point adaptive radii), so callers should batch comparable points.
    """
    s = np.asarray(s, dtype=complex)
    if order > 2:
        raise DomainError("derivative order limited to 2")
    r = min(radius, float(0.45 * np.min(np.abs(s - 1))),
            float(np.min(s.real) - SIGMA_MIN - 1e-3))
    if r <= 1e-8:
        raise DomainError("no usable quadrature circle for batch")
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    circ = r * np.exp(1j * theta)
    pts = s[..., None] + circ
    vals, _, _ = zeta_em_array(pts)
    out = []
    fact = 1.0
    for k in range(order + 1):
        phase = np.exp(-1j * k * theta)
        out.append(fact * (vals * phase).mean(axis=-1) / r ** k)
        fact *= (k + 1)
    return out


def zeta_derivs(s: complex, order: int = 2, radius: float = _DERIV_RADIUS,
                nodes: int = _DERIV_NODES) -> list[complex]:
    """[zeta(s), zeta'(s), ..., up to `order`] by Cauchy circle quadrature."""
    s = _check_window(s, "zeta_derivs")
    if order > 2:
        raise DomainError("derivative order limited to 2")
    r = _deriv_radius(s, radius)
    if abs(s.imag) + r > T_MAX + 1.0:
        raise DomainError("quadrature circle leaves the validity window")
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    pts = s + r * np.exp(1j * theta)
    vals, _, _ = zeta_em_array(pts)
    out = []
    fact = 1.0
    for k in range(order + 1):
        phase = np.exp(-1j * k * theta)
        out.append(complex(fact * (vals * phase).mean() / r ** k))
        fact *= (k + 1)
    return out


# ---------------------------------------------------------------------------
# gamma-family functions: shift into |z| >= 16, then Stirling series
# ---------------------------------------------------------------------------

def _shift_count(z: complex) -> int:
    if abs(z) >= 16.0 and z.real >= 0.5:
        return 0
    return max(0, int(math.ceil(16.0 - z.real)))


def _pole_check(z: complex, what: str) -> complex:
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise DomainError(f"{what}: pole at nonpositive integer {z.real}")
    return z


def digamma(z: complex) -> complex:
    """psi(z) via recurrence shift and the Stirling asymptotic series."""
    z = _pole_check(z, "digamma")
    m = _shift_count(z)
    acc = 0.0 + 0.0j
    for j in range(m):
        acc += 1.0 / (z + j)
    w = z + m
    inv2 = 1.0 / (w * w)
    res = cmath.log(w) - 0.5 / w
    term = inv2
    for k in range(1, 11):
        res -= bernoulli_even(k) / (2 * k) * term
        term *= inv2
    return res - acc


def trigamma(z: complex) -> complex:
    """psi'(z), same scheme as digamma."""
    z = _pole_check(z, "trigamma")
    m = _shift_count(z)
    acc = 0.0 + 0.0j
    for j in range(m):
        acc += 1.0 / (z + j) ** 2
    w = z + m
    inv = 1.0 / w
    inv2 = inv * inv
    res = inv + 0.5 * inv2
    term = inv * inv2
    for k in range(1, 11):
        res += bernoulli_even(k) * term
        term *= inv2
    return res + acc


def log_gamma(z: complex) -> complex:
    """log Gamma(z), principal branch, for Re(z) > 0 usage."""
    z = _pole_check(z, "log_gamma")
    m = _shift_count(z)
    acc = 0.0 + 0.0j
    for j in range(m):
        acc += cmath.log(z + j)
    w = z + m
    res = (w - 0.5) * cmath.log(w) - w + 0.5 * LOG_2PI
    inv = 1.0 / w
    inv2 = inv * inv
    term = inv
    for k in range(1, 11):
        res += bernoulli_even(k) / ((2 * k) * (2 * k - 1)) * term
        term *= inv2
    return res - acc


# ---------------------------------------------------------------------------
# zeta'/zeta
# ---------------------------------------------------------------------------

def zeta_logderiv(s: complex) -> complex:
    """zeta'(s)/zeta(s); conditioning error when |zeta(s)| is negligible."""
    s = _check_window(s, "zeta_logderiv")
    z0, z1 = zeta_derivs(s, order=1)
    if abs(z0) < ZETA_ZERO_THRESHOLD:
        raise ConditioningError(f"|zeta({s})| = {abs(z0)} below threshold")
    return z1 / z0


def zero_pair_sums(s: complex, gammas: np.ndarray):
    """conjugate-paired zero sums used by the pole expansions.

    Returns (sum of 1/(s-rho)^2 + 1/(s-conj rho)^2,
             sum of 1/(s-rho) + 1/rho + conjugate partner).
    All zeros taken on the critical line beta = 1/2.
    """
    g = np.asarray(gammas, dtype=float)
    u = complex(s) - 0.5
    denom = u * u + g * g
    s2 = (2.0 * (u * u - g * g) / (denom * denom)).sum()
    s1 = (2.0 * u / denom).sum() + (1.0 / (0.25 + g * g)).sum()
    return complex(s2), complex(s1)


def _zero_tail_density(t0: float, coeff: float) -> float:
    """integral-comparison estimate of sum_{gamma > t0} coeff / gamma^2
    against the zero-counting density, with a 1.5x safety factor."""
    t0 = max(t0, 14.0)
    return 1.5 * coeff / (2.0 * math.pi) * (math.log(t0 / (2 * math.pi)) + 1.0) / t0


def zeta_logderiv_via_zeros(s: complex, zeros, t_max: float) -> SeriesValue:
    """pole expansion of zeta'/zeta with the zero sum truncated at |gamma| < t_max."""
    s = _check_window(s, "zeta_logderiv_via_zeros")
    g = zeros.upto(t_max)
    base = (LOG_2PI - 1.0 - EULER_GAMMA / 2.0 - 1.0 / (s - 1)
            - 0.5 * digamma(s / 2.0 + 1.0))
    _, s1 = zero_pair_sums(s, g)
    tail = _zero_tail_density(max(t_max, 14.0), 2.0 * abs(s - 0.5) + 1.0)
    return SeriesValue(base + s1, tail, 2 * g.size, heuristic=True)
