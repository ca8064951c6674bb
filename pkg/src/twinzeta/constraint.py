"""Constraint Dirichlet series over twin-family medians.

For a family with medians m(a) = h*a + c (odd d: 2a; even d: 6a-3) and
half-gap d, the big series is Q(s) = sum_{a >= a0} (m(a)^2 - d^2)^{-s} and
the subtracted series groups each term with its comb partner m(a)^{-2s},
extending regularity to Re(s) > -1/2.

Two independent evaluation routes:

* direct   -- explicit summation plus an Euler-Maclaurin tail whose
              integral term is expanded in powers of (d/median)^2;
* binomial -- the interchanged expansion sum_nu (s)_nu/nu! (d/h')^{2nu}
              times shifted progression zeta values, every inner sum
              evaluated as a cancellation-free Euler-Maclaurin tail.

The family start index is the least a with a positive base m(a)^2 - d^2.
For even d = 4 (mod 6) this is one step past the naive d//6 + 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import TwinConfig
from .exceptions import ConditioningError, DomainError
from .numutil import bernoulli_even
from .special import SeriesValue

Q_BIG_SIGMA_MIN = 0.5
Q_SUB_SIGMA_MIN = -0.45
BINOM_CAP = 60        # enough for the geometric ratio of small half-gaps
BINOM_CAP_MAX = 800   # ratio-scaled ceiling for wide families
BINOM_REL_EPS = 1e-16
POLE_EXCLUSION = 0.05

_FACT2K = [math.factorial(2 * k) for k in range(0, 12)]


def family_geometry(cfg: TwinConfig) -> tuple[int, int, int]:
    """(h, c, a_min) with median(a) = h*a + c and a_min the family start"""
    if cfg.parity == "odd":
        return 2, 0, cfg.family_start()
    return 6, -3, cfg.family_start()


def _prog_tail_scaled(m0: int, step: int, x: complex,
                      bern_terms: int = 8) -> complex:
    """m0^x * sum_{m = m0, m0+step, ...} m^{-x} by Euler-Maclaurin.

    The normalization keeps every factor of order (m/m0)^{-x}, so the value
    stays representable even when m0^{-x} itself under- or overflows.
    Evaluates the analytic continuation (simple pole at x=1) without the
    zeta-minus-head cancellation; relative accuracy is near machine level
    for Re(x) > 1 - 2*bern_terms away from the pole.
    """
    x = complex(x)
    head = max(24, int(abs(x) / 3.0) + 8)
    M = m0 + step * head
    u = np.arange(m0, M, step, dtype=float) / m0
    S = complex(np.exp(-x * np.log(u)).sum())
    mp_ = np.exp(-x * math.log(M / m0))  # (M/m0)^{-x}
    T = mp_ * M / (step * (x - 1.0)) + mp_ / 2.0
    rf = x
    mk = mp_ / M
    for k in range(1, bern_terms + 1):
        T += (bernoulli_even(k) / _FACT2K[k]) * step ** (2 * k - 1) * rf * mk
        rf = rf * (x + 2 * k - 1) * (x + 2 * k)
        mk = mk / (M * M)
    return S + T


def prog_tail(m0: int, step: int, x: complex, bern_terms: int = 8) -> complex:
    """sum_{m = m0, m0+step, ...} m^{-x} by Euler-Maclaurin."""
    x = complex(x)
    return complex(np.exp(-x * math.log(m0))
                   * _prog_tail_scaled(m0, step, x, bern_terms))


# ---------------------------------------------------------------------------
# Euler-Maclaurin tail for the direct routes
# ---------------------------------------------------------------------------

def _nu_integral(d: int, s, mu0: float, h: int, nu_from: int):
    """(1/h) * int_{x0}^inf of the nu >= nu_from part of (m(x)^2-d^2)^{-s} dx
    = (1/h) sum_nu (s)_nu/nu! d^{2nu} mu0^{1-2s-2nu} / (2s+2nu-1).
    Vectorized over s."""
    s = np.asarray(s, dtype=complex)
    c = np.ones(s.shape, complex)
    for nu in range(1, nu_from + 1):
        c = c * (s + nu - 1) / nu * (d * d)
    mupow = mu0 * np.exp(-(2 * s + 2 * nu_from) * math.log(mu0))
    acc = np.zeros(s.shape, complex)
    nu = nu_from
    while True:
        term = c * mupow / (2 * s + 2 * nu - 1)
        acc += term
        if nu > nu_from + 2 and np.all(np.abs(term) <= 1e-20 * (1 + np.abs(acc))):
            break
        if nu > 200:
            break
        nu += 1
        c = c * (s + nu - 1) / nu * (d * d)
        mupow = mupow / (mu0 * mu0)
    return acc / h


def _grouped_tail(d: int, s, mu0: float, h: int, subtracted: bool):
    """Euler-Maclaurin closure of the direct sum from x0 = (mu0-c)/h on:
    integral + phi/2 - B2/2! phi' - B4/4! phi''' for
    phi = F - G (subtracted) or phi = F (big series), evaluated at mu0."""
    s = np.asarray(s, dtype=complex)
    base = mu0 * mu0 - d * d
    F = np.exp(-s * math.log(base))
    F1 = -2 * s * mu0 * np.exp(-(s + 1) * math.log(base))
    F3 = (12 * s * (s + 1) * mu0 * np.exp(-(s + 2) * math.log(base))
          - 8 * s * (s + 1) * (s + 2) * mu0 ** 3 * np.exp(-(s + 3) * math.log(base)))
    if subtracted:
        G = np.exp(-2 * s * math.log(mu0))
        G1 = -2 * s * np.exp(-(2 * s + 1) * math.log(mu0))
        G3 = -2 * s * (2 * s + 1) * (2 * s + 2) * np.exp(-(2 * s + 3) * math.log(mu0))
        F, F1, F3 = F - G, F1 - G1, F3 - G3
        integral = _nu_integral(d, s, mu0, h, nu_from=1)
    else:
        integral = _nu_integral(d, s, mu0, h, nu_from=0)
    b2, b4 = bernoulli_even(1), bernoulli_even(2)
    tail = integral + F / 2.0 - (b2 / 2.0) * h * F1 - (b4 / 24.0) * h ** 3 * F3
    est = np.abs((b4 / 24.0) * h ** 3 * F3) * ((np.abs(2 * s) + 6.0) * h / mu0) ** 2 * 4.0
    return tail, est


def _pick_cutoff(cfg: TwinConfig, s_max_abs: float) -> tuple[int, float, int]:
    """(A, mu0, a_min): explicit sum over a_min..A, EM tail from A+1"""
    h, c, a_min = family_geometry(cfg)
    mu_target = max(600.0, 4.0 * h * (s_max_abs + 5.0), 10.0 * cfg.d + 50.0)
    A = max(a_min + 8, int(math.ceil((mu_target - c) / h)))
    mu0 = h * (A + 1) + c
    return A, float(mu0), a_min


def _direct_sum_array(cfg: TwinConfig, s: np.ndarray, subtracted: bool,
                      deriv: bool = False):
    """core vectorized evaluator shared by q_big/q_sub/q_sub_deriv"""
    s = np.asarray(s, dtype=complex)
    smax = float(np.max(np.abs(s))) if s.size else 0.0
    A, mu0, a_min = _pick_cutoff(cfg, smax)
    h, c, _ = family_geometry(cfg)
    m = (h * np.arange(a_min, A + 1, dtype=float) + c)
    lb = np.log(m * m - cfg.d * cfg.d)
    lm = np.log(m)
    flat = s.reshape(-1)
    out = np.zeros(flat.shape, complex)
    blk = max(1, int(4e6 / max(m.size, 1)))
    for i in range(0, flat.size, blk):
        sb = flat[i:i + blk, None]
        F = np.exp(-sb * lb[None, :])
        if subtracted:
            G = np.exp(-2 * sb * lm[None, :])
            terms = (-lb * F + 2 * lm * G) if deriv else (F - G)
        else:
            terms = (-lb * F) if deriv else F
        out[i:i + blk] = terms.sum(axis=1)
    acc = out.reshape(s.shape)
    if deriv:
        # analytic tail differentiated by a central difference in s; the
        # closure is an entire-in-s closed form, so this is benign
        dh = 1e-3
        tp, _ = _grouped_tail(cfg.d, s + dh, mu0, h, subtracted)
        tm, est = _grouped_tail(cfg.d, s - dh, mu0, h, subtracted)
        tail = (tp - tm) / (2 * dh)
        est = np.abs(est) * (math.log(mu0) + 2.0)
    else:
        tail, est = _grouped_tail(cfg.d, s, mu0, h, subtracted)
    return acc + tail, est, int(A - a_min + 1)


def _check_sigma(s: complex, floor: float, what: str) -> complex:
    s = complex(s)
    if s.real <= floor:
        raise DomainError(f"{what} needs Re(s) > {floor}, got {s.real}")
    return s


def q_big(cfg: TwinConfig, s: complex, method: str = "direct") -> SeriesValue:
    """the constraint series Q(s) = sum (median^2 - d^2)^{-s}.

    direct: Re(s) > 1/2, explicit sum with Euler-Maclaurin closure.
    binomial: analytic continuation; valid away from the pole ladder
    s = (1-2 nu)/2.
    """
    if method == "direct":
        s = _check_sigma(s, Q_BIG_SIGMA_MIN, "q_big(direct)")
        val, est, n = _direct_sum_array(cfg, np.array([s]), subtracted=False)
        return SeriesValue(complex(val[0]), float(est[0]), n)
    if method == "binomial":
        return _q_binomial(cfg, complex(s))
    raise DomainError(f"unknown method {method!r}")


def _q_binomial(cfg: TwinConfig, s: complex) -> SeriesValue:
    h, c, a_min = family_geometry(cfg)
    if cfg.parity == "odd":
        m0, step, ratio_base = a_min, 1, (cfg.d / (2.0 * a_min)) ** 2
        pref = np.exp(-s * math.log(4.0))
        base = (cfg.d / 2.0) ** 2
    else:
        m0, step = 2 * a_min - 1, 2
        ratio_base = (cfg.d / (3.0 * (2 * a_min - 1))) ** 2
        pref = np.exp(-2 * s * math.log(3.0))
        base = (cfg.d / 3.0) ** 2
    # the pole ladder s = (1-2 nu)/2 enters through a single zeta factor,
    # so near-pole evaluation stays well conditioned; only reject (nearly)
    # exact hits
    nearest_nu = round((1.0 - 2 * s.real) / 2.0)
    if nearest_nu >= 0 and abs(s - (1.0 - 2 * nearest_nu) / 2.0) < 1e-8:
        raise ConditioningError(
            f"s={s} is at the pole (1-2*{nearest_nu})/2 of the expansion")
    # the expansion decays geometrically with this ratio; scale the term
    # cap so wide families still reach the relative-precision floor
    cap = BINOM_CAP
    if ratio_base > 0.5:
        cap = min(BINOM_CAP_MAX,
                  max(BINOM_CAP, int(45.0 / -math.log(ratio_base)) + 10))
    # accumulate with the inner sums normalized by m0^x and the matching
    # m0^{-2 nu} folded into the coefficient, so neither factor overflows
    m0_pow = np.exp(-2 * s * math.log(m0))  # m0^{-2s}
    acc = 0.0 + 0.0j
    cnu = 1.0 + 0.0j          # (s)_nu / nu! * base^nu * m0^{-2 nu}
    last = 0.0
    terms = 0
    for nu in range(cap + 1):
        x = 2 * s + 2 * nu
        t = cnu * _prog_tail_scaled(m0, step, x)
        acc += t
        last = abs(t)
        terms = nu + 1
        if nu >= 2 and last < BINOM_REL_EPS * max(1e-300, abs(acc)):
            break
        cnu = cnu * (s + nu) / (nu + 1) * (base / (m0 * m0))
    r = min(0.95, ratio_base * (abs(s) + terms + 1) / (terms + 1))
    tail = abs(m0_pow) * last * r / (1.0 - r)
    return SeriesValue(complex(pref * m0_pow * acc), float(tail), terms)


def q_sub_array(cfg: TwinConfig, s: np.ndarray):
    """vectorized subtracted series; returns (values, tail estimates)"""
    s = np.asarray(s, dtype=complex)
    if np.any(s.real <= Q_SUB_SIGMA_MIN):
        raise DomainError(f"q_sub needs Re(s) > {Q_SUB_SIGMA_MIN}")
    val, est, _ = _direct_sum_array(cfg, s, subtracted=True)
    return val, est


def q_sub(cfg: TwinConfig, s: complex) -> SeriesValue:
    """subtracted constraint series
    sum_{a >= a_min} [(median^2 - d^2)^{-s} - median^{-2s}], Re(s) > -0.45."""
    s = _check_sigma(s, Q_SUB_SIGMA_MIN, "q_sub")
    val, est, n = _direct_sum_array(cfg, np.array([s]), subtracted=True)
    return SeriesValue(complex(val[0]), float(est[0]), n)


def q_sub_deriv_array(cfg: TwinConfig, s: np.ndarray):
    s = np.asarray(s, dtype=complex)
    if np.any(s.real <= Q_SUB_SIGMA_MIN):
        raise DomainError(f"q_sub_deriv needs Re(s) > {Q_SUB_SIGMA_MIN}")
    val, est, _ = _direct_sum_array(cfg, s, subtracted=True, deriv=True)
    return val, est


def q_sub_deriv(cfg: TwinConfig, s: complex) -> SeriesValue:
    """termwise derivative of the grouped subtracted series"""
    s = _check_sigma(s, Q_SUB_SIGMA_MIN, "q_sub_deriv")
    val, est, n = _direct_sum_array(cfg, np.array([s]), subtracted=True, deriv=True)
    return SeriesValue(complex(val[0]), float(est[0]), n)


def subtraction_term(cfg: TwinConfig, s: complex) -> complex:
    """the comb removed from Q to form q: sum_{a >= a_min} median(a)^{-2s}"""
    s = complex(s)
    h, c, a_min = family_geometry(cfg)
    if cfg.parity == "odd":
        return complex(np.exp(-s * math.log(4.0)) * prog_tail(a_min, 1, 2 * s))
    return complex(np.exp(-2 * s * math.log(3.0))
                   * prog_tail(2 * a_min - 1, 2, 2 * s))


def _half_binomial(nu: int) -> float:
    """binomial(nu - 1/2, nu) = (2 nu - 1)!! / (2^nu nu!)"""
    out = 1.0
    for j in range(1, nu + 1):
        out *= (2 * j - 1) / (2.0 * j)
    return out


@dataclass(frozen=True)
class ResidueCheck:
    """numerical residue of Q at s_nu = (1-2 nu)/2 against closed forms.

    For nu >= 1 two odd-family candidate scalings are reported, (-d)^nu
    and (-d^2)^nu (they coincide at d = 1); `best` names the one the
    limit matches.
    """
    d: int
    parity: str
    nu: int
    s_pole: float
    estimate: float
    candidates: dict
    best: str


def q_residue_check(cfg: TwinConfig, nu: int) -> ResidueCheck:
    if nu < 0:
        raise DomainError("nu must be >= 0")
    s_pole = (1.0 - 2 * nu) / 2.0
    hs = (1e-2, 5e-3, 2.5e-3)
    vals = [(h * q_big(cfg, s_pole + h, method="binomial").value).real for h in hs]
    from .numutil import richardson
    est = float(richardson(vals))
    b = _half_binomial(nu)
    if cfg.parity == "odd":
        cands = {
            "minus_d": 0.25 * (-cfg.d) ** nu * b,
            "minus_d_squared": 0.25 * (-(cfg.d ** 2)) ** nu * b,
        }
    else:
        cands = {
            "minus_d_squared": (1.0 / 12.0) * (-(cfg.d ** 2)) ** nu * b,
        }
    best = min(cands, key=lambda k: abs(est - cands[k]))
    return ResidueCheck(cfg.d, cfg.parity, nu, s_pole, est, cands, best)
