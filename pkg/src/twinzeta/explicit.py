"""Finite-T explicit-formula machinery: the product-formula average for
truncated Dirichlet series, the right-edge line average of Z times the
subtracted constraint series, the rectangle-contour zero expansion, and
the (pi/T)-scaled zero sum, with a three-way comparison report.

Convergence of the T-ladders toward the twin series is reported, never
asserted: no rate is available and desk-scale T cannot reach the
asymptotic regime.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import TwinConfig
from .constraint import q_sub_array, q_sub_deriv_array
from .exceptions import CapacityError, DomainError
from .sieve import FactorSieve
from .special import SeriesValue, zeta_derivs_array
from .zeros import ZetaZeros
from .zseries import residue_z_at_1, residue_z_at_rho

MAX_QUAD_NODES = 10 ** 7
STEP_MAX = 0.05
# panels whose |zeta| on the line falls below this are refined 4x; with
# sigma > 1 the line stays well away from the zeros, so this fires only in
# extreme corners of the window
REFINE_THRESHOLD = 0.1


@dataclass(frozen=True)
class QuadratureSpec:
    """line-quadrature parameters for the averaged products"""
    t_max: float
    step: float = 0.01
    sigma: float = 1.25

    def __post_init__(self):
        if self.t_max <= 0 or self.step <= 0:
            raise DomainError("t_max and step must be positive")
        if self.step > STEP_MAX:
            raise DomainError(f"step {self.step} exceeds maximum {STEP_MAX}")
        if self.t_max / self.step > MAX_QUAD_NODES:
            raise CapacityError(
                f"{self.t_max / self.step:.3g} nodes exceed budget {MAX_QUAD_NODES}")


@dataclass(frozen=True)
class ZeroSumTerm:
    """one conjugate-paired contribution to the scaled zero sum"""
    rho: complex
    weight: complex
    qval: complex
    qderiv: complex
    pair_total: complex


@dataclass
class ProductAverage:
    average: SeriesValue
    diagonal: complex
    offdiagonal: complex


def _dirichlet_line(coeffs: np.ndarray, s_line: np.ndarray) -> np.ndarray:
    """sum_m a_m m^{-s} on an array of points (truncated series)"""
    m = np.arange(1, coeffs.size, dtype=float)
    lm = np.log(m)
    a = np.asarray(coeffs[1:], dtype=complex)
    out = np.empty(s_line.shape, complex)
    blk = max(1, int(4e6 / max(m.size, 1)))
    flat = s_line.reshape(-1)
    of = out.reshape(-1)
    for i in range(0, flat.size, blk):
        of[i:i + blk] = (a * np.exp(-np.multiply.outer(flat[i:i + blk], lm))).sum(axis=1)
    return out


def product_formula_avg(coeffs_f, abscissa_f: float, coeffs_g, abscissa_g: float,
                        spec: QuadratureSpec, w: complex) -> ProductAverage:
    """trapezoid value of (1/2T) int_{-T}^{T} f(sigma+it) g(w-sigma-it) dt
    for truncated Dirichlet series, with the exact diagonal
    sum_l a_l b_l l^{-w} and the off-diagonal remainder.

    coeffs are 1-indexed: coeffs[m] is the coefficient of m^{-s}; index 0
    is ignored.
    """
    w = complex(w)
    sigma = spec.sigma
    if sigma <= abscissa_f + 1.0:
        raise DomainError(f"need sigma > {abscissa_f + 1.0}, got {sigma}")
    if w.real - sigma <= abscissa_g:
        raise DomainError(
            f"need Re(w) - sigma > {abscissa_g}, got {w.real - sigma}")
    cf = np.asarray(coeffs_f, dtype=complex)
    cg = np.asarray(coeffs_g, dtype=complex)
    t = np.arange(-spec.t_max, spec.t_max + spec.step / 2, spec.step)
    fv = _dirichlet_line(cf, sigma + 1j * t)
    gv = _dirichlet_line(cg, w - sigma - 1j * t)
    integrand = fv * gv
    val = np.trapezoid(integrand, t) / (2 * spec.t_max)
    # quadrature error estimate: compare against the every-other-node rule
    coarse = np.trapezoid(integrand[::2], t[::2]) / (2 * spec.t_max)
    quad_err = abs(val - coarse) / 3.0
    n = min(cf.size, cg.size)
    l = np.arange(1, n, dtype=float)
    diagonal = complex((cf[1:n] * cg[1:n] * np.exp(-w * np.log(l))).sum())
    avg = SeriesValue(complex(val), float(quad_err), int(t.size))
    return ProductAverage(avg, diagonal, complex(val) - diagonal)


def i1_quadrature(cfg: TwinConfig, w: complex, spec: QuadratureSpec) -> SeriesValue:
    """(1/2T) int_{-T}^{T} Z(sigma+it) q_sub(w-sigma-it) dt by trapezoid,
    with 4x panel refinement where |zeta| on the line drops below 0.1."""
    w = complex(w)
    if spec.sigma <= 1.0:
        raise DomainError(f"i1 needs sigma > 1, got {spec.sigma}")
    if w.real - spec.sigma <= 0.5:
        raise DomainError(
            f"i1 needs Re(w) - sigma > 1/2, got {w.real - spec.sigma}")
    real_w = (w.imag == 0.0)
    t0 = 0.0 if real_w else -spec.t_max
    t = np.arange(t0, spec.t_max + spec.step / 2, spec.step)
    t[-1] = min(t[-1], spec.t_max)
    z0, z1, z2 = zeta_derivs_array(spec.sigma + 1j * t)
    small = np.abs(z0) < REFINE_THRESHOLD
    if small.any():
        refined = [t]
        for i in np.nonzero(small)[0]:
            a = max(t0, t[i] - spec.step)
            b = min(spec.t_max, t[i] + spec.step)
            refined.append(np.arange(a, b, spec.step / 4.0))
        t = np.unique(np.concatenate(refined))
        z0, z1, z2 = zeta_derivs_array(spec.sigma + 1j * t)
    zline = 2.0 * (z1 / z0) ** 2 - z2 / z0
    qline, qtail = q_sub_array(cfg, w - spec.sigma - 1j * t)
    integrand = zline * qline
    if real_w:
        # integrand(-t) = conj(integrand(t)): fold to [0, T]
        val = 2.0 * np.trapezoid(integrand.real, t) / (2 * spec.t_max)
        coarse = 2.0 * np.trapezoid(integrand.real[::2], t[::2]) / (2 * spec.t_max)
    else:
        val = np.trapezoid(integrand, t) / (2 * spec.t_max)
        coarse = np.trapezoid(integrand[::2], t[::2]) / (2 * spec.t_max)
    quad_err = abs(val - coarse) / 3.0 + float(np.max(qtail)) * float(
        np.mean(np.abs(zline)))
    return SeriesValue(complex(val), quad_err, int(t.size))


def _zero_pair_block(cfg: TwinConfig, w: complex, zeros: ZetaZeros,
                     t_max: float, collect: bool = False):
    """sum over |gamma| < t_max (conjugate-paired) of
    q_sub(w - rho) * bracket(rho) - 2 q_sub'(w - rho)"""
    w = complex(w)
    g = zeros.upto(t_max)
    if g.size == 0:
        return 0.0 + 0.0j, [], 0
    rho = 0.5 + 1j * g
    s_all = np.concatenate([w - rho, w - np.conj(rho)])
    qv, _ = q_sub_array(cfg, s_all)
    qd, _ = q_sub_deriv_array(cfg, s_all)
    br = np.array([residue_z_at_rho(r) for r in rho])
    br_all = np.concatenate([br, np.conj(br)])
    terms = qv * br_all - 2.0 * qd
    total = complex(terms.sum())
    detail = []
    if collect:
        for k in range(g.size):
            detail.append(ZeroSumTerm(
                rho=complex(rho[k]), weight=complex(br[k]),
                qval=complex(qv[k]), qderiv=complex(qd[k]),
                pair_total=complex(terms[k] + terms[g.size + k])))
    return total, detail, int(g.size)


def zero_sum_scaled(cfg: TwinConfig, w: complex, zeros: ZetaZeros,
                    t_max: float, collect_terms: bool = False):
    """(pi/T) times the paired zero sum; the finite-T quantity whose
    T -> infinity limit the theory ties to the twin series.

    Preferred domain Re(w) > 5/2; evaluation below that is allowed for
    exploration but flagged by a warning.
    """
    w = complex(w)
    if w.real <= 2.5:
        import warnings
        warnings.warn(f"zero_sum evaluated at Re(w)={w.real} <= 5/2 "
                      "(outside the proven region)", stacklevel=2)
    total, detail, pairs = _zero_pair_block(cfg, w, zeros, t_max, collect_terms)
    val = math.pi / t_max * total
    sv = SeriesValue(complex(val), 0.0, pairs, heuristic=True)
    return (sv, detail) if collect_terms else sv


def contour_zero_expansion(cfg: TwinConfig, w: complex, zeros: ZetaZeros,
                           t_max: float) -> SeriesValue:
    """residue expansion of the rectangle-contour integral:
    q_sub(w-1) * r_Z(1) plus the paired zero block."""
    w = complex(w)
    if w.real <= 2.5:
        import warnings
        warnings.warn(f"contour expansion at Re(w)={w.real} <= 5/2 "
                      "(outside the proven region)", stacklevel=2)
    r1 = residue_z_at_1(zeros, t_max)
    qv, qt = q_sub_array(cfg, np.array([w - 1.0]))
    head = complex(qv[0]) * r1.value
    total, _, pairs = _zero_pair_block(cfg, w, zeros, t_max)
    tail = abs(qv[0]) * r1.tail_bound + float(qt[0]) * abs(r1.value)
    return SeriesValue(head + total, tail, pairs + 1, heuristic=True)


@dataclass
class CompareRow:
    t: float
    i1_scaled: complex
    zero_sum: complex
    curly_i_scaled: complex
    delta_i1: float
    delta_zero_sum: float
    delta_curly_i: float


@dataclass
class CompareReport:
    """three finite-T routes tabulated against the twin series"""
    meta: dict
    twin_series: complex
    rows: list[CompareRow] = field(default_factory=list)

    @staticmethod
    def _fmt(x: complex) -> str:
        if abs(x.imag) < 1e-12 * (1.0 + abs(x.real)):
            return f"{x.real:.12g}"
        return f"{x.real:.12g}{x.imag:+.12g}j"

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in sorted(self.meta.items()):
            buf.write(f"# {k}={v}\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["T", "i1_scaled", "zero_sum", "curly_I_scaled",
                     "twin_series", "delta_i1", "delta_zero_sum",
                     "delta_curly_I"])
        for r in self.rows:
            wr.writerow([f"{r.t:.6g}", self._fmt(r.i1_scaled),
                         self._fmt(r.zero_sum), self._fmt(r.curly_i_scaled),
                         self._fmt(self.twin_series), f"{r.delta_i1:.6g}",
                         f"{r.delta_zero_sum:.6g}", f"{r.delta_curly_i:.6g}"])
        return buf.getvalue()

    def to_json(self) -> dict:
        def cx(z: complex):
            return [z.real, z.imag]
        return {
            "meta": self.meta,
            "twin_series": cx(self.twin_series),
            "rows": [{
                "T": r.t,
                "i1_scaled": cx(r.i1_scaled),
                "zero_sum": cx(r.zero_sum),
                "curly_I_scaled": cx(r.curly_i_scaled),
                "delta_i1": r.delta_i1,
                "delta_zero_sum": r.delta_zero_sum,
                "delta_curly_I": r.delta_curly_i,
            } for r in self.rows],
        }


def compare_report(cfg: TwinConfig, w: complex, t_list, zeros: ZetaZeros,
                   sieve: FactorSieve, a_max: int = 100000,
                   sigma: float = 1.25, step: float = 0.02) -> CompareReport:
    """tabulate the three finite-T routes against the twin series over T.

    Deltas are reported for qualitative inspection only.
    """
    from .asymptotic import twin_series
    w = complex(w)
    t_list = list(t_list)
    if not t_list:
        raise DomainError("empty T list")
    tw = twin_series(sieve, cfg, w, a_max)
    meta = {
        "D": cfg.d, "parity": cfg.parity, "w": CompareReport._fmt(w),
        "a_max": a_max, "sigma": sigma, "step": step,
        "zero_source": zeros.source_id, "assumption": "beta=1/2",
    }
    rep = CompareReport(meta, tw.value)
    for t in t_list:
        t = float(t)
        i1 = i1_quadrature(cfg, w, QuadratureSpec(t, step, sigma))
        zs = zero_sum_scaled(cfg, w, zeros, t)
        ci = contour_zero_expansion(cfg, w, zeros, t)
        ci_scaled = complex(ci.value) * math.pi / t
        rep.rows.append(CompareRow(
            t, i1.value, zs.value, ci_scaled,
            abs(i1.value - tw.value), abs(zs.value - tw.value),
            abs(ci_scaled - tw.value)))
    return rep
