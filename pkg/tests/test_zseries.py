import cmath
import math

import numpy as np
import pytest

import twinzeta as tz
from twinzeta.arith import golomb_sum_array
from twinzeta.exceptions import ConditioningError, DomainError
from twinzeta.numutil import richardson
from twinzeta.special import EULER_GAMMA, LOG_2PI


def test_direct_formula_cross_tight(sieve):
    # far from the abscissa the declared tail is tiny
    for s in (3.0, complex(4.0, -3.0)):
        d = tz.z_direct(sieve, s, 10 ** 6)
        f = tz.z_formula(s)
        assert abs(d.value - f) < 1e-8, s
        assert abs(d.value - f) < 2.0 * d.tail_bound + 1e-12


def test_direct_formula_cross_within_tails(sieve):
    # at sigma = 2 the direct tail is ~1e-4 scale and dominates the defect
    for s in (2.0, complex(2.0, 2.0)):
        d = tz.z_direct(sieve, s, 10 ** 6)
        f = tz.z_formula(s)
        assert abs(d.value - f) < d.tail_bound, s


def test_direct_tail_self_consistency(sieve):
    a = tz.z_direct(sieve, 2.0, 500000)
    b = tz.z_direct(sieve, 2.0, 10 ** 6)
    assert abs(a.value - b.value) < a.tail_bound


def test_direct_coefficient_of_15(sieve):
    s = 2.5
    a = tz.z_direct(sieve, s, 15)
    b = tz.z_direct(sieve, s, 14)
    coeff = (a.value - b.value) * 15.0 ** s
    assert coeff.real == pytest.approx(2 * math.log(3) * math.log(5), rel=1e-12)
    assert golomb_sum_array(sieve, 15)[15] == pytest.approx(
        2 * math.log(3) * math.log(5), rel=1e-14)


def test_direct_domain_error(sieve):
    with pytest.raises(DomainError):
        tz.z_direct(sieve, complex(1.0, 2.0), 1000)


def test_formula_conjugate_symmetry():
    v = tz.z_formula(complex(2.0, 5.0))
    w = tz.z_formula(complex(2.0, -5.0))
    assert abs(v.conjugate() - w) < 1e-12 * (1 + abs(v))


def test_formula_both_forms_agree():
    # 2(z'/z)^2 - z''/z == -(d/ds)(z'/z) + (z'/z)^2, derivative by circle
    s = 2.5
    r = 0.25
    th = 2 * np.pi * np.arange(64) / 64
    ld = np.array([tz.zeta_logderiv(complex(s + r * e))
                   for e in np.exp(1j * th)])
    dld = complex((ld * np.exp(-1j * th)).mean() / r)
    alt = -dld + tz.zeta_logderiv(s) ** 2
    assert abs(tz.z_formula(s) - alt) < 1e-8


def test_z_poles_vs_formula(zeros_large):
    f = tz.z_formula(2.0)
    p = tz.z_poles(2.0, zeros_large, zeros_large.max_gamma)
    assert abs(p.value - f) < 1e-3
    assert abs(p.value.imag) < 1e-12
    # trend: more zeros, smaller defect
    e500 = abs(tz.z_poles(2.0, zeros_large, 500.0).value - f)
    e5000 = abs(tz.z_poles(2.0, zeros_large, 5000.0).value - f)
    assert e5000 < e500
    # farther from the strip the truncation bites less
    e3 = abs(tz.z_poles(3.0, zeros_large, 500.0).value - tz.z_formula(3.0))
    assert e3 < e500


def test_z_poles_conjugate(zeros_large):
    s = complex(2.0, 3.0)
    a = tz.z_poles(s.conjugate(), zeros_large, 2000.0)
    b = tz.z_poles(s, zeros_large, 2000.0)
    assert abs(a.value - b.value.conjugate()) < 1e-12 * (1 + abs(b.value))


def test_z_poles_exclusion(zeros_large):
    with pytest.raises(ConditioningError):
        tz.z_poles(1.01, zeros_large, 1000.0)
    with pytest.raises(ConditioningError):
        tz.z_poles(complex(0.52, 14.13), zeros_large, 1000.0)


def test_residue_at_1(zeros_large):
    closed = tz.residue_z_at_1(zeros_large, zeros_large.max_gamma)
    hs = (1e-2, 5e-3, 2.5e-3)
    est = richardson([(h * tz.z_formula(1.0 + h)).real for h in hs])
    assert abs(est - closed.value.real) < 1e-3
    # identity gamma + psi(3/2) = 2 - 2 log 2 underlying the constant
    assert EULER_GAMMA + tz.digamma(1.5).real == pytest.approx(
        2 - 2 * math.log(2), abs=1e-12)
    # empty zero sum reduces to the digamma constants
    empty = tz.residue_z_at_1(zeros_large, 10.0)
    assert empty.value.real == pytest.approx(
        2 * (1 - LOG_2PI) + 2 - 2 * math.log(2), abs=1e-13)


def test_residue_at_rho_two_forms(zeros_large):
    rho = complex(0.5, 14.134725)
    # n-sum partial + Euler-Maclaurin tail against the digamma closed form;
    # int_{x0}^inf (2/(2x+rho) - 1/x) dx = log 2 - log((2 x0 + rho)/x0)
    n = np.arange(1, 10 ** 6, dtype=complex)
    partial = complex((2.0 / (2 * n + rho) - 1.0 / n).sum())
    x0 = 1e6
    integral = cmath.log(2.0) - cmath.log((2 * x0 + rho) / x0)
    f_half = (2.0 / (2 * x0 + rho) - 1.0 / x0) / 2.0
    nsum = partial + integral + f_half
    closed = -EULER_GAMMA - tz.digamma(1 + rho / 2)
    assert abs(nsum - closed) < 1e-8
    # and the operation wires that closed form
    got = tz.residue_z_at_rho(rho)
    want = (-2 * (1 - LOG_2PI) - 2 / (rho - 1) + 2 / rho + closed)
    assert abs(got - want) < 1e-13


def test_residue_at_rho_conjugate():
    rho = complex(0.5, 21.022040)
    a = tz.residue_z_at_rho(rho.conjugate())
    b = tz.residue_z_at_rho(rho)
    assert abs(a - b.conjugate()) < 1e-13


def test_residue_contour_oracle(zeros_large):
    """Laurent coefficients of Z around rho_1 by circle quadrature:
    c_{-2} must be 2; c_{-1} matches the closed-form bracket only after
    adding the sum over the other zeros."""
    rho = complex(0.5, zeros_large.gammas[0])
    r = 0.05
    th = 2 * np.pi * np.arange(256) / 256
    f = np.array([tz.z_formula(complex(rho + r * e)) for e in np.exp(1j * th)])
    c_m2 = complex((f * np.exp(2j * th)).mean() * r * r)
    c_m1 = complex((f * np.exp(1j * th)).mean() * r)
    assert abs(c_m2 - 2.0) < 1e-4
    corrected = tz.residue_z_at_rho_corrected(rho, zeros_large,
                                              zeros_large.max_gamma)
    assert abs(c_m1 - corrected.value) < 3 * corrected.tail_bound
    assert abs(c_m1 - corrected.value) < 3e-3
    # the bare bracket differs by the other-zero sum (order 1), so the
    # correction is load-bearing
    assert abs(c_m1 - tz.residue_z_at_rho(rho)) > 1.0


def test_functional_equation_grid():
    pts = [complex(0.2, 2.0), complex(0.3, 5.0), complex(0.4, 7.3),
           complex(0.5, 9.1), complex(0.6, 11.6), complex(0.7, 16.4),
           complex(0.8, 18.2), complex(0.25, 19.4), complex(1.5, 3.7),
           complex(1.5, 12.6)]
    for s in pts:
        assert tz.functional_residual(s) < 1e-8, s


def test_functional_symmetric_point():
    assert tz.functional_residual(complex(0.5, 3.0)) < 1e-8
