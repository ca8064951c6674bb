import math

import numpy as np
import pytest

import twinzeta as tz
from twinzeta.exceptions import DomainError
from twinzeta.numutil import richardson


def test_twin_series_first_terms(sieve, cfg1, cfg2):
    first = tz.twin_series(sieve, cfg1, 3.0, 2)
    assert first.value.real == pytest.approx(
        2 * math.log(3) * math.log(5) / 15.0 ** 3, rel=1e-13)
    first_even = tz.twin_series(sieve, cfg2, 3.0, 2)
    assert first_even.value.real == pytest.approx(
        2 * math.log(7) * math.log(11) / 77.0 ** 3, rel=1e-13)


def test_twin_series_monotone_and_tail(sieve, cfg1):
    vals = [tz.twin_series(sieve, cfg1, 3.0, n).value.real
            for n in (10, 100, 1000, 10000)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    a = tz.twin_series(sieve, cfg1, 3.0, 5000)
    b = tz.twin_series(sieve, cfg1, 3.0, 10000)
    # the tail bound plus the rounding floor of the partial sums
    assert abs(b.value - a.value) <= a.tail_bound + 1e-15 * abs(a.value)
    assert a.heuristic


def test_a_coeff_examples(sieve, cfg1):
    assert tz.a_coeff(sieve, cfg1, 4) == pytest.approx(-math.log(2) ** 2)
    assert tz.a_coeff(sieve, cfg1, 12) == pytest.approx(
        2 * math.log(2) * math.log(3))
    assert tz.a_coeff(sieve, cfg1, 15) == 0.0


def test_a_coeff_matches_oracle(sieve, cfg1, cfg2):
    for a in range(1, 10 ** 4 + 1):
        got = tz.a_coeff(sieve, cfg1, a)
        want = tz.golomb_sum_oracle(sieve, 4 * a * a)
        assert abs(got - want) <= 1e-12 * (1 + abs(want)), ("odd", a)
    for a in range(1, 10 ** 4 + 1):
        m = 2 * a - 1
        got = tz.a_coeff(sieve, cfg2, a)
        want = tz.golomb_sum_oracle(sieve, 9 * m * m)
        assert abs(got - want) <= 1e-12 * (1 + abs(want)), ("even", a)


def test_a_series_direct_vs_closed(sieve):
    for d in (1, 3, 2, 4):
        cfg = tz.twin_config(sieve, d)
        for w in (1.0, 1.5, complex(1.0, 2.0)):
            direct = tz.a_series(sieve, cfg, w, method="direct", n_max=10 ** 6)
            closed = tz.a_series(sieve, cfg, w, method="closed")
            assert abs(direct.value - closed.value) < 1e-6, (d, w)


def test_a_series_direct_domain(sieve, cfg1):
    with pytest.raises(DomainError):
        tz.a_series(sieve, cfg1, 0.4, method="direct")


def test_a_series_residues(sieve, cfg1, cfg2):
    hs = (1e-2, 5e-3, 2.5e-3)
    est_odd = richardson(
        [(h * tz.a_series(sieve, cfg1, 0.5 + h, method="closed").value).real
         for h in hs])
    assert abs(est_odd - math.log(2)) < 1e-3
    est_even = richardson(
        [(h * tz.a_series(sieve, cfg2, 0.5 + h, method="closed").value).real
         for h in hs])
    # the even-family residue is log(3)/2: the pole factor 1/(3^{2w}-1)
    # contributes 1/2 (see the acceptance notes)
    assert abs(est_even - math.log(3) / 2) < 1e-3


def test_decomposition_coefficient_identity(sieve, cfg1):
    """discrete convolution oracle: the diagonal of the generating series
    against the subtracted-comb coefficients equals the divisor-form twin
    partial sum minus the asymptotic partial sum; the Lambda-form twin
    series differs by the degenerate a=1 term (pair (1,3))"""
    from twinzeta.asymptotic import twin_series_divisor_form
    w = 3.0
    n = 400
    diag = 0.0
    for a in range(cfg1.family_start(), n + 1):
        l1 = 4 * a * a - 1
        l2 = 4 * a * a
        diag += tz.golomb_sum_oracle(sieve, l1) * l1 ** -w
        diag -= tz.golomb_sum_oracle(sieve, l2) * l2 ** -w
    div_form = twin_series_divisor_form(sieve, cfg1, w, n).value.real
    twin = tz.twin_series(sieve, cfg1, w, n).value.real
    a_part = sum(tz.a_coeff(sieve, cfg1, a) * (2.0 * a) ** (-2 * w)
                 for a in range(1, n + 1))
    assert diag == pytest.approx(div_form - a_part, abs=1e-13)
    # Lambda form misses S(3) at the degenerate a=1 index
    offset = -math.log(3.0) ** 2 * 3.0 ** -w
    assert (twin - a_part) + offset == pytest.approx(diag, abs=1e-13)
    # first diagonal term for d=1 at a=2 sits at l = 15 with b_15 = 1
    first = tz.golomb_sum_oracle(sieve, 15) * 15.0 ** -w
    assert first == pytest.approx(2 * math.log(3) * math.log(5) / 15 ** 3,
                                  rel=1e-13)


def test_decomposition_report_trend(sieve, cfg1):
    rep = tz.decomposition_report(sieve, cfg1, 3.0, 1.25, (50.0, 100.0, 200.0),
                                  a_max=20000, step=0.05)
    assert len(rep.rows) == 3
    assert rep.deltas_decreasing
    assert rep.constraint_u_min == pytest.approx(2.75)
    assert rep.regularity_u_min == pytest.approx(2.5)


def test_decomposition_guards(sieve, cfg1):
    with pytest.raises(DomainError):
        tz.decomposition_report(sieve, cfg1, 2.0, 1.25, (50.0,), a_max=1000)
    with pytest.raises(DomainError):
        tz.decomposition_report(sieve, cfg1, 3.0, 1.25, (), a_max=1000)
