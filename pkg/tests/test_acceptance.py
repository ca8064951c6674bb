"""Acceptance suite: one test per criterion, each printing a PASS line with
the measured figure (run with -s to see them inline).

Criterion 8's even-family residue target (log 3) is asserted as stated even
though the underlying limit is log(3)/2; see the README notes and the
expected-failure marker on that test.
"""
import json
import math
import time

import numpy as np
import pytest

import twinzeta as tz
from twinzeta.explicit import QuadratureSpec
from twinzeta.numutil import richardson


def _report(name, detail):
    print(f"[acceptance] {name}: PASS ({detail})")


# --------------------------------------------------------------------- C1
def test_c01_golomb_identity_d1(sieve, cfg1):
    t0 = time.time()
    rep = tz.verify_golomb_range(sieve, cfg1, 10 ** 5)
    dt = time.time() - t0
    assert rep.a_begin == 2
    assert rep.checked == 10 ** 5 - 1
    assert rep.ok and not rep.coprime_failures
    assert rep.exceptional == []
    assert rep.max_abs_dev < 1e-9
    assert dt < 30.0
    _report("C1 Golomb identity d=1 a<=1e5",
            f"max_abs_dev={rep.max_abs_dev:.2e}, {dt:.1f}s")


# --------------------------------------------------------------------- C2
def test_c02_generalized_identities(sieve):
    t0 = time.time()
    expect_exceptional = {3: True, 5: True, 7: True, 9: True,
                          2: False, 4: False, 8: False, 10: True}
    details = []
    for d, has_exc in expect_exceptional.items():
        cfg = tz.twin_config(sieve, d)
        rep = tz.verify_golomb_range(sieve, cfg, 10 ** 4)
        assert rep.ok, d
        assert rep.max_abs_dev < 1e-9, d
        assert bool(rep.exceptional) == has_exc, d
        if d == 3:
            assert 3 in [a for a, _, _ in rep.exceptional]
        details.append(f"d={d}:{len(rep.exceptional)}exc")
    dt = time.time() - t0
    assert dt < 30.0
    _report("C2 generalized identities", ", ".join(details) + f", {dt:.1f}s")


# --------------------------------------------------------------------- C3
def test_c03_first_pair_discovery(sieve):
    want = {1: 2, 3: 4, 5: 4, 7: 5, 9: 7}
    got = {d: tz.first_a(sieve, d, "odd") for d in want}
    assert got == want
    _report("C3 first-pair discovery", str(got))


# --------------------------------------------------------------------- C4
def test_c04_fast_equals_oracle(sieve):
    t0 = time.time()
    worst = 0.0
    for n in range(2, 10 ** 5 + 1):
        f = tz.golomb_sum_fast(sieve, n)
        o = tz.golomb_sum_oracle(sieve, n)
        dev = abs(f - o) / (1.0 + abs(f))
        if dev > worst:
            worst = dev
    dt = time.time() - t0
    assert worst < 1e-12
    assert dt < 60.0
    _report("C4 classified path == oracle (n<=1e5)",
            f"worst rel dev={worst:.2e}, {dt:.1f}s")


# --------------------------------------------------------------------- C5
def test_c05_z_cross_methods(sieve):
    t0 = time.time()
    d = tz.z_direct(sieve, 3.0, 10 ** 6)
    f = tz.z_formula(3.0)
    gap = abs(d.value - f)
    assert gap < 1e-8
    # both closed forms at s = 2.5
    s = 2.5
    r = 0.25
    th = 2 * np.pi * np.arange(64) / 64
    ld = np.array([tz.zeta_logderiv(complex(s + r * e))
                   for e in np.exp(1j * th)])
    dld = complex((ld * np.exp(-1j * th)).mean() / r)
    alt = -dld + tz.zeta_logderiv(s) ** 2
    forms = abs(tz.z_formula(s) - alt)
    assert forms < 1e-8
    dt = time.time() - t0
    assert dt < 60.0
    _report("C5 Z cross-methods", f"|direct-formula|={gap:.2e}, "
            f"|form1-form2|={forms:.2e}, {dt:.1f}s")


# --------------------------------------------------------------------- C6
def test_c06_pole_expansion(zeros_large):
    assert len(zeros_large) >= 10 ** 4
    p = tz.z_poles(2.0, zeros_large, zeros_large.max_gamma)
    f = tz.z_formula(2.0)
    gap = abs(p.value - f)
    assert gap < 1e-3
    _report("C6 pole expansion at s=2",
            f"|poles-formula|={gap:.2e} with {p.terms_used // 2} pairs")


# --------------------------------------------------------------------- C7
def test_c07_functional_equation():
    pts = [complex(0.2, 2.0), complex(0.3, 5.0), complex(0.4, 7.3),
           complex(0.5, 9.1), complex(0.6, 11.6), complex(0.7, 16.4),
           complex(0.8, 18.2), complex(0.25, 19.4), complex(1.5, 3.7),
           complex(1.5, 12.6)]
    worst = max(tz.functional_residual(s) for s in pts)
    assert worst < 1e-8
    _report("C7 functional equation (10 points)", f"max residual={worst:.2e}")


# --------------------------------------------------------------------- C8
def test_c08a_residue_of_z_at_1(zeros_large):
    closed = tz.residue_z_at_1(zeros_large, zeros_large.max_gamma)
    hs = (1e-2, 5e-3, 2.5e-3)
    est = richardson([(h * tz.z_formula(1.0 + h)).real for h in hs])
    gap = abs(est - closed.value.real)
    assert gap < 1e-3
    _report("C8a residue of Z at s=1",
            f"closed={closed.value.real:.6f}, limit={est:.6f}, gap={gap:.1e}")


def test_c08b_constraint_residue_quarter(cfg1):
    rc = tz.q_residue_check(cfg1, 0)
    assert abs(rc.estimate - 0.25) < 1e-6
    _report("C8b constraint residue at s=1/2", f"estimate={rc.estimate:.9f}")


def test_c08c_asymptotic_residue_odd(sieve, cfg1):
    hs = (1e-2, 5e-3, 2.5e-3)
    est = richardson(
        [(h * tz.a_series(sieve, cfg1, 0.5 + h, method="closed").value).real
         for h in hs])
    assert abs(est - math.log(2)) < 1e-3
    _report("C8c asymptotic residue (odd)",
            f"limit={est:.6f} vs log2={math.log(2):.6f}")


@pytest.mark.xfail(reason="the even-family pole factor 1/(3^(2w)-1) -> 1/2 "
                          "makes the residue log(3)/2; this check encodes "
                          "the uncorrected log 3 target and cannot pass "
                          "(see README)",
                   strict=True)
def test_c08d_asymptotic_residue_even_as_stated(sieve, cfg2):
    hs = (1e-2, 5e-3, 2.5e-3)
    est = richardson(
        [(h * tz.a_series(sieve, cfg2, 0.5 + h, method="closed").value).real
         for h in hs])
    print(f"[acceptance] C8d measured limit={est:.6f}; "
          f"log3={math.log(3):.6f}, log3/2={math.log(3) / 2:.6f}")
    assert abs(est - math.log(3)) < 1e-3


def test_c08d_asymptotic_residue_even_true_value(sieve, cfg2):
    hs = (1e-2, 5e-3, 2.5e-3)
    est = richardson(
        [(h * tz.a_series(sieve, cfg2, 0.5 + h, method="closed").value).real
         for h in hs])
    assert abs(est - math.log(3) / 2) < 1e-3
    _report("C8d asymptotic residue (even), corrected target",
            f"limit={est:.6f} vs log(3)/2={math.log(3) / 2:.6f}")


# --------------------------------------------------------------------- C9
def test_c09_exact_values(cfg1):
    q1 = tz.q_big(cfg1, 1.0).value.real
    assert abs(q1 - 0.5) < 1e-10
    s1 = tz.q_sub(cfg1, 1.0).value.real
    assert abs(s1 - (0.5 - math.pi ** 2 / 24)) < 1e-10
    z0 = tz.q_sub(cfg1, 0.0).value
    assert z0 == 0.0
    _report("C9 exact values", f"Q1(1)={q1:.12f}, q1(1)={s1:.12f}, q1(0)={z0}")


# -------------------------------------------------------------------- C10
def test_c10_constraint_cross_method(sieve):
    points = [(1, 0.8), (3, 1.2), (5, 2.0), (2, 0.8), (4, 1.2),
              (3, complex(0.8, 1.0))]
    worst = 0.0
    for d, s in points:
        cfg = tz.twin_config(sieve, d)
        a = tz.q_big(cfg, s, method="direct")
        b = tz.q_big(cfg, s, method="binomial")
        gap = abs(a.value - b.value)
        assert gap < max(a.tail_bound + b.tail_bound, 1e-8), (d, s)
        assert gap < 1e-8, (d, s)
        worst = max(worst, gap)
    _report("C10 constraint cross-method (6 points)", f"worst gap={worst:.2e}")


# -------------------------------------------------------------------- C11
def test_c11_asymptotic_cross_method(sieve):
    t0 = time.time()
    worst = 0.0
    for d in (1, 3, 2, 4):
        cfg = tz.twin_config(sieve, d)
        for w in (1.0, 1.5, complex(1.0, 2.0)):
            direct = tz.a_series(sieve, cfg, w, method="direct",
                                 n_max=2 * 10 ** 6)
            closed = tz.a_series(sieve, cfg, w, method="closed")
            gap = abs(direct.value - closed.value)
            assert gap < 1e-6, (d, w)
            worst = max(worst, gap)
    dt = time.time() - t0
    assert dt < 60.0
    _report("C11 asymptotic cross-method", f"worst gap={worst:.2e}, {dt:.1f}s")


# -------------------------------------------------------------------- C12
def test_c12_product_formula_ladder():
    t0 = time.time()
    co = np.concatenate([[0.0], np.ones(50)])
    w, sigma = 7.0, 3.5
    diag = sum(1.0 / l ** w for l in range(1, 51))
    errs = []
    for t_max in (100.0, 200.0, 400.0):
        pa = tz.product_formula_avg(co, 1.0, co, 1.0,
                                    QuadratureSpec(t_max, 0.05, sigma), w)
        errs.append(abs(pa.average.value - diag))
    dt = time.time() - t0
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] / abs(diag) < 1e-2
    assert dt < 120.0
    _report("C12 product-formula ladder",
            f"errs={[f'{e:.2e}' for e in errs]}, final rel="
            f"{errs[-1] / abs(diag):.1e}, {dt:.1f}s")


# -------------------------------------------------------------------- C13
def test_c13_explicit_formula_wiring(sieve, cfg1, zeros_large):
    from twinzeta.constraint import q_sub
    from twinzeta.zseries import residue_z_at_1
    w = 3.0
    # realness
    zs = tz.zero_sum_scaled(cfg1, w, zeros_large, 200.0)
    assert abs(zs.value.imag) < 1e-10
    # algebraic wiring identity
    t_max = 150.0
    ci = tz.contour_zero_expansion(cfg1, w, zeros_large, t_max)
    head = q_sub(cfg1, w - 1.0).value * residue_z_at_1(zeros_large,
                                                       t_max).value
    gap = abs((ci.value - head) - zs_scale(cfg1, w, zeros_large, t_max))
    assert gap <= 1e-12 * (1 + abs(ci.value))
    # three-way report completes and serializes
    rep = tz.compare_report(cfg1, w, (50.0, 100.0, 200.0), zeros_large,
                            sieve, a_max=10 ** 5, sigma=1.25, step=0.05)
    js = rep.to_json()
    json.dumps(js)
    csv_text = rep.to_csv()
    body = [l for l in csv_text.splitlines() if not l.startswith("#")]
    assert len(body) == 4 and body[0].startswith("T,")
    deltas = [r.delta_zero_sum for r in rep.rows]
    _report("C13 explicit-formula wiring",
            f"imag={abs(zs.value.imag):.1e}, wiring gap={gap:.1e}, "
            f"deltas (reported only)={[f'{d:.3g}' for d in deltas]}")


def zs_scale(cfg, w, zeros, t_max):
    sv = tz.zero_sum_scaled(cfg, w, zeros, t_max)
    return sv.value * t_max / math.pi


# -------------------------------------------------------------------- C14
def test_c14_zero_table_validation(zeros_small):
    assert len(zeros_small) == 100
    g = zeros_small.gammas
    mids = np.concatenate([0.5 * (g[:-1] + g[1:]), [g[-1] + 1.0]])
    dev = np.abs(np.arange(1, 101) - tz.rvm_estimate(mids))
    assert float(dev.max()) <= 2.0
    assert abs(g[0] - 14.134725) <= 1e-4
    found = tz.find_critical_zeros(count=3)
    assert abs(found[0] - 14.134725) <= 1e-4
    assert np.max(np.abs(found - g[:3])) < 1e-7
    _report("C14 zero-table validation",
            f"RvM max dev={float(dev.max()):.2f}, "
            f"first zero={found[0]:.6f}")
