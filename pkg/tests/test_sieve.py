import numpy as np
import pytest

import twinzeta as tz
from twinzeta.exceptions import CapacityError, DomainError, ZeroTableError
from twinzeta.sieve import MAX_SIEVE_LIMIT


def test_spf_small_table():
    sv = tz.build_sieve(10)
    want = {2: 2, 3: 3, 4: 2, 5: 5, 6: 2, 7: 7, 8: 2, 9: 3, 10: 2}
    assert {n: sv.smallest_factor(n) for n in range(2, 11)} == want


def test_spf_smallest_case():
    sv = tz.build_sieve(2)
    assert sv.smallest_factor(2) == 2


def test_spf_invariants(sieve):
    rng = np.random.default_rng(7)
    for n in rng.integers(2, sieve.limit, size=2000).tolist():
        p = sieve.smallest_factor(n)
        assert n % p == 0
        # no smaller factor by trial division
        for q in range(2, min(p, 50)):
            assert n % q != 0
        back = 1
        for q, e in sieve.factorize(n):
            back *= q ** e
        assert back == n


def test_primality_matches_trial_division(sieve):
    for n in range(2, 500):
        is_p = all(n % d for d in range(2, int(n ** 0.5) + 1))
        assert sieve.is_prime(n) == is_p


def test_spot_factorization_at_1e7():
    sv = tz.build_sieve(10 ** 7)
    n = 9999991
    # trial-division oracle for primality
    assert all(n % d for d in range(2, int(n ** 0.5) + 1))
    assert sv.is_prime(n)
    assert sv.smallest_factor(n) == n


def test_factorize_wide(sieve):
    n = 4 * 99991 ** 2 - 1  # product of two ~2e5 coprime factors
    fac = dict(sieve.factorize_wide(n))
    back = 1
    for p, e in fac.items():
        back *= p ** e
        assert sieve.is_prime(p)
    assert back == n
    with pytest.raises(CapacityError):
        sieve.factorize_wide(sieve.limit ** 2 + 1)


def test_capacity_and_domain_errors():
    with pytest.raises(CapacityError):
        tz.build_sieve(MAX_SIEVE_LIMIT + 1)
    with pytest.raises(DomainError):
        tz.build_sieve(1)
    sv = tz.build_sieve(100)
    with pytest.raises(DomainError):
        sv.smallest_factor(101)


def test_cache_roundtrip(tmp_path, sieve):
    sv = tz.build_sieve(5000)
    path = tmp_path / "spf.bin"
    sv.save(path)
    back = tz.FactorSieve.load(path)
    assert back.limit == sv.limit
    assert np.array_equal(back.spf, sv.spf)

    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOTIT" + b"\x00" * 64)
    with pytest.raises(ZeroTableError):
        tz.FactorSieve.load(bad)
    trunc = tmp_path / "trunc.bin"
    trunc.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(ZeroTableError):
        tz.FactorSieve.load(trunc)
