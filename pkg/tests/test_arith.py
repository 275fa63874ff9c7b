import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfsym.arith import (
    characters_mod,
    factorize,
    kronecker_symbol,
    legendre_table,
    sieve_primes,
)


def trial_division_is_prime(n: int) -> bool:
    """Independent primality oracle."""
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


# hardcoded prime-counting values
PI_TABLE = {10: 4, 100: 25, 1000: 168, 10**4: 1229}


class TestSieve:
    def test_small(self):
        assert sieve_primes(10).primes.tolist() == [2, 3, 5, 7]

    def test_boundary(self):
        assert sieve_primes(2).primes.tolist() == [2]

    def test_counts_against_table(self):
        table = sieve_primes(10**4)
        for limit, count in PI_TABLE.items():
            assert len(table.up_to(limit)) == count

    def test_count_against_trial_division(self):
        table = sieve_primes(10**4)
        oracle = sum(1 for n in range(2, 10**4 + 1) if trial_division_is_prime(n))
        assert len(table) == oracle == 1229

    def test_strictly_increasing_and_prime(self):
        primes = sieve_primes(2000).primes
        assert np.all(np.diff(primes) > 0)
        assert all(trial_division_is_prime(int(p)) for p in primes)

    def test_cached_logs(self):
        table = sieve_primes(100)
        assert table.log_p[0] == pytest.approx(math.log(2))

    def test_domain_error(self):
        with pytest.raises(ValueError):
            sieve_primes(1)


class TestKronecker:
    def test_perfect_square(self):
        assert kronecker_symbol(4, 7) == 1

    def test_nonresidue(self):
        # squares mod 5 are {1, 4}
        assert kronecker_symbol(3, 5) == -1

    def test_zero_modulus(self):
        with pytest.raises(ValueError):
            kronecker_symbol(3, 0)

    def test_matches_exhaustive_legendre(self):
        for p in sieve_primes(200).primes[1:]:  # odd primes
            p = int(p)
            squares = {(x * x) % p for x in range(1, p)}
            for a in range(p):
                expected = 0 if a == 0 else (1 if a in squares else -1)
                assert kronecker_symbol(a, p) == expected

    def test_legendre_table_agrees(self):
        for p in (3, 5, 13, 101):
            tab = legendre_table(p)
            assert [kronecker_symbol(a, p) for a in range(p)] == tab.tolist()

    @given(st.integers(-500, 500), st.integers(-500, 500))
    @settings(max_examples=100)
    def test_multiplicative_in_top(self, a, b):
        p = 101
        assert (
            kronecker_symbol(a, p) * kronecker_symbol(b, p)
            == kronecker_symbol(a * b, p)
        )

    @given(st.integers(1, 300), st.integers(-300, 300))
    @settings(max_examples=100)
    def test_multiplicative_in_bottom(self, n, a):
        m = 15
        assert (
            kronecker_symbol(a, n) * kronecker_symbol(a, m)
            == kronecker_symbol(a, n * m)
        )


class TestFactorize:
    def test_known(self):
        assert factorize(496) == {2: 4, 31: 1}
        assert factorize(-496) == {2: 4, 31: 1}

    def test_large_semiprime(self):
        n = 1_000_003 * 999_983
        assert factorize(n) == {999_983: 1, 1_000_003: 1}

    @given(st.integers(2, 10**9))
    @settings(max_examples=50)
    def test_roundtrip(self, n):
        f = factorize(n)
        assert math.prod(p**e for p, e in f.items()) == n
        assert all(trial_division_is_prime(p) or p > 10**4 for p in f)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factorize(0)


class TestCharacters:
    def test_mod3(self):
        chars = characters_mod(3)
        assert len(chars) == 2
        trivial = [c for c in chars if c.is_trivial]
        quad = [c for c in chars if c.is_quadratic]
        assert len(trivial) == 1 and len(quad) == 1
        assert quad[0](2) == pytest.approx(-1)

    def test_mod5_order_structure(self):
        # (Z/5)^* is cyclic of order 4: one character each of order 1 and 2,
        # two of order 4
        orders = sorted(c.order for c in characters_mod(5))
        assert orders == [1, 2, 4, 4]

    @pytest.mark.parametrize("m", [7, 13, 31])
    def test_orthogonality_exact(self, m):
        chars = characters_mod(m)
        assert len(chars) == m - 1
        for a in range(2, m):
            total = sum(c(a) for c in chars)
            assert abs(total) < 1e-12
        assert sum(c(1) for c in chars) == pytest.approx(m - 1)

    def test_multiplicative(self):
        m = 11
        for chi in characters_mod(m):
            for a in range(1, m):
                for b in range(1, m):
                    assert chi(a) * chi(b) == pytest.approx(chi(a * b % m))

    def test_vanishes_only_at_noncoprime(self):
        for chi in characters_mod(7):
            assert chi(0) == 0
            assert chi(7) == 0
            for a in range(1, 7):
                assert abs(chi(a)) == pytest.approx(1.0)

    def test_value_at_one(self):
        for chi in characters_mod(13):
            assert chi(1) == pytest.approx(1.0)

    def test_values_are_order_th_roots(self):
        for chi in characters_mod(11):
            for a in range(1, 11):
                assert chi(a) ** chi.order == pytest.approx(1.0)

    def test_power_value(self):
        chi = characters_mod(7)[2]
        for a in range(1, 7):
            for nu in range(1, 5):
                assert chi.power_value(a, nu) == pytest.approx(chi(a) ** nu)

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            characters_mod(9)
        with pytest.raises(ValueError):
            characters_mod(2)
