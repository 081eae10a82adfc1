import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aepv.errors import InvalidModulusError, NoInverseError
from aepv.numeric import ExpCounter, is_prime, mod_exp, mod_inv, sample_zq_star
from support import naive_inv, naive_pow, trial_division_is_prime


class TestModExp:
    def test_exponent_zero_identity(self):
        assert mod_exp(4, 0, 23) == 1

    @pytest.mark.parametrize("base,exp,mod", [(4, 11, 23), (12, 7, 23), (2, 22, 23)])
    def test_against_repeated_multiplication(self, base, exp, mod):
        assert mod_exp(base, exp, mod) == naive_pow(base, exp, mod)

    def test_frozen_vectors(self):
        assert mod_exp(4, 11, 23) == 1
        assert mod_exp(12, 7, 23) == 16

    @pytest.mark.parametrize("bad", [1, 0])
    def test_invalid_modulus(self, bad):
        with pytest.raises(InvalidModulusError):
            mod_exp(4, 2, bad)

    def test_counter_ticks_once_per_call(self):
        counter = ExpCounter()
        for k in range(1, 8):
            mod_exp(3, 10**k, 1009, counter)
            assert counter.count == k

    def test_counter_optional(self):
        assert mod_exp(3, 5, 7) == naive_pow(3, 5, 7)

    @given(
        base=st.integers(min_value=0, max_value=50),
        e1=st.integers(min_value=0, max_value=40),
        e2=st.integers(min_value=0, max_value=40),
        mod=st.integers(min_value=2, max_value=97),
    )
    def test_exponent_additivity_vs_oracle(self, base, e1, e2, mod):
        combined = mod_exp(base, e1 + e2, mod)
        assert combined == naive_pow(base, e1, mod) * naive_pow(base, e2, mod) % mod


class TestModInv:
    def test_identity_self_inverse(self):
        assert mod_inv(1, 11) == 1

    @pytest.mark.parametrize("a,mod,expected", [(5, 11, 9), (7, 11, 8), (7, 23, 10)])
    def test_frozen_exhaustive_search_vectors(self, a, mod, expected):
        assert naive_inv(a, mod) == expected
        assert mod_inv(a, mod) == expected

    @pytest.mark.parametrize("a,mod", [(0, 11), (6, 12), (11, 11)])
    def test_non_invertible(self, a, mod):
        with pytest.raises(NoInverseError):
            mod_inv(a, mod)

    @given(a=st.integers(min_value=1, max_value=10**12), mod=st.integers(min_value=2, max_value=10**12))
    def test_inverse_property(self, a, mod):
        try:
            inv = mod_inv(a, mod)
        except NoInverseError:
            return
        assert 0 < inv < mod
        assert a * inv % mod == 1


class TestIsPrime:
    def test_small_known_values(self):
        assert is_prime(23, 20)
        assert not is_prime(22, 20)

    def test_mersenne_prime_vs_trial_division(self):
        n = 2**31 - 1
        assert trial_division_is_prime(n)
        assert is_prime(n, 20)

    def test_carmichael_number_is_composite(self):
        assert not is_prime(561, 40)
        assert not is_prime(41041, 40)

    def test_agrees_with_trial_division_below_2000(self):
        rng = random.Random(5)
        for n in range(2000):
            assert is_prime(n, 20, rng=rng) == trial_division_is_prime(n), n

    def test_rounds_precondition(self):
        with pytest.raises(ValueError):
            is_prime(23, 0)


class TestSampleZqStar:
    def test_range_containment(self):
        rng = random.Random(1)
        assert all(1 <= sample_zq_star(11, rng) <= 10 for _ in range(500))

    def test_uniformity_five_sigma(self):
        # 10^4 draws over 10 residues: expected 1000 each, sigma = sqrt(N*p*(1-p)) = 30
        rng = random.Random(2)
        counts = {v: 0 for v in range(1, 11)}
        for _ in range(10_000):
            counts[sample_zq_star(11, rng)] += 1
        assert all(abs(count - 1000) <= 150 for count in counts.values()), counts

    def test_deterministic_replay(self):
        first = [sample_zq_star(3, random.Random(9)) for _ in range(50)]
        second = [sample_zq_star(3, random.Random(9)) for _ in range(50)]
        assert first == second


@settings(max_examples=25)
@given(st.integers(min_value=3, max_value=10**6))
def test_composite_verdicts_are_always_correct(n):
    if not is_prime(n, 10):
        assert not trial_division_is_prime(n)
