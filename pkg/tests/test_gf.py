"""Field arithmetic, modulus selection, and prime-search tests.

Expected values are frozen from independent oracles: an in-test irreducible
scan for moduli, exhaustive multiplication tables for inverses, and a
trial-division prime scan.
"""

import itertools
import random

import pytest

from qpack import (
    FieldSpec,
    NotPrimePowerError,
    is_prime,
    is_prime_power,
    make_field,
    next_prime_geq,
)
from qpack.gf import prime_power_decomposition


# --- oracle: scan monic degree-n polynomials over GF(p), constant term least
# significant, and return the first with no root and no small factor.

def _oracle_smallest_irreducible(p, n):
    def divides(small, poly):
        rem = list(poly)
        while len(rem) >= len(small) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(small):
                break
            shift = len(rem) - len(small)
            factor = rem[-1] * pow(small[-1], p - 2, p) % p
            for i, c in enumerate(small):
                rem[shift + i] = (rem[shift + i] - factor * c) % p
        return not any(rem)

    for idx in range(p**n):
        poly = [(idx // p**e) % p for e in range(n)] + [1]
        if not any(
            divides([(j // p**e) % p for e in range(d)] + [1], poly)
            for d in range(1, n // 2 + 1)
            for j in range(p**d)
        ):
            return tuple(poly)
    raise AssertionError


class TestMakeField:
    def test_prime_field_is_trivial(self):
        f = make_field(5)
        assert (f.p, f.n, f.q) == (5, 1, 5)
        assert f.modulus == (0, 1)  # the polynomial x

    def test_gf9_modulus_is_x_squared_plus_one(self):
        f = make_field(9)
        assert f.modulus == (1, 0, 1)
        assert f.modulus == _oracle_smallest_irreducible(3, 2)

    @pytest.mark.parametrize("q,expected", [(4, (1, 1, 1)), (8, (1, 1, 0, 1)), (27, (1, 2, 0, 1))])
    def test_extension_moduli_match_oracle(self, q, expected):
        f = make_field(q)
        assert f.modulus == expected
        assert f.modulus == _oracle_smallest_irreducible(f.p, f.n)

    @pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15, 100])
    def test_not_prime_power_rejected(self, q):
        with pytest.raises(NotPrimePowerError):
            make_field(q)

    def test_deterministic(self):
        assert make_field(9) == make_field(9)
        assert make_field(49).modulus == make_field(49).modulus

    def test_decomposition(self):
        assert prime_power_decomposition(8) == (2, 3)
        assert prime_power_decomposition(121) == (11, 2)
        assert is_prime_power(32) and not is_prime_power(36)

    def test_inconsistent_spec_rejected(self):
        with pytest.raises(NotPrimePowerError):
            FieldSpec(p=4, n=1, q=4, modulus=(0, 1))


class TestArithmetic:
    def test_inverse_of_two_mod_five(self, f5):
        two = f5.element(2)
        assert two.inverse() == f5.element(3)
        # oracle: the unique partner in the full multiplication table
        partners = [b for b in f5.elements() if (two * b) == f5.one]
        assert partners == [f5.element(3)]

    def test_x_squared_in_gf9(self, f9):
        x = f9.from_coeffs([0, 1])
        assert x * x == f9.from_coeffs([2, 0])  # x^2 = -1 under x^2 + 1
        assert x * x == -f9.one

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_additive_identity(self, q):
        f = make_field(q)
        for a in f.elements():
            assert a + f.zero == a

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_axioms_exhaustive(self, q):
        f = make_field(q)
        els = f.elements()
        for a, b in itertools.product(els, repeat=2):
            assert a + b == b + a
            assert a * b == b * a
        for a, b, c in itertools.product(els, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
        for a in els[1:]:
            assert a * a.inverse() == f.one

    @pytest.mark.parametrize("q", [25, 27, 49])
    def test_axioms_randomized(self, q):
        f = make_field(q)
        els = f.elements()
        rng = random.Random(20240 + q)
        for _ in range(300):
            a, b, c = (els[rng.randrange(q)] for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero:
                assert a * a.inverse() == f.one

    def test_subtraction_and_negation(self, f9):
        for a in f9.elements():
            assert a - a == f9.zero
            assert a + (-a) == f9.zero

    def test_division(self, f9):
        for a in f9.elements()[1:]:
            for b in f9.elements()[1:]:
                assert (a / b) * b == a

    def test_division_by_zero(self, f5):
        with pytest.raises(ZeroDivisionError):
            f5.element(3) / f5.zero
        with pytest.raises(ZeroDivisionError):
            f5.zero.inverse()

    @pytest.mark.parametrize("q", [5, 8, 9])
    def test_pow(self, q):
        f = make_field(q)
        for a in f.elements():
            assert a**0 == f.one
            assert a**1 == a
            assert a**3 == a * a * a
        for a in f.elements()[1:]:
            assert a ** (q - 1) == f.one  # multiplicative group order
            assert a**-1 == a.inverse()
            assert a**-2 == (a * a).inverse()

    def test_mixed_fields_rejected(self, f5, f7):
        with pytest.raises(ValueError):
            f5.element(1) + f7.element(1)


class TestEnumeration:
    def test_gf3(self, f3):
        assert [e.value for e in f3.elements()] == [0, 1, 2]

    def test_gf4_coefficient_order(self, f4):
        assert [e.coeffs for e in f4.elements()] == [(0, 0), (1, 0), (0, 1), (1, 1)]

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 25])
    def test_count_and_order(self, q):
        f = make_field(q)
        els = f.elements()
        assert len(els) == q
        assert els[0] == f.zero
        assert all(a < b for a, b in zip(els, els[1:]))

    def test_element_value_roundtrip(self, f9):
        for e in f9.elements():
            assert f9.element(e.value) == e


class TestPrimes:
    def test_examples(self):
        assert next_prime_geq(17) == 17
        assert next_prime_geq(14) == 17
        assert next_prime_geq(8) == 11

    def test_matches_trial_division_oracle(self):
        def oracle_is_prime(m):
            return m >= 2 and all(m % d for d in range(2, m))

        for m in range(2, 400):
            expected = m
            while not oracle_is_prime(expected):
                expected += 1
            assert next_prime_geq(m) == expected
            assert is_prime(m) == oracle_is_prime(m)

    def test_bertrand_window(self):
        # next_prime_geq asserts p < 2m internally on every call
        for m in list(range(2, 1000)) + [10**6, 10**9 + 7]:
            p = next_prime_geq(m)
            assert m <= p < 2 * m

    def test_requires_m_at_least_two(self):
        with pytest.raises(ValueError):
            next_prime_geq(1)
