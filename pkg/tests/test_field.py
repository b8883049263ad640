import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellvolcano.errors import (BadCharacteristic, BadInput, ContextMismatch,
                               DivisionByZero, NonPrime, NotInSubgroup)
from ellvolcano.field import (dlog_prime_power, make_field, mult_order,
                              primitive_root_of_unity)


F101 = make_field(101)
F25 = make_field(5, 2)


class TestMakeField:
    def test_prime_field(self):
        assert F101.q == 101
        assert F101.modulus_tail is None

    def test_first_irreducible_in_scan_order(self):
        # brute force: the tails 0 (x^2) and 1 (x^2+1, root 2) are reducible
        # over F_5, and x^2+2 has no root, so encoding 2 must be chosen
        for n in range(25):
            c0, c1 = n % 5, n // 5
            if c0 == 0:
                continue
            if not any((v * v + c1 * v + c0) % 5 == 0 for v in range(5)):
                first = (c0, c1)
                break
        assert first == (2, 0)
        assert F25.modulus_tail == (2, 0)

    def test_nonprime_rejected(self):
        with pytest.raises(NonPrime):
            make_field(4)

    def test_tiny_characteristic_rejected(self):
        with pytest.raises(BadCharacteristic):
            make_field(2)
        with pytest.raises(BadCharacteristic):
            make_field(3)

    def test_determinism(self):
        a = make_field(13, 4)
        b = make_field(13, 4)
        assert a.modulus_tail == b.modulus_tail

    def test_big_composite_degree(self):
        # the scan must terminate even when no binomial modulus exists
        F = make_field(953202937996763, 84)
        x = F.gen()
        assert (x ** F.q) == x  # Frobenius fixes the field


class TestElemArith:
    def test_inverse_of_two(self):
        assert F101.elem(2).inv().encode() == 51

    def test_pow_zero(self):
        x = F101.elem(37)
        assert x**0 == F101.one()

    def test_extension_square(self):
        x = F25.gen()
        assert (x * x).encode() == 3  # x^2 = -2 = 3 mod 5

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            F101.elem(1) + make_field(103).elem(1)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            F101.elem(1) / F101.elem(0)
        with pytest.raises(DivisionByZero):
            F25.zero().inv()

    def test_negative_pow(self):
        x = F25.from_coeffs((3, 4))
        assert x**-3 * x**3 == F25.one()

    def test_encode_decode_roundtrip(self):
        for n in range(25):
            assert F25.decode(n).encode() == n

    @given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
    @settings(max_examples=60, deadline=None)
    def test_field_axioms_prime(self, a, b, c):
        x, y, z = F101.elem(a), F101.elem(b), F101.elem(c)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if a % 101:
            assert x * x.inv() == F101.one()

    @given(st.integers(0, 24), st.integers(0, 24))
    @settings(max_examples=60, deadline=None)
    def test_field_axioms_extension(self, a, b):
        x, y = F25.decode(a), F25.decode(b)
        assert x + y == y + x
        assert x * y == y * x
        if a:
            assert x * x.inv() == F25.one()

    def test_frobenius_is_ring_hom(self):
        rng = random.Random(1)
        F = make_field(13, 3)
        for _ in range(20):
            a, b = F.random_element(rng), F.random_element(rng)
            assert (a + b) ** 13 == a**13 + b**13
            assert (a * b) ** 13 == a**13 * b**13


class TestMultOrder:
    def test_trivial_cases(self):
        assert mult_order(257, 2) == 1
        assert mult_order(7, 3) == 1

    def test_large_example(self):
        assert mult_order(953202937996763, 1009) == 84

    def test_divides_and_verifies(self):
        for q, ell in ((10, 7), (33, 13), (5, 11)):
            r = mult_order(q, ell)
            assert (ell - 1) % r == 0
            assert pow(q, r, ell) == 1
            for d in range(1, r):
                if r % d == 0:
                    assert pow(q, d, ell) != 1

    def test_ell_divides_q(self):
        with pytest.raises(BadInput):
            mult_order(21, 7)


class TestRootsOfUnity:
    def test_order_five(self):
        g = primitive_root_of_unity(F101, 5, 1, random.Random(0))
        assert g**5 == F101.one() and g != F101.one()

    def test_order_twentyfive(self):
        g = primitive_root_of_unity(F101, 5, 2, random.Random(0))
        assert g**25 == F101.one() and g**5 != F101.one()
        # exhaustive order check
        acc, order = g, 1
        while acc != F101.one():
            acc = acc * g
            order += 1
        assert order == 25

    def test_divisibility_failure(self):
        with pytest.raises(BadInput):
            primitive_root_of_unity(F101, 7, 1)


class TestDlog:
    def test_identity(self):
        g = primitive_root_of_unity(F101, 5, 2, random.Random(0))
        assert dlog_prime_power(g, F101.one(), 5, 2) == 0

    def test_small_power(self):
        g = primitive_root_of_unity(F101, 5, 2, random.Random(0))
        assert dlog_prime_power(g, g**7, 5, 2) == 7

    def test_not_in_subgroup(self):
        rng = random.Random(0)
        F = make_field(151)  # 151 - 1 = 2 * 3 * 5^2
        g = primitive_root_of_unity(F, 5, 2, rng)
        x = primitive_root_of_unity(F, 3, 1, rng)
        with pytest.raises(NotInSubgroup):
            dlog_prime_power(g, x, 5, 2)

    def test_roundtrip_random(self):
        rng = random.Random(3)
        from ellvolcano.integers import is_prime
        q = next(q for q in range(3**6, 10**5)
                 if is_prime(q) and (q - 1) % 3**5 == 0)
        F = make_field(q)
        g = primitive_root_of_unity(F, 3, 5, rng)
        for _ in range(300):
            e = rng.randrange(3**5)
            assert dlog_prime_power(g, g**e, 3, 5) == e

    def test_big_ell_bsgs_path(self):
        import ellvolcano.field as fieldmod
        rng = random.Random(5)
        from ellvolcano.integers import is_prime
        q = next(q for q in range(10**6, 2 * 10**7)
                 if is_prime(q) and (q - 1) % 100003 == 0)
        F = make_field(q)
        g = primitive_root_of_unity(F, 100003, 1, rng)
        old = fieldmod._DLOG_TABLE_MAX
        fieldmod._DLOG_TABLE_MAX = 1000  # force the baby-step giant-step path
        try:
            F._dlog_cache.clear()
            for e in (0, 1, 99999, 12345):
                assert dlog_prime_power(g, g**e, 100003, 1) == e
        finally:
            fieldmod._DLOG_TABLE_MAX = old
