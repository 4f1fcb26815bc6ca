import random

import pytest

from qlab.ring import (
    EISENSTEIN,
    OMEGA,
    OMEGA2,
    Eisenstein,
    NotInvertibleError,
    RingMismatchError,
    TruncationError,
    TruncLaurentSeries as T,
    add,
    conjugate_series,
    convolve,
    invert_unit,
    kronecker_convolve,
    mul,
    q,
    reflect_exponents,
    substitute_power,
)
from naive import pmul


def poly(*coeffs, lo=0, order=None):
    return T(coeffs, lo, order)


class TestEisenstein:
    def test_omega_is_a_cube_root_of_unity(self):
        assert OMEGA ** 3 == Eisenstein(1)
        assert Eisenstein(1) + OMEGA + OMEGA2 == 0
        assert OMEGA * OMEGA == OMEGA2 == Eisenstein(-1, -1)

    def test_product_formula(self):
        x, y = Eisenstein(3, -2), Eisenstein(-5, 7)
        # (a+bw)(c+dw) = (ac-bd) + (ad+bc-bd)w
        assert x * y == Eisenstein(3 * -5 - (-2) * 7, 3 * 7 + (-2) * (-5) - (-2) * 7)

    def test_conjugation(self):
        assert OMEGA.conj() == OMEGA2
        assert Eisenstein(4, 9).conj() == Eisenstein(4 - 9, -9)
        assert Eisenstein(4, 9).conj().conj() == Eisenstein(4, 9)

    def test_units_and_inverse(self):
        for u in (Eisenstein(1), -OMEGA, OMEGA2, Eisenstein(-1)):
            assert u.is_unit()
            assert u * u.inverse() == 1
        assert not Eisenstein(2).is_unit()
        with pytest.raises(ArithmeticError):
            Eisenstein(1, 1 + 1).inverse()

    def test_big_components_do_not_overflow(self):
        big = Eisenstein(2 ** 70, -(3 ** 50))
        assert (big * big.conj()).b == 0
        assert (big * big.conj()).a == big.norm()


class TestAddMul:
    def test_add_examples(self):
        assert poly(1, 1) + poly(0, 1) == poly(1, 2)
        f = poly(3, 0, -2, lo=-1, order=9)
        assert f + T.zero() == f
        assert (q(-1) + q(-1, -1)).is_zero()

    def test_add_tracks_smaller_order(self):
        assert add(poly(1, order=5), poly(1, order=3)).order == 3
        assert add(poly(1), poly(1, order=3)).order == 3
        assert add(poly(1), poly(2)).order is None

    def test_mul_examples(self):
        assert poly(1, -1) * poly(1, 1) == poly(1, 0, -1)
        assert q(-2) * q(5) == q(3)
        assert poly(1, 1, 1) * poly(1, 1, 1) == poly(1, 2, 3, 2, 1)

    def test_mul_order_accounts_for_valuations(self):
        f = poly(1, 1, lo=2, order=10)
        g = poly(1, order=7)
        assert mul(f, g).order == min(10 + 0, 7 + 2)

    def test_never_reports_above_order(self):
        f = poly(1, 1, 1, 1, order=2)
        assert f.max_exp == 2
        with pytest.raises(TruncationError):
            f[3]

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatchError):
            q(1) + q(1, OMEGA)
        with pytest.raises(RingMismatchError):
            q(1).scale(OMEGA)
        assert (q(1).promote() + q(1, OMEGA)).ring == EISENSTEIN

    def test_truncate_is_explicit(self):
        f = poly(1, 2, 3, 4)
        assert f.truncate(1) == poly(1, 2, order=1)

    def test_str(self):
        assert str(poly(1, -2, 0, 1, order=5)) == "1 - 2*q + q^3 + O(q^6)"


class TestConvolution:
    def test_kronecker_matches_schoolbook(self):
        rng = random.Random(7)
        for _ in range(200):
            a = [rng.randint(-10 ** 12, 10 ** 12) for _ in range(rng.randint(1, 60))]
            b = [rng.randint(-10 ** 3, 10 ** 3) for _ in range(rng.randint(1, 60))]
            size = rng.randint(1, len(a) + len(b))
            expected = [sum(a[i] * b[k - i] for i in range(len(a)) if 0 <= k - i < len(b)) for k in range(size)]
            assert kronecker_convolve(a, b, size) == expected
            assert convolve(a, b, size) == expected

    def test_against_dict_polynomials(self):
        rng = random.Random(3)
        for _ in range(50):
            a = {i: rng.randint(-5, 5) for i in range(rng.randint(1, 40))}
            b = {i: rng.randint(-5, 5) for i in range(rng.randint(1, 40))}
            got = T.from_dict(a) * T.from_dict(b)
            assert got.terms() == pmul(a, b)


class TestInvert:
    def test_geometric(self):
        assert invert_unit(poly(1, -1), 6) == T([1] * 7, 0, 6)

    def test_identity(self):
        assert invert_unit(poly(1), 4) == T([1], 0, 4)

    def test_parts_at_most_two(self):
        # partitions of n into 1s and 2s: floor(n/2) + 1
        f = poly(1, -1) * poly(1, 0, -1)
        assert invert_unit(f, 5).window(0, 5) == [n // 2 + 1 for n in range(6)]

    def test_eisenstein_unit_constant(self):
        f = T([-OMEGA, Eisenstein(2, 1), OMEGA2], 0, 20)
        g = invert_unit(f)
        assert (f * g).truncate(20) == T([1], 0, 20, EISENSTEIN)

    def test_errors(self):
        with pytest.raises(NotInvertibleError):
            invert_unit(poly(2, 1), 5)
        with pytest.raises(NotInvertibleError):
            invert_unit(poly(1, 1, lo=1), 5)
        with pytest.raises(TruncationError):
            invert_unit(poly(1, 1))


class TestReflectConjugateSubstitute:
    def test_reflect_examples(self):
        assert reflect_exponents(q(2) + q(5)) == q(-2) + q(-5)
        assert reflect_exponents(q(0)) == q(0)
        f = q(1, 3) - q(4)
        assert reflect_exponents(reflect_exponents(f)) == f

    def test_reflect_refuses_truncated(self):
        with pytest.raises(TruncationError):
            reflect_exponents(poly(1, 1, order=3))

    def test_conjugate_examples(self):
        assert conjugate_series(q(1, OMEGA)) == q(1, Eisenstein(-1, -1))
        f = poly(1, 2, 3)
        assert conjugate_series(f) == f
        g = T([OMEGA, Eisenstein(2, 5)], -1, 8)
        assert conjugate_series(conjugate_series(g)) == g

    def test_substitute_examples(self):
        assert substitute_power(poly(1, 1), 3) == poly(1, 0, 0, 1)
        f = poly(1, -1, 1)
        assert substitute_power(f, 1) == f
        assert substitute_power(f, 2) == poly(1, 0, -1, 0, 1)
        assert substitute_power(poly(1, 1, order=4), 3).order == 12
