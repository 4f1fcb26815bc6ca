"""Randomized laws, 1000 cases each."""

from math import comb

from hypothesis import given, settings, strategies as st

from qlab.qkit import binom, binom_recurrence_check, pochhammer_reflection_law, reflect_binom_law
from qlab.ring import (
    Eisenstein,
    TruncLaurentSeries as T,
    conjugate_series,
    reflect_exponents,
)
from naive import binom as naive_binom

CASES = settings(max_examples=1000)

ints = st.integers(-50, 50)
eis = st.builds(Eisenstein, ints, ints)


def series(coeff, exact=False):
    order = st.none() if exact else st.one_of(st.none(), st.integers(0, 14))
    out = st.builds(lambda cs, lo, o: T(cs, lo, o if o is None else max(o, lo)),
                    st.lists(coeff, max_size=8), st.integers(-3, 5), order)
    # an empty coefficient list lands in the integer ring
    return out.map(T.promote) if coeff is eis else out


def known(f, g, h=None):
    orders = [x.order for x in (f, g, h) if x is not None and x.order is not None]
    return min(orders) if orders else None


def same_upto(x, y, order):
    if order is None:
        return x == y
    return x.first_mismatch(y, order) is None


@CASES
@given(series(ints), series(ints), series(ints))
def test_integer_ring_axioms(f, g, h):
    n = known(f, g, h)
    assert f + g == g + f
    assert f * g == g * f
    assert same_upto((f + g) + h, f + (g + h), n)
    assert same_upto((f * g) * h, f * (g * h), n)
    assert same_upto(f * (g + h), f * g + f * h, n)
    assert (f + T.zero()) == f
    assert (f - f).is_zero()


@CASES
@given(series(eis), series(eis), series(eis))
def test_eisenstein_ring_axioms(f, g, h):
    n = known(f, g, h)
    assert f + g == g + f
    assert f * g == g * f
    assert same_upto((f * g) * h, f * (g * h), n)
    assert same_upto(f * (g + h), f * g + f * h, n)
    assert same_upto(f * T.one().promote(), f, f.order)


@CASES
@given(eis, eis, eis)
def test_eisenstein_numbers(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()


@CASES
@given(series(eis), series(eis))
def test_conjugation_is_a_ring_homomorphism(f, g):
    assert conjugate_series(f + g) == conjugate_series(f) + conjugate_series(g)
    assert conjugate_series(f * g) == conjugate_series(f) * conjugate_series(g)
    assert conjugate_series(conjugate_series(f)) == f


@CASES
@given(series(ints, exact=True), series(ints, exact=True))
def test_exponent_reflection_is_multiplicative(f, g):
    assert reflect_exponents(f * g) == reflect_exponents(f) * reflect_exponents(g)
    assert reflect_exponents(reflect_exponents(f)) == f


@CASES
@given(st.integers(0, 24), st.data(), st.integers(1, 3))
def test_binomial_symmetry_degree_positivity(n, data, k):
    m = data.draw(st.integers(0, n))
    b = binom(n, m, base_power=k)
    assert b == binom(n, n - m, base_power=k)
    assert b.min_exp == 0 and b.max_exp == k * m * (n - m)
    assert all(c > 0 for c in b.coeffs[::k])
    assert b.coeffs == b.coeffs[::-1]
    assert sum(b.coeffs) == comb(n, m)


@CASES
@given(st.integers(1, 22), st.integers(-2, 24), st.sampled_from([3, 4]))
def test_binomial_recurrences(n, m, which):
    assert binom_recurrence_check(n, m, which)


@CASES
@given(st.integers(0, 18), st.data())
def test_binomial_matches_pascal(n, data):
    m = data.draw(st.integers(0, n))
    assert binom(n, m).terms() == naive_binom(n, m)


@CASES
@given(st.integers(0, 20), st.data())
def test_binomial_reflection_law(n, data):
    assert reflect_binom_law(n, data.draw(st.integers(0, n)))


@CASES
@given(st.integers(-8, 8), st.integers(0, 16))
def test_pochhammer_reflection_law(e, n):
    assert pochhammer_reflection_law(e, n)
