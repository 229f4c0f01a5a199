import math
from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greglab import numkernel as nk


def _partitions(n, k):
    # brute force: count set partitions of {0..n-1} into exactly k blocks
    def assign(i, blocks):
        if i == n:
            return 1 if blocks == k else 0
        total = sum(assign(i + 1, blocks) for _ in range(blocks))
        return total + (assign(i + 1, blocks + 1) if blocks < k else 0)

    return assign(0, 0)


def _falling_poly(n):
    poly = [1]
    for j in range(n):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= j * c
        poly = nxt
    return poly


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (3, 2, -3), (5, 1, 24)])
def test_stirling_first_examples(n, k, expected):
    assert nk.stirling_first(n, k) == expected


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (4, 2, 7), (3, 3, 1)])
def test_stirling_second_examples(n, k, expected):
    assert nk.stirling_second(n, k) == expected


def test_stirling_second_brute_force():
    for n in range(7):
        for k in range(n + 1):
            assert nk.stirling_second(n, k) == _partitions(n, k)


def test_stirling_first_matches_polynomial_expansion():
    for n in range(12):
        assert [nk.stirling_first(n, k) for k in range(n + 1)] == _falling_poly(n)


def test_unsigned_sign_rule():
    for n, k in product(range(15), repeat=2):
        if k <= n:
            assert nk.stirling_first_unsigned(n, k) == (-1) ** (n - k) * nk.stirling_first(n, k)


def test_out_of_triangle_is_zero():
    assert nk.stirling_first(3, 5) == 0
    assert nk.stirling_second(2, 4) == 0


def test_capacity_error():
    tri = nk.StirlingTriangle("second", n_max=5, cap=10)
    assert tri(10, 3) == nk.stirling_second(10, 3)
    with pytest.raises(nk.CapacityError):
        tri(11, 2)


def test_stirling_explicit_form():
    for p in range(12):
        for n in range(p + 1):
            assert nk.stirling_second_explicit(p, n) == nk.stirling_second(p, n)


def test_stirling_columns_match_triangle():
    cols = nk.stirling_first_columns(30, 3)
    for k in range(4):
        for n in range(31):
            assert cols[k][n] == nk.stirling_first(n, k)


@pytest.mark.parametrize("n,expected", [(0, [1]), (2, [0, -1, 1])])
def test_falling_factorial_coeffs(n, expected):
    assert nk.falling_factorial_coeffs(n) == expected


def test_falling_factorial_row_six():
    assert nk.falling_factorial_coeffs(6) == list(nk.StirlingTriangle("first-signed", 6).row(6))


@pytest.mark.parametrize("n,expected", [(0, 1), (2, Fraction(-1, 6)), (4, Fraction(-19, 30))])
def test_cauchy_examples(n, expected):
    assert nk.cauchy_number(n) == expected


@pytest.mark.parametrize(
    "n_max,expected",
    [(1, [1, Fraction(1, 2)]), (3, [1, Fraction(1, 2), Fraction(-1, 12), Fraction(1, 24)])],
)
def test_gregory_examples(n_max, expected):
    assert [nk.gregory_coefficient(n) for n in range(n_max + 1)] == expected


def test_gregory_times_factorial_is_cauchy():
    for n in range(40):
        assert nk.gregory_coefficient(n) * math.factorial(n) == nk.cauchy_number(n)


def test_cauchy_series_oracle():
    series = nk.cauchy_via_series(30)
    for n in range(31):
        assert series[n] * math.factorial(n) == nk.cauchy_number(n)


def test_gregory_floats_match_exact():
    floats = nk.gregory_floats(300, 200)
    with mpmath.workprec(200):
        for n in (0, 1, 2, 7, 50, 151, 300):
            g = nk.gregory_coefficient(n)
            exact = mpmath.mpf(g.numerator) / g.denominator
            assert abs(floats[n] - exact) <= abs(exact) * mpmath.mpf(2) ** -190


def test_gregory_signs_alternate():
    for n in range(1, 60):
        assert (nk.gregory_coefficient(n) > 0) == (n % 2 == 1)


def test_harmonic_examples():
    assert nk.harmonic(3) == Fraction(11, 6)
    assert nk.harmonic_p(2, 2) == Fraction(5, 4)
    assert nk.skew_harmonic(2) == Fraction(1, 2)
    assert nk.harmonic(0) == 0


@given(st.integers(1, 200))
def test_harmonic_increments(n):
    assert nk.harmonic(n) - nk.harmonic(n - 1) == Fraction(1, n)
    assert nk.harmonic_p(n, 3) - nk.harmonic_p(n - 1, 3) == Fraction(1, n**3)
    assert nk.skew_harmonic(n) - nk.skew_harmonic(n - 1) == Fraction((-1) ** (n - 1), n)


def test_binomial_transform_examples():
    assert nk.binomial_transform([1] * 6) == [1, 0, 0, 0, 0, 0]
    h = [nk.harmonic(k) for k in range(5)]
    assert nk.binomial_transform(h) == [0, -1, Fraction(-1, 2), Fraction(-1, 3), Fraction(-1, 4)]


def test_binomial_transform_empty():
    with pytest.raises(ValueError):
        nk.binomial_transform([])


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(st.lists(rationals, min_size=1, max_size=14))
def test_binomial_transform_is_involution(a):
    assert nk.binomial_transform(nk.binomial_transform(a)) == [Fraction(v) for v in a]


@given(st.lists(rationals, min_size=1, max_size=14))
def test_binomial_transform_is_signed_difference(a):
    b = nk.binomial_transform(a)
    d = nk.forward_differences(a)
    assert all(b[n] == (-1) ** n * d[n] for n in range(len(a)))


def test_forward_differences_examples():
    assert nk.forward_differences([0, 1, 4, 9]) == [0, 1, 2, 0]
    assert nk.forward_differences([1, 0, 0, 0]) == [1, -1, 1, -1]


@settings(max_examples=30)
@given(st.lists(rationals, min_size=13, max_size=13))
def test_forward_differences_binomial_sum(f):
    d = nk.forward_differences(f)
    for n in range(13):
        assert d[n] == sum(math.comb(n, k) * (-1) ** (n - k) * Fraction(f[k]) for k in range(n + 1))


def test_difference_table_rows():
    table = nk.difference_table([Fraction(k**3) for k in range(6)])
    assert table[3] == [6, 6, 6]
    assert table[4] == [0, 0]
    assert [row[0] for row in table] == nk.forward_differences([k**3 for k in range(6)])


@given(st.integers(0, 20), st.integers(0, 20))
def test_orthogonality_of_stirling_kinds(n, m):
    total = sum(nk.stirling_first(n, k) * nk.stirling_second(k, m) for k in range(n + 1))
    assert total == (1 if n == m else 0)


@given(st.integers(2, 25))
def test_row_sums(n):
    assert sum(nk.stirling_first_unsigned(n, k) for k in range(n + 1)) == math.factorial(n)
    assert sum(nk.stirling_first(n, k) for k in range(n + 1)) == 0


@given(st.integers(0, 30))
def test_cauchy_from_stirling(n):
    assert nk.cauchy_number(n) == sum(Fraction(nk.stirling_first(n, k), k + 1) for k in range(n + 1))


@given(st.integers(0, 25))
def test_falling_factorial_integral(n):
    coeffs = nk.falling_factorial_coeffs(n)
    assert sum(Fraction(c, k + 1) for k, c in enumerate(coeffs)) == nk.cauchy_number(n)
