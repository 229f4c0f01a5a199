import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greglab import precision as pr
from greglab.numkernel import harmonic, skew_harmonic
from greglab.powerseries import PowerSeries

PRECS = [53, 128, 300]


def close(a, b, bits):
    return abs(a - b) <= mpmath.ldexp(1, -bits) * max(1, abs(b))


@pytest.mark.parametrize("P", PRECS)
def test_zeta_closed_forms(P):
    with mpmath.workprec(P + 80):
        assert close(pr.zeta(2, P), mpmath.pi**2 / 6, P - 10)
        assert close(pr.zeta(4, P), mpmath.pi**4 / 90, P - 10)
        assert close(pr.zeta(12, P), mpmath.zeta(12), P - 10)


def test_zeta3_brute_force():
    # partial sum to 10^6 plus the integral tail bound 1/(2N^2)
    N = 10**6
    s = sum(1.0 / n**3 for n in range(N, 0, -1))
    tail = 1 / (2 * N**2)
    z3 = float(pr.zeta(3, 64))
    assert abs(z3 - (s + tail)) < 1e-12


def test_zeta_rejects_bad_arguments():
    with pytest.raises(ValueError):
        pr.zeta(1)
    with pytest.raises(ValueError):
        pr.zeta(2.5)


def test_zeta_decreasing():
    vals = [pr.zeta(s, 64) for s in range(2, 13)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("P", PRECS)
def test_euler_gamma(P):
    with mpmath.workprec(P + 80):
        assert close(pr.euler_gamma(P), +mpmath.euler, P - 4)
        assert close(-pr.digamma(1, P), pr.euler_gamma(P), P - 8)
        assert close(pr.digamma(2, P), 1 - pr.euler_gamma(P), P - 8)


def test_gamma_decimal():
    assert pr.decimal_string(pr.euler_gamma(53), 53).startswith("0.5772156649")


@pytest.mark.parametrize("P", [64, 200])
def test_digamma_harmonic(P):
    g = pr.euler_gamma(P)
    with mpmath.workprec(P + 80):
        for n in range(1, 21):
            h = harmonic(n)
            assert close(pr.digamma(n + 1, P) + g, mpmath.mpf(h.numerator) / h.denominator, P - 8)


@pytest.mark.parametrize("P", [64, 200])
def test_polygamma_values(P):
    with mpmath.workprec(P + 80):
        assert close(pr.trigamma(1, P), pr.zeta(2, P), P - 10)
        assert close(pr.tetragamma(1, P), -2 * pr.zeta(3, P), P - 10)
        for order in range(4):
            for x in ("0.3", "2.5", "40"):
                assert close(pr.polygamma(order, x, P), mpmath.polygamma(order, mpmath.mpf(x)), P - 12)


@pytest.mark.parametrize("x", [Fraction(1, 2), 1, Fraction(5, 2), 7])
def test_digamma_recurrence(x):
    P = 128
    with mpmath.workprec(P + 80):
        diff = pr.digamma(x + 1, P) - pr.digamma(x, P)
        assert close(diff, 1 / pr.to_bigfloat(x), P - 10)


def test_polygamma_domain():
    with pytest.raises(ValueError):
        pr.digamma(0)
    with pytest.raises(ValueError):
        pr.trigamma(-1.5)


def test_harmonic_extension_limit():
    p = Fraction(1, 10**6)
    with mpmath.workprec(200):
        ratio = pr.harmonic_extended(p, 128) / pr.to_bigfloat(p)
        assert abs(ratio - pr.zeta(2, 128)) < 1e-4


@pytest.mark.parametrize("P", [53, 128, 256])
def test_m1(P):
    m1 = pr.m1_constant(P)
    assert pr.decimal_string(m1, 53).startswith("0.86062")
    with mpmath.workprec(P + 80):
        integral = mpmath.quad(lambda t: (mpmath.digamma(1 + t) + mpmath.euler) / t, [1, 2])
        assert close(m1, integral, P - 10)


def test_m1_cross_oracle():
    m1 = pr.m1_constant(128)
    assert abs(pr.m1_log_series_extrapolated(2000, 128) - m1) < 1e-8
    sums = [pr.m1_log_series(n, 64) for n in (10, 100, 1000)]
    assert sums[0] < sums[1] < sums[2] < m1


def test_m1_skew_series_terms():
    # first terms of the defining sum, exact skew harmonic numbers
    with mpmath.workprec(128):
        partial = sum(pr.to_bigfloat(skew_harmonic(n)) * (pr.zeta(n + 1, 64) - 1) for n in range(1, 200))
        assert abs(partial - pr.m1_constant(64)) < 1e-30


def test_reciprocal_gamma_series():
    P = 128
    r = pr.reciprocal_gamma_series(30, P)
    g = pr.euler_gamma(P)
    assert r[0] == 1
    assert close(r[1], g, P - 4)
    with mpmath.workprec(P + 80):
        assert close(r[2], g**2 / 2 - mpmath.pi**2 / 12, P - 8)
        prod = r * pr.gamma_series(30, P)
        assert close(prod[0], mpmath.mpf(1), P - 8)
        assert all(abs(c) < mpmath.ldexp(1, -P + 12) for c in list(prod)[1:])
        taylor = mpmath.taylor(lambda z: mpmath.rgamma(1 + z), 0, 12)
        assert all(close(r[k], taylor[k], P - 16) for k in range(13))


def test_xz_over_gamma_coeffs():
    P = 128
    g = pr.euler_gamma(P)
    for x in (Fraction(1, 2), 1, 3):
        c = pr.xz_over_gamma_coeffs(x, 4, P)
        with mpmath.workprec(P + 80):
            assert close(c[0], mpmath.mpf(1), P - 4)
            assert close(c[1], mpmath.log(pr.to_bigfloat(x)) + g, P - 8)
    c = pr.xz_over_gamma_coeffs(1, 3, P)
    with mpmath.workprec(P + 80):
        assert close(c[2], g**2 / 2 - mpmath.pi**2 / 12, P - 8)
    with pytest.raises(ValueError):
        pr.xz_over_gamma_coeffs(0, 3)


def test_psi_taylor_series():
    P = 128
    s = pr.psi_taylor_series(60, P)
    with mpmath.workprec(P + 80):
        assert close(s[1], pr.zeta(2, P), P)
        assert close(s[2], -pr.zeta(3, P), P)
        z = mpmath.mpf("0.1")
        assert close(s.evaluate(z), pr.digamma(mpmath.mpf("1.1"), P) + pr.euler_gamma(P), P - 12)


def test_bigfloat_conversion_is_correctly_rounded():
    q = Fraction(1, 3)
    v = pr.to_bigfloat(q, 100)
    with mpmath.workprec(400):
        assert abs(v - mpmath.mpf(1) / 3) <= mpmath.ldexp(1, -164)
    assert pr.to_bigfloat(Fraction(3, 8), 10) == mpmath.mpf("0.375")


def test_compensated_sum_beats_naive():
    with mpmath.workprec(53):
        acc = pr.CompensatedSum()
        for t in [mpmath.mpf(1), mpmath.mpf("1e-20"), mpmath.mpf(-1)] * 100:
            acc.add(t)
        assert abs(acc.value - mpmath.mpf("1e-18")) < mpmath.mpf("1e-30")


def test_constant_store_upgrades():
    store = pr.ConstantStore()
    low = store.get("gamma", 64)
    high = store.get("gamma", 256)
    with mpmath.workprec(400):
        assert abs(high - mpmath.euler) < mpmath.ldexp(1, -256)
        assert abs(low - mpmath.euler) < mpmath.ldexp(1, -64)
    with pytest.raises(KeyError):
        store.get("pi")


def test_constant_store_concurrent_reads():
    store = pr.ConstantStore()
    out = []

    def worker():
        out.append(pr.decimal_string(store.get("zeta3", 128), 128))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out)) == 1


square_one = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=1, max_size=10)


@settings(max_examples=40)
@given(square_one, square_one.filter(lambda b: b[0] != 0))
def test_series_division_roundtrip(a, b):
    A, B = PowerSeries(a), PowerSeries(b)
    M = min(A.order, B.order)
    assert (A * B) / B == A.truncate(M)


@settings(max_examples=40)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=0, max_size=20))
def test_series_exp_log(tail):
    S = PowerSeries([Fraction(1)] + tail)
    assert S.log().exp() == S
