"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line (visible even under captured
output) and then asserts.  Tolerances are the stated ones; nothing here is
loosened to make a criterion go green.
"""

import json
import math
from fractions import Fraction

import mpmath
import pytest

from greglab import numkernel as nk
from greglab.cli import main
from greglab.identities import (
    FINITE_IDENTITIES,
    evaluate_series,
    get_identity,
    laguerre_binomial_sum,
    laguerre_stream,
    partial_sums,
    tail_estimate,
    verify_finite,
)
from greglab.newtonquad import SampledFunction, newton_quadrature
from greglab.precision import m1_constant, trigamma, workprec, xz_over_gamma_coeffs, zeta

PREC = 128
BIG = 10**5
MID = 10**4


@pytest.fixture
def announce(capsys):
    def emit(num, title, failures):
        ok = not failures
        line = f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}: {title}"
        if failures:
            line += "  <- " + "; ".join(failures)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def test_c01_cauchy_cross_oracle(announce):
    series = nk.cauchy_via_series(60)
    bad = [f"n={n}" for n in range(61) if series[n] * math.factorial(n) != nk.cauchy_number(n)]
    announce(1, "c_n = n! [z^n] z/ln(1+z) for n <= 60, exact", bad)


def test_c02_inversion_pair(announce):
    bad = []
    for p in range(31):
        if sum(nk.cauchy_number(n) * nk.stirling_second(p, n) for n in range(p + 1)) != Fraction(1, p + 1):
            bad.append(f"p={p}")
    for n in range(31):
        if sum(Fraction(nk.stirling_first(n, p), p + 1) for p in range(n + 1)) != nk.cauchy_number(n):
            bad.append(f"n={n}")
    announce(2, "1/(p+1) = sum c_n S(p,n) and c_n = sum s(n,p)/(p+1), p,n <= 30, exact", bad)


def test_c03_quadrature_exactness(announce):
    bad = []
    for p in range(26):
        res = newton_quadrature(SampledFunction([Fraction(k) ** p for k in range(p + 1)], degree=p))
        if res.value != Fraction(1, p + 1):
            bad.append(f"p={p}: {res.value}")
    announce(3, "Newton quadrature of k^p with N=p is 1/(p+1) exactly, p <= 25", bad)


def test_c04_finite_suite(announce):
    ids = [i for i in FINITE_IDENTITIES if not FINITE_IDENTITIES[i].erratum]
    bad = []
    if len(ids) != 11:
        bad.append(f"{len(ids)} registered, expected 11")
    for i in ids:
        rep = verify_finite(i, n_max=100)
        if rep.verdict != "pass":
            bad.append(f"{i}: {rep.counterexample}")
    if "binom-ex9" not in ids:
        bad.append("corrected binom-ex9 missing")
    announce(4, "all 11 finite binomial identities exact for n <= 100 (m <= 8)", bad)


def _abs_err(ident, N, params=None, shift=0):
    rep = evaluate_series(ident, N, PREC, params=params)
    return rep, abs(rep.partial + shift - rep.reference)


def test_c05_euler_gamma(announce):
    rep, err = _abs_err("eq10", MID)
    with workprec(PREC):
        err_indep = abs(rep.partial - mpmath.euler)
    bad = [] if err < 1e-5 and err_indep < 1e-5 else [f"error {mpmath.nstr(err, 4)}"]
    announce(5, f"gamma series, N=10^4, |err| = {mpmath.nstr(err, 3)} < 1e-5", bad)


def test_c06_logarithms(announce):
    _, e1 = _abs_err("eq06-ln2", MID)
    rep, e2 = _abs_err("eq06", MID, {"x": Fraction(1, 2)})
    with workprec(PREC):
        e2_indep = abs(rep.partial - mpmath.log(mpmath.mpf(3) / 2))
    bad = []
    if not e1 < 1e-5:
        bad.append(f"ln 2 error {mpmath.nstr(e1, 4)}")
    if not (e2 < 1e-5 and e2_indep < 1e-5):
        bad.append(f"ln(3/2) error {mpmath.nstr(e2, 4)}")
    announce(6, f"ln 2 and ln(3/2) at N=10^4 within 1e-5 ({mpmath.nstr(e1, 3)}, {mpmath.nstr(e2, 3)})", bad)


def test_c07_cauchy_harmonic_series(announce):
    _, e9 = _abs_err("eq09", MID)
    _, e11 = _abs_err("eq11", MID)
    rep13 = evaluate_series("eq13", MID, PREC)
    with workprec(PREC):
        e13 = abs(rep13.partial + mpmath.mpf(1) / 2 - m1_constant(PREC))
    bad = []
    if not e9 < 1e-3:
        bad.append(f"2zeta(3)-1 error {mpmath.nstr(e9, 4)}")
    if not e11 < 1e-4:
        bad.append(f"zeta(2)-1 error {mpmath.nstr(e11, 4)}")
    if not e13 < 1e-4:
        bad.append(f"M1 error {mpmath.nstr(e13, 4)}")
    announce(7, f"N=10^4: 2zeta(3)-1 {mpmath.nstr(e9, 3)}, zeta(2)-1 {mpmath.nstr(e11, 3)}, "
                f"M1 {mpmath.nstr(e13, 3)}", bad)


def test_c08_stirling_zeta(announce):
    bad = []
    for k in range(1, 5):
        d = get_identity("ex06", k=k)
        prev = None
        monotone = True
        with workprec(PREC):
            for _, s in partial_sums(d, BIG, PREC):
                if prev is not None and not s > prev:
                    monotone = False
                prev = s
            err = abs(prev - zeta(k + 1, PREC))
            tail = tail_estimate(d, BIG)
            if not monotone or prev <= 0:
                bad.append(f"k={k} partial sums not increasing/positive")
            if not err <= 10 * tail:
                bad.append(f"k={k} error {mpmath.nstr(err, 4)} > 10 tail {mpmath.nstr(10 * tail, 4)}")
            if k == 1:
                prefix = zeta(2, PREC) - trigamma(BIG + 1, PREC)  # = sum_{n<=N} 1/n^2
                if abs(prev - prefix) > mpmath.ldexp(1, -PREC + 8):
                    bad.append("k=1 partial sum differs from sum 1/n^2")
    for n in range(1, 201):
        if get_identity("ex06", k=1).term(n) != Fraction(1, n * n):
            bad.append(f"k=1 term {n} is not 1/n^2")
            break
    announce(8, "zeta(k+1) Stirling series k=1..4, N=10^5, increasing and within 10x tail", bad)


def _within_tail(ident, params, N=BIG):
    rep = evaluate_series(ident, N, PREC, params=params)
    # terminating series (k=0) have a zero tail; allow rounding only
    ok = rep.abs_error <= max(10 * rep.tail_estimate, mpmath.ldexp(1, 8 - PREC))
    return ok, rep


def test_c09_stirling_family(announce):
    bad = []
    for ident in ("eq17", "eq18"):
        ok, rep = _within_tail(ident, {"k": 1})
        if not ok:
            bad.append(f"{ident} k=1 error {mpmath.nstr(rep.abs_error, 4)}")
    with workprec(PREC):
        if abs(get_identity("eq17", k=1).reference() - zeta(3, PREC)) > 1e-30:
            bad.append("eq17 k=1 limit is not zeta(3)")
        if abs(get_identity("eq18", k=1).reference() - mpmath.pi**4 / 90) > 1e-30:
            bad.append("eq18 k=1 limit is not pi^4/90")
    first = next(partial_sums("eq20", 1, PREC, {"k": 0}))
    if first != (0, 1) or evaluate_series("eq20", 1, PREC, params={"k": 0}).partial != 1:
        bad.append(f"eq20 k=0 first partial {first}")
    for m in (1, 2, 3):
        for k in (0, 1, 2):
            ok, rep = _within_tail("eq21", {"k": k, "m": m})
            if not ok:
                bad.append(f"eq21 k={k} m={m} error {mpmath.nstr(rep.abs_error, 4)}")
    for k, m in ((0, 1), (1, 2)):
        ok, rep = _within_tail("eq22", {"k": k, "m": m})
        if not ok:
            bad.append(f"eq22 k={k} m={m} error {mpmath.nstr(rep.abs_error, 4)}")
    # eq23, k=1: every partial sum equals H^(2)_N - 1 + 1/(N+1)
    with workprec(PREC):
        h2 = mpmath.mpf(0)
        for N, s in partial_sums("eq23", MID, PREC, {"k": 1}):
            h2 += mpmath.mpf(1) / (N * N)
            if abs(s - (h2 - 1 + mpmath.mpf(1) / (N + 1))) > mpmath.ldexp(1, -PREC + 8):
                bad.append(f"eq23 partial sum {N} off the telescoped prefix")
                break
    for k in (0, 1, 2):
        rep = evaluate_series("eq24", MID, PREC, params={"k": k})
        if not rep.rel_error < 5e-2:
            bad.append(f"eq24 k={k} rel error {mpmath.nstr(rep.rel_error, 4)} >= 5e-2")
    announce(9, "Stirling family: eq17/18/20/21/22/23 and eq24 relative error < 5e-2 at N=10^4", bad)


def test_c10_laguerre(announce):
    bad = []
    for x in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)):
        stream = laguerre_stream(x)
        for n in range(31):
            if next(stream) != laguerre_binomial_sum(n, x):
                bad.append(f"L_{n}({x}) recurrence mismatch")
                break
    for x in (Fraction(1, 2), Fraction(1), Fraction(2)):
        rep = evaluate_series("eq26", BIG, PREC, params={"x": x})
        if not rep.abs_error < 1e-2:
            bad.append(f"eq26 x={x} error {mpmath.nstr(rep.abs_error, 4)}")
    rep = evaluate_series("eq27", BIG, PREC, params={"x": Fraction(1)})
    if not rep.abs_error < 2e-2:
        bad.append(f"eq27 error {mpmath.nstr(rep.abs_error, 4)}")
    rep = evaluate_series("eq28", BIG, PREC, params={"x": Fraction(1)})
    with workprec(PREC):
        coeff3 = xz_over_gamma_coeffs(1, 3, PREC)[3]
        if not abs(rep.partial - coeff3) < 5e-2:
            bad.append(f"eq28 error {mpmath.nstr(abs(rep.partial - coeff3), 4)}")
    announce(10, "Laguerre: recurrence = binomial sum; smoothed eq26/27/28 at N=10^5 within bounds", bad)


def test_c11_errata_regression(announce):
    rep = evaluate_series("eq22-printed", MID, PREC, params={"k": 0, "m": 1})
    with workprec(PREC):
        ratio = rep.reference / rep.partial
    bad = []
    if rep.verdict != "fail":
        bad.append(f"printed form verdict {rep.verdict}")
    if not abs(ratio - 2) <= 1e-6:
        bad.append(f"ratio {mpmath.nstr(ratio, 10)}")
    announce(11, f"printed eq22 at (0,1) fails with LHS/RHS = {mpmath.nstr(ratio, 8)}", bad)


def test_c12_determinism(announce, capsys):
    outputs = []
    codes = []
    for _ in range(2):
        codes.append(main(["verify", "--kind", "series", "--format", "json"]))
        outputs.append(capsys.readouterr().out)
    bad = []
    if outputs[0] != outputs[1]:
        bad.append("JSON differs between runs")
    try:
        json.loads(outputs[0])
    except ValueError:
        bad.append("output is not JSON")
    announce(12, f"verify --kind series twice gives byte-identical JSON ({len(outputs[0])} bytes)", bad)
