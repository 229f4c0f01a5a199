"""Exact special-number tables and the binomial/difference machinery.

Everything here is exact: integers for Stirling numbers, ``Fraction`` for
Cauchy, Gregory and harmonic numbers.  ``gregory_floats`` is the one
big-float route; it exists because exact Gregory coefficients are too
expensive past a few hundred terms.
"""

import math
import operator
import threading
from fractions import Fraction

import mpmath

from .powerseries import PowerSeries

STIRLING_KINDS = ("first-signed", "first-unsigned", "second")


class CapacityError(ValueError):
    """Requested index is beyond a table's hard cap."""


class StirlingTriangle:
    """Memoized Stirling triangle, grown on demand.

    The signed first kind s(n,k) is the canonical storage for both
    first-kind variants; ``first-unsigned`` is a sign view over it.
    """

    def __init__(self, kind="first-signed", n_max=0, cap=None):
        if kind not in STIRLING_KINDS:
            raise ValueError(f"unknown Stirling kind {kind!r}")
        self.kind = kind
        self.cap = cap
        self._rows = [(1,)]
        self._lock = threading.Lock()
        self.ensure(n_max)

    @property
    def n_max(self):
        return len(self._rows) - 1

    def ensure(self, n):
        if n <= self.n_max:
            return
        if self.cap is not None and n > self.cap:
            raise CapacityError(f"row {n} exceeds table cap {self.cap}")
        second = self.kind == "second"
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                m = len(rows) - 1
                prev = rows[m]
                row = [0] * (m + 2)
                for k in range(1, m + 2):
                    below = prev[k] if k <= m else 0
                    if second:
                        row[k] = k * below + prev[k - 1]
                    else:
                        row[k] = prev[k - 1] - m * below
                rows.append(tuple(row))

    def entry(self, n, k):
        if n < 0 or k < 0:
            raise ValueError("indices must be non-negative")
        if k > n:
            return 0
        self.ensure(n)
        v = self._rows[n][k]
        if self.kind == "first-unsigned" and (n - k) % 2:
            v = -v
        return v

    __call__ = entry

    def row(self, n):
        self.ensure(n)
        r = self._rows[n]
        if self.kind == "first-unsigned":
            return tuple(v if (n - k) % 2 == 0 else -v for k, v in enumerate(r))
        return r


_first = StirlingTriangle("first-signed")
_first_unsigned = StirlingTriangle("first-unsigned")
_second = StirlingTriangle("second")


def stirling_first(n, k):
    """Signed s(n,k): coefficient of z^k in z(z-1)...(z-n+1)."""
    return _first.entry(n, k)


def stirling_first_unsigned(n, k):
    return _first_unsigned.entry(n, k)


def stirling_second(n, k):
    return _second.entry(n, k)


def stirling_second_explicit(p, n):
    """S(p,n) = (-1)^n/n! * sum_k C(n,k) (-1)^k k^p."""
    total = sum(math.comb(n, k) * (-1) ** k * k**p for k in range(n + 1))
    q, r = divmod((-1) ** n * total, math.factorial(n))
    assert r == 0
    return q


def stirling_first_columns(n_max, k_max):
    """Columns s(., 0..k_max) for rows 0..n_max without building the full triangle.

    Returns ``cols`` with ``cols[k][n] == s(n, k)``.
    """
    cols = [[0] * (n_max + 1) for _ in range(k_max + 1)]
    cur = [1] + [0] * k_max
    cols[0][0] = 1
    for m in range(n_max):
        nxt = [0] * (k_max + 1)
        for k in range(1, k_max + 1):
            nxt[k] = cur[k - 1] - m * cur[k]
        cur = nxt
        for k in range(k_max + 1):
            cols[k][m + 1] = cur[k]
    return cols


def falling_factorial_coeffs(n):
    """Coefficients of (z)_n = z(z-1)...(z-n+1), lowest degree first."""
    poly = [1]
    for j in range(n):
        # multiply by (z - j)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= j * c
        poly = nxt
    return poly


class CauchyTable:
    """c_n = sum_k s(n,k)/(k+1) and Gregory coefficients G_n = c_n/n!."""

    def __init__(self, n_max=0, triangle=None, cap=None):
        self.cap = cap
        self._triangle = triangle or _first
        self.values = []
        self.gregory = []
        self._lock = threading.Lock()
        self.ensure(n_max)

    @property
    def n_max(self):
        return len(self.values) - 1

    def ensure(self, n):
        if n <= self.n_max:
            return
        if self.cap is not None and n > self.cap:
            raise CapacityError(f"index {n} exceeds table cap {self.cap}")
        self._triangle.ensure(n)
        with self._lock:
            while len(self.values) <= n:
                m = len(self.values)
                row = self._triangle.row(m)
                den = math.lcm(*range(1, m + 2))
                num = sum(s * (den // (k + 1)) for k, s in enumerate(row))
                c = Fraction(num, den)
                self.gregory.append(c / math.factorial(m))
                self.values.append(c)

    def cauchy(self, n):
        self.ensure(n)
        return self.values[n]

    def gregory_coefficient(self, n):
        self.ensure(n)
        return self.gregory[n]


_cauchy = CauchyTable()


def cauchy_number(n):
    if n < 0:
        raise ValueError("n must be >= 0")
    return _cauchy.cauchy(n)


def gregory_coefficient(n):
    if n < 0:
        raise ValueError("n must be >= 0")
    return _cauchy.gregory_coefficient(n)


def cauchy_via_series(n_max):
    """G_0..G_{n_max} by exact long division of z by ln(1+z)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    order = n_max + 1
    quotient = PowerSeries.variable(order) / PowerSeries.log1p(order)
    return list(quotient.coeffs)


class HarmonicTable:
    """Exact H_n, H_n^(p) and skew H_n^- prefix sums."""

    def __init__(self, n_max=0):
        self.h = [Fraction(0)]
        self.h_p = {}
        self.h_skew = [Fraction(0)]
        self._lock = threading.Lock()
        self.ensure(n_max)

    @property
    def n_max(self):
        return len(self.h) - 1

    def ensure(self, n):
        with self._lock:
            h, sk = self.h, self.h_skew
            for m in range(len(h), n + 1):
                h.append(h[-1] + Fraction(1, m))
                sk.append(sk[-1] + Fraction((-1) ** (m - 1), m))

    def ensure_p(self, n, p):
        with self._lock:
            seq = self.h_p.setdefault(p, [Fraction(0)])
            for m in range(len(seq), n + 1):
                seq.append(seq[-1] + Fraction(1, m**p))
            return seq


_harmonic = HarmonicTable()


def harmonic(n):
    if n < 0:
        raise ValueError("n must be >= 0")
    _harmonic.ensure(n)
    return _harmonic.h[n]


def harmonic_p(n, p):
    if n < 0 or p < 1:
        raise ValueError("need n >= 0 and p >= 1")
    if p == 1:
        return harmonic(n)
    return _harmonic.ensure_p(n, p)[n]


def skew_harmonic(n):
    if n < 0:
        raise ValueError("n must be >= 0")
    _harmonic.ensure(n)
    return _harmonic.h_skew[n]


def binomial_transform(a):
    """b_n = sum_{k<=n} C(n,k) (-1)^k a_k, using Pascal rows (no factorials)."""
    a = list(a)
    if not a:
        raise ValueError("binomial transform of an empty sequence")
    out = []
    row = [1]
    for n in range(len(a)):
        if n:
            row = [1] + [row[i] + row[i + 1] for i in range(n - 1)] + [1]
        acc = a[0] * 0
        for k, c in enumerate(row):
            acc = acc + c * a[k] if k % 2 == 0 else acc - c * a[k]
        out.append(acc)
    return out


def difference_table(samples):
    """Full forward-difference triangle; ``table[n][i] == Delta^n f(i)``."""
    rows = [list(samples)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    return rows


def forward_differences(samples):
    """Leading diagonal Delta^n f(0) for n = 0..N.

    Rational input is scaled to integers by the common denominator first, so
    the O(N^2) inner loop never touches a gcd.
    """
    samples = list(samples)
    if all(isinstance(s, (int, Fraction)) for s in samples):
        den = math.lcm(*(Fraction(s).denominator for s in samples))
        work = [int(Fraction(s) * den) for s in samples]
        out = _leading_diagonal(work)
        return [Fraction(v, den) for v in out]
    return _leading_diagonal(samples)


def _leading_diagonal(work):
    out = []
    n = len(work)
    for level in range(n):
        out.append(work[0])
        for i in range(n - level - 1):
            work[i] = work[i + 1] - work[i]
    return out


class _GregoryFixedPoint:
    # G_n = -sum_{k<n} G_k (-1)^(n-k)/(n-k+1), in integers scaled by 2^bits.
    # Perturbations propagate through the same convolution and decay with G,
    # so the recurrence is stable.

    def __init__(self, bits):
        self.bits = bits
        self.one = 1 << bits
        self.values = [self.one]
        self._weights_rev = []
        self._lock = threading.Lock()

    def ensure(self, n_max):
        if n_max < len(self.values):
            return
        with self._lock:
            one, bits = self.one, self.bits
            cap = max(n_max, 2 * len(self.values))
            if len(self._weights_rev) < cap:
                w = [(-1) ** j * ((2 * one + j + 1) // (2 * (j + 1))) for j in range(1, cap + 1)]
                self._weights_rev = w[::-1]
            rev = self._weights_rev
            top = len(rev)
            g = self.values
            half = 1 << (bits - 1)
            for n in range(len(g), n_max + 1):
                s = sum(map(operator.mul, g, rev[top - n:]))
                g.append(-((s + half) >> bits))


_gregory_fixed = {}
_gregory_lock = threading.Lock()


def gregory_floats(n_max, prec):
    """G_0..G_{n_max} as mpf values, absolute accuracy about 2^-prec."""
    bits = prec + 16
    with _gregory_lock:
        table = _gregory_fixed.get(bits)
        if table is None:
            table = _gregory_fixed[bits] = _GregoryFixedPoint(bits)
    table.ensure(n_max)
    with mpmath.workprec(bits):
        return [mpmath.mpf((v, -bits)) for v in table.values[: n_max + 1]]
