"""Big-float ground truth: zeta values, Euler's constant, polygamma, M1,
and the Taylor series used on the analytic side of the identities.

Precision convention: every public function takes ``prec`` as the number of
bits the caller wants.  Work happens at ``prec + GUARD_BITS`` and the
returned mpf keeps that working precision, so it can feed further
pipelines without losing the guard.  Round only when reporting.
"""

import math
import threading
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import libmp, mpf

from .powerseries import PowerSeries

GUARD_BITS = 64
DEFAULT_PREC = 128
POLYGAMMA_MIN_SHIFT = 16


@contextmanager
def workprec(prec):
    """Run at ``prec`` user bits plus the guard."""
    with mpmath.workprec(prec + GUARD_BITS):
        yield


def to_bigfloat(x, prec=None):
    """Convert int/Fraction/float/str/mpf to mpf, correctly rounded."""
    bits = (prec + GUARD_BITS) if prec is not None else mpmath.mp.prec
    # mpf() rounds to the ambient context, so build it inside ``bits``
    with mpmath.workprec(bits):
        if isinstance(x, Fraction):
            return mpf(libmp.from_rational(x.numerator, x.denominator, bits, libmp.round_nearest))
        if isinstance(x, int):
            return mpf(libmp.from_int(x, bits, libmp.round_nearest))
        return mpf(x)


def decimal_string(x, prec):
    """Decimal rendering of x rounded to ``prec`` bits worth of digits."""
    digits = max(1, int(prec * math.log10(2)))
    return mpmath.nstr(x, digits, strip_zeros=False)


class CompensatedSum:
    """Neumaier summation of mpf (or float) terms at the ambient precision."""

    __slots__ = ("s", "c")

    def __init__(self, start=0):
        self.s = mpf(start)
        self.c = mpf(0)

    def add(self, x):
        s = self.s
        t = s + x
        if abs(s) >= abs(x):
            self.c += (s - t) + x
        else:
            self.c += (x - t) + s
        self.s = t

    @property
    def value(self):
        return self.s + self.c


# -- Bernoulli numbers (private: Euler-Maclaurin needs them) -----------------

_bernoulli = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _bernoulli_number(n):
    # sum_{k<=m} C(m+1,k) B_k = 0
    with _bernoulli_lock:
        for m in range(len(_bernoulli), n + 1):
            acc = sum(math.comb(m + 1, k) * _bernoulli[k] for k in range(m))
            _bernoulli.append(-acc / (m + 1))
    return _bernoulli[n]


def _em_terms(prec):
    n_terms = int(0.35 * prec) + 20
    corrections = 2 * -(-prec // 16)
    return n_terms, corrections


# -- zeta and gamma -----------------------------------------------------------


def zeta(s, prec=DEFAULT_PREC):
    """Riemann zeta at integer s >= 2 by Euler-Maclaurin on the partial sum."""
    if int(s) != s or s < 2:
        raise ValueError("zeta needs an integer s >= 2")
    s = int(s)
    n_terms, corrections = _em_terms(prec)
    with workprec(prec):
        N = mpf(n_terms)
        acc = mpmath.fsum(mpf(k) ** -s for k in range(1, n_terms))
        tail = N ** (1 - s) / (s - 1) + N**-s / 2
        # B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
        rising = mpf(s)
        power = N ** (-s - 1)
        inv_n2 = 1 / (N * N)
        for j in range(1, corrections + 1):
            b = _bernoulli_number(2 * j)
            tail += to_bigfloat(b / math.factorial(2 * j)) * rising * power
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power *= inv_n2
        return +(acc + tail)


def euler_gamma(prec=DEFAULT_PREC):
    """gamma = H_N - ln N - 1/(2N) + sum_j B_2j/(2j N^2j)."""
    n_terms, corrections = _em_terms(prec)
    with workprec(prec):
        N = mpf(n_terms)
        h = mpmath.fsum(1 / mpf(k) for k in range(1, n_terms + 1))
        value = h - mpmath.log(N) - 1 / (2 * N)
        inv_n2 = 1 / (N * N)
        power = inv_n2
        for j in range(1, corrections + 1):
            b = _bernoulli_number(2 * j)
            value += to_bigfloat(b / (2 * j)) * power
            power *= inv_n2
        return +value


# -- polygamma ---------------------------------------------------------------


def _shift_cutoff(bits):
    # The asymptotic series is good to about exp(-2*pi*x) at its best.
    return max(POLYGAMMA_MIN_SHIFT, math.ceil(bits * math.log(2) / (2 * math.pi)) + 1)


def polygamma(order, x, prec=DEFAULT_PREC):
    """psi^(order)(x) for real x > 0 and order in {0, 1, 2, ...}.

    Shifts x up with psi^(m)(x) = psi^(m)(x+1) - (-1)^m m!/x^(m+1), then
    uses the asymptotic expansion.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    bits = prec + GUARD_BITS
    with workprec(prec):
        x = to_bigfloat(x) if not isinstance(x, mpf) else +x
        if x <= 0:
            raise ValueError("polygamma is only implemented for x > 0")
        m = order
        cutoff = _shift_cutoff(bits)
        shift = mpf(0)
        sign = -1 if m % 2 else 1
        mfact = math.factorial(m)
        while x < cutoff:
            shift -= sign * mfact / x ** (m + 1)
            x += 1
        inv = 1 / x
        inv2 = inv * inv
        if m == 0:
            value = mpmath.log(x) - inv / 2
            power = inv2
            j = 1
            while True:
                term = to_bigfloat(_bernoulli_number(2 * j) / (2 * j)) * power
                value -= term
                if abs(term) < mpmath.eps * abs(value) or j > 4 * bits:
                    break
                power *= inv2
                j += 1
        else:
            # (-1)^(m+1) [ (m-1)!/x^m + m!/(2x^(m+1)) + sum B_2j (2j+m-1)!/((2j)! x^(2j+m)) ]
            value = math.factorial(m - 1) * inv**m + mfact * inv ** (m + 1) / 2
            power = inv ** (m + 2)
            j = 1
            while True:
                coef = _bernoulli_number(2 * j) * Fraction(
                    math.factorial(2 * j + m - 1), math.factorial(2 * j)
                )
                term = to_bigfloat(coef) * power
                value += term
                if abs(term) < mpmath.eps * abs(value) or j > 4 * bits:
                    break
                power *= inv2
                j += 1
            if m % 2 == 0:
                value = -value
        return value + shift


def digamma(x, prec=DEFAULT_PREC):
    return polygamma(0, x, prec)


def trigamma(x, prec=DEFAULT_PREC):
    return polygamma(1, x, prec)


def tetragamma(x, prec=DEFAULT_PREC):
    return polygamma(2, x, prec)


def harmonic_extended(p, prec=DEFAULT_PREC):
    """H_p = psi(p+1) + gamma for real p > -1."""
    with workprec(prec):
        return digamma(to_bigfloat(p) + 1, prec) + euler_gamma(prec)


# -- M1 ----------------------------------------------------------------------


def m1_constant(prec=DEFAULT_PREC):
    """M1 = sum_{n>=1} H^-_n (zeta(n+1) - 1); terms shrink like 2^-n."""
    bits = prec + GUARD_BITS
    with workprec(prec):
        total = CompensatedSum()
        skew = mpf(0)
        n = 1
        while True:
            skew += mpf((-1) ** (n - 1)) / n
            term = skew * (zeta(n + 1, prec) - 1)
            total.add(term)
            if n > 8 and abs(term) < mpmath.ldexp(1, -bits - 4):
                break
            n += 1
        return total.value


def m1_log_series(N, prec=DEFAULT_PREC):
    """Partial sum of sum_{n=1}^N (1/n) ln(1 + 1/(n+1)); increases toward M1."""
    with workprec(prec):
        total = CompensatedSum()
        for n in range(1, N + 1):
            total.add(mpmath.log1p(mpf(1) / (n + 1)) / n)
        return total.value


def m1_log_series_extrapolated(N, prec=DEFAULT_PREC):
    """Richardson extrapolation of the log series over N, 2N, 4N, 8N.

    The remainder has an expansion in powers of 1/N, so repeated
    elimination of the leading power converges quickly.
    """
    with workprec(prec):
        sums = [m1_log_series(N * 2**i, prec) for i in range(4)]
        level = 1
        while len(sums) > 1:
            f = mpf(2) ** level
            sums = [(f * sums[i + 1] - sums[i]) / (f - 1) for i in range(len(sums) - 1)]
            level += 1
        return sums[0]


# -- Taylor series ---------------------------------------------------------


def log_gamma_series(M, prec=DEFAULT_PREC):
    """ln Gamma(1+z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k."""
    with workprec(prec):
        cs = [mpf(0)]
        if M >= 1:
            cs.append(-euler_gamma(prec))
        for k in range(2, M + 1):
            cs.append((-1) ** k * zeta(k, prec) / k)
        return PowerSeries(cs, M)


def reciprocal_gamma_series(M, prec=DEFAULT_PREC):
    """Taylor coefficients of 1/Gamma(1+z) through z^M."""
    if M < 0:
        raise ValueError("order must be >= 0")
    with workprec(prec):
        return (-log_gamma_series(M, prec)).exp()


def gamma_series(M, prec=DEFAULT_PREC):
    """Taylor coefficients of Gamma(1+z) through z^M."""
    with workprec(prec):
        return log_gamma_series(M, prec).exp()


def xz_over_gamma_coeffs(x, M, prec=DEFAULT_PREC):
    """Coefficients f^(m)(0)/m! of f(z) = x^z / Gamma(z+1)."""
    with workprec(prec):
        x = to_bigfloat(x) if not isinstance(x, mpf) else x
        if x <= 0:
            raise ValueError("x must be positive")
        lx = mpmath.log(x)
        cs = [mpf(0)] + [lx] + [mpf(0)] * (M - 1)
        power = PowerSeries(cs[: M + 1], M).exp()
        return power * reciprocal_gamma_series(M, prec)


def psi_taylor_series(M, prec=DEFAULT_PREC):
    """psi(z+1) + gamma = sum_{k>=1} (-1)^(k-1) zeta(k+1) z^k."""
    if M < 1:
        raise ValueError("order must be >= 1")
    with workprec(prec):
        cs = [mpf(0)] + [(-1) ** (k - 1) * zeta(k + 1, prec) for k in range(1, M + 1)]
        return PowerSeries(cs, M)


# -- constant store ----------------------------------------------------------


def _ln2(prec):
    with workprec(prec):
        return +mpmath.ln2


def _zeta2_closed(prec):
    with workprec(prec):
        return mpmath.pi**2 / 6


class ConstantStore:
    """Cache of named constants; recomputes when asked for more bits."""

    def __init__(self):
        self._values = {}
        self._lock = threading.Lock()

    @staticmethod
    def names():
        return ["gamma", "ln2", "pi2_6", "m1"] + [f"zeta{s}" for s in range(2, 13)]

    def _compute(self, name, prec):
        if name == "gamma":
            return euler_gamma(prec)
        if name == "ln2":
            return _ln2(prec)
        if name == "pi2_6":
            return _zeta2_closed(prec)
        if name == "m1":
            return m1_constant(prec)
        if name.startswith("zeta") and name[4:].isdigit() and int(name[4:]) >= 2:
            return zeta(int(name[4:]), prec)
        raise KeyError(name)

    def get(self, name, prec=DEFAULT_PREC):
        hit = self._values.get(name)
        if hit is not None and hit[0] >= prec:
            return hit[1]
        value = self._compute(name, prec)
        with self._lock:
            old = self._values.get(name)
            if old is None or old[0] < prec:
                self._values[name] = (prec, value)
        return value


constants = ConstantStore()
