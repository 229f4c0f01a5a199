"""Newton-series machines over the nodes 0, 1, ..., N.

* ``newton_quadrature``: integral over [0,1] as sum_n (c_n/n!) Delta^n f(0).
* ``newton_derivative``: Taylor coefficient f^(m)(0)/m! as
  sum_{n>=m} (s(n,m)/n!) Delta^n f(0).
* ``newton_interpolate``: the interpolation series itself.

All three are truncated at the available samples; no extrapolation.
Rational samples give exact ``Fraction`` results.
"""

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .numkernel import (
    forward_differences,
    gregory_coefficient,
    gregory_floats,
    stirling_first_columns,
)
from .precision import DEFAULT_PREC, GUARD_BITS, CompensatedSum, to_bigfloat, workprec


def _is_exact(v):
    return isinstance(v, (int, Fraction))


@dataclass
class SampledFunction:
    """Values f(0), ..., f(N) at the integer nodes.

    ``degree`` may be set when f is known to be a polynomial; it only feeds
    the ``exact`` flag of quadrature results.  Float samples should carry
    about N extra bits: forming Delta^n cancels up to 2^n in magnitude.
    """

    samples: list
    label: str = ""
    degree: int | None = None
    _diffs: list | None = field(default=None, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.samples = list(self.samples)
        if not self.samples:
            raise ValueError("need at least f(0)")
        kinds = {_is_exact(v) for v in self.samples}
        if len(kinds) != 1:
            raise ValueError("samples must be all rational or all floating")
        self.samples = [Fraction(v) if isinstance(v, int) else v for v in self.samples]

    @classmethod
    def from_callable(cls, fn, N, label="", prec=DEFAULT_PREC, degree=None):
        """Sample fn at 0..N.  fn runs under a working precision widened by N bits."""
        with mpmath.workprec(prec + GUARD_BITS + N):
            samples = [fn(k) for k in range(N + 1)]
        return cls(samples, label=label, degree=degree)

    @property
    def N(self):
        return len(self.samples) - 1

    @property
    def exact(self):
        return _is_exact(self.samples[0])

    @property
    def differences(self):
        """Delta^n f(0), n = 0..N, computed once."""
        if self._diffs is None:
            with self._lock:
                if self._diffs is None:
                    if self.exact:
                        self._diffs = forward_differences(self.samples)
                    else:
                        widest = max(v._mpf_[3] for v in self.samples)
                        bits = max(mpmath.mp.prec, widest) + self.N + GUARD_BITS
                        with mpmath.workprec(bits):
                            self._diffs = forward_differences(self.samples)
        return self._diffs


@dataclass(frozen=True)
class QuadratureResult:
    value: object
    terms_used: int
    last_term: object
    exact: bool


def newton_quadrature(f, prec=DEFAULT_PREC):
    """Truncated Gregory-Newton quadrature of f over [0,1]."""
    diffs = f.differences
    N = f.N
    if f.exact:
        terms = [gregory_coefficient(n) * d for n, d in enumerate(diffs)]
        value = sum(terms, Fraction(0))
        exact = f.degree is not None and f.degree <= N
        return QuadratureResult(value, N + 1, abs(terms[-1]), exact)
    with workprec(prec):
        greg = gregory_floats(N, prec + GUARD_BITS)
        acc = CompensatedSum()
        term = mpf(0)
        for n in range(N + 1):
            term = greg[n] * diffs[n]
            acc.add(term)
        return QuadratureResult(acc.value, N + 1, abs(term), False)


def newton_derivative(f, m, prec=DEFAULT_PREC):
    """f^(m)(0)/m! from the samples, summed from n = m upward."""
    N = f.N
    if m < 0 or m > N:
        raise ValueError(f"derivative order {m} outside 0..{N}")
    col = stirling_first_columns(N, m)[m]
    diffs = f.differences
    if f.exact:
        # common denominator N! * D keeps the accumulation in integers
        den = math.lcm(*(d.denominator for d in diffs[m:]))
        total = 0
        for n in range(m, N + 1):
            d = diffs[n]
            total += col[n] * (math.factorial(N) // math.factorial(n)) * (d.numerator * (den // d.denominator))
        return Fraction(total, math.factorial(N) * den)
    with workprec(prec):
        acc = CompensatedSum()
        inv_fact = mpf(1) / math.factorial(m)
        for n in range(m, N + 1):
            if n > m:
                inv_fact /= n
            acc.add(col[n] * inv_fact * diffs[n])
        return acc.value


def newton_interpolate(f, z, n_terms=None, prec=DEFAULT_PREC):
    """Partial Newton series sum_{n<n_terms} Delta^n f(0)/n! (z)_n."""
    if n_terms is None:
        n_terms = f.N + 1
    if not 1 <= n_terms <= f.N + 1:
        raise ValueError(f"n_terms must be in 1..{f.N + 1}")
    diffs = f.differences
    if f.exact and isinstance(z, (int, Fraction)):
        acc = Fraction(0)
        basis = Fraction(1)
        for n in range(n_terms):
            if n:
                basis = basis * (z - n + 1) / n
            acc += diffs[n] * basis
        return acc
    with workprec(prec):
        zf = to_bigfloat(z) if not hasattr(z, "_mpf_") else z
        acc = CompensatedSum()
        basis = mpf(1)
        for n in range(n_terms):
            if n:
                basis = basis * (zf - n + 1) / n
            d = diffs[n]
            acc.add((to_bigfloat(d) if isinstance(d, Fraction) else d) * basis)
        return acc.value
