"""Truncated power series with exact (Fraction) or mpf coefficients.

A ``PowerSeries`` of order M holds the coefficients of z^0 .. z^M; everything
beyond z^M is unknown, so binary operations truncate to the smaller order.
"""

from fractions import Fraction
from numbers import Number


def _zero_like(c):
    return c * 0


class PowerSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("power series needs at least one coefficient")
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            zero = _zero_like(coeffs[0])
            coeffs = (coeffs + [zero] * (order + 1 - len(coeffs)))[: order + 1]
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c, order):
        return cls([c], order)

    @classmethod
    def variable(cls, order, one=Fraction(1)):
        """The series z (exact by default)."""
        return cls([one * 0, one], order)

    @classmethod
    def log1p(cls, order, one=Fraction(1)):
        """ln(1+z) = z - z^2/2 + z^3/3 - ..."""
        cs = [one * 0] + [one * (-1) ** (j + 1) / j for j in range(1, order + 1)]
        return cls(cs, order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)!r})"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def truncate(self, order):
        return PowerSeries(self.coeffs[: order + 1], order)

    def valuation(self):
        """Index of the first nonzero coefficient (order+1 for the zero series)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return len(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, Number) or hasattr(other, "_mpf_"):
            return PowerSeries.constant(other, self.order)
        return NotImplemented

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(m + 1)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            if isinstance(other, Number) or hasattr(other, "_mpf_"):
                return self.scale(other)
            return NotImplemented
        m = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(m + 1):
            acc = a[0] * b[n]
            for k in range(1, n + 1):
                acc += a[k] * b[n - k]
            out.append(acc)
        return PowerSeries(out)

    __rmul__ = __mul__

    def scale(self, c):
        return PowerSeries([c * x for x in self.coeffs])

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            if isinstance(other, Number) or hasattr(other, "_mpf_"):
                return PowerSeries([x / other for x in self.coeffs])
            return NotImplemented
        return self.divide(other)

    def divide(self, other):
        """Long division self/other.

        A common factor z^v is cancelled first, which is what makes
        ``z / ln(1+z)`` well defined; the quotient order drops by v.
        """
        v = other.valuation()
        if v > other.order:
            raise ZeroDivisionError("division by the zero series")
        for i in range(min(v, len(self.coeffs))):
            if self.coeffs[i] != 0:
                raise ValueError("divisor has higher valuation than dividend")
        num = self.coeffs[v:]
        den = other.coeffs[v:]
        m = min(len(num), len(den)) - 1
        if m < 0:
            raise ValueError("nothing left after cancelling common powers of z")
        d0 = den[0]
        q = []
        for n in range(m + 1):
            acc = num[n]
            for k in range(1, n + 1):
                acc -= den[k] * q[n - k]
            q.append(acc / d0)
        return PowerSeries(q)

    def reciprocal(self):
        return PowerSeries.constant(self.coeffs[0] * 0 + 1, self.order).divide(self)

    # -- calculus ----------------------------------------------------------

    def derivative(self):
        """d/dz; the result has order M-1 (order 0 for a constant)."""
        cs = [k * self.coeffs[k] for k in range(1, len(self.coeffs))]
        return PowerSeries(cs or [_zero_like(self.coeffs[0])])

    def integral(self, constant=0):
        cs = [self.coeffs[0] * 0 + constant]
        cs += [c / (k + 1) for k, c in enumerate(self.coeffs)]
        return PowerSeries(cs)

    def exp(self):
        """exp of a series with zero constant term, via n*e_n = sum k*a_k*e_(n-k)."""
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp requires a zero constant term")
        e = [_zero_like(a[0]) + 1]
        for n in range(1, len(a)):
            acc = a[1] * e[n - 1]
            for k in range(2, n + 1):
                acc += k * a[k] * e[n - k]
            e.append(acc / n)
        return PowerSeries(e)

    def log(self):
        """log of a series with constant term 1."""
        f = self.coeffs
        if f[0] != 1:
            raise ValueError("log requires constant term 1")
        g = [_zero_like(f[0])]
        for n in range(1, len(f)):
            acc = n * f[n]
            for k in range(1, n):
                acc -= k * g[k] * f[n - k]
            g.append(acc / n)
        return PowerSeries(g)

    def evaluate(self, z):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc
