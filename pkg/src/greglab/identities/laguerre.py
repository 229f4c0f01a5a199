import math
from fractions import Fraction

from mpmath import mpf

from ..precision import DEFAULT_PREC, to_bigfloat, workprec


def laguerre_stream(x):
    """Yield L_0(x), L_1(x), ... by (n+1)L_{n+1} = (2n+1-x)L_n - n L_{n-1}.

    Works for Fraction x (exact) or mpf x at the ambient precision.
    """
    prev, cur = None, x * 0 + 1
    n = 0
    while True:
        yield cur
        nxt = (1 - x) if prev is None else ((2 * n + 1 - x) * cur - n * prev) / (n + 1)
        prev, cur = cur, nxt
        n += 1


def laguerre_eval(n, x, prec=DEFAULT_PREC):
    if n < 0:
        raise ValueError("n must be >= 0")
    with workprec(prec):
        xf = x if hasattr(x, "_mpf_") else to_bigfloat(x)
        for i, value in enumerate(laguerre_stream(xf)):
            if i == n:
                return value


def laguerre_binomial_sum(n, x, prec=DEFAULT_PREC):
    """L_n(x) = sum_k C(n,k)(-1)^k x^k/k!; exact when x is int or Fraction."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return sum((Fraction(math.comb(n, k) * (-1) ** k, math.factorial(k)) * x**k for k in range(n + 1)), Fraction(0))
    with workprec(prec):
        xf = x if hasattr(x, "_mpf_") else to_bigfloat(x)
        acc = mpf(0)
        for k in range(n + 1):
            acc += (-1) ** k * math.comb(n, k) * xf**k / math.factorial(k)
        return acc
