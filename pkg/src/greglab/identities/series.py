"""Registry of the infinite-series identities.

Every descriptor knows how to stream its terms as mpf values (at the
ambient mpmath precision), how to compute its reference value from the
independent oracles in ``precision``, and, where terms are rational, how to
produce term n exactly.  ``magnitude`` is an asymptotic model of |term(n)|
used only for tail estimates.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mpf

from ..numkernel import (
    cauchy_number,
    gregory_floats,
    harmonic,
    harmonic_p,
    stirling_first_unsigned,
)
from ..precision import constants, to_bigfloat, xz_over_gamma_coeffs, zeta
from .laguerre import laguerre_binomial_sum, laguerre_stream

CAUCHY = "cauchy-series"
STIRLING = "stirling-series"
LAGUERRE = "laguerre-series"
SERIES_KINDS = (CAUCHY, STIRLING, LAGUERRE)


class DomainError(ValueError):
    """Identity parameter outside its range of validity."""


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    kind: str
    parameters: dict
    start_n: int
    stream: Callable  # (N) -> iterator of mpf terms for n = start_n..N
    reference: Callable  # () -> mpf, evaluated at the ambient precision
    term: Callable | None = None  # n -> Fraction, when the terms are rational
    magnitude: Callable | None = None  # t -> model of |term(t)|
    tail: Callable | None = None  # N -> tail estimate, overrides magnitude
    terminates: bool = False
    tolerance: float = 1e-12
    smoothing: str = "none"
    erratum: bool = False
    anchor: str = ""


@dataclass(frozen=True)
class Family:
    id: str
    kind: str
    build: Callable
    defaults: dict = field(default_factory=dict)
    suite: tuple = ({},)
    erratum: bool = False


FAMILIES = {}


def _family(id, kind, defaults=None, suite=({},), erratum=False):
    def wrap(build):
        FAMILIES[id] = Family(id, kind, build, defaults or {}, suite, erratum)
        return build

    return wrap


def get_identity(identity_id, **params):
    try:
        fam = FAMILIES[identity_id]
    except KeyError:
        raise KeyError(f"unknown series identity {identity_id!r}") from None
    unknown = set(params) - set(fam.defaults)
    if unknown:
        raise ValueError(f"{identity_id} takes no parameter(s) {sorted(unknown)}")
    return fam.build(**{**fam.defaults, **params})


def as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str, float)):
        return Fraction(v)
    raise TypeError(f"cannot use {v!r} as an exact parameter")


def _int_param(name, v, lo):
    if int(v) != v or v < lo:
        raise DomainError(f"{name} must be an integer >= {lo}")
    return int(v)


# -- term-building blocks --------------------------------------------------


def _gregory(N):
    return gregory_floats(N, mpmath.mp.prec)


def _gregory_exact(n):
    return cauchy_number(n) / math.factorial(n)


def _stirling_ratios(k):
    """Yield |s(n,k)|/n! for n = 0, 1, 2, ... (mpf)."""
    u = [mpf(1)] + [mpf(0)] * k
    n = 0
    while True:
        yield u[k]
        n += 1
        for j in range(k, 0, -1):
            u[j] = (u[j - 1] + (n - 1) * u[j]) / n
        u[0] = mpf(0)


def _stirling_ratio_exact(n, k):
    return Fraction(stirling_first_unsigned(n, k), math.factorial(n))


def _greg_magnitude(t):
    return 1 / (t * mpmath.log(t) ** 2)


def _stirling_magnitude(k):
    def u(t):
        return mpmath.log(t) ** (k - 1) / (math.factorial(k - 1) * t)

    return u


def _alt(n, v):
    return v if n % 2 == 0 else -v


# -- Cauchy-number series --------------------------------------------------


@_family("eq06", CAUCHY, {"x": Fraction(1)}, suite=tuple({"x": Fraction(v)} for v in ("1/2", "1", "2")))
def _eq06(x):
    x = as_fraction(x)
    if x <= 0:
        raise DomainError("eq06 needs x > 0")

    def stream(N):
        g = _gregory(N)
        xf = to_bigfloat(x)
        prod = xf
        for n in range(N + 1):
            if n:
                prod = prod * n * xf / (1 + n * xf)
            yield _alt(n, g[n] * prod)

    def term(n):
        den = Fraction(1)
        for j in range(1, n + 1):
            den *= 1 + j * x
        return (-1) ** n * cauchy_number(n) * x ** (n + 1) / den

    xf = float(x)
    scale = xf * math.gamma(1 + 1 / xf)
    return IdentityDescriptor(
        "eq06", CAUCHY, {"x": x}, 0, stream,
        reference=lambda: mpmath.log1p(to_bigfloat(x)),
        term=term,
        magnitude=lambda t: scale * t ** (-1 / xf) * _greg_magnitude(t),
        tolerance=1e-5,
        anchor="ln(1+x) = sum (-1)^n c_n x^(n+1) / ((1+x)(1+2x)...(1+nx))",
    )


@_family("eq06-ln2", CAUCHY)
def _eq06_ln2():
    def stream(N):
        g = _gregory(N)
        for n in range(N + 1):
            yield _alt(n, g[n] / (n + 1))

    return IdentityDescriptor(
        "eq06-ln2", CAUCHY, {}, 0, stream,
        reference=lambda: +mpmath.ln2,
        term=lambda n: (-1) ** n * cauchy_number(n) / math.factorial(n + 1),
        magnitude=lambda t: _greg_magnitude(t) / t,
        tolerance=1e-5,
        anchor="ln 2 = sum (-1)^n c_n/(n+1)!",
    )


def _eq07_stream(m, weight):
    # (-1)^n G_n n!/(n+m)! * weight(n, H_{n+m})
    def stream(N):
        g = _gregory(N)
        h = mpmath.fsum(mpf(1) / j for j in range(1, m + 1))  # H_{0+m}
        ratio = mpf(1) / math.factorial(m)  # n!/(n+m)!
        for n in range(N + 1):
            if n:
                h += mpf(1) / (n + m)
                ratio = ratio * n / (n + m)
            yield _alt(n, g[n] * ratio * weight(h))

    return stream


@_family("eq07", CAUCHY, {"m": 1}, suite=tuple({"m": m} for m in (1, 2, 3, 4)))
def _eq07(m):
    m = _int_param("m", m, 1)
    hm1 = harmonic(m - 1)

    def stream(N):
        offset = to_bigfloat(hm1)  # at the precision of the caller
        return _eq07_stream(m, lambda h: h - offset)(N)

    return IdentityDescriptor(
        "eq07", CAUCHY, {"m": m}, 0, stream,
        reference=lambda: to_bigfloat(Fraction(1, math.factorial(m + 1))),
        term=lambda n: (-1) ** n * cauchy_number(n) * (harmonic(n + m) - hm1) / math.factorial(n + m),
        magnitude=lambda t: 1 / (t ** (m + 1) * mpmath.log(t)),
        tolerance=1e-6,
        anchor="1/(m+1)! = sum (-1)^n c_n (H_{n+m} - H_{m-1})/(n+m)!",
    )


def _eq07_display(m, lhs, weight_exact, weight):
    fid = f"eq07-m{m}"

    @_family(fid, CAUCHY)
    def build():
        return IdentityDescriptor(
            fid, CAUCHY, {}, 0,
            _eq07_stream(m, weight),
            reference=lambda: to_bigfloat(lhs),
            term=lambda n: (-1) ** n * cauchy_number(n) * weight_exact(harmonic(n + m)) / math.factorial(n + m),
            magnitude=lambda t: 1 / (t ** (m + 1) * mpmath.log(t)),
            tolerance=1e-6,
            anchor=f"displayed m={m} case of eq07",
        )


_eq07_display(1, Fraction(1, 2), lambda h: h, lambda h: h)
_eq07_display(2, Fraction(1, 6), lambda h: h - 1, lambda h: h - 1)
_eq07_display(3, Fraction(1, 12), lambda h: 2 * h - 3, lambda h: 2 * h - 3)


def _cauchy_harmonic_stream(weight, start):
    # (-1)^(n-1) G_n * weight(n, H_n, H^(2)_n)
    def stream(N):
        g = _gregory(N)
        h = h2 = mpf(0)
        for n in range(1, N + 1):
            h += mpf(1) / n
            h2 += mpf(1) / (n * n)
            if n >= start:
                yield _alt(n - 1, g[n] * weight(n, h, h2))

    return stream


@_family("eq09", CAUCHY)
def _eq09():
    return IdentityDescriptor(
        "eq09", CAUCHY, {}, 1,
        _cauchy_harmonic_stream(lambda n, h, h2: (h * h + h2) / n, 1),
        reference=lambda: 2 * zeta(3, mpmath.mp.prec) - 1,
        term=lambda n: (-1) ** (n - 1) * _gregory_exact(n) * (harmonic(n) ** 2 + harmonic_p(n, 2)) / n,
        magnitude=lambda t: ((mpmath.log(t) + mpmath.euler) ** 2 + mpmath.zeta(2)) / t * _greg_magnitude(t),
        tolerance=1e-3,
        anchor="2 zeta(3) - 1 = sum (-1)^(n-1) c_n (H_n^2 + H^(2)_n)/(n! n)",
    )


@_family("eq10", CAUCHY)
def _eq10():
    return IdentityDescriptor(
        "eq10", CAUCHY, {}, 1,
        _cauchy_harmonic_stream(lambda n, h, h2: mpf(1) / n, 1),
        reference=lambda: constants.get("gamma", mpmath.mp.prec),
        term=lambda n: (-1) ** (n - 1) * _gregory_exact(n) / n,
        magnitude=lambda t: _greg_magnitude(t) / t,
        tolerance=1e-5,
        anchor="gamma = sum (-1)^(n-1) c_n/(n! n)",
    )


@_family("eq11", CAUCHY)
def _eq11():
    return IdentityDescriptor(
        "eq11", CAUCHY, {}, 1,
        _cauchy_harmonic_stream(lambda n, h, h2: h / n, 1),
        reference=lambda: zeta(2, mpmath.mp.prec) - 1,
        term=lambda n: (-1) ** (n - 1) * _gregory_exact(n) * harmonic(n) / n,
        magnitude=lambda t: (mpmath.log(t) + mpmath.euler) / t * _greg_magnitude(t),
        tolerance=1e-4,
        anchor="pi^2/6 - 1 = sum (-1)^(n-1) c_n H_n/(n! n)",
    )


@_family("eq13", CAUCHY)
def _eq13():
    return IdentityDescriptor(
        "eq13", CAUCHY, {}, 1,
        _cauchy_harmonic_stream(lambda n, h, h2: h / (n + 1), 1),
        reference=lambda: constants.get("m1", mpmath.mp.prec) - mpf(1) / 2,
        term=lambda n: (-1) ** (n - 1) * cauchy_number(n) * harmonic(n) / math.factorial(n + 1),
        magnitude=lambda t: (mpmath.log(t) + mpmath.euler) / t * _greg_magnitude(t),
        tolerance=1e-4,
        anchor="M1 - 1/2 = sum (-1)^(n-1) c_n H_n/(n+1)!",
    )


# -- Stirling-number series ------------------------------------------------


def _stirling_stream(k, weight, start):
    """|s(n,k)|/n! * weight(n, H_n, H^(2)_n) for n = start..N."""

    def stream(N):
        u_iter = _stirling_ratios(k)
        h = h2 = mpf(0)
        for n in range(N + 1):
            u = next(u_iter)
            if n:
                h += mpf(1) / n
                h2 += mpf(1) / (n * n)
            if n >= start:
                yield u * weight(n, h, h2)

    return stream


def _stirling_descriptor(id, k, params, stream, reference, term, weight_model, start, **kw):
    if k == 0:
        magnitude = None
        tail = lambda N: mpf(0)  # noqa: E731  (only n = 0 survives)
    else:
        u = _stirling_magnitude(k)
        magnitude = lambda t: u(t) * weight_model(t)  # noqa: E731
        tail = None
    return IdentityDescriptor(
        id, STIRLING, params, start, stream, reference,
        term=term, magnitude=magnitude, tail=tail, terminates=(k == 0), **kw,
    )


def _log_h(t):
    return mpmath.log(t) + mpmath.euler


@_family("ex06", STIRLING, {"k": 1}, suite=tuple({"k": k} for k in (1, 2, 3, 4)))
def _ex06(k):
    k = _int_param("k", k, 1)
    return _stirling_descriptor(
        "ex06", k, {"k": k},
        _stirling_stream(k, lambda n, h, h2: mpf(1) / n, k),
        reference=lambda: zeta(k + 1, mpmath.mp.prec),
        term=lambda n: _stirling_ratio_exact(n, k) / n,
        weight_model=lambda t: 1 / t,
        start=k,
        anchor="zeta(k+1) = sum_{n>=k} (-1)^(n-k) s(n,k)/(n! n)",
    )


@_family("eq17", STIRLING, {"k": 1}, suite=({"k": 1}, {"k": 2}))
def _eq17(k):
    k = _int_param("k", k, 0)
    if k == 0:
        # agreement H_n/n at n = 0 means zeta(2)
        def stream(N):
            yield zeta(2, mpmath.mp.prec)

        term = None
    else:
        stream = _stirling_stream(k, lambda n, h, h2: h / (n * (k + 1)), k)

        def term(n):
            return _stirling_ratio_exact(n, k) * harmonic(n) / (n * (k + 1))

    return _stirling_descriptor(
        "eq17", k, {"k": k}, stream,
        reference=lambda: zeta(k + 2, mpmath.mp.prec),
        term=term,
        weight_model=lambda t: _log_h(t) / (t * (k + 1)),
        start=k,
        anchor="zeta(k+2) = 1/(k+1) sum (-1)^(n-k) s(n,k) H_n/(n! n)",
    )


@_family("eq18", STIRLING, {"k": 1}, suite=({"k": 1}, {"k": 2}))
def _eq18(k):
    k = _int_param("k", k, 1)
    c = (k + 1) * (k + 2)
    return _stirling_descriptor(
        "eq18", k, {"k": k},
        _stirling_stream(k, lambda n, h, h2: (h * h + h2) / (n * c), k),
        reference=lambda: zeta(k + 3, mpmath.mp.prec),
        term=lambda n: _stirling_ratio_exact(n, k) * (harmonic(n) ** 2 + harmonic_p(n, 2)) / (n * c),
        weight_model=lambda t: (_log_h(t) ** 2 + mpmath.zeta(2)) / (t * c),
        start=k,
        anchor="zeta(k+3) = 1/((k+1)(k+2)) sum (-1)^(n-k) s(n,k) (H_n^2 + H^(2)_n)/(n! n)",
    )


@_family("eq19", STIRLING, {"k": 1}, suite=({"k": 1}, {"k": 2}, {"k": 3}))
def _eq19(k):
    k = _int_param("k", k, 1)
    return _stirling_descriptor(
        "eq19", k, {"k": k},
        _stirling_stream(k, lambda n, h, h2: h / (n + 1), k),
        reference=lambda: mpmath.fsum(zeta(j + 1, mpmath.mp.prec) for j in range(1, k + 1)),
        term=lambda n: _stirling_ratio_exact(n, k) * harmonic(n) / (n + 1),
        weight_model=lambda t: _log_h(t) / t,
        start=k,
        anchor="sum_{j<=k} zeta(j+1) = sum (-1)^(n-k) s(n,k) H_n/(n+1)!",
    )


@_family("eq20", STIRLING, {"k": 0}, suite=({"k": 0}, {"k": 1}, {"k": 2}))
def _eq20(k):
    k = _int_param("k", k, 0)
    return _stirling_descriptor(
        "eq20", k, {"k": k},
        _stirling_stream(k, lambda n, h, h2: (h + mpf(1) / (n + 1)) / (n + 1), k),
        reference=lambda: mpf(k + 1),
        term=lambda n: _stirling_ratio_exact(n, k) * harmonic(n + 1) / (n + 1),
        weight_model=lambda t: _log_h(t) / t,
        start=k,
        anchor="k+1 = sum (-1)^(n-k) s(n,k) H_{n+1}/(n+1)!",
    )


def _shifted_stream(k, m, weight):
    # |s(n,k)|/n! * n!/(n+m)! * weight(A, B) with A = H_{n+m}-H_{m-1}, B = H2_{n+m}-H2_{m-1}
    def stream(N):
        u_iter = _stirling_ratios(k)
        a = mpf(1) / m
        b = mpf(1) / (m * m)
        ratio = mpf(1) / math.factorial(m)
        for n in range(N + 1):
            u = next(u_iter)
            if n:
                a += mpf(1) / (n + m)
                b += mpf(1) / (n + m) ** 2
                ratio = ratio * n / (n + m)
            if n >= k:
                yield u * ratio * weight(a, b)

    return stream


def _shifted_exact(n, m, p):
    return harmonic_p(n + m, p) - harmonic_p(m - 1, p)


_EQ21_SUITE = tuple({"k": k, "m": m} for m in (1, 2, 3) for k in (0, 1, 2))


@_family("eq21", STIRLING, {"k": 0, "m": 1}, suite=_EQ21_SUITE)
def _eq21(k, m):
    k = _int_param("k", k, 0)
    m = _int_param("m", m, 1)
    return _stirling_descriptor(
        "eq21", k, {"k": k, "m": m},
        _shifted_stream(k, m, lambda a, b: a),
        reference=lambda: to_bigfloat(Fraction(k + 1, m ** (k + 2) * math.factorial(m - 1))),
        term=lambda n: _stirling_ratio_exact(n, k) * Fraction(math.factorial(n), math.factorial(n + m))
        * _shifted_exact(n, m, 1),
        weight_model=lambda t: _log_h(t) / t**m,
        start=k,
        anchor="(k+1)/(m^(k+2)(m-1)!) = sum (-1)^(n-k) s(n,k)(H_{n+m}-H_{m-1})/(n+m)!",
    )


def _eq22_builder(id, halved, erratum):
    @_family(id, STIRLING, {"k": 0, "m": 1}, suite=({"k": 0, "m": 1}, {"k": 1, "m": 2}), erratum=erratum)
    def build(k, m):
        k = _int_param("k", k, 0)
        m = _int_param("m", m, 1)
        div = 2 if halved else 1
        return _stirling_descriptor(
            id, k, {"k": k, "m": m},
            _shifted_stream(k, m, lambda a, b: (a * a + b) / div),
            reference=lambda: to_bigfloat(Fraction((k + 1) * (k + 2), m ** (k + 3) * math.factorial(m - 1))),
            term=lambda n: _stirling_ratio_exact(n, k) * Fraction(math.factorial(n), div * math.factorial(n + m))
            * (_shifted_exact(n, m, 1) ** 2 + _shifted_exact(n, m, 2)),
            weight_model=lambda t: (_log_h(t) ** 2 + mpmath.zeta(2)) / (div * t**m),
            start=k,
            erratum=erratum,
            anchor=("erratum form, with 1/(2(n+m)!)" if halved else "corrected: no factor 2")
            + ": (k+1)(k+2)/(m^(k+3)(m-1)!) = sum (-1)^(n-k) s(n,k)[A^2 + B]/(n+m)!",
        )

    return build


_eq22_builder("eq22", halved=False, erratum=False)
_eq22_builder("eq22-printed", halved=True, erratum=True)


@_family("eq23", STIRLING, {"k": 1}, suite=({"k": 1}, {"k": 2}))
def _eq23(k):
    k = _int_param("k", k, 1)
    return _stirling_descriptor(
        "eq23", k, {"k": k},
        _stirling_stream(k, lambda n, h, h2: mpf(1) / (n * (n + 1)), k),
        reference=lambda: zeta(k + 1, mpmath.mp.prec) - 1,
        term=lambda n: _stirling_ratio_exact(n, k) / (n * (n + 1)),
        weight_model=lambda t: 1 / t**2,
        start=k,
        anchor="zeta(k+1) - 1 = sum (-1)^(n-k) s(n,k)/((n+1)! n)",
    )


@_family("eq24", STIRLING, {"k": 0}, suite=({"k": 0}, {"k": 1}, {"k": 2}))
def _eq24(k):
    k = _int_param("k", k, 0)

    def stream(N):
        u_iter = _stirling_ratios(k)
        r = mpf(1)  # 4^n / C(2n, n)
        for n in range(N + 1):
            u = next(u_iter)
            if n:
                r = r * (2 * n) / (2 * n - 1)
            if n >= k:
                yield u * r / (2 * n + 1)

    return _stirling_descriptor(
        "eq24", k, {"k": k}, stream,
        reference=lambda: mpf(2) ** k,
        term=lambda n: _stirling_ratio_exact(n, k) * Fraction(4**n, (2 * n + 1) * math.comb(2 * n, n)),
        weight_model=lambda t: mpmath.sqrt(mpmath.pi * t) / (2 * t + 1),
        start=k,
        tolerance=5e-2 * 2**k,
        anchor="2^k = sum (-1)^(n-k) 4^n s(n,k)/(n!(2n+1) C(2n,n))",
    )


# -- Laguerre series -------------------------------------------------------


def _laguerre_tail(x, weight_power):
    # Partial-sum oscillation ~ term envelope times half a period sqrt(n/x).
    xf = float(x)
    t_min = math.exp(4 * weight_power / 3)  # envelope * sqrt(t) peaks here

    def tail(N):
        t = max(float(N), t_min)
        env = math.exp(xf / 2) / (math.sqrt(math.pi) * (t * xf) ** 0.25)
        w = math.log(t) ** weight_power / math.factorial(weight_power)
        return mpf(env * w / t * math.sqrt(t / xf))

    return tail


def _laguerre_x(x):
    x = as_fraction(x)
    if x <= 0:
        raise DomainError("Laguerre series need x > 0")
    return x


def _laguerre_stream(x, weight, start, stirling_k=None):
    # weight(n, h, h2) with h = H_{n-1}, h2 = H^(2)_{n-1}
    def stream(N):
        lag = laguerre_stream(to_bigfloat(x))
        u_iter = _stirling_ratios(stirling_k) if stirling_k is not None else None
        h = h2 = mpf(0)
        for n in range(N + 1):
            L = next(lag)
            u = next(u_iter) if u_iter is not None else None
            if n >= 2:
                h += mpf(1) / (n - 1)
                h2 += mpf(1) / (n - 1) ** 2
            if n >= start:
                yield weight(n, h, h2, u) * L

    return stream


def _coeff(x, m):
    return xz_over_gamma_coeffs(to_bigfloat(x), m, mpmath.mp.prec)[m]


def _eq25_builder(id, printed):
    @_family(id, LAGUERRE, {"m": 1, "x": Fraction(1)}, suite=({"m": 2, "x": Fraction(1)},), erratum=printed)
    def build(m, x):
        m = _int_param("m", m, 0)
        x = _laguerre_x(x)
        sign = (-1) ** m
        scale = math.factorial(m) if printed else 1
        return IdentityDescriptor(
            id, LAGUERRE, {"m": m, "x": x}, m,
            _laguerre_stream(x, lambda n, h, h2, u: sign * u, m, stirling_k=m),
            reference=lambda: scale * _coeff(x, m),
            term=lambda n: sign * _stirling_ratio_exact(n, m) * laguerre_binomial_sum(n, x),
            tail=_laguerre_tail(x, max(m - 1, 0)),
            terminates=(m == 0),
            tolerance=5e-2,
            smoothing="cesaro",
            erratum=printed,
            anchor=("erratum form: m-th derivative" if printed else "m-th Taylor coefficient")
            + " of x^z/Gamma(z+1) = sum (-1)^n s(n,m)/n! L_n(x)",
        )

    return build


_eq25_builder("eq25", printed=False)
_eq25_builder("eq25-printed", printed=True)

_LAGUERRE_XS = tuple({"x": Fraction(v)} for v in ("1/2", "1", "2"))


@_family("eq26", LAGUERRE, {"x": Fraction(1)}, suite=_LAGUERRE_XS)
def _eq26(x):
    x = _laguerre_x(x)
    return IdentityDescriptor(
        "eq26", LAGUERRE, {"x": x}, 1,
        _laguerre_stream(x, lambda n, h, h2, u: mpf(1) / n, 1),
        reference=lambda: -constants.get("gamma", mpmath.mp.prec) - mpmath.log(to_bigfloat(x)),
        term=lambda n: laguerre_binomial_sum(n, x) / n,
        tail=_laguerre_tail(x, 0),
        tolerance=1e-2,
        smoothing="cesaro",
        anchor="-gamma - ln x = sum L_n(x)/n",
    )


@_family("eq27", LAGUERRE, {"x": Fraction(1)}, suite=({"x": Fraction(1)},))
def _eq27(x):
    x = _laguerre_x(x)
    return IdentityDescriptor(
        "eq27", LAGUERRE, {"x": x}, 1,
        _laguerre_stream(x, lambda n, h, h2, u: h / n, 1),
        reference=lambda: _coeff(x, 2),
        term=lambda n: harmonic(n - 1) * laguerre_binomial_sum(n, x) / n,
        tail=_laguerre_tail(x, 1),
        tolerance=2e-2,
        smoothing="cesaro",
        anchor="gamma^2/2 + gamma ln x - pi^2/12 + ln^2 x/2 = sum H_{n-1} L_n(x)/n",
    )


def _eq28_builder(id, printed):
    @_family(id, LAGUERRE, {"x": Fraction(1)}, suite=({"x": Fraction(1)},), erratum=printed)
    def build(x):
        x = _laguerre_x(x)
        sign = 1 if printed else -1
        scale = 6 if printed else 1
        return IdentityDescriptor(
            id, LAGUERRE, {"x": x}, 1,
            _laguerre_stream(x, lambda n, h, h2, u: sign * (h * h - h2) / (2 * n), 1),
            reference=lambda: scale * _coeff(x, 3),
            term=lambda n: sign * (harmonic(n - 1) ** 2 - harmonic_p(n - 1, 2)) * laguerre_binomial_sum(n, x) / (2 * n),
            tail=_laguerre_tail(x, 2),
            tolerance=5e-2,
            smoothing="cesaro",
            erratum=printed,
            anchor=("erratum form: f'''(0) = +1/2 sum" if printed else "f'''(0)/3! = -1/2 sum")
            + " (H_{n-1}^2 - H^(2)_{n-1}) L_n(x)/n",
        )

    return build


_eq28_builder("eq28", printed=False)
_eq28_builder("eq28-printed", printed=True)
