"""Finite binomial-transform identities, checked in exact arithmetic.

Each identity states sum_k C(n,k)(-1)^k a_k = b_n for a closed form b_n.
The left side is computed once per parameter set with
``binomial_transform`` and compared entry by entry.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..numkernel import binomial_transform, forward_differences, harmonic, harmonic_p

FINITE = "finite-exact"


@dataclass(frozen=True)
class FiniteIdentity:
    id: str
    anchor: str
    n_min: int
    sequence: Callable  # (k, **params) -> a_k
    closed_form: Callable  # (n, **params) -> b_n
    param_grid: tuple = ({},)
    erratum: bool = False
    kind: str = FINITE

    def sides(self, n_max, **params):
        """(n, lhs, rhs) for n_min <= n <= n_max."""
        a = [self.sequence(k, **params) for k in range(n_max + 1)]
        lhs = binomial_transform(a)
        return [(n, lhs[n], self.closed_form(n, **params)) for n in range(self.n_min, n_max + 1)]


@dataclass
class FiniteReport:
    id: str
    kind: str
    n_max: int
    cases: int
    verdict: str
    counterexample: dict | None = None
    params: list = field(default_factory=list)

    def to_dict(self):
        return {
            "id": self.id,
            "kind": self.kind,
            "params": self.params,
            "n_max": self.n_max,
            "cases": self.cases,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


def _rising_ratio(n, y):
    # 1 / C(n+y, n) = prod_{j=1}^n j/(y+j)
    out = Fraction(1)
    for j in range(1, n + 1):
        out *= Fraction(j) / (y + j)
    return out


def _shifted_block(n, m, p):
    # H^(p)_{n+m} - H^(p)_{m-1}
    return harmonic_p(n + m, p) - harmonic_p(m - 1, p)


_SAMPLE_FUNCTIONS = {
    "cubic": lambda k: Fraction(k**3 - 2 * k + 1),
    "reciprocal": lambda k: Fraction(1, k + 1),
    "harmonic": harmonic,
    "geometric": lambda k: Fraction(-1, 3) ** k,
}


class _DifferenceIdentity(FiniteIdentity):
    # Delta^n f(0) computed by repeated differencing vs (-1)^n * binomial sum
    def sides(self, n_max, f="cubic"):
        fn = _SAMPLE_FUNCTIONS[f]
        samples = [fn(k) for k in range(n_max + 1)]
        diffs = forward_differences(samples)
        bt = binomial_transform(samples)
        return [(n, diffs[n], (-1) ** n * bt[n]) for n in range(n_max + 1)]


FINITE_IDENTITIES = {}


def _register(ident):
    FINITE_IDENTITIES[ident.id] = ident
    return ident


_register(
    _DifferenceIdentity(
        id="eq04",
        anchor="Delta^n f(0) = (-1)^n sum C(n,k)(-1)^k f(k)",
        n_min=0,
        sequence=None,
        closed_form=None,
        param_grid=tuple({"f": name} for name in _SAMPLE_FUNCTIONS),
    )
)
_register(
    FiniteIdentity(
        id="binom-8.28",
        anchor="sum C(n,k)(-1)^k y/(y+k) = 1/C(n+y,n)",
        n_min=0,
        sequence=lambda k, y: y / (y + k),
        closed_form=lambda n, y: _rising_ratio(n, y),
        param_grid=tuple({"y": Fraction(y)} for y in ("1", "2", "3", "7", "1/2", "5/3")),
    )
)
_register(
    FiniteIdentity(
        id="binom-8.38",
        anchor="sum C(n,k)(-1)^k/(k+m)^2 = (m-1)! n! (H_{n+m}-H_{m-1})/(n+m)!",
        n_min=0,
        sequence=lambda k, m: Fraction(1, (k + m) ** 2),
        closed_form=lambda n, m: Fraction(math.factorial(m - 1) * math.factorial(n), math.factorial(n + m))
        * _shifted_block(n, m, 1),
        param_grid=tuple({"m": m} for m in range(1, 9)),
    )
)
_register(
    FiniteIdentity(
        id="binom-9.16",
        anchor="sum C(n,k)(-1)^k H^(3)_k = -(H_n^2 + H^(2)_n)/(2n)",
        n_min=1,
        sequence=lambda k: harmonic_p(k, 3),
        closed_form=lambda n: -(harmonic(n) ** 2 + harmonic_p(n, 2)) / (2 * n),
    )
)
_register(
    FiniteIdentity(
        id="binom-9.3a",
        anchor="sum C(n,k)(-1)^k H_k = -1/n",
        n_min=1,
        sequence=harmonic,
        closed_form=lambda n: Fraction(-1, n),
    )
)
_register(
    FiniteIdentity(
        id="binom-9.4b",
        anchor="sum C(n,k)(-1)^k H^(2)_k = -H_n/n",
        n_min=1,
        sequence=lambda k: harmonic_p(k, 2),
        closed_form=lambda n: -harmonic(n) / n,
    )
)
_register(
    FiniteIdentity(
        id="binom-9.32",
        anchor="sum C(n,k)(-1)^k H_k/(k+1) = -H_n/(n+1)",
        n_min=0,
        sequence=lambda k: harmonic(k) / (k + 1),
        closed_form=lambda n: -harmonic(n) / (n + 1),
    )
)
_register(
    FiniteIdentity(
        id="binom-ex9",
        anchor="sum C(n,k)(-1)^k/(k+1)^2 = H_{n+1}/(n+1)",
        n_min=0,
        sequence=lambda k: Fraction(1, (k + 1) ** 2),
        closed_form=lambda n: harmonic(n + 1) / (n + 1),
    )
)
_register(
    FiniteIdentity(
        id="binom-ex9-printed",
        anchor="erratum form, with a doubled (-1)^k: sum C(n,k)/(k+1)^2 = H_{n+1}/(n+1)",
        n_min=0,
        sequence=lambda k: Fraction((-1) ** k, (k + 1) ** 2),
        closed_form=lambda n: harmonic(n + 1) / (n + 1),
        erratum=True,
    )
)
_register(
    FiniteIdentity(
        id="binom-ex10",
        anchor="sum C(n,k)(-1)^k H_{k+1} = -1/(n(n+1))",
        n_min=1,
        sequence=lambda k: harmonic(k + 1),
        closed_form=lambda n: Fraction(-1, n * (n + 1)),
    )
)
_register(
    FiniteIdentity(
        id="binom-8.42",
        anchor="sum C(n,k)(-1)^k/(k+m)^3 = (m-1)! n!/(2(n+m)!) [(H_{n+m}-H_{m-1})^2 + H^(2)_{n+m} - H^(2)_{m-1}]",
        n_min=0,
        sequence=lambda k, m: Fraction(1, (k + m) ** 3),
        closed_form=lambda n, m: Fraction(math.factorial(m - 1) * math.factorial(n), 2 * math.factorial(n + m))
        * (_shifted_block(n, m, 1) ** 2 + _shifted_block(n, m, 2)),
        param_grid=tuple({"m": m} for m in range(1, 9)),
    )
)
_register(
    FiniteIdentity(
        id="binom-8.43",
        anchor="sum C(n,k)(-1)^k/(2k+1) = 4^n/((2n+1) C(2n,n))",
        n_min=0,
        sequence=lambda k: Fraction(1, 2 * k + 1),
        closed_form=lambda n: Fraction(4**n, (2 * n + 1) * math.comb(2 * n, n)),
    )
)


def _param_repr(params):
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}


def verify_finite(identity_id, n_max=100, param_grid=None):
    """Check an identity exactly for every n <= n_max and every grid point."""
    try:
        ident = FINITE_IDENTITIES[identity_id]
    except KeyError:
        raise KeyError(f"unknown finite identity {identity_id!r}") from None
    grid = ident.param_grid if param_grid is None else param_grid
    cases = 0
    for params in grid:
        for n, lhs, rhs in ident.sides(n_max, **params):
            cases += 1
            if lhs != rhs:
                bad = {"params": _param_repr(params), "n": n, "lhs": str(lhs), "rhs": str(rhs)}
                return FiniteReport(ident.id, ident.kind, n_max, cases, "fail", bad, [_param_repr(p) for p in grid])
    return FiniteReport(ident.id, ident.kind, n_max, cases, "pass", None, [_param_repr(p) for p in grid])
