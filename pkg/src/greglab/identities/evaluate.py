"""Series evaluation, tail estimates and suite runs."""

import fnmatch
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..precision import DEFAULT_PREC, CompensatedSum, decimal_string, workprec
from .finite import FINITE, FINITE_IDENTITIES, FiniteReport, verify_finite
from .series import CAUCHY, FAMILIES, LAGUERRE, SERIES_KINDS, STIRLING, IdentityDescriptor, get_identity

DEFAULT_TERMS = 10_000
TAIL_MULTIPLIER = 10

KIND_ALIASES = {
    "finite": (FINITE,),
    FINITE: (FINITE,),
    "cauchy": (CAUCHY,),
    CAUCHY: (CAUCHY,),
    "stirling": (STIRLING,),
    STIRLING: (STIRLING,),
    "laguerre": (LAGUERRE,),
    LAGUERRE: (LAGUERRE,),
    "series": SERIES_KINDS,
    "all": (FINITE,) + SERIES_KINDS,
}


def _params_json(params):
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}


@dataclass
class SeriesReport:
    id: str
    kind: str
    params: dict
    N: int
    precision_bits: int
    partial: mpf
    last_term: mpf
    tail_estimate: mpf
    reference: mpf
    abs_error: mpf
    rel_error: mpf
    verdict: str

    def to_dict(self):
        p = self.precision_bits
        return {
            "id": self.id,
            "kind": self.kind,
            "params": _params_json(self.params),
            "N": self.N,
            "precision_bits": p,
            "partial": decimal_string(self.partial, p),
            "last_term": decimal_string(self.last_term, p),
            "tail_estimate": mpmath.nstr(self.tail_estimate, 6),
            "reference": decimal_string(self.reference, p),
            "abs_error": mpmath.nstr(self.abs_error, 12),
            "rel_error": mpmath.nstr(self.rel_error, 12),
            "verdict": self.verdict,
        }


def _descriptor(identity, params):
    if isinstance(identity, IdentityDescriptor):
        return identity
    if identity in FINITE_IDENTITIES:
        raise ValueError(f"{identity} is a finite identity; use verify_finite")
    return get_identity(identity, **(params or {}))


def tail_estimate(identity, N, params=None):
    """Heuristic size of sum_{n>N} term(n); nonincreasing in N."""
    d = _descriptor(identity, params)
    if d.terminates:
        return mpf(0)
    if N < d.start_n + 2:
        raise ValueError(f"tail model needs N >= {d.start_n + 2}")
    if d.tail is not None:
        return mpf(d.tail(N))
    with mpmath.workprec(60):
        return +mpmath.quad(d.magnitude, [N, 10 * N, 100 * N, mpmath.inf])


def partial_sums(identity, N, prec=DEFAULT_PREC, params=None):
    """Yield (n, S_n) for n = start_n..N, summed in ascending order."""
    d = _descriptor(identity, params)
    with workprec(prec):
        acc = CompensatedSum()
        for i, t in enumerate(d.stream(N)):
            acc.add(t)
            yield d.start_n + i, acc.value


def evaluate_series(identity, N=DEFAULT_TERMS, prec=DEFAULT_PREC, params=None, tolerance=None,
                    tail_multiplier=TAIL_MULTIPLIER):
    d = _descriptor(identity, params)
    cesaro = d.smoothing == "cesaro"
    with workprec(prec):
        acc = CompensatedSum()
        mean = CompensatedSum()
        count = 0
        last = mpf(0)
        for t in d.stream(N):
            acc.add(t)
            last = t
            count += 1
            if cesaro:
                mean.add(acc.value)
        partial = mean.value / count if cesaro and count else acc.value
        reference = d.reference()
        abs_error = abs(partial - reference)
        rel_error = abs_error / abs(reference) if reference else abs_error
        tail = tail_estimate(d, max(N, d.start_n + 2))
        tol = d.tolerance if tolerance is None else tolerance
        if abs_error <= max(mpf(tol), tail_multiplier * tail):
            verdict = "pass"
        elif abs(last) > tail:
            verdict = "inconclusive"
        else:
            verdict = "fail"
        return SeriesReport(d.id, d.kind, d.parameters, N, prec, partial, abs(last), tail,
                            reference, abs_error, rel_error, verdict)


def evaluate_laguerre_series(identity, x, N=DEFAULT_TERMS, prec=DEFAULT_PREC, params=None, **kw):
    params = dict(params or {})
    params["x"] = x
    d = _descriptor(identity, params)
    if d.kind != LAGUERRE:
        raise ValueError(f"{d.id} is not a Laguerre series")
    return evaluate_series(d, N, prec, **kw)


def select(filter=None, include_errata=False):
    """Registered ids matching a kind name, an exact id or a glob pattern, in registry order."""
    ids = list(FINITE_IDENTITIES) + list(FAMILIES)

    def kind_of(i):
        return FINITE if i in FINITE_IDENTITIES else FAMILIES[i].kind

    def erratum(i):
        return FINITE_IDENTITIES[i].erratum if i in FINITE_IDENTITIES else FAMILIES[i].erratum

    if filter in ids:
        return [filter]
    if filter == "errata":
        return [i for i in ids if erratum(i)]
    if filter is None or filter in KIND_ALIASES:
        kinds = KIND_ALIASES[filter or "all"]
        chosen = [i for i in ids if kind_of(i) in kinds]
    else:
        chosen = [i for i in ids if fnmatch.fnmatchcase(i, filter)]
    return [i for i in chosen if include_errata or not erratum(i)]


def _run_task(task):
    ident, params, N, n_max, prec, tolerance = task
    if ident in FINITE_IDENTITIES:
        return verify_finite(ident, n_max)
    return evaluate_series(ident, N, prec, params=params, tolerance=tolerance)


def suite_tasks(ids, N=DEFAULT_TERMS, n_max=100, prec=DEFAULT_PREC, tolerance=None, params=None):
    tasks = []
    for i in ids:
        if i in FINITE_IDENTITIES:
            tasks.append((i, None, N, n_max, prec, tolerance))
        else:
            grid = [params] if params is not None else FAMILIES[i].suite
            tasks.extend((i, p, N, n_max, prec, tolerance) for p in grid)
    return tasks


def run_suite(filter=None, N=DEFAULT_TERMS, prec=DEFAULT_PREC, n_max=100, tolerance=None,
              include_errata=False, workers=1, params=None):
    """Evaluate every matching identity over its parameter grid; reports come back in registry order."""
    tasks = suite_tasks(select(filter, include_errata), N, n_max, prec, tolerance, params)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_task, tasks))
    return [_run_task(t) for t in tasks]


def suite_passed(reports):
    return all(r.verdict == "pass" for r in reports)


__all__ = [
    "FiniteReport",
    "SeriesReport",
    "evaluate_laguerre_series",
    "evaluate_series",
    "partial_sums",
    "run_suite",
    "select",
    "suite_passed",
    "tail_estimate",
]
