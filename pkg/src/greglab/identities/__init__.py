"""Registry and evaluator for the finite and infinite series identities."""

from .evaluate import (
    DEFAULT_TERMS,
    SeriesReport,
    evaluate_laguerre_series,
    evaluate_series,
    partial_sums,
    run_suite,
    select,
    suite_passed,
    tail_estimate,
)
from .finite import FINITE, FINITE_IDENTITIES, FiniteIdentity, FiniteReport, verify_finite
from .laguerre import laguerre_binomial_sum, laguerre_eval, laguerre_stream
from .series import (
    CAUCHY,
    FAMILIES,
    LAGUERRE,
    STIRLING,
    DomainError,
    IdentityDescriptor,
    get_identity,
)

__all__ = [
    "CAUCHY",
    "DEFAULT_TERMS",
    "FAMILIES",
    "FINITE",
    "FINITE_IDENTITIES",
    "LAGUERRE",
    "STIRLING",
    "DomainError",
    "FiniteIdentity",
    "FiniteReport",
    "IdentityDescriptor",
    "SeriesReport",
    "evaluate_laguerre_series",
    "evaluate_series",
    "get_identity",
    "laguerre_binomial_sum",
    "laguerre_eval",
    "laguerre_stream",
    "partial_sums",
    "run_suite",
    "select",
    "suite_passed",
    "tail_estimate",
    "verify_finite",
]
