"""Cauchy, Stirling and harmonic numbers; Newton-series quadrature; checks of series identities."""

__version__ = "0.1.0"
