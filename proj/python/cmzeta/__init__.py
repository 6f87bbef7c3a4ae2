"""Exact and p-adic checks of the weight-2 Eisenstein value on CM elliptic curves."""

from ._core import (
    ConfigError,
    Curve,
    InconsistencyError,
    analytic_A,
    curve_names,
    expand,
    load_curve,
    recognize,
    recover,
    run,
    tau,
    verify,
)

__all__ = [
    "ConfigError",
    "Curve",
    "InconsistencyError",
    "analytic_A",
    "curve_names",
    "expand",
    "load_curve",
    "recognize",
    "recover",
    "run",
    "tau",
    "verify",
]
