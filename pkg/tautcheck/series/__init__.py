"""Exact truncated power series and the special series C(t)."""

from tautcheck.series.core import (
    QQ,
    Coefficient,
    DomainError,
    InadmissiblePrimeError,
    ModP,
    NonUnitError,
    PrimeField,
    RationalField,
    Ring,
    RingMismatchError,
    SeriesError,
    TruncatedSeries,
    add,
    derivative,
    exp,
    invert,
    log,
    mul,
    pow_int,
    prime_field,
    reduce_mod_p,
    substitute_scale,
)
from tautcheck.series.special import (
    c_coefficient,
    c_derivative_series,
    c_log_coefficients,
    c_series,
)

__all__ = [
    "QQ",
    "Coefficient",
    "DomainError",
    "InadmissiblePrimeError",
    "ModP",
    "NonUnitError",
    "PrimeField",
    "RationalField",
    "Ring",
    "RingMismatchError",
    "SeriesError",
    "TruncatedSeries",
    "add",
    "derivative",
    "exp",
    "invert",
    "log",
    "mul",
    "pow_int",
    "prime_field",
    "reduce_mod_p",
    "substitute_scale",
    "c_coefficient",
    "c_derivative_series",
    "c_log_coefficients",
    "c_series",
]
