"""The series C(t) = sum (6k)!/((3k)!(2k)!) (t/72)^k and its log coefficients."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from tautcheck.series.core import (
    QQ,
    InadmissiblePrimeError,
    PrimeField,
    Ring,
    TruncatedSeries,
    log,
)

logger = logging.getLogger(__name__)

_FACTORIALS: list[int] = [1]


def factorial(n: int) -> int:
    """n! from an incrementally grown table."""
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    table = _FACTORIALS
    while len(table) <= n:
        table.append(table[-1] * len(table))
    return table[n]


@lru_cache(maxsize=None)
def c_integer(k: int) -> int:
    """The integer (6k)!/((3k)!(2k)!)."""
    quotient, remainder = divmod(factorial(6 * k), factorial(3 * k) * factorial(2 * k))
    if remainder:
        raise ArithmeticError(f"(6k)!/((3k)!(2k)!) is not integral at k={k}")
    return quotient


def c_coefficient(k: int) -> Fraction:
    """Rational coefficient of t^k in C(t)."""
    return Fraction(c_integer(k), 72**k)


def _check_ring(ring: Ring) -> None:
    if isinstance(ring, PrimeField) and ring.p < 5:
        raise InadmissiblePrimeError(ring.p, f"C(t) needs 72 invertible, p={ring.p} is not allowed")


@lru_cache(maxsize=None)
def c_series(order: int, ring: Ring = QQ) -> TruncatedSeries:
    """C(t) truncated at t^order.

    Over F_p the integer ratio is reduced first and then multiplied by the
    inverse of 72^k mod p.
    """
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    _check_ring(ring)
    if isinstance(ring, PrimeField):
        p = ring.p
        inv72 = pow(72, -1, p)
        raw = [c_integer(k) % p * pow(inv72, k, p) % p for k in range(order + 1)]
        return TruncatedSeries(raw, ring)
    return TruncatedSeries([c_coefficient(k) for k in range(order + 1)], ring)


@lru_cache(maxsize=None)
def c_derivative_series(order: int, ring: Ring = QQ) -> TruncatedSeries:
    """C'(t) truncated at t^order, straight from the factorial formula."""
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    _check_ring(ring)
    return TruncatedSeries(
        [(k + 1) * c_coefficient(k + 1) for k in range(order + 1)], ring
    )


@lru_cache(maxsize=None)
def c_log_coefficients(order: int) -> tuple[Fraction, ...]:
    """(c_1, ..., c_order) with exp(sum c_k t^k) = C(t)."""
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")
    logger.debug(f"Computing log coefficients of C(t) to order {order}")
    return tuple(log(c_series(order)).coefficients()[1:])
