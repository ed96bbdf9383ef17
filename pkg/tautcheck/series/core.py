"""Truncated formal power series over exact coefficient rings."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence, Union

from sympy import isprime

logger = logging.getLogger(__name__)


class SeriesError(Exception):
    """Base class for series arithmetic failures."""

    pass


class RingMismatchError(SeriesError, TypeError):
    """Raised when operands live in different coefficient rings."""

    pass


class NonUnitError(SeriesError, ZeroDivisionError):
    """Raised when inverting something that is not a unit."""

    pass


class InadmissiblePrimeError(NonUnitError):
    """Raised when a value is not invertible modulo the working prime.

    The checker treats this as "try the next prime", never as a crash.
    """

    def __init__(self, prime: int, message: str):
        super().__init__(message)
        self.prime = prime


class DomainError(SeriesError, ValueError):
    """Raised when log/exp preconditions on the constant term are violated."""

    pass


@dataclass(frozen=True)
class ModP:
    """Residue class in F_p."""

    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"Residue {self.residue} not in range 0 to {self.modulus - 1}")

    def _other(self, other: Any) -> int:
        if isinstance(other, ModP):
            if other.modulus != self.modulus:
                raise RingMismatchError(
                    f"Cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.residue
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.modulus
        raise RingMismatchError(f"Cannot combine a residue mod {self.modulus} with {other!r}")

    def _new(self, value: int) -> ModP:
        return ModP(value % self.modulus, self.modulus)

    def __add__(self, other: Any) -> ModP:
        return self._new(self.residue + self._other(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> ModP:
        return self._new(self.residue - self._other(other))

    def __rsub__(self, other: Any) -> ModP:
        return self._new(self._other(other) - self.residue)

    def __mul__(self, other: Any) -> ModP:
        return self._new(self.residue * self._other(other))

    __rmul__ = __mul__

    def __neg__(self) -> ModP:
        return self._new(-self.residue)

    def inverse(self) -> ModP:
        if self.residue == 0:
            raise InadmissiblePrimeError(self.modulus, f"0 is not invertible mod {self.modulus}")
        return ModP(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other: Any) -> ModP:
        divisor = ModP(self._other(other), self.modulus)
        return self * divisor.inverse()

    def __bool__(self) -> bool:
        return self.residue != 0

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


Coefficient = Union[Fraction, ModP]


class Ring(ABC):
    """Coefficient ring for series arithmetic.

    Series store "raw" scalars (Fraction over Q, plain int in [0, p) over F_p)
    so the inner loops run on native numbers; `normalize` brings a sum of
    products back into canonical form.
    """

    name: str

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Map an int, Fraction or Coefficient into a raw scalar of this ring."""
        pass

    @abstractmethod
    def normalize(self, raw: Any) -> Any:
        pass

    @abstractmethod
    def inv(self, raw: Any) -> Any:
        pass

    @abstractmethod
    def element(self, raw: Any) -> Coefficient:
        """Wrap a raw scalar as a public Coefficient."""
        pass

    @property
    def zero(self) -> Any:
        return self.coerce(0)

    @property
    def one(self) -> Any:
        return self.coerce(1)

    def integer_inverse(self, k: int) -> Any:
        """Raw value of 1/k, used by formal integration and exp."""
        return self.inv(self.coerce(k))


@dataclass(frozen=True)
class RationalField(Ring):
    """Q, with arbitrary-precision Fractions kept in lowest terms."""

    name: str = "QQ"

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, ModP):
            raise RingMismatchError(f"Cannot use residue {value} as a rational coefficient")
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return Fraction(value)
        raise RingMismatchError(f"Not a rational coefficient: {value!r}")

    def normalize(self, raw: Fraction) -> Fraction:
        return raw

    def inv(self, raw: Fraction) -> Fraction:
        if raw == 0:
            raise NonUnitError("0 is not invertible over QQ")
        return 1 / raw

    def element(self, raw: Fraction) -> Fraction:
        return raw


@dataclass(frozen=True)
class PrimeField(Ring):
    """F_p for a prime p, checked once at construction."""

    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise SeriesError(f"Field modulus must be prime, got {self.p}")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"GF({self.p})"

    def coerce(self, value: Any) -> int:
        if isinstance(value, ModP):
            if value.modulus != self.p:
                raise RingMismatchError(f"Residue mod {value.modulus} used in {self.name}")
            return value.residue
        if isinstance(value, bool):
            raise RingMismatchError(f"Not a coefficient: {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InadmissiblePrimeError(
                    self.p, f"Denominator of {value} is divisible by {self.p}"
                )
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        raise RingMismatchError(f"Not a coefficient: {value!r}")

    def normalize(self, raw: int) -> int:
        return raw % self.p

    def inv(self, raw: int) -> int:
        if raw % self.p == 0:
            raise InadmissiblePrimeError(self.p, f"0 is not invertible mod {self.p}")
        return pow(raw, -1, self.p)

    def element(self, raw: int) -> ModP:
        return ModP(raw, self.p)


QQ = RationalField()


@lru_cache(maxsize=256)
def prime_field(p: int) -> PrimeField:
    """Shared PrimeField instance for p (primality is tested once per p)."""
    return PrimeField(p)


class TruncatedSeries:
    """Dense power series a_0 + a_1 t + ... + a_N t^N over one ring.

    Instances are immutable. Binary operations between series of different
    orders truncate to the smaller order.
    """

    __slots__ = ("ring", "_coeffs")

    def __init__(self, coeffs: Iterable[Any], ring: Ring = QQ, order: int | None = None):
        raw = [ring.coerce(c) for c in coeffs]
        if order is None:
            if not raw:
                raise SeriesError("A series needs at least one coefficient or an explicit order")
            order = len(raw) - 1
        if order < 0:
            raise SeriesError(f"Truncation order must be non-negative, got {order}")
        raw = raw[: order + 1] + [ring.zero] * (order + 1 - len(raw))
        self.ring = ring
        self._coeffs = tuple(raw)

    @classmethod
    def _from_raw(cls, ring: Ring, raw: Sequence[Any]) -> TruncatedSeries:
        series = object.__new__(cls)
        series.ring = ring
        series._coeffs = tuple(raw)
        return series

    @classmethod
    def constant(cls, value: Any, order: int, ring: Ring = QQ) -> TruncatedSeries:
        return cls([value], ring, order)

    @classmethod
    def one(cls, order: int, ring: Ring = QQ) -> TruncatedSeries:
        return cls.constant(1, order, ring)

    @classmethod
    def zero(cls, order: int, ring: Ring = QQ) -> TruncatedSeries:
        return cls.constant(0, order, ring)

    @classmethod
    def variable(cls, order: int, ring: Ring = QQ) -> TruncatedSeries:
        """The series t (which is 0 at order 0)."""
        return cls([0, 1], ring, order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def raw(self) -> tuple:
        return self._coeffs

    def coefficient(self, k: int) -> Coefficient:
        if not 0 <= k <= self.order:
            raise IndexError(f"Coefficient t^{k} outside truncation order {self.order}")
        return self.ring.element(self._coeffs[k])

    __getitem__ = coefficient

    def coefficients(self) -> list[Coefficient]:
        return [self.ring.element(c) for c in self._coeffs]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self._coeffs))

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self._coeffs)
        return f"TruncatedSeries([{terms}], ring={self.ring.name}, order={self.order})"

    def __add__(self, other: Any) -> TruncatedSeries:
        return add(self, _as_series(other, self))

    __radd__ = __add__

    def __sub__(self, other: Any) -> TruncatedSeries:
        return sub(self, _as_series(other, self))

    def __rsub__(self, other: Any) -> TruncatedSeries:
        return sub(_as_series(other, self), self)

    def __neg__(self) -> TruncatedSeries:
        return neg(self)

    def __mul__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncatedSeries:
        return pow_int(self, e)


def _as_series(value: Any, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(value, like.order, like.ring)


def _check_rings(a: TruncatedSeries, b: TruncatedSeries) -> Ring:
    if a.ring != b.ring:
        raise RingMismatchError(f"Ring mismatch: {a.ring.name} vs {b.ring.name}")
    return a.ring


def truncate(a: TruncatedSeries, order: int) -> TruncatedSeries:
    """Drop every term above t^order (never raises the order)."""
    if order < 0:
        raise SeriesError(f"Truncation order must be non-negative, got {order}")
    return TruncatedSeries._from_raw(a.ring, a.raw[: order + 1])


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    ring = _check_rings(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries._from_raw(
        ring, [ring.normalize(x + y) for x, y in zip(a.raw[: n + 1], b.raw[: n + 1])]
    )


def neg(a: TruncatedSeries) -> TruncatedSeries:
    ring = a.ring
    return TruncatedSeries._from_raw(ring, [ring.normalize(-x) for x in a.raw])


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, neg(b))


def scale(a: TruncatedSeries, c: Any) -> TruncatedSeries:
    """Multiply every coefficient by the scalar c."""
    ring = a.ring
    factor = ring.coerce(c)
    return TruncatedSeries._from_raw(ring, [ring.normalize(x * factor) for x in a.raw])


def shift(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply by t^k, keeping the truncation order."""
    if k < 0:
        raise SeriesError("shift only multiplies by non-negative powers of t")
    ring = a.ring
    raw = ([ring.zero] * k + list(a.raw))[: a.order + 1]
    return TruncatedSeries._from_raw(ring, raw)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order (schoolbook)."""
    ring = _check_rings(a, b)
    n = min(a.order, b.order)
    x, y = a.raw, b.raw
    out = []
    for k in range(n + 1):
        acc = ring.zero
        for j in range(k + 1):
            acc += x[j] * y[k - j]
        out.append(ring.normalize(acc))
    return TruncatedSeries._from_raw(ring, out)


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse, b_k = -a_0^{-1} * sum_{j=1..k} a_j b_{k-j}."""
    ring = a.ring
    x = a.raw
    inv0 = ring.inv(x[0])
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = ring.zero
        for j in range(1, k + 1):
            acc += x[j] * out[k - j]
        out.append(ring.normalize(-inv0 * acc))
    return TruncatedSeries._from_raw(ring, out)


def pow_int(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """a^e by binary exponentiation; negative exponents go through invert."""
    if e < 0:
        return pow_int(invert(a), -e)
    result = TruncatedSeries.one(a.order, a.ring)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_scale(a: TruncatedSeries, c: Any) -> TruncatedSeries:
    """Realize t -> c*t: coefficient k is multiplied by c^k."""
    ring = a.ring
    factor = ring.coerce(c)
    out = []
    power = ring.one
    for x in a.raw:
        out.append(ring.normalize(x * power))
        power = ring.normalize(power * factor)
    return TruncatedSeries._from_raw(ring, out)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; the result has order N-1 (order 0 for constants)."""
    ring = a.ring
    if a.order == 0:
        return TruncatedSeries.zero(0, ring)
    return TruncatedSeries._from_raw(
        ring, [ring.normalize(k * a.raw[k]) for k in range(1, a.order + 1)]
    )


def integral(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term; the result has order N+1."""
    ring = a.ring
    out = [ring.zero]
    for k, x in enumerate(a.raw, start=1):
        out.append(ring.normalize(x * ring.integer_inverse(k)))
    return TruncatedSeries._from_raw(ring, out)


def log(a: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1, via (log a)' = a'/a."""
    ring = a.ring
    if a.raw[0] != ring.one:
        raise DomainError(f"log needs constant term 1, got {ring.element(a.raw[0])}")
    if a.order == 0:
        return TruncatedSeries.zero(0, ring)
    quotient = mul(derivative(a), invert(truncate(a, a.order - 1)))
    return integral(quotient)


def exp(a: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential of a series with constant term 0, via (exp a)' = a' exp a."""
    ring = a.ring
    if a.raw[0] != ring.zero:
        raise DomainError(f"exp needs constant term 0, got {ring.element(a.raw[0])}")
    x = a.raw
    out = [ring.one]
    for k in range(1, a.order + 1):
        acc = ring.zero
        for j in range(1, k + 1):
            acc += j * x[j] * out[k - j]
        out.append(ring.normalize(acc * ring.integer_inverse(k)))
    return TruncatedSeries._from_raw(ring, out)


def reduce_mod_p(a: TruncatedSeries, field: PrimeField) -> TruncatedSeries:
    """Image of a rational series in F_p."""
    if not isinstance(a.ring, RationalField):
        raise RingMismatchError(f"Only rational series can be reduced, got {a.ring.name}")
    return TruncatedSeries._from_raw(field, [field.coerce(x) for x in a.raw])
