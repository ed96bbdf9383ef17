"""Signatures of strata of differentials and genus-0 quadratic types."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

_TOKEN = re.compile(r"^\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*$")


class SignatureError(ValueError):
    """Raised when a signature is malformed or violates its invariants."""

    pass


@dataclass(frozen=True)
class StratumSignature:
    """Orders (m'_1, ..., m'_n) of an ell-differential, sum = ell*(2g-2).

    `parts` keeps the order it was given in; `format_signature` gives the
    canonical text form.
    """

    ell: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if self.ell < 1:
            raise SignatureError(f"ell must be a positive integer, got {self.ell}")
        if not self.parts:
            raise SignatureError("A signature needs at least one part")
        total = sum(self.parts)
        if total % self.ell:
            raise SignatureError(
                f"Sum of parts {total} is not divisible by ell={self.ell}"
            )
        reduced = total // self.ell
        if reduced % 2 or reduced < -2:
            raise SignatureError(
                f"Sum of parts {total} is not ell*(2g-2) for an integer genus g >= 0"
            )
        if 2 * self.genus - 2 + self.n <= 0:
            raise SignatureError(
                f"Unstable signature: 2g-2+n = {2 * self.genus - 2 + self.n} must be positive"
            )

    @property
    def genus(self) -> int:
        return sum(self.parts) // (2 * self.ell) + 1

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def euler(self) -> int:
        """2g - 2 + n."""
        return 2 * self.genus - 2 + self.n

    @property
    def effective_parts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(p, self.ell) for p in self.parts)

    @property
    def has_pole_of_order_ell(self) -> bool:
        return any(p == -self.ell for p in self.parts)

    @property
    def is_holomorphic_type(self) -> bool:
        """All pole orders bounded by ell-1 (finite flat area)."""
        return all(p > -self.ell for p in self.parts)

    @property
    def simple_zero_count(self) -> int:
        return sum(1 for p in self.parts if p == 1)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def __str__(self) -> str:
        return format_signature(self)


@dataclass(frozen=True)
class SpecifiedSplit:
    """The k specified parts (negatives first) with r negatives summing to m."""

    parts: tuple[int, ...]
    r: int
    m: int

    @property
    def k(self) -> int:
        return len(self.parts)


def _parse_tokens(text: str) -> list[int]:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise SignatureError("Empty signature")
    values: list[int] = []
    for token in body.split(","):
        match = _TOKEN.match(token)
        if not match:
            raise SignatureError(
                f"Cannot parse '{token.strip()}': expected an integer or 'value^count'"
            )
        value = int(match.group(1))
        count = int(match.group(2)) if match.group(2) is not None else 1
        if count < 1:
            raise SignatureError(f"Repetition count must be positive in '{token.strip()}'")
        values.extend([value] * count)
    return values


def parse_signature(text: str, ell: int = 1) -> StratumSignature:
    """Parse "m1,m2,...,v^e" into a validated signature."""
    return StratumSignature(ell=ell, parts=tuple(_parse_tokens(text)))


def canonical_parts(sig: StratumSignature) -> tuple[int, ...]:
    """Non-simple parts ascending (negatives first), then the simple zeros."""
    others = sorted(p for p in sig.parts if p != 1)
    return tuple(others) + (1,) * sig.simple_zero_count


def format_signature(sig: StratumSignature) -> str:
    ones = sig.simple_zero_count
    tokens = [str(p) for p in canonical_parts(sig)[: sig.n - ones]]
    if ones == 1:
        tokens.append("1")
    elif ones > 1:
        tokens.append(f"1^{ones}")
    return ",".join(tokens)


def stratum_dimension(sig: StratumSignature, holomorphic_abelian_type: bool) -> int:
    """Dimension of a component: 2g-2+n for holomorphic abelian type, else 2g-3+n."""
    return sig.euler if holomorphic_abelian_type else sig.euler - 1


def split_r(sig: StratumSignature, specified: Sequence[int] | None = None) -> SpecifiedSplit:
    """Designate specified parts (default: every part != 1) and compute r and m.

    An explicit designation must be a sub-multiset of the signature's parts;
    this is how simple zeros are promoted to specified parts.
    """
    if specified is None:
        chosen = [p for p in sig.parts if p != 1]
    else:
        chosen = [int(p) for p in specified]
        missing = Counter(chosen) - sig.multiplicities()
        if missing:
            raise SignatureError(
                f"Specified parts {sorted(missing.elements())} do not occur in {format_signature(sig)}"
            )
    chosen.sort()
    r = sum(1 for p in chosen if p < 0)
    return SpecifiedSplit(parts=tuple(chosen), r=r, m=sum(chosen))


@dataclass(frozen=True)
class QuadraticSignatureGenus0:
    """Genus-0 quadratic type (2k_1,...,2k_m, 2l_1-1,...,2l_n-1), entries summing to -4."""

    even_parts: tuple[int, ...]
    odd_parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "even_parts", tuple(int(k) for k in self.even_parts))
        object.__setattr__(self, "odd_parts", tuple(int(l) for l in self.odd_parts))
        bad_k = [k for k in self.even_parts if k <= 0]
        if bad_k:
            raise SignatureError(f"Even entries need k_i > 0, got k = {bad_k}")
        bad_l = [l for l in self.odd_parts if l < 0]
        if bad_l:
            raise SignatureError(f"Odd entries need l_j >= 0, got l = {bad_l}")
        if sum(self.entries) != -4:
            raise SignatureError(
                f"Genus-0 quadratic entries must sum to -4, got {sum(self.entries)}"
            )

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(2 * k for k in self.even_parts) + tuple(2 * l - 1 for l in self.odd_parts)

    @property
    def m(self) -> int:
        return len(self.even_parts)

    @property
    def n(self) -> int:
        return len(self.odd_parts)

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> QuadraticSignatureGenus0:
        even: list[int] = []
        odd: list[int] = []
        for e in entries:
            if e % 2 == 0:
                if e <= 0:
                    raise SignatureError(f"Even entry {e} must be positive (2k with k > 0)")
                even.append(e // 2)
            else:
                if e < -1:
                    raise SignatureError(f"Odd entry {e} must be at least -1 (2l-1 with l >= 0)")
                odd.append((e + 1) // 2)
        return cls(even_parts=tuple(even), odd_parts=tuple(odd))

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


def parse_quadratic_signature(text: str) -> QuadraticSignatureGenus0:
    """Parse raw entries such as "2,-1^6"."""
    return QuadraticSignatureGenus0.from_entries(_parse_tokens(text))
