"""Partition enumeration for the sweep and the decorated monomial count d(i)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from tautcheck.series.core import QQ, TruncatedSeries, invert, mul, pow_int

# Bump when partitions_of changes its output order; checkpoints record it.
ORDER_CONTRACT_VERSION = 1

_PARTITION_COUNTS: list[int] = [1]


def partitions_of(total: int) -> Iterator[tuple[int, ...]]:
    """Stream the partitions of `total` with weakly decreasing parts.

    Order is reverse-lexicographic, starting at (total,) and ending at
    (1, ..., 1); successive partitions come from the in-place successor
    step, so nothing is materialized.
    """
    if total < 1:
        raise ValueError(f"total must be positive, got {total}")
    x = [1] * total
    x[0] = total
    last = 0  # index of the last part
    big = 0  # index of the last part larger than 1
    yield (total,)
    while x[0] != 1:
        if x[big] == 2:
            last += 1
            x[big] = 1
            big -= 1
        else:
            r = x[big] - 1
            rest = last - big + 1
            x[big] = r
            while rest >= r:
                big += 1
                x[big] = r
                rest -= r
            if rest == 0:
                last = big
            else:
                last = big + 1
                if rest > 1:
                    big += 1
                    x[big] = rest
        yield tuple(x[: last + 1])


def partition_count(total: int) -> int:
    """p(total) by Euler's pentagonal-number recurrence."""
    if total < 0:
        return 0
    table = _PARTITION_COUNTS
    while len(table) <= total:
        n = len(table)
        acc = 0
        k = 1
        while True:
            first = n - k * (3 * k - 1) // 2
            if first < 0:
                break
            sign = 1 if k % 2 else -1
            second = n - k * (3 * k + 1) // 2
            acc += sign * (table[first] + (table[second] if second >= 0 else 0))
            k += 1
        table.append(acc)
    return table[total]


def decorated_monomial_count(k: int, i: int) -> int:
    """d(i): monomials of degree i/2 in kappa_1, kappa_2, ..., psi_1..psi_k, eta.

    Coefficient of t^(i/2) in (1/(1-t))^(k+1) * prod_j 1/(1-t^j); zero for odd i.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if i < 0 or i % 2:
        return 0
    degree = i // 2
    one_minus_t = TruncatedSeries([1, -1], QQ, degree)
    series = pow_int(invert(one_minus_t), k + 1)
    for j in range(1, degree + 1):
        series = mul(series, invert(TruncatedSeries([1] + [0] * (j - 1) + [-1], QQ, degree)))
    return int(series.coefficient(degree))


@dataclass(frozen=True)
class DecoratedStratum:
    """Labels (a_1..a_k, b_1..b_s, e) with sum a_j + sum j*b_j + e = codimension."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    e: int

    @property
    def codimension(self) -> int:
        return sum(self.a) + sum(j * bj for j, bj in enumerate(self.b, start=1)) + self.e


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write total as `parts` non-negative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        previous = -1
        piece = []
        for bar in bars:
            piece.append(bar - previous - 1)
            previous = bar
        piece.append(total + parts - 1 - previous - 1)
        yield tuple(piece)


def _kappa_vectors(weight: int, length: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors (b_1..b_length) with sum j*b_j = weight."""
    if weight == 0:
        yield (0,) * length
        return
    for partition in partitions_of(weight):
        b = [0] * length
        for part in partition:
            b[part - 1] += 1
        yield tuple(b)


def decorated_strata_enumerate(k: int, c: int) -> list[DecoratedStratum]:
    """All eta-decorated boundary strata labels in codimension c (s bounded by c)."""
    if k < 0 or c < 0:
        raise ValueError(f"k and c must be non-negative, got k={k}, c={c}")
    strata = []
    for e in range(c + 1):
        for weight in range(c - e + 1):
            for b in _kappa_vectors(weight, c):
                for a in _compositions(c - e - weight, k):
                    strata.append(DecoratedStratum(a=a, b=b, e=e))
    return strata
