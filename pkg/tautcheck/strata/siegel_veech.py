"""Hyperelliptic lifts, area Siegel-Veech constants and the varying criterion.

Every c_area value here is pi^2 * c_area, an exact rational. pi^2 itself only
appears in the certified enclosure used for the final comparison.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from tautcheck.strata.signatures import (
    QuadraticSignatureGenus0,
    StratumSignature,
    format_signature,
)

logger = logging.getLogger(__name__)

PI_SQUARED_LOWER = Fraction("9.8696")
PI_SQUARED_UPPER = Fraction("9.8697")

VARYING_LABEL = "varying for sufficiently large g"
NOT_CERTIFIED_LABEL = "not certified"


class SiegelVeechError(ValueError):
    """Raised for inputs outside the hyperelliptic construction."""

    pass


def hyperelliptic_lift(nu: QuadraticSignatureGenus0) -> StratumSignature:
    """Abelian signature of the canonical double cover: each 2k_i gives (k_i, k_i),
    each 2l_j - 1 gives a single 2l_j (a marked point when l_j = 0)."""
    parts: list[int] = []
    for k in nu.even_parts:
        parts.extend([k, k])
    parts.extend(2 * l for l in nu.odd_parts)
    sig = StratumSignature(ell=1, parts=tuple(parts))
    expected_genus = 1 + sum(nu.even_parts) + sum(nu.odd_parts)
    if sig.genus != expected_genus:
        raise SiegelVeechError(
            f"Lift of {nu} has genus {sig.genus}, expected {expected_genus}"
        )
    return sig


def c_area_hyperelliptic(nu: QuadraticSignatureGenus0) -> Fraction:
    """pi^2 c_area = 1 - (m+n)/2 + sum 1/(2k_i+2) + sum 1/(2l_j+1)."""
    value = 1 - Fraction(nu.m + nu.n, 2)
    value += sum((Fraction(1, 2 * k + 2) for k in nu.even_parts), Fraction(0))
    value += sum((Fraction(1, 2 * l + 1) for l in nu.odd_parts), Fraction(0))
    return value


def exceeds_half_pi_squared(value: Fraction) -> bool:
    """value > pi^2/2, decided with the rational enclosure of pi^2."""
    if 2 * value > PI_SQUARED_UPPER:
        return True
    if 2 * value < PI_SQUARED_LOWER:
        return False
    raise SiegelVeechError(f"{value} is too close to pi^2/2 for the stored enclosure")


def quadratic_from_lists(odd_k: Sequence[int], ells: Sequence[int]) -> QuadraticSignatureGenus0:
    """Genus-0 type (2k_1..2k_m, 2l_1-1..2l_{n+}-1, -1^{n_0}) with n_0 = 2g+2-n_+."""
    g = 1 + sum(odd_k) + sum(ells)
    n_zero = 2 * g + 2 - len(ells)
    return QuadraticSignatureGenus0(
        even_parts=tuple(odd_k), odd_parts=tuple(ells) + (0,) * n_zero
    )


@dataclass(frozen=True)
class VaryingReport:
    odd_k: tuple[int, ...]
    ells: tuple[int, ...]
    m: int
    g: int
    mu: StratumSignature
    nu: QuadraticSignatureGenus0
    c_area: Fraction
    lower_bound: Fraction
    varying: bool
    verdict: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": list(self.odd_k),
            "l": list(self.ells),
            "m": self.m,
            "g": self.g,
            "mu": format_signature(self.mu),
            "nu": str(self.nu),
            "pi2_c_area": str(self.c_area),
            "pi2_c_area_lower_bound": str(self.lower_bound),
            "generic_limit": "pi^2/2",
            "varying": self.varying,
            "verdict": self.verdict,
        }


def varying_check(odd_k: Sequence[int], ells: Sequence[int]) -> VaryingReport:
    """Compare the hyperelliptic Teichmueller curve's pi^2 c_area with the
    generic large-genus limit pi^2/2 for the stratum (k_1,k_1,...,k_m,k_m,2l_1,...)."""
    bad_k = [k for k in odd_k if k <= 0 or k % 2 == 0]
    if bad_k:
        raise SiegelVeechError(f"k_i must be positive and odd, got {bad_k}")
    bad_l = [l for l in ells if l <= 0]
    if bad_l:
        raise SiegelVeechError(f"l_j must be positive, got {bad_l}")

    m = len(odd_k)
    g = 1 + sum(odd_k) + sum(ells)
    parts: list[int] = []
    for k in odd_k:
        parts.extend([k, k])
    parts.extend(2 * l for l in ells)
    if not parts:
        raise SiegelVeechError("Need at least one k_i or l_j")
    mu = StratumSignature(ell=1, parts=tuple(parts))

    nu = quadratic_from_lists(odd_k, ells)
    c_area = c_area_hyperelliptic(nu)
    lower_bound = Fraction(6 + m, 2)
    if c_area < lower_bound:
        raise SiegelVeechError(f"pi^2 c_area = {c_area} is below its bound {lower_bound}")

    varying = m >= 4 and exceeds_half_pi_squared(lower_bound)
    logger.debug(f"m={m}, g={g}: pi^2 c_area={c_area}, bound={lower_bound}, varying={varying}")
    return VaryingReport(
        odd_k=tuple(odd_k),
        ells=tuple(ells),
        m=m,
        g=g,
        mu=mu,
        nu=nu,
        c_area=c_area,
        lower_bound=lower_bound,
        varying=varying,
        verdict=VARYING_LABEL if varying else NOT_CERTIFIED_LABEL,
    )
