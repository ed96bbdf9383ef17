"""Closed-form degree ranges for tautological rings of strata.

All bounds are exact rationals; cohomological degrees are integers, so each
report entry also carries the floor of its bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from tautcheck.strata.combinatorics import decorated_monomial_count
from tautcheck.strata.relations import Status
from tautcheck.strata.signatures import (
    StratumSignature,
    format_signature,
    split_r,
)

# Largest genus covered by the exhaustive sweep behind the full presentation.
VERIFIED_GENUS_LIMIT = 30


class RangeError(ValueError):
    """Raised when a bound's hypotheses fail for a signature."""

    pass


def _delta(x: int, y: int) -> int:
    return 1 if x == y else 0


def _excess(ell: int, g: int, m: int, r: int) -> int:
    """ell(2g-2) - g - m + delta_{0r} delta_{1 ell}."""
    return ell * (2 * g - 2) - g - m + _delta(0, r) * _delta(1, ell)


def i_s_ranges(ell: int, r: int, m: int, g: int) -> tuple[Fraction, Fraction]:
    """(i^ell_r(m), s^ell_r(m)): injectivity and surjectivity ranges for Xbar."""
    second = Fraction(2 * _excess(ell, g, m, r))
    i_range = min(Fraction(2 * g, 3), second)
    s_range = min(Fraction(2 * g, 3) - Fraction(2, 3), second)
    return i_range, s_range


def theorem1_formula(ell: int, g: int, m: int, r: int) -> Fraction:
    """min{g/3, ell(2g-2) - m - g + delta_{0r} delta_{1 ell} - 1}."""
    return min(Fraction(g, 3), Fraction(_excess(ell, g, m, r) - 1))


def purewt_formula(ell: int, g: int, m: int, r: int) -> tuple[Fraction, Fraction]:
    """(min{i(m), s(m+2) + 2}, s(m)) for pure weight cohomology."""
    i_m, s_m = i_s_ranges(ell, r, m, g)
    _, s_m2 = i_s_ranges(ell, r, m + 2, g)
    return min(i_m, s_m2 + 2), s_m


def stable_formula(ell: int, g: int, m: int) -> Fraction:
    """min{2g/3 - 5/3, (ell(2g-2) - m - g + delta_{1 ell})/2}."""
    return min(
        Fraction(2 * g - 5, 3),
        Fraction(ell * (2 * g - 2) - m - g + _delta(1, ell), 2),
    )


def rank_formula(ell: int, g: int, m: int, r: int) -> int:
    """Rank of the pushforward: ell(2g-2) - g + 1 - m + delta_{0r} delta_{1 ell}."""
    return ell * (2 * g - 2) - g + 1 - m + _delta(0, r) * _delta(1, ell)


@dataclass(frozen=True)
class CodimBound:
    """Codimension lower bounds for the jumping locus Z; `values` empty when n/a."""

    name: str
    hypothesis: str
    applicable: bool
    values: tuple[int, ...] = ()


def codim_formula(ell: int, g: int, m: int, r: int) -> CodimBound:
    if ell == 1:
        threshold = g + _delta(0, r) - 1
        hypothesis = f"m < g + delta_0r - 1 = {threshold}"
        if m < threshold:
            return CodimBound("codim Z (ell = 1)", hypothesis, True, (g - m + _delta(0, r) - 1,))
        return CodimBound("codim Z (ell = 1)", hypothesis, False)
    threshold = ell * (2 * g - 2) - g + 1
    hypothesis = f"m < ell(2g-2) - g + 1 = {threshold}"
    if m < threshold:
        return CodimBound(
            "codim Z (ell >= 2)",
            hypothesis,
            True,
            ((2 * ell - 1) * (2 * g - 2) - 2 * m - 1, ell * (2 * g - 2) - g - m + 1),
        )
    return CodimBound("codim Z (ell >= 2)", hypothesis, False)


def theorem1_bound(sig: StratumSignature, specified: Sequence[int] | None = None) -> Fraction:
    split = split_r(sig, specified)
    return theorem1_formula(sig.ell, sig.genus, split.m, split.r)


def purewt_bounds(
    sig: StratumSignature, specified: Sequence[int] | None = None
) -> tuple[Fraction, Fraction]:
    split = split_r(sig, specified)
    return purewt_formula(sig.ell, sig.genus, split.m, split.r)


def stable_cohomology_bound(
    sig: StratumSignature, specified: Sequence[int] | None = None
) -> Fraction:
    """Stable range for holomorphic-type signatures (every specified part > -ell)."""
    split = split_r(sig, specified)
    poles = [p for p in split.parts if p <= -sig.ell]
    if poles:
        raise RangeError(
            f"Stable range needs specified parts > -ell={-sig.ell}, got {poles}"
        )
    return stable_formula(sig.ell, sig.genus, split.m)


def codim_bounds(sig: StratumSignature, specified: Sequence[int] | None = None) -> CodimBound:
    split = split_r(sig, specified)
    return codim_formula(sig.ell, sig.genus, split.m, split.r)


def rank_pushforward(sig: StratumSignature, specified: Sequence[int] | None = None) -> int:
    split = split_r(sig, specified)
    return rank_formula(sig.ell, sig.genus, split.m, split.r)


@dataclass(frozen=True)
class Presentation:
    """Generators of the tautological ring and, when known, its full presentation."""

    generators: str
    psi_indices: tuple[int, ...] = ()
    known_presentation: str | None = None
    note: str = ""


def presentation_report(
    sig: StratumSignature,
    conjecture_status: Status | None = None,
) -> Presentation:
    """Generator regime, plus Q[eta]/(eta^a) when every ingredient is in place."""
    if sig.has_pole_of_order_ell:
        indices = tuple(i for i, p in enumerate(sig.parts, start=1) if p == -sig.ell)
        return Presentation(
            generators="psi",
            psi_indices=indices,
            note="eta and all kappa classes vanish; psi classes at the order -ell poles generate",
        )
    g = sig.genus
    gates = {
        "ell = 1": sig.ell == 1,
        "positive parts": all(p > 0 for p in sig.parts),
        "at least 4g/3 simple zeros": 3 * sig.simple_zero_count >= 4 * g,
        f"g <= {VERIFIED_GENUS_LIMIT}": g <= VERIFIED_GENUS_LIMIT,
        "g >= 2": g >= 2,
        "relation certified": conjecture_status == Status.NON_VANISHING,
    }
    failed = [name for name, ok in gates.items() if not ok]
    if failed:
        return Presentation(
            generators="eta",
            note="only the free range of the eta-degree bound is known; missing: "
            + ", ".join(failed),
        )
    return Presentation(
        generators="eta",
        known_presentation=f"Q[eta]/(eta^{g // 3 + 1})",
        note="all relations come from pullbacks and relations on M_g",
    )


@dataclass(frozen=True)
class RangeReport:
    """Every bound evaluated for one signature and one designation of specified parts."""

    signature: StratumSignature
    specified: tuple[int, ...]
    k: int
    m: int
    r: int
    delta_0r: int
    delta_1ell: int
    i_range: Fraction
    s_range: Fraction
    theorem1_bound: Fraction
    purewt_injectivity: Fraction
    purewt_surjectivity: Fraction
    stable_cohomology_bound: Fraction | None
    codim: CodimBound
    rank_pushforward: int
    mgk_injective: Fraction
    mgk_surjective: Fraction
    xbar_dimension: int
    boundary_classes: tuple[tuple[int, int], ...]
    d_counts: dict[int, int]
    presentation: Presentation
    expected_sharp: bool
    purewt_consistent: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict[str, Any]:
        return {
            "signature": format_signature(self.signature),
            "ell": self.signature.ell,
            "g": self.signature.genus,
            "n": self.signature.n,
            "specified": list(self.specified),
            "k": self.k,
            "m": self.m,
            "r": self.r,
            "delta_0r": self.delta_0r,
            "delta_1ell": self.delta_1ell,
            "i_range": _bound_entry(self.i_range),
            "s_range": _bound_entry(self.s_range),
            "theorem1_bound": _bound_entry(self.theorem1_bound),
            "purewt_injectivity": _bound_entry(self.purewt_injectivity),
            "purewt_surjectivity": _bound_entry(self.purewt_surjectivity),
            "stable_cohomology_bound": (
                None
                if self.stable_cohomology_bound is None
                else _bound_entry(self.stable_cohomology_bound)
            ),
            "codim_Z": {
                "name": self.codim.name,
                "hypothesis": self.codim.hypothesis,
                "applicable": self.codim.applicable,
                "lower_bounds": list(self.codim.values) if self.codim.applicable else "n/a",
            },
            "rank_pushforward": self.rank_pushforward,
            "mgk_injective": _bound_entry(self.mgk_injective),
            "mgk_surjective": _bound_entry(self.mgk_surjective),
            "xbar_dimension": self.xbar_dimension,
            "boundary_classes": [
                {"part": part, "psi_coefficient": coeff} for part, coeff in self.boundary_classes
            ],
            "d_counts": {str(i): count for i, count in self.d_counts.items()},
            "generators": self.presentation.generators,
            "psi_indices": list(self.presentation.psi_indices),
            "known_presentation": self.presentation.known_presentation,
            "presentation_note": self.presentation.note,
            "expected_sharp": self.expected_sharp,
            "purewt_consistent": self.purewt_consistent,
            "notes": list(self.notes),
        }


def _bound_entry(value: Fraction) -> dict[str, Any]:
    return {
        "exact": str(value),
        "degree": math.floor(value) if value >= 0 else None,
    }


def degree_text(value: Fraction | None, empty: str = "vacuous") -> str:
    """"29/2 (degrees <= 14)" or the `empty` label for negative bounds."""
    if value is None:
        return "n/a"
    if value < 0:
        return f"{value} ({empty})"
    return f"{value} (degrees <= {math.floor(value)})"


def build_range_report(
    sig: StratumSignature,
    specified: Sequence[int] | None = None,
    conjecture_status: Status | None = None,
) -> RangeReport:
    split = split_r(sig, specified)
    ell, g, m, r = sig.ell, sig.genus, split.m, split.r
    i_range, s_range = i_s_ranges(ell, r, m, g)
    t1 = theorem1_formula(ell, g, m, r)
    injectivity, surjectivity = purewt_formula(ell, g, m, r)
    notes = []
    try:
        stable = stable_cohomology_bound(sig, split.parts)
    except RangeError as e:
        stable = None
        notes.append(str(e))
    if specified is not None:
        notes.append("bounds depend on the designated specified parts through m and r")
    presentation = presentation_report(sig, conjecture_status)
    d_top = g // 3 + 1
    return RangeReport(
        signature=sig,
        specified=split.parts,
        k=split.k,
        m=m,
        r=r,
        delta_0r=_delta(0, r),
        delta_1ell=_delta(1, ell),
        i_range=i_range,
        s_range=s_range,
        theorem1_bound=t1,
        purewt_injectivity=injectivity,
        purewt_surjectivity=surjectivity,
        stable_cohomology_bound=stable,
        codim=codim_formula(ell, g, m, r),
        rank_pushforward=rank_formula(ell, g, m, r),
        mgk_injective=Fraction(2 * g, 3),
        mgk_surjective=Fraction(2 * g - 2, 3),
        xbar_dimension=2 * g - 3 + split.k + ell * (2 * g - 2) - m,
        boundary_classes=tuple((p, ell + p) for p in split.parts),
        d_counts={2 * i: decorated_monomial_count(split.k, 2 * i) for i in range(d_top + 1)},
        presentation=presentation,
        expected_sharp=presentation.generators == "eta" and t1 == Fraction(g, 3),
        purewt_consistent=injectivity == 2 * t1,
        notes=tuple(notes),
    )
