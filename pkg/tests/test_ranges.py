import random
from fractions import Fraction

import pytest

from tautcheck.strata.ranges import (
    RangeError,
    build_range_report,
    codim_bounds,
    codim_formula,
    degree_text,
    i_s_ranges,
    presentation_report,
    purewt_bounds,
    rank_formula,
    rank_pushforward,
    stable_cohomology_bound,
    stable_formula,
    theorem1_bound,
    theorem1_formula,
)
from tautcheck.strata.relations import Status
from tautcheck.strata.signatures import StratumSignature, parse_signature


def random_signature(rng: random.Random) -> StratumSignature:
    """Random signature with a few poles and zeros, possibly with ell > 1."""
    ell = rng.choice([1, 1, 2, 3])
    g = rng.randint(0, 40)
    parts = [rng.randint(-3 * ell, -1) for _ in range(rng.randint(0, 3))]
    remaining = ell * (2 * g - 2) - sum(parts)
    while remaining > 0:
        part = rng.randint(1, min(remaining, 6))
        parts.append(part)
        remaining -= part
    if remaining < 0 or not parts:
        return random_signature(rng)
    try:
        return StratumSignature(ell=ell, parts=tuple(parts))
    except ValueError:
        return random_signature(rng)


def test_genus_thirty_simple_zeros():
    sig = parse_signature("1^58")
    assert theorem1_bound(sig) == 10
    assert stable_cohomology_bound(sig) == Fraction(29, 2)
    injectivity, surjectivity = purewt_bounds(sig)
    assert injectivity == 20
    assert surjectivity == Fraction(58, 3)


def test_i_and_s_ranges_genus_six():
    i_range, s_range = i_s_ranges(ell=1, r=0, m=0, g=6)
    assert i_range == 4
    assert s_range == Fraction(10, 3)


def test_theorem1_formula_second_branch():
    # g=10, m=16: 18 - 16 - 10 + 1 - 1 = -8 is below g/3
    assert theorem1_formula(1, 10, 16, 0) == -8


def test_stable_formula():
    assert stable_formula(ell=1, g=8, m=2) == Fraction(5, 2)
    assert stable_formula(ell=2, g=3, m=0) == Fraction(1, 3)


def test_stable_bound_rejects_poles_of_order_ell():
    with pytest.raises(RangeError):
        stable_cohomology_bound(parse_signature("-1,3"))
    assert stable_cohomology_bound(parse_signature("-1,5", ell=2)) == -1


@pytest.mark.parametrize(
    "ell, g, m, r, expected",
    [
        (1, 5, 0, 0, 5),
        (1, 4, 0, 0, 4),
        (1, 5, 1, 1, 3),
        (2, 3, 0, 0, 6),
    ],
)
def test_rank_formula(ell, g, m, r, expected):
    assert rank_formula(ell, g, m, r) == expected


def test_rank_of_signature():
    assert rank_pushforward(parse_signature("1^8")) == 5


def test_codim_ell_one():
    sig = parse_signature("-1,4,1^15")
    bound = codim_bounds(sig)
    assert bound.applicable
    assert bound.values == (6,)


def test_codim_ell_two():
    bound = codim_formula(ell=2, g=4, m=0, r=0)
    assert bound.applicable
    assert bound.values == (17, 9)
    assert codim_bounds(parse_signature("1^12", ell=2)).values == (17, 9)


def test_codim_not_applicable():
    bound = codim_formula(ell=1, g=3, m=4, r=0)
    assert not bound.applicable
    assert bound.values == ()


def test_specified_designation_changes_bounds():
    sig = parse_signature("1^8")
    assert theorem1_bound(sig) == Fraction(5, 3)
    # promoting two simple zeros: m = 2
    assert theorem1_bound(sig, specified=[1, 1]) == 1
    assert stable_cohomology_bound(sig, specified=[1, 1]) == 1
    report = build_range_report(sig, specified=[1, 1])
    assert report.k == 2
    assert report.m == 2
    assert any("designated" in note for note in report.notes)


def test_presentation_psi_regime():
    presentation = presentation_report(parse_signature("-1,3,-1,1"))
    assert presentation.generators == "psi"
    assert presentation.psi_indices == (1, 3)


def test_presentation_full_ring():
    sig = parse_signature("1^58")
    presentation = presentation_report(sig, Status.NON_VANISHING)
    assert presentation.generators == "eta"
    assert presentation.known_presentation == "Q[eta]/(eta^11)"


def test_presentation_gates():
    sig = parse_signature("1^58")
    assert presentation_report(sig, None).known_presentation is None
    few_zeros = parse_signature("10,1^8")
    assert presentation_report(few_zeros, Status.NON_VANISHING).known_presentation is None
    too_large = StratumSignature(ell=1, parts=(1,) * 62)
    assert presentation_report(too_large, Status.NON_VANISHING).known_presentation is None


def test_range_report():
    report = build_range_report(parse_signature("1^58"), conjecture_status=Status.NON_VANISHING)
    data = report.to_dict()
    assert data["theorem1_bound"] == {"exact": "10", "degree": 10}
    assert data["stable_cohomology_bound"] == {"exact": "29/2", "degree": 14}
    assert data["purewt_injectivity"]["exact"] == "20"
    assert data["mgk_injective"]["exact"] == "20"
    assert data["mgk_surjective"]["exact"] == "58/3"
    assert data["known_presentation"] == "Q[eta]/(eta^11)"
    assert data["expected_sharp"] is True
    assert data["purewt_consistent"] is True
    assert data["xbar_dimension"] == 2 * 30 - 3 + 0 + 58 - 0
    assert data["d_counts"]["0"] == 1
    assert data["d_counts"]["2"] == 2


def test_range_report_with_pole():
    report = build_range_report(parse_signature("-1,3"))
    assert report.stable_cohomology_bound is None
    assert report.presentation.generators == "psi"
    assert report.boundary_classes == ((-1, 0), (3, 4))
    assert report.notes


def test_degree_text():
    assert degree_text(Fraction(29, 2)) == "29/2 (degrees <= 14)"
    assert degree_text(Fraction(-2)) == "-2 (vacuous)"
    assert degree_text(None) == "n/a"


def test_injectivity_is_twice_theorem1_bound():
    rng = random.Random(7)
    for _ in range(1000):
        sig = random_signature(rng)
        t1 = theorem1_bound(sig)
        injectivity, _ = purewt_bounds(sig)
        assert injectivity == 2 * t1
        if t1 >= 0:
            assert t1 <= injectivity


@pytest.mark.parametrize("seed", range(5))
def test_ranges_do_not_grow_with_m(seed):
    rng = random.Random(seed)
    for _ in range(200):
        ell = rng.randint(1, 4)
        g = rng.randint(0, 40)
        r = rng.randint(0, 3)
        m = rng.randint(-20, 60)
        i_m, s_m = i_s_ranges(ell, r, m, g)
        i_next, s_next = i_s_ranges(ell, r, m + 1, g)
        assert i_next <= i_m
        assert s_next <= s_m
        assert stable_formula(ell, g, m + 1) <= stable_formula(ell, g, m)


@pytest.mark.parametrize("seed", range(5))
def test_codim_bounds_ordered_when_applicable(seed):
    rng = random.Random(50 + seed)
    for _ in range(200):
        ell = rng.randint(2, 5)
        g = rng.randint(0, 40)
        threshold = ell * (2 * g - 2) - g + 1
        m = rng.randint(threshold - 60, threshold - 1)
        bound = codim_formula(ell=ell, g=g, m=m, r=rng.randint(0, 3))
        assert bound.applicable
        first, second = bound.values
        assert first >= second
