import random
from collections import Counter
from fractions import Fraction

import pytest

from tautcheck.strata.signatures import (
    QuadraticSignatureGenus0,
    SignatureError,
    StratumSignature,
    canonical_parts,
    format_signature,
    parse_quadratic_signature,
    parse_signature,
    split_r,
    stratum_dimension,
)


@pytest.mark.parametrize(
    "text, ell, genus, n",
    [
        ("2", 1, 2, 1),
        ("(1,1)", 1, 2, 2),
        ("4,1^2", 1, 4, 3),
        ("1^58", 1, 30, 58),
        ("3,1", 2, 2, 2),
        ("-2,-1,1", 1, 0, 3),
        ("-1,4,1^15", 1, 10, 17),
        ("1^12", 2, 4, 12),
    ],
)
def test_parse_signature(text, ell, genus, n):
    sig = parse_signature(text, ell)
    assert sig.genus == genus
    assert sig.n == n
    assert sig.euler == 2 * genus - 2 + n
    assert sum(sig.parts) == ell * (2 * genus - 2)


@pytest.mark.parametrize(
    "text, ell",
    [
        ("", 1),
        ("a", 1),
        ("1,,1", 1),
        ("1^0", 1),
        ("3", 2),
        ("1", 1),
        ("-4", 1),
        ("-2", 1),
    ],
)
def test_invalid_signatures(text, ell):
    with pytest.raises(SignatureError):
        parse_signature(text, ell)


def test_ell_must_be_positive():
    with pytest.raises(SignatureError):
        StratumSignature(ell=0, parts=(2,))


def test_format_is_canonical():
    sig = parse_signature("1,-2,3,1,1")
    assert format_signature(sig) == "-2,3,1^3"
    assert str(sig) == "-2,3,1^3"
    assert canonical_parts(sig) == (-2, 3, 1, 1, 1)
    assert format_signature(parse_signature("3,1,2")) == "2,3,1"
    assert format_signature(parse_signature("2")) == "2"


def test_format_round_trips_on_canonical_text():
    for text in ["2", "4,1^2", "-2,3,1^3", "1^58", "2,2,2", "3,1"]:
        ell = 2 if text == "3,1" else 1
        assert format_signature(parse_signature(text, ell)) == text


def test_properties():
    sig = parse_signature("-1,3")
    assert sig.has_pole_of_order_ell
    assert not sig.is_holomorphic_type
    sig = parse_signature("3,1", ell=2)
    assert sig.effective_parts == (Fraction(3, 2), Fraction(1, 2))
    assert sig.is_holomorphic_type
    assert sig.simple_zero_count == 1
    assert sig.multiplicities() == Counter({3: 1, 1: 1})


def test_stratum_dimension():
    sig = parse_signature("4,1^2")
    assert stratum_dimension(sig, holomorphic_abelian_type=True) == 9
    assert stratum_dimension(sig, holomorphic_abelian_type=False) == 8


def test_split_r_default():
    split = split_r(parse_signature("-1,4,1^15"))
    assert split.parts == (-1, 4)
    assert (split.k, split.r, split.m) == (2, 1, 3)


def test_split_r_without_specified_parts():
    split = split_r(parse_signature("1^58"))
    assert (split.k, split.r, split.m) == (0, 0, 0)


def test_split_r_promotes_simple_zeros():
    split = split_r(parse_signature("4,1^2"), specified=[1, 4])
    assert split.parts == (1, 4)
    assert (split.k, split.r, split.m) == (2, 0, 5)


def test_split_r_rejects_parts_not_in_signature():
    with pytest.raises(SignatureError):
        split_r(parse_signature("4,1^2"), specified=[4, 4])


def test_quadratic_signature():
    nu = parse_quadratic_signature("2,-1^6")
    assert nu.even_parts == (1,)
    assert nu.odd_parts == (0,) * 6
    assert (nu.m, nu.n) == (1, 6)
    assert str(nu) == "2,-1,-1,-1,-1,-1,-1"


@pytest.mark.parametrize("text", ["0,-1^4", "-3,-1", "-1,-1", "2,-1^5"])
def test_invalid_quadratic_signatures(text):
    with pytest.raises(SignatureError):
        parse_quadratic_signature(text)


def test_quadratic_signature_field_checks():
    with pytest.raises(SignatureError):
        QuadraticSignatureGenus0(even_parts=(0,), odd_parts=(0, 0))
    with pytest.raises(SignatureError):
        QuadraticSignatureGenus0(even_parts=(), odd_parts=(-1, 0))


def random_parts(rng: random.Random) -> tuple[int, int, list[int]]:
    ell = rng.choice([1, 2, 3])
    g = rng.randint(2, 12)
    parts = [rng.randint(-2 * ell, -1) for _ in range(rng.randint(0, 2))]
    remaining = ell * (2 * g - 2) - sum(parts)
    while remaining > 0:
        part = rng.randint(1, min(remaining, 5))
        parts.append(part)
        remaining -= part
    return ell, g, parts


@pytest.mark.parametrize("seed", range(5))
def test_derived_data_ignores_part_order(seed):
    rng = random.Random(seed)
    for _ in range(100):
        ell, g, parts = random_parts(rng)
        sig = StratumSignature(ell=ell, parts=tuple(parts))
        rng.shuffle(parts)
        shuffled = StratumSignature(ell=ell, parts=tuple(parts))
        assert (shuffled.genus, shuffled.n) == (sig.genus, sig.n) == (g, len(parts))
        assert split_r(shuffled) == split_r(sig)
        for holomorphic in (True, False):
            assert stratum_dimension(shuffled, holomorphic) == stratum_dimension(sig, holomorphic)
        assert canonical_parts(shuffled) == canonical_parts(sig)
        assert format_signature(shuffled) == format_signature(sig)
        assert canonical_parts(parse_signature(format_signature(sig), ell)) == canonical_parts(sig)
