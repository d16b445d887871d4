from fractions import Fraction

import pytest

from drinfeld_census import CensusFactory, verifies
from drinfeld_census.census import CLAIM_IDS, Verdict, verify_claims
from drinfeld_census.census.claims import (
    closed_form_c,
    closed_form_c0,
    closed_form_denominator,
    isogeny_class_total,
    iso_class_total,
    supersingular_total,
)


@verifies("iso-class-total")
@pytest.mark.parametrize("q, n, expected", [(3, 1, 6), (3, 2, 24), (3, 3, 54), (2, 2, 6)])
def test_iso_class_total(q, n, expected):
    """Test (q-1)q^n for odd n and q^(n+1) - q^n + q^2 - q for even n."""
    # act & assert
    assert iso_class_total(q, n) == expected


@verifies("supersingular-total")
def test_supersingular_total():
    """Test q^gcd(2, n) - 1."""
    # act & assert
    assert supersingular_total(3, 3) == 2
    assert supersingular_total(3, 2) == 8
    assert supersingular_total(5, 4) == 24


@verifies("isogeny-class-count", "isogeny-class-count-closed-form")
def test_isogeny_class_total_and_small_case_denominator():
    """Test the even-m branch at q = 3, d = 1, m = 2 and q(q-1) - 2."""
    # act & assert
    assert isogeny_class_total(3, 1, 2) == 6
    assert isinstance(isogeny_class_total(3, 1, 3), Fraction)
    assert closed_form_denominator(3) == 4
    assert closed_form_denominator(5) == 18


@verifies("closed-form-c0")
def test_closed_form_c0():
    """Test the two stated small cases and None elsewhere."""
    # act & assert
    assert closed_form_c0(3, 2, 1) == Fraction(1, 4)
    assert closed_form_c0(3, 1, 2) == Fraction(1, 2)
    assert closed_form_c0(5, 2, 1) == Fraction(15, 18)
    assert closed_form_c0(3, 1, 1) is None
    assert closed_form_c0(3, 3, 1) is None


@verifies("closed-form-c-hurwitz-sum")
def test_closed_form_c_subtracts_hurwitz_sums():
    """Test the ordinary total q^3-q^2-q+1 minus the per-class sums, with the (2, 1) weights."""
    # arrange
    terms = [(True, 2), (False, 1), (False, 0)]

    # act & assert
    assert closed_form_c(3, 1, 2, terms) == Fraction(16 - 3, 16)
    assert closed_form_c(3, 2, 1, terms) == Fraction(16 - 2 - 2, 16)
    assert closed_form_c(5, 2, 1, terms) == Fraction(96 - 2 * 2 - 4 * 1, 96)
    assert closed_form_c(3, 1, 2, []) == 1
    assert closed_form_c(3, 1, 1, terms) is None
    assert closed_form_c(3, 3, 1, terms) is None


def test_every_claim_gets_exactly_one_verdict(census_factory: CensusFactory):
    """Test that the audit emits each claim id once, with text values."""
    # arrange
    report = census_factory.create_report(3, 2, 1)

    # act
    verdicts = verify_claims(report)

    # assert
    ids = [v.claim_id for v in verdicts]
    assert len(ids) == len(set(ids)) == 22
    assert tuple(ids) == CLAIM_IDS
    for v in verdicts:
        assert isinstance(v.paper_value, str)
        assert isinstance(v.empirical_value, str)
        assert v.verdict in (Verdict.MATCH, Verdict.MISMATCH, Verdict.SKIPPED)


@verifies("isogeny-class-count-closed-form", "closed-form-c0", "closed-form-c-hurwitz-sum")
def test_small_case_claims_skip_outside_their_range(census_factory: CensusFactory):
    """Test that (d, m) = (1, 1) skips the small-case formulas."""
    # act
    verdicts = {v.claim_id: v for v in census_factory.create_report(3, 1, 1).claims}

    # assert
    for claim_id in (
        "isogeny-class-count-closed-form",
        "closed-form-c0",
        "closed-form-c-hurwitz-sum",
    ):
        assert verdicts[claim_id].verdict is Verdict.SKIPPED
        assert verdicts[claim_id].note == "stated for (2, 1) and (1, 2)"
        assert verdicts[claim_id].paper_value == "n/a"


def test_ratio_identities_text(census_factory: CensusFactory):
    """Test the formatted sums of the proportion identities."""
    # act
    verdicts = {v.claim_id: v for v in census_factory.create_report(3, 1, 1).claims}

    # assert
    assert verdicts["ratio-identities"].empirical_value == "C+N=1, C0+N0=1"
    assert verdicts["automorphism-order"].empirical_value == "2"
    assert verdicts["weight-equals-iso-count"].empirical_value == "holds in 4/4"
