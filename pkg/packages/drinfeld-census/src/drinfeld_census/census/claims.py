"""Published counting formulas evaluated against a census.

Every claim yields one :class:`ClaimVerdict` holding the formula value, the
empirical value (both as text, exact rationals as ``a/b``) and a verdict.
A mismatch is a result, not an error.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Iterable, List, Optional, Tuple, Union

from drinfeld_census.apoly import APoly, square_divisors
from drinfeld_census.errors import InvariantViolationError
from drinfeld_census.quadclass import hurwitz, is_imaginary

if TYPE_CHECKING:
    from drinfeld_census.census.core import CensusReport

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class Verdict(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    SKIPPED = "skipped"


CLAIM_IDS = (
    "iso-class-total",
    "supersingular-total",
    "ordinary-iso-total",
    "isogeny-class-count",
    "isogeny-class-count-admissible",
    "isogeny-class-count-admissible-imaginary",
    "isogeny-class-count-closed-form",
    "ratio-identities",
    "ratio-numerators",
    "automorphism-order",
    "weight-equals-iso-count",
    "weight-equals-hurwitz",
    "divisibility-criterion-smaller",
    "divisibility-criterion-larger",
    "shape-completeness",
    "shape-count-hurwitz-smaller-exact",
    "shape-count-hurwitz-smaller-cumulative",
    "shape-count-hurwitz-larger",
    "noncyclic-decomposition",
    "closed-form-c0",
    "closed-form-c-hurwitz-sum",
    "cyclic-iff-trivial-extension",
)


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: str
    paper_value: str
    empirical_value: str
    verdict: Verdict
    note: str = ""


def _text(value: Optional[Number]) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def _compare(claim_id: str, expected: Number, actual: Number, note: str = "") -> ClaimVerdict:
    verdict = Verdict.MATCH if expected == actual else Verdict.MISMATCH
    return ClaimVerdict(claim_id, _text(expected), _text(actual), verdict, note)


def _skipped(claim_id: str, note: str) -> ClaimVerdict:
    return ClaimVerdict(claim_id, "n/a", "n/a", Verdict.SKIPPED, note)


def _tally(claim_id: str, failures: int, checked: int, stated: str, note: str = "") -> ClaimVerdict:
    """Verdict for a claim quantified over many cases: empirical value is 'holds in k/N'."""
    verdict = Verdict.MATCH if failures == 0 else Verdict.MISMATCH
    return ClaimVerdict(claim_id, stated, f"holds in {checked - failures}/{checked}", verdict, note)


# -- closed forms -----------------------------------------------------------------


def iso_class_total(q: int, n: int) -> int:
    """Number of L-isomorphism classes of rank-2 modules over F_{q^n}."""
    if n % 2:
        return (q - 1) * q**n
    return q ** (n + 1) - q**n + q**2 - q


def supersingular_total(q: int, n: int) -> int:
    return q ** math.gcd(2, n) - 1


def _power(q: int, exponent: Fraction) -> Fraction:
    if exponent.denominator != 1:
        raise ValueError(f"non-integral exponent {exponent}")
    return Fraction(q) ** int(exponent)


def isogeny_class_total(q: int, d: int, m: int) -> Fraction:
    """Number of ordinary isogeny classes as published; brackets read as floor."""
    if m % 2 and d % 2:
        high = (m * d) // 2 + 1
        low = ((m - 2) * d) // 2 + 1
        return Fraction((q - 1) * (q**high - Fraction(q) ** low + 1))
    half = _power(q, Fraction(m * d, 2))
    lower = _power(q, Fraction((m - 2) * d, 2))
    return (q - 1) * (Fraction(q - 1, 2) * half - lower + 1)


def closed_form_denominator(q: int) -> int:
    """Isogeny-class count used by the small-case formulas for (d, m) in {(2, 1), (1, 2)}."""
    return q * (q - 1) - 2


def closed_form_c0(q: int, d: int, m: int) -> Optional[Fraction]:
    if (d, m) == (2, 1):
        return Fraction(q * (q - 1) - 5, q * (q - 1) - 2)
    if (d, m) == (1, 2):
        return Fraction((q - 1) * q - 4, (q - 1) * q - 2)
    return None


def closed_form_c(
    q: int, d: int, m: int, terms: Iterable[Tuple[bool, int]]
) -> Optional[Fraction]:
    """C(d, m, q) for (d, m) in {(2, 1), (1, 2)} from per-class Hurwitz sums.

    Args:
        q: Order of F_q
        d: Degree of P
        m: Degree of L over A/P
        terms: One ``(c_squared_is_four, s)`` per isogeny class, where ``s`` sums
            H(disc / i^2) over the monic i != 1 with i^2 dividing disc.

    Returns:
        The published value, or None outside the two small cases.
    """
    if (d, m) not in ((2, 1), (1, 2)):
        return None
    ordinary = q**3 - q**2 - q + 1
    subtracted = Fraction(0)
    for c_squared_is_four, s in terms:
        if (d, m) == (1, 2):
            subtracted += s
        elif c_squared_is_four:
            subtracted += Fraction(q - 1, 2) * s
        else:
            subtracted += (q - 1) * s
    return (ordinary - subtracted) / ordinary


# -- individual claims ----------------------------------------------------------------


def _iso_class_total(r: "CensusReport") -> ClaimVerdict:
    return _compare("iso-class-total", iso_class_total(r.q, r.n), r.iso_total)


def _supersingular_total(r: "CensusReport") -> ClaimVerdict:
    return _compare("supersingular-total", supersingular_total(r.q, r.n), r.supersingular_total)


def _ordinary_iso_total(r: "CensusReport") -> ClaimVerdict:
    expected = iso_class_total(r.q, r.n) - supersingular_total(r.q, r.n)
    note = "closed form q^3-q^2-q+1" if r.n == 2 else "iso total minus supersingular total"
    if r.n == 2 and expected != r.q**3 - r.q**2 - r.q + 1:
        note += " (disagrees with the difference)"
    return _compare("ordinary-iso-total", expected, r.ordinary_iso_total, note)


def _isogeny_class_count(r: "CensusReport") -> ClaimVerdict:
    return _compare(
        "isogeny-class-count",
        isogeny_class_total(r.q, r.d, r.m),
        r.isogeny_class_count,
        "bracket=floor; empirical = occurring Frobenius polynomials",
    )


def _isogeny_class_count_admissible(r: "CensusReport") -> ClaimVerdict:
    return _compare(
        "isogeny-class-count-admissible",
        isogeny_class_total(r.q, r.d, r.m),
        r.admissible_pairs,
        "bracket=floor; empirical = (c, mu) with deg c <= md/2 and P not dividing c",
    )


def _isogeny_class_count_admissible_imaginary(r: "CensusReport") -> ClaimVerdict:
    if r.admissible_imaginary_pairs is None:
        return _skipped("isogeny-class-count-admissible-imaginary", "skipped (even q)")
    return _compare(
        "isogeny-class-count-admissible-imaginary",
        isogeny_class_total(r.q, r.d, r.m),
        r.admissible_imaginary_pairs,
        "bracket=floor; admissible pairs with imaginary discriminant",
    )


def _closed_form_denominator(r: "CensusReport") -> ClaimVerdict:
    if (r.d, r.m) not in ((2, 1), (1, 2)):
        return _skipped("isogeny-class-count-closed-form", "stated for (2, 1) and (1, 2)")
    return _compare(
        "isogeny-class-count-closed-form", closed_form_denominator(r.q), r.isogeny_class_count
    )


def _ratio_identities(r: "CensusReport") -> ClaimVerdict:
    sums = (r.C + r.N, r.C0 + r.N0)
    verdict = Verdict.MATCH if sums == (1, 1) else Verdict.MISMATCH
    return ClaimVerdict(
        "ratio-identities", "C+N=1, C0+N0=1", f"C+N={sums[0]}, C0+N0={sums[1]}", verdict
    )


def _ratio_numerators(r: "CensusReport") -> ClaimVerdict:
    by_divisibility = sum(1 for c in r.classes if any(not i.is_one() for i in c.expected_i1))
    return _compare(
        "ratio-numerators",
        by_divisibility,
        r.noncyclic_classes,
        "classes with a nontrivial i, i^2 | P(1), i | c-2 vs classes with a non-cyclic member",
    )


def _automorphism_order(r: "CensusReport") -> ClaimVerdict:
    orders = sorted({a for c in r.classes for a in c.automorphism_orders})
    verdict = Verdict.MATCH if orders == [r.q - 1] else Verdict.MISMATCH
    return ClaimVerdict(
        "automorphism-order",
        str(r.q - 1),
        ",".join(str(a) for a in orders),
        verdict,
        "orders of Aut over all ordinary modules",
    )


def _weight_equals_iso_count(r: "CensusReport") -> ClaimVerdict:
    failures = sum(1 for c in r.classes if c.weighted_count != c.iso_count)
    return _tally(
        "weight-equals-iso-count",
        failures,
        len(r.classes),
        "W(F) = number of iso classes",
        "weighted count sum (q-1)/#Aut per isogeny class",
    )


def _weight_equals_hurwitz(r: "CensusReport") -> ClaimVerdict:
    if not r.odd_q:
        return _skipped("weight-equals-hurwitz", "skipped (even q)")
    failures = sum(1 for c in r.classes if c.hurwitz != c.iso_count)
    return _tally("weight-equals-hurwitz", failures, len(r.classes), "W(F) = H(disc)")


def _divisibility(r: "CensusReport", larger: bool) -> ClaimVerdict:
    claim_id = "divisibility-criterion-" + ("larger" if larger else "smaller")
    checked, failures = 0, 0
    for record in r.classes:
        trace = record.charpoly.c - _two(record)
        for shape in record.shapes:
            if shape.i1.is_one():
                continue
            checked += 1
            i = shape.i2 if larger else shape.i1
            if not (i.divides(trace) and (i * i).divides(record.value_at_one)):
                failures += 1
    return _tally(claim_id, failures, checked, "i | c-2 and i^2 | P(1) for non-cyclic shapes")


def _two(record) -> APoly:
    field = record.charpoly.c.field
    return APoly.constant(field, field.from_int(2))


def _shape_completeness(r: "CensusReport") -> ClaimVerdict:
    failures = 0
    for record in r.classes:
        observed = {s.i1.coeffs for s in record.shapes}
        expected = {i.coeffs for i in record.expected_i1}
        if observed != expected:
            failures += 1
    return _tally(
        "shape-completeness",
        failures,
        len(r.classes),
        "every i with i^2 | P(1) and i | c-2 occurs once per class",
    )


def _shape_count(r: "CensusReport", claim_id: str, pick: Callable) -> ClaimVerdict:
    if not r.odd_q:
        return _skipped(claim_id, "skipped (even q)")
    checked, failures = 0, 0
    for record in r.classes:
        for shape in record.shapes:
            checked += 1
            expected, actual = pick(shape)
            if expected is None or expected != actual:
                failures += 1
    return _tally(claim_id, failures, checked, "n(P, i) = H(disc / i^2)")


def _noncyclic_decomposition(r: "CensusReport") -> ClaimVerdict:
    from_histogram = sum(
        s.count
        for c in r.classes
        for s in c.shapes
        if not s.i1.is_one() and s.i1.coeffs in {i.coeffs for i in c.expected_i1}
    )
    return _compare(
        "noncyclic-decomposition",
        from_histogram,
        r.noncyclic_iso_total,
        "sum over classes and admissible i != 1 of n(P, i) vs direct tally",
    )


def _closed_form_c0(r: "CensusReport") -> ClaimVerdict:
    expected = closed_form_c0(r.q, r.d, r.m)
    if expected is None:
        return _skipped("closed-form-c0", "stated for (2, 1) and (1, 2)")
    return _compare("closed-form-c0", expected, r.C0)


def _hurwitz_sum_terms(r: "CensusReport") -> List[Tuple[bool, int]]:
    terms = []
    for record in r.classes:
        disc = record.disc
        if disc.is_zero() or not is_imaginary(disc):
            continue
        s = sum(hurwitz(disc // (i * i)) for i in square_divisors(disc) if not i.is_one())
        c_squared = record.charpoly.c * record.charpoly.c
        four = APoly.constant(c_squared.field, c_squared.field.from_int(4))
        terms.append((c_squared == four, s))
    return terms


def _closed_form_c(r: "CensusReport") -> ClaimVerdict:
    if (r.d, r.m) not in ((2, 1), (1, 2)):
        return _skipped("closed-form-c-hurwitz-sum", "stated for (2, 1) and (1, 2)")
    if not r.odd_q:
        return _skipped("closed-form-c-hurwitz-sum", "skipped (even q)")
    expected = closed_form_c(r.q, r.d, r.m, _hurwitz_sum_terms(r))
    return _compare(
        "closed-form-c-hurwitz-sum",
        expected,
        r.C,
        "ordinary total q^3-q^2-q+1 minus H(disc/i^2) summed over classes and i != 1",
    )


def _cyclic_iff_trivial_extension(r: "CensusReport") -> ClaimVerdict:
    trivial = (r.d, r.m) == (1, 1)
    all_cyclic = r.C == 1 and r.C0 == 1
    verdict = Verdict.MATCH if trivial == all_cyclic else Verdict.MISMATCH
    return ClaimVerdict(
        "cyclic-iff-trivial-extension",
        "C = C0 = 1" if trivial else "C < 1",
        f"C={_text(r.C)}, C0={_text(r.C0)}",
        verdict,
    )


def verify_claims(report: "CensusReport") -> List[ClaimVerdict]:
    """Evaluate every published claim against the census; never raises on a mismatch."""
    verdicts = [
        _iso_class_total(report),
        _supersingular_total(report),
        _ordinary_iso_total(report),
        _isogeny_class_count(report),
        _isogeny_class_count_admissible(report),
        _isogeny_class_count_admissible_imaginary(report),
        _closed_form_denominator(report),
        _ratio_identities(report),
        _ratio_numerators(report),
        _automorphism_order(report),
        _weight_equals_iso_count(report),
        _weight_equals_hurwitz(report),
        _divisibility(report, larger=False),
        _divisibility(report, larger=True),
        _shape_completeness(report),
        _shape_count(
            report, "shape-count-hurwitz-smaller-exact", lambda s: (s.hurwitz_smaller, s.count)
        ),
        _shape_count(
            report,
            "shape-count-hurwitz-smaller-cumulative",
            lambda s: (s.hurwitz_smaller, s.cumulative),
        ),
        _shape_count(
            report, "shape-count-hurwitz-larger", lambda s: (s.hurwitz_larger, s.count)
        ),
        _noncyclic_decomposition(report),
        _closed_form_c0(report),
        _closed_form_c(report),
        _cyclic_iff_trivial_extension(report),
    ]
    if tuple(v.claim_id for v in verdicts) != CLAIM_IDS:
        raise InvariantViolationError("claim rows out of step with CLAIM_IDS")
    mismatches = [v.claim_id for v in verdicts if v.verdict is Verdict.MISMATCH]
    skipped = sum(1 for v in verdicts if v.verdict is Verdict.SKIPPED)
    logger.info(
        "claims for q=%d n=%d d=%d: %d match, %d mismatch, %d skipped",
        report.q,
        report.n,
        report.d,
        len(verdicts) - len(mismatches) - skipped,
        len(mismatches),
        skipped,
    )
    if mismatches:
        logger.warning("mismatched claims: %s", ", ".join(mismatches))
    return verdicts
