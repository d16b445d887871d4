"""Class numbers of orders in imaginary quadratic extensions of F_q(T), q odd.

Conventions:

* ``D`` is imaginary when ∞ does not split in F_q(T)(√D): deg D odd
  (ramified), or deg D even with a non-square leading coefficient (inert).
  A constant D is imaginary iff it is a non-square.
* ``h(D)`` is the number of invertible ideal classes of the order
  ``A + f·O_K`` where ``D = f²·D₀`` with D₀ squarefree.
* For squarefree non-constant D₀ the class number is read off the curve
  ``y² = D₀(T)``: ``L(1)`` when ∞ ramifies, ``2·L(1)`` when ∞ is inert (the
  place at infinity then has degree 2). Points at infinity: one for odd
  degree; for even degree two or none, by squareness of the leading
  coefficient over the counting field.
* Constant D₀ gives ``O_K = F_{q²}[T]``, a principal ideal domain; orders of
  conductor f ≠ 1 in it carry the unit index ``q + 1``.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from drinfeld_census.apoly import APoly, enumerate_monic, evaluate, factor, gcd, square_divisors
from drinfeld_census.config import DEFAULT_BRUTE_FORCE_MAX_DEGREE
from drinfeld_census.errors import (
    CapExceededError,
    EvenCharacteristicUnsupportedError,
    NonIntegerResultError,
    NotImaginaryError,
    NotSquarefreeError,
    ZeroPolynomialError,
)
from drinfeld_census.fields import FiniteField, make_ctx, prime_power_decomposition

logger = logging.getLogger(__name__)


class ClassNumberMethod:
    """Tags recording how a class number was obtained."""

    ZETA = "zeta"
    CONDUCTOR_FORMULA = "conductor-formula"
    BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class ClassNumberResult:
    h: int
    method: str

    def __post_init__(self):
        if self.h < 1:
            raise NonIntegerResultError(f"class number must be positive, got {self.h}")


@dataclass(frozen=True)
class ImagDisc:
    """D = conductor² · fundamental_part with the conductor monic and maximal."""

    D: APoly
    fundamental_part: APoly
    conductor: APoly


def _require_odd(field: FiniteField) -> None:
    if field.p == 2:
        raise EvenCharacteristicUnsupportedError(
            f"class numbers are only available for odd q, got q = {field.order}"
        )


def is_imaginary(D: APoly) -> bool:
    """True iff ∞ does not split in F_q(T)(√D).

    Raises:
        EvenCharacteristicUnsupportedError: If q is even.
        ZeroPolynomialError: If D is zero.
    """
    _require_odd(D.field)
    if D.is_zero():
        raise ZeroPolynomialError("the zero polynomial is not a discriminant")
    if D.degree % 2:
        return True
    return not D.field.is_square(D.leading)


def split_discriminant(D: APoly) -> ImagDisc:
    """Factor D = f²·D₀ with D₀ squarefree (leading unit kept in D₀)."""
    unit, factors = factor(D)
    field = D.field
    fundamental = APoly.constant(field, unit)
    conductor = APoly.one(field)
    for prime, exponent in factors:
        conductor = conductor * prime ** (exponent // 2)
        if exponent % 2:
            fundamental = fundamental * prime
    return ImagDisc(D, fundamental, conductor)


def _is_squarefree(D: APoly) -> bool:
    _, factors = factor(D)
    return all(exponent == 1 for _, exponent in factors)


def quadratic_character(D0: APoly, ell: APoly) -> int:
    """Legendre symbol of D₀ modulo the monic irreducible ℓ: 0, 1 or -1."""
    _require_odd(D0.field)
    residue = D0 % ell
    if residue.is_zero():
        return 0
    norm = D0.field.order**ell.degree
    value = residue.powmod((norm - 1) // 2, ell)
    return 1 if value.is_one() else -1


def point_counts(D0: APoly, upto: int) -> List[int]:
    """#C(F_{q^k}) for k = 1..upto on the smooth model of y² = D₀(T)."""
    p, s = prime_power_decomposition(D0.field.order)
    counts = []
    for k in range(1, upto + 1):
        ext = make_ctx(p, s, k, cap=None).ext
        affine = 0
        for x in ext.elements():
            value = evaluate(D0, x).code
            affine += 1 + ext.char(value)
        if D0.degree % 2:
            at_infinity = 1
        else:
            at_infinity = 1 + ext.char(D0.leading)
        counts.append(affine + at_infinity)
    return counts


def l_polynomial(D0: APoly) -> List[int]:
    """Coefficients a_0..a_{2g} of the numerator L(u) of the zeta function of y² = D₀(T).

    Raises:
        NotSquarefreeError: If D₀ is not squarefree.
    """
    _require_odd(D0.field)
    if not _is_squarefree(D0):
        raise NotSquarefreeError(f"{D0} is not squarefree")
    genus = max((D0.degree - 1) // 2, 0)
    if genus == 0:
        return [1]
    q = D0.field.order
    counts = point_counts(D0, genus)
    power_sums = [q**k + 1 - n_k for k, n_k in enumerate(counts, start=1)]
    coeffs = [1]
    for k in range(1, genus + 1):
        total = -sum(power_sums[i - 1] * coeffs[k - i] for i in range(1, k + 1))
        if total % k:
            raise NonIntegerResultError(f"non-integral L-polynomial coefficient for {D0}")
        coeffs.append(total // k)
    for i in range(genus - 1, -1, -1):
        coeffs.append(q ** (genus - i) * coeffs[i])
    return coeffs


def weil_roots(D0: APoly) -> np.ndarray:
    """Reciprocal roots α of L(u) = Π(1 − αu); each has |α| = √q."""
    coeffs = l_polynomial(D0)
    if len(coeffs) == 1:
        return np.array([], dtype=complex)
    return np.roots(np.array(coeffs, dtype=float))


@lru_cache(maxsize=None)
def class_number_fundamental(D0: APoly) -> ClassNumberResult:
    """h of the maximal order for squarefree imaginary D₀.

    Raises:
        NotSquarefreeError: If D₀ has a square factor.
        NotImaginaryError: If ∞ splits.
    """
    if not is_imaginary(D0):
        raise NotImaginaryError(f"{D0} is not an imaginary discriminant")
    if not _is_squarefree(D0):
        raise NotSquarefreeError(f"{D0} is not squarefree")
    if D0.degree == 0:
        return ClassNumberResult(1, ClassNumberMethod.ZETA)
    value = sum(l_polynomial(D0))
    h = value if D0.degree % 2 else 2 * value
    logger.debug("h(%s) = %d from the zeta function", D0, h)
    return ClassNumberResult(h, ClassNumberMethod.ZETA)


@lru_cache(maxsize=None)
def class_number(D: APoly) -> ClassNumberResult:
    """h(D) for the order of discriminant D by the conductor formula.

    Raises:
        NotImaginaryError: If ∞ splits in F_q(T)(√D).
        NonIntegerResultError: If the formula does not give an integer.
    """
    if not is_imaginary(D):
        raise NotImaginaryError(f"{D} is not an imaginary discriminant")
    split = split_discriminant(D)
    base = class_number_fundamental(split.fundamental_part)
    if split.conductor.is_one():
        return base
    q = D.field.order
    value = Fraction(base.h)
    _, primes = factor(split.conductor)
    for ell, exponent in primes:
        norm = q**ell.degree
        chi = quadratic_character(split.fundamental_part, ell)
        value *= norm ** (exponent - 1) * (norm - chi)
    if split.fundamental_part.degree == 0:
        value /= q + 1
    if value.denominator != 1:
        raise NonIntegerResultError(f"conductor formula gives {value} for {D}")
    return ClassNumberResult(int(value), ClassNumberMethod.CONDUCTOR_FORMULA)


def hurwitz_terms(D: APoly) -> List[Tuple[APoly, APoly, int]]:
    """The summands ``(l, D/l², h(D/l²))`` of H(D), l monic with l² | D.

    Raises:
        NotImaginaryError: If D is not imaginary.
    """
    if not is_imaginary(D):
        raise NotImaginaryError(f"{D} is not an imaginary discriminant")
    terms = []
    for ell in square_divisors(D):
        reduced = D // (ell * ell)
        if is_imaginary(reduced):
            terms.append((ell, reduced, class_number(reduced).h))
    return terms


def hurwitz(D: APoly) -> int:
    """H(D) = Σ_{l² | D} h(D/l²)."""
    return sum(h for _, _, h in hurwitz_terms(D))


# -- independent oracle ------------------------------------------------------


def _polys_below(field: FiniteField, degree: int) -> List[APoly]:
    """All polynomials of degree < ``degree`` (zero included)."""
    return [APoly(field, tuple(c)) for c in itertools.product(range(field.order), repeat=degree)]


def _ideal_neighbours(D: APoly, a: APoly, b: APoly) -> List[Tuple[APoly, APoly]]:
    bound = D.degree
    field = D.field
    neighbours = []
    span = (bound - a.degree) // 2 + 1
    for t in _polys_below(field, max(span, 1)):
        lifted = b + a * t
        quot, rem = divmod(lifted * lifted - D, a)
        if not rem.is_zero():
            continue
        new_a = quot.monic()
        if new_a.degree > bound:
            continue
        neighbours.append((new_a, (-lifted) % new_a))
    return neighbours


def brute_force_class_number(
    D: APoly, max_degree: Optional[int] = DEFAULT_BRUTE_FORCE_MAX_DEGREE
) -> ClassNumberResult:
    """Count ideal classes of the order of discriminant D by walking primitive ideals.

    An ideal is ``(a, b + √D)`` with a monic, ``b mod a`` and ``b² ≡ D (mod a)``,
    primitive when ``gcd(a, b, (b² − D)/a) = 1``. Two ideals are joined when one
    is obtained from the other by lifting b modulo a and swapping to the
    cofactor ``(b² − D)/a``. Classes are the connected components among ideals
    with ``deg a ≤ deg D`` that contain an ideal with ``deg a ≤ deg D / 2``.

    Raises:
        NotImaginaryError: If D is not imaginary.
        CapExceededError: If deg D exceeds ``max_degree``.
    """
    if not is_imaginary(D):
        raise NotImaginaryError(f"{D} is not an imaginary discriminant")
    if max_degree is not None and D.degree > max_degree:
        raise CapExceededError(
            f"brute-force class number limited to degree {max_degree}, got {D.degree}"
        )
    field = D.field
    visited = set()
    components = 0
    for degree in range(D.degree // 2 + 1):
        for a in enumerate_monic(field, degree):
            for b in _polys_below(field, degree):
                quot, rem = divmod(b * b - D, a)
                if not rem.is_zero() or not gcd(gcd(a, b), quot).is_one():
                    continue
                start = (a.coeffs, b.coeffs)
                if start in visited:
                    continue
                components += 1
                visited.add(start)
                queue = deque([(a, b)])
                while queue:
                    node = queue.popleft()
                    for nxt in _ideal_neighbours(D, *node):
                        key = (nxt[0].coeffs, nxt[1].coeffs)
                        if key not in visited:
                            visited.add(key)
                            queue.append(nxt)
    logger.debug("brute force: %d classes for D = %s (%d ideals)", components, D, len(visited))
    return ClassNumberResult(components, ClassNumberMethod.BRUTE_FORCE)
