"""Polynomials in A = F_q[T].

Text format (used by reports and accepted by the CLI): coefficients ascending,
every coefficient written out, e.g. ``2+0*T+1*T^2``. The parser accepts the
looser grammar::

    poly  := term (("+" | "-") term)*
    term  := ["-"] [coeff ["*"]] ["T" ["^" exponent]]
    coeff := decimal integer

For prime q an integer coefficient is reduced mod p. For q = p^s with s > 1
an integer is an element code in ``[0, q)`` (see :mod:`drinfeld_census.fields`);
the leading ``-`` negates in F_q.

Values are stored as tuples of F_q codes so they hash and print predictably;
ring operations, gcd, irreducibility and factorization run on ``galois.Poly``
over the galois class of F_q (see :attr:`FiniteField.gf`).
"""

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import galois

from drinfeld_census.errors import (
    ContextMismatchError,
    DivisionByZeroError,
    PolynomialParseError,
    ZeroPolynomialError,
)
from drinfeld_census.fields import FieldCtx, FieldElem, FiniteField, min_poly_coeffs

# deg(0); strictly below every real degree
DEG_ZERO = -1

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_BODY_RE = re.compile(r"^(?:(\d+)(\*)?)?(T(?:\^(\d+))?)?$")


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, slots=True)
class APoly:
    """Element of F_q[T] with coefficients stored as F_q codes, index = degree."""

    field: FiniteField
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: FiniteField) -> "APoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FiniteField) -> "APoly":
        return cls(field, (1,))

    @classmethod
    def t(cls, field: FiniteField) -> "APoly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FiniteField, code: int) -> "APoly":
        return cls(field, (code,))

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> "APoly":
        """Build from integers reduced into the prime subfield, low-to-high."""
        return cls(field, tuple(field.from_int(k) for k in ints))

    @classmethod
    def parse(cls, text: str, field: FiniteField) -> "APoly":
        """Parse the text grammar documented in the module docstring.

        Raises:
            PolynomialParseError: On malformed input or out-of-range coefficient codes.
        """
        cleaned = text.replace(" ", "")
        if not cleaned:
            raise PolynomialParseError("empty polynomial text")
        pieces = list(_TERM_RE.finditer(cleaned))
        if "".join(m.group(0) for m in pieces) != cleaned:
            raise PolynomialParseError(f"cannot parse polynomial {text!r}")
        acc: dict = {}
        for piece in pieces:
            sign, body = piece.group(1), piece.group(2)
            match = _BODY_RE.match(body)
            if match is None or (match.group(1) is None and match.group(3) is None):
                raise PolynomialParseError(f"bad term {body!r} in {text!r}")
            if match.group(2) and match.group(3) is None:
                raise PolynomialParseError(f"dangling '*' in term {body!r}")
            coeff = cls._coeff_code(field, match.group(1), text)
            if sign == "-":
                coeff = field.neg(coeff)
            if match.group(3) is None:
                exponent = 0
            else:
                exponent = int(match.group(4)) if match.group(4) else 1
            acc[exponent] = field.add(acc.get(exponent, 0), coeff)
        top = max(acc) if acc else 0
        return cls(field, tuple(acc.get(i, 0) for i in range(top + 1)))

    @staticmethod
    def _coeff_code(field: FiniteField, literal, text: str) -> int:
        if literal is None:
            return 1
        value = int(literal)
        if field.order == field.p:
            return field.from_int(value)
        if value >= field.order:
            raise PolynomialParseError(
                f"coefficient code {value} out of range for F_{field.order} in {text!r}"
            )
        return value

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "APoly":
        if not self.coeffs:
            raise ZeroPolynomialError("cannot normalise the zero polynomial")
        return self.scale(self.field.inv(self.coeffs[-1]))

    def scale(self, code: int) -> "APoly":
        f = self.field
        return APoly(f, tuple(f.mul(code, a) for a in self.coeffs))

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring arithmetic ------------------------------------------------------

    def to_galois(self) -> galois.Poly:
        """This polynomial as a ``galois.Poly`` over the galois class of F_q."""
        return self.field.poly(self.coeffs)

    @classmethod
    def from_galois(cls, field: FiniteField, poly: galois.Poly) -> "APoly":
        return cls(field, tuple(int(c) for c in poly.coeffs[::-1]))

    def _check(self, other: "APoly") -> None:
        if other.field is not self.field:
            raise ContextMismatchError("polynomials over different coefficient fields")

    def __add__(self, other: "APoly") -> "APoly":
        self._check(other)
        return APoly.from_galois(self.field, self.to_galois() + other.to_galois())

    def __neg__(self) -> "APoly":
        return APoly.from_galois(self.field, -self.to_galois())

    def __sub__(self, other: "APoly") -> "APoly":
        self._check(other)
        return APoly.from_galois(self.field, self.to_galois() - other.to_galois())

    def __mul__(self, other: "APoly") -> "APoly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return APoly(self.field, ())
        return APoly.from_galois(self.field, self.to_galois() * other.to_galois())

    def __pow__(self, e: int) -> "APoly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        return APoly.from_galois(self.field, self.to_galois() ** e)

    def __divmod__(self, other: "APoly") -> Tuple["APoly", "APoly"]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        quot, rem = divmod(self.to_galois(), other.to_galois())
        return APoly.from_galois(self.field, quot), APoly.from_galois(self.field, rem)

    def __floordiv__(self, other: "APoly") -> "APoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "APoly") -> "APoly":
        return divmod(self, other)[1]

    def powmod(self, e: int, modulus: "APoly") -> "APoly":
        """``self**e mod modulus`` by galois modular exponentiation."""
        self._check(modulus)
        if modulus.is_zero():
            raise DivisionByZeroError("reduction modulo the zero polynomial")
        return APoly.from_galois(self.field, pow(self.to_galois(), e, modulus.to_galois()))

    def divides(self, other: "APoly") -> bool:
        """True iff ``self`` divides ``other``. Zero divides only zero."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x: Union[FieldElem, "APoly"]) -> Union[FieldElem, "APoly"]:
        return evaluate(self, x)

    # -- presentation ---------------------------------------------------------

    def format(self) -> str:
        """Canonical ascending text form, e.g. ``2+0*T+1*T^2``."""
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*T")
            else:
                terms.append(f"{c}*T^{i}")
        return "+".join(terms)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Degree first, then coefficients high-to-low."""
        return (self.degree, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"APoly({self.format()!r}, q={self.field.order})"


# -- module-level operations ---------------------------------------------------


def gcd(a: APoly, b: APoly) -> APoly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._check(b)
    if b.is_zero():
        return a if a.is_zero() else a.monic()
    if a.is_zero():
        return b.monic()
    return APoly.from_galois(a.field, galois.gcd(a.to_galois(), b.to_galois()))


def lcm(a: APoly, b: APoly) -> APoly:
    a._check(b)
    if a.is_zero() or b.is_zero():
        return APoly.zero(a.field)
    return APoly.from_galois(a.field, galois.lcm(a.monic().to_galois(), b.monic().to_galois()))


def evaluate(a: APoly, x: Union[FieldElem, APoly]) -> Union[FieldElem, APoly]:
    """Evaluate ``a`` with its coefficients read as F_q scalars.

    ``x`` may be an element of any tower level containing F_q (codes embed
    unchanged; Horner's rule on the level's tables) or another polynomial
    (composition, done by galois).
    """
    if isinstance(x, APoly):
        a._check(x)
        return APoly.from_galois(a.field, a.to_galois()(x.to_galois()))
    target = x.field
    if target.order < a.field.order or any(c >= target.order for c in a.coeffs):
        raise ContextMismatchError("evaluation point does not lie in an extension of F_q")
    acc = 0
    for c in reversed(a.coeffs):
        acc = target.add(target.mul(acc, x.code), c)
    return FieldElem(target, acc)


def enumerate_monic(field: FiniteField, deg: int) -> List[APoly]:
    """All q^deg monic polynomials of exactly degree ``deg`` in stable order."""
    if deg < 0:
        raise ValueError("degree must be non-negative")
    return [
        APoly(field, tuple(low) + (1,))
        for low in itertools.product(range(field.order), repeat=deg)
    ]


def is_irreducible(a: APoly) -> bool:
    """Irreducibility in F_q[T]; constants are not irreducible.

    Raises:
        ZeroPolynomialError: If ``a`` is zero.
    """
    if a.is_zero():
        raise ZeroPolynomialError("irreducibility of the zero polynomial")
    if a.degree < 1:
        return False
    return a.monic().to_galois().is_irreducible()


@lru_cache(maxsize=None)
def monic_irreducibles(field: FiniteField, deg: int) -> Tuple[APoly, ...]:
    """Monic irreducibles of a degree, in :func:`enumerate_monic` order."""
    return tuple(a for a in enumerate_monic(field, deg) if is_irreducible(a))


def factor(a: APoly) -> Tuple[int, List[Tuple[APoly, int]]]:
    """Factor ``a`` into a unit and monic irreducible powers.

    Returns:
        (unit code, [(prime, exponent), ...]) sorted by :meth:`APoly.sort_key`.

    Raises:
        ZeroPolynomialError: If ``a`` is zero.
    """
    if a.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    unit = a.leading
    rest = a.monic()
    if rest.degree < 1:
        return unit, []
    primes, exponents = rest.to_galois().factors()
    factors = [(APoly.from_galois(a.field, f), int(e)) for f, e in zip(primes, exponents)]
    factors.sort(key=lambda pe: pe[0].sort_key())
    return unit, factors


def square_divisors(d: APoly) -> List[APoly]:
    """All monic ``l`` (1 included) with ``l**2`` dividing ``d``, in sort-key order.

    Raises:
        ZeroPolynomialError: If ``d`` is zero.
    """
    _, factors = factor(d)
    choices = [[prime**e for e in range(exp // 2 + 1)] for prime, exp in factors]
    out = []
    for combo in itertools.product(*choices):
        value = APoly.one(d.field)
        for piece in combo:
            value = value * piece
        out.append(value)
    return sorted(out, key=APoly.sort_key)


def min_poly_over_fq(ctx: FieldCtx, theta: FieldElem) -> APoly:
    """Minimal polynomial over F_q of an element of L."""
    return APoly(ctx.base, min_poly_coeffs(ctx, theta))
