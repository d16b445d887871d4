"""Exact arithmetic in the tower F_p ⊂ F_q ⊂ L = F_{q^n}, built on :mod:`galois`.

Every element of every level is coded by a non-negative integer: the base-p
digit vector of the element across the whole tower, lowest digit first. An
element of F_q = F_p[x]/(f) with coefficients (b_0, ..., b_{s-1}) has code
``sum(b_i * p**i)``; an element of L = F_q[y]/(g) with F_q-coefficients
(a_0, ..., a_{n-1}) has code ``sum(a_j * q**j)``. This is the integer
representation galois uses for ``galois.Poly`` over ``GF(p)`` and ``GF(q)``,
so a code converts with ``galois.Poly.Int(code, field=...)`` and ``int(poly)``.
Consequences:

* the embedding F_p ⊂ F_q ⊂ L is the identity on codes (an F_q element is an
  L element whose only nonzero digit is a_0);
* ascending code order is the element order used everywhere. It is
  lexicographic on coefficient vectors with the highest-degree coefficient
  most significant, so 0 comes first and 1 second.

Moduli are the lexicographically smallest monic irreducible polynomials of
their degree, where candidates are compared by their non-leading coefficient
tuple read low-to-high (``a_0`` first, each coefficient by its code). galois
decides irreducibility; its own ``method="min"`` ordering compares the other
way round and is not used.

galois has no relative extension field type, so each level keeps
exponential/logarithm/Zech tables of its primitive element. The tables are
produced once per level from galois (``primitive_element`` and ``Poly``
arithmetic modulo the level's modulus); after that every operation on codes is
a lookup.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Type

import galois
import numpy as np

from drinfeld_census.config import DEFAULT_CAP
from drinfeld_census.errors import (
    CapExceededError,
    ContextMismatchError,
    DivisionByZeroError,
    InvariantViolationError,
    NonPrimeError,
)

logger = logging.getLogger(__name__)


def is_prime(p: int) -> bool:
    return p >= 2 and galois.is_prime(p)


def prime_power_decomposition(q: int) -> Tuple[int, int]:
    """Split a prime power q into (p, s) with q = p**s.

    Raises:
        NonPrimeError: If q is not a prime power.
    """
    if q < 2 or not galois.is_prime_power(q):
        raise NonPrimeError(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


class FiniteField:
    """One level of the tower with table-driven arithmetic on integer codes.

    A level is either the prime field F_p or a simple extension
    ``subfield[z]/(modulus)``. After construction the multiplicative group is
    described by exponential/logarithm tables of a primitive element and
    addition uses Zech logarithms, so every operation is a table lookup.
    """

    def __init__(
        self,
        p: int,
        subfield: Optional["FiniteField"] = None,
        modulus: Optional[Tuple[int, ...]] = None,
        variable: str = "x",
    ):
        """Build a level.

        Args:
            p: The characteristic.
            subfield: The next-lower level, or None for the prime field.
            modulus: Monic irreducible over ``subfield``, coefficient codes low-to-high
                including the leading 1. Ignored for the prime field.
            variable: Name of the adjoined root in text output.
        """
        self.p = p
        self.subfield = subfield
        self.variable = variable
        if subfield is None:
            self.degree = 1
            self.modulus: Tuple[int, ...] = (0, 1)
            self.order = p
        else:
            if modulus is None or modulus[-1] != 1:
                raise ValueError("extension modulus must be monic")
            self.degree = len(modulus) - 1
            self.modulus = tuple(modulus)
            self.order = subfield.order**self.degree
        self._group_order = self.order - 1
        self._build_tables()

    # -- galois views ---------------------------------------------------------

    @cached_property
    def gf(self) -> Type[galois.FieldArray]:
        """The galois field class whose integer representation equals these codes.

        Raises:
            ContextMismatchError: For an extension of a non-prime level, which
                galois cannot express with matching codes.
        """
        if self.subfield is None:
            return galois.GF(self.p)
        if self.degree == 1:
            return self.subfield.gf
        if self.subfield.order != self.p:
            raise ContextMismatchError(
                f"level of order {self.order} is a relative extension without a galois class"
            )
        return galois.GF(self.order, irreducible_poly=self.modulus_poly)

    @property
    def modulus_poly(self) -> galois.Poly:
        """The defining polynomial as a ``galois.Poly`` over the subfield."""
        if self.subfield is None:
            raise ContextMismatchError("the prime field has no defining polynomial")
        return galois.Poly(list(self.modulus), field=self.subfield.gf, order="asc")

    def poly(self, coeffs: Sequence[int]) -> galois.Poly:
        """``galois.Poly`` over this level from codes, low-to-high."""
        return galois.Poly(list(coeffs) or [0], field=self.gf, order="asc")

    # -- construction ---------------------------------------------------------

    def _build_tables(self) -> None:
        m = self._group_order
        if self.subfield is None:
            generator = self.gf.primitive_element
            powers = (generator ** np.arange(m)).tolist()
            self.primitive = int(generator)
        elif self.degree == 1:
            sub = self.subfield
            powers = list(sub._exp)
            self.primitive = sub.primitive
        else:
            modulus = self.modulus_poly
            generator = galois.primitive_element(modulus)
            power = galois.Poly.One(field=self.subfield.gf)
            powers = []
            for _ in range(m):
                powers.append(int(power))
                power = (power * generator) % modulus
            if int(power) != 1:
                raise InvariantViolationError(f"{generator} does not generate the unit group")
            self.primitive = int(generator)
        if len(set(powers)) != m:
            raise InvariantViolationError(
                f"no primitive element in level of order {self.order}; modulus is not irreducible"
            )
        self._exp: List[int] = [int(v) for v in powers]
        self._log: List[int] = [-1] * self.order
        for k, value in enumerate(self._exp):
            self._log[value] = k
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        self._zech: List[int] = [-1] * m
        for k, value in enumerate(self._exp):
            one_plus = self._add_one(value)
            self._zech[k] = self._log[one_plus] if one_plus else -1

    def _add_one(self, a: int) -> int:
        low = a % self.p
        return a - low + (low + 1) % self.p

    # -- coordinates ----------------------------------------------------------

    def digits(self, a: int) -> Tuple[int, ...]:
        """Coefficient vector of ``a`` over the subfield, length = degree."""
        if self.subfield is None:
            return (a,)
        base = self.subfield.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, base)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits: Sequence[int]) -> int:
        """Inverse of :meth:`digits`; missing high digits are zero."""
        if self.subfield is None:
            return digits[0] % self.p if digits else 0
        base = self.subfield.order
        code = 0
        for d in reversed(digits):
            code = code * base + d
        return code

    # -- arithmetic on codes --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.subfield is None:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        m = self._group_order
        la = self._log[a]
        diff = self._log[b] - la
        if diff < 0:
            diff += m
        z = self._zech[diff]
        if z < 0:
            return 0
        return self._exp[(la + z) % m]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        if self.subfield is None:
            return self.p - a
        m = self._group_order
        return self._exp[(self._log[a] + m // 2) % m]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._group_order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        m = self._group_order
        return self._exp[(m - self._log[a]) % m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        """``a**e``; negative exponents invert first."""
        if e < 0:
            a, e = self.inv(a), -e
        return self.power_by_log(a, e)

    def power_by_log(self, a: int, e: int) -> int:
        """``a**e`` for e >= 0 through the logarithm table."""
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % self._group_order]

    def log(self, a: int) -> int:
        """Discrete logarithm to the base :attr:`primitive`."""
        if a == 0:
            raise DivisionByZeroError("logarithm of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self._group_order]

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def char(self, a: int) -> int:
        """Quadratic character: 0, 1 or -1 (odd characteristic)."""
        if a == 0:
            return 0
        return 1 if self._log[a] % 2 == 0 else -1

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    # -- presentation ---------------------------------------------------------

    def element(self, code: int) -> "FieldElem":
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for field of order {self.order}")
        return FieldElem(self, code)

    def elements(self) -> List["FieldElem"]:
        """All elements in ascending code order."""
        return [FieldElem(self, c) for c in range(self.order)]

    def format(self, a: int) -> str:
        """Text form: an integer for prime fields, a polynomial in the level's root otherwise."""
        if self.subfield is None:
            return str(a)
        terms = []
        for i, d in enumerate(self.digits(a)):
            if d == 0:
                continue
            coeff = self.subfield.format(d)
            if "+" in coeff:
                coeff = f"({coeff})"
            if i == 0:
                terms.append(coeff)
            elif i == 1:
                terms.append(f"{coeff}*{self.variable}")
            else:
                terms.append(f"{coeff}*{self.variable}^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"<FiniteField(order={self.order}, p={self.p}, degree={self.degree})>"


@dataclass(frozen=True, slots=True)
class FieldElem:
    """Value type wrapping a code together with the level it belongs to."""

    field: FiniteField
    code: int

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem) or other.field is not self.field:
            raise ContextMismatchError("field elements belong to different levels or contexts")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field.sub(self.code, other.code))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field.mul(self.code, other.code))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field, self.field.div(self.code, other.code))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.field, self.field.power(self.code, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __lt__(self, other: "FieldElem") -> bool:
        self._check(other)
        return self.code < other.code

    def __str__(self) -> str:
        return self.field.format(self.code)


def monic_candidates(field: FiniteField, degree: int) -> Iterator[Tuple[int, ...]]:
    """Monic polynomials of a degree as coefficient tuples, in modulus order."""
    for low in itertools.product(range(field.order), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible_over(field: FiniteField, poly: Sequence[int]) -> bool:
    return field.poly(poly).is_irreducible()


def least_irreducible(field: FiniteField, degree: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree."""
    for candidate in monic_candidates(field, degree):
        if is_irreducible_over(field, candidate):
            return candidate
    raise InvariantViolationError(f"no irreducible polynomial of degree {degree}")


class FieldCtx:
    """The tower F_p ⊂ F_q ⊂ L = F_{q^n}.

    Immutable after construction; safe to share between threads. Use
    :func:`make_ctx` to obtain instances: contexts are cached per (p, s, n), so
    two contexts with equal parameters are the same object.
    """

    def __init__(self, p: int, s: int, n: int):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        if s < 1 or n < 1:
            raise ValueError(f"extension degrees must be positive, got s={s}, n={n}")
        self.p = p
        self.s = s
        self.n = n
        self.q = p**s
        self.prime = FiniteField(p)
        self.base_modulus = least_irreducible(self.prime, s)
        self.base = FiniteField(p, self.prime, self.base_modulus, variable="x")
        self.ext_modulus = least_irreducible(self.base, n)
        self.ext = FiniteField(p, self.base, self.ext_modulus, variable="y")
        if self.ext.order != self.q**n:
            raise InvariantViolationError("element count of L differs from q^n")
        m = self.ext.order - 1
        self._frob_exponents = [pow(self.q, i, m) if m > 1 else 0 for i in range(n)]
        self._frob_table = [self.ext.power_by_log(x, self.q) for x in range(self.ext.order)]
        logger.debug(
            "built tower p=%d s=%d n=%d base_modulus=%s ext_modulus=%s",
            p,
            s,
            n,
            self.base_modulus,
            self.ext_modulus,
        )

    @property
    def order(self) -> int:
        """Number of elements of L."""
        return self.ext.order

    def frobenius_code(self, a: int, times: int = 1) -> int:
        """``a**(q**times)`` on an L code."""
        t = times % self.n
        if t == 0 or a == 0:
            return a
        if t == 1:
            return self._frob_table[a]
        return self.ext.exp(self.ext.log(a) * self._frob_exponents[t])

    def frobenius_q(self, x: FieldElem) -> FieldElem:
        """The q-power Frobenius of L."""
        if x.field is not self.ext:
            raise ContextMismatchError("frobenius_q expects an element of L")
        return FieldElem(self.ext, self._frob_table[x.code])

    def elements(self) -> List[FieldElem]:
        """All q^n elements of L in ascending code order."""
        return self.ext.elements()

    def fq_coordinates(self, a: int) -> Tuple[int, ...]:
        """Coordinates of an L code in the F_q-basis 1, y, ..., y^(n-1)."""
        return self.ext.digits(a)

    def basis(self) -> List[int]:
        """Codes of the F_q-basis 1, y, ..., y^(n-1) of L."""
        return [self.q**j for j in range(self.n)]

    def elem(self, code: int) -> FieldElem:
        return self.ext.element(code)

    def scalar(self, code: int) -> FieldElem:
        return self.base.element(code)

    def key(self) -> Tuple[int, int, int]:
        return (self.p, self.s, self.n)

    def __repr__(self) -> str:
        return f"<FieldCtx(p={self.p}, s={self.s}, n={self.n}, q={self.q})>"


@lru_cache(maxsize=None)
def _cached_ctx(p: int, s: int, n: int) -> FieldCtx:
    return FieldCtx(p, s, n)


def make_ctx(p: int, s: int, n: int, cap: Optional[int] = DEFAULT_CAP) -> FieldCtx:
    """Return the deterministic tower for (p, s, n).

    Args:
        p: Prime characteristic.
        s: Degree of F_q over F_p.
        n: Degree of L over F_q.
        cap: Largest admissible q^n; ``None`` disables the guard.

    Raises:
        NonPrimeError: If p is not prime.
        CapExceededError: If q^n exceeds ``cap``.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if s < 1 or n < 1:
        raise ValueError(f"extension degrees must be positive, got s={s}, n={n}")
    size = p ** (s * n)
    if cap is not None and size > cap:
        raise CapExceededError(f"q^n = {size} exceeds the enumeration cap {cap}")
    return _cached_ctx(p, s, n)


def min_poly_coeffs(ctx: FieldCtx, theta: FieldElem) -> Tuple[int, ...]:
    """Coefficients (F_q codes, low-to-high, monic) of the minimal polynomial of theta over F_q.

    The characteristic polynomial of ``x -> θx`` on L over F_q is a power of
    the minimal polynomial; galois computes it and factors it.
    """
    if theta.field is not ctx.ext:
        raise ContextMismatchError("minimal polynomial expects an element of L")
    n = ctx.n
    columns = [ctx.fq_coordinates(ctx.ext.mul(theta.code, b)) for b in ctx.basis()]
    matrix = ctx.base.gf([[columns[j][i] for j in range(n)] for i in range(n)])
    primes, _ = matrix.characteristic_poly().factors()
    if len(primes) != 1:
        raise InvariantViolationError(f"multiplication by {theta} has several prime factors")
    return tuple(int(c) for c in primes[0].coeffs[::-1])
