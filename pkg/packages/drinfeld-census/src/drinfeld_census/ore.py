"""The twisted polynomial ring L{τ} with τλ = λ^q τ.

Coefficients are stored on the left: ``OrePoly(ctx, (a0, a1, a2))`` is
``a0 + a1 τ + a2 τ^2``. The commutation rule is applied only in
:meth:`OrePoly.__mul__`.
"""

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from drinfeld_census.errors import ContextMismatchError
from drinfeld_census.fields import FieldCtx, FieldElem
from drinfeld_census.linalg import Matrix


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, slots=True)
class OrePoly:
    """Element of L{τ}; coefficient ``i`` multiplies τ^i, values are L codes."""

    ctx: FieldCtx
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def constant(cls, ctx: FieldCtx, code: int) -> "OrePoly":
        return cls(ctx, (code,))

    @classmethod
    def one(cls, ctx: FieldCtx) -> "OrePoly":
        return cls(ctx, (1,))

    @classmethod
    def tau(cls, ctx: FieldCtx) -> "OrePoly":
        return cls(ctx, (0, 1))

    @classmethod
    def frobenius(cls, ctx: FieldCtx) -> "OrePoly":
        """The Frobenius F = τ^n of L, central in L{τ}."""
        return cls(ctx, (0,) * ctx.n + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "OrePoly") -> None:
        if other.ctx is not self.ctx:
            raise ContextMismatchError("Ore polynomials over different fields")

    def __add__(self, other: "OrePoly") -> "OrePoly":
        self._check(other)
        ext = self.ctx.ext
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ext.add(out[i], c)
        return OrePoly(self.ctx, tuple(out))

    def __neg__(self) -> "OrePoly":
        ext = self.ctx.ext
        return OrePoly(self.ctx, tuple(ext.neg(a) for a in self.coeffs))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return self + (-other)

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        """(a τ^i)(b τ^j) = a b^(q^i) τ^(i+j), extended bilinearly."""
        self._check(other)
        ctx = self.ctx
        ext = ctx.ext
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return OrePoly(ctx, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    twisted = ctx.frobenius_code(y, i)
                    out[i + j] = ext.add(out[i + j], ext.mul(x, twisted))
        return OrePoly(ctx, tuple(out))

    def __pow__(self, e: int) -> "OrePoly":
        if e < 0:
            raise ValueError("negative powers are not defined in L{τ}")
        result = OrePoly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale_left(self, code: int) -> "OrePoly":
        """``λ · u`` for λ ∈ L."""
        ext = self.ctx.ext
        return OrePoly(self.ctx, tuple(ext.mul(code, a) for a in self.coeffs))

    def shift(self, k: int) -> "OrePoly":
        """``u · τ^k``; equal to ``τ^k · u`` only when k is a multiple of n."""
        if not self.coeffs:
            return self
        return OrePoly(self.ctx, (0,) * k + self.coeffs)

    def apply_code(self, x: int) -> int:
        """Evaluate on an L code: Σ a_i x^(q^i)."""
        ctx = self.ctx
        ext = ctx.ext
        acc = 0
        power = x
        for i, a in enumerate(self.coeffs):
            if i:
                power = ctx.frobenius_code(power)
            if a:
                acc = ext.add(acc, ext.mul(a, power))
        return acc

    def apply(self, x: FieldElem) -> FieldElem:
        """The F_q-linear map of L defined by this element."""
        if x.field is not self.ctx.ext:
            raise ContextMismatchError("Ore polynomials act on elements of L")
        return FieldElem(x.field, self.apply_code(x.code))

    def format(self) -> str:
        """Debug text ``a0 + a1*t + a2*t^2``, coefficients in field-element text."""
        if not self.coeffs:
            return "0"
        ext = self.ctx.ext
        terms = []
        for i, a in enumerate(self.coeffs):
            text = ext.format(a)
            if "+" in text:
                text = f"({text})"
            if i == 0:
                terms.append(text)
            elif i == 1:
                terms.append(f"{text}*t")
            else:
                terms.append(f"{text}*t^{i}")
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.format()


def matrix_over_fq(u: OrePoly, ctx: FieldCtx) -> Matrix:
    """Matrix of ``x -> u(x)`` in the basis 1, y, ..., y^(n-1); column j is the image of y^j."""
    if u.ctx is not ctx:
        raise ContextMismatchError("Ore polynomial belongs to another field context")
    columns: List[Tuple[int, ...]] = [ctx.fq_coordinates(u.apply_code(b)) for b in ctx.basis()]
    n = ctx.n
    return Matrix(ctx.base, tuple(tuple(columns[j][i] for j in range(n)) for i in range(n)))
