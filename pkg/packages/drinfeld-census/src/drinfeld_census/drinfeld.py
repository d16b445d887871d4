"""Rank-2 Drinfeld F_q[T]-modules over L = F_{q^n}.

A module is fixed by ``Φ_T = θ + gτ + Δτ²`` where θ = γ(T) is shared by all
modules of a census (the :class:`GammaCtx`) and ``(g, Δ)`` ranges over
``L × L*``.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from drinfeld_census.apoly import APoly, evaluate, min_poly_over_fq, monic_irreducibles
from drinfeld_census.errors import (
    ContextMismatchError,
    InvariantViolationError,
    MultipleSolutionsError,
    NoSolutionError,
    TooManyFactorsError,
)
from drinfeld_census.fields import FieldCtx, FieldElem
from drinfeld_census.linalg import invariant_factors, solve_unique
from drinfeld_census.ore import OrePoly, matrix_over_fq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaCtx:
    """The A-characteristic: θ = γ(T) in L, its minimal polynomial P, d = deg P, m = n / d."""

    ctx: FieldCtx
    theta: FieldElem
    P: APoly
    d: int
    m: int

    def __post_init__(self):
        if self.theta.field is not self.ctx.ext:
            raise ContextMismatchError("θ must be an element of L")
        if not evaluate(self.P, self.theta).is_zero():
            raise InvariantViolationError(f"P = {self.P} does not vanish at θ")
        if self.d * self.m != self.ctx.n:
            raise InvariantViolationError(f"d·m = {self.d * self.m} differs from n = {self.ctx.n}")

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.ctx.n


def gamma_from_theta(ctx: FieldCtx, theta: FieldElem) -> GammaCtx:
    """Characteristic data for an explicitly chosen θ ∈ L."""
    P = min_poly_over_fq(ctx, theta)
    return GammaCtx(ctx, theta, P, P.degree, ctx.n // P.degree)


@lru_cache(maxsize=None)
def make_gamma(ctx: FieldCtx, d: int) -> GammaCtx:
    """Census characteristic for degree d: P is the first monic irreducible of
    degree d and θ its least root in L (by element code).

    Raises:
        ValueError: If d does not divide n.
    """
    if d < 1 or ctx.n % d:
        raise ValueError(f"d = {d} must be a positive divisor of n = {ctx.n}")
    P = monic_irreducibles(ctx.base, d)[0]
    root = next(x for x in ctx.elements() if evaluate(P, x).is_zero())
    logger.debug("characteristic P=%s θ=%s for d=%d", P, root, d)
    return GammaCtx(ctx, root, P, d, ctx.n // d)


@dataclass(frozen=True)
class DrinfeldModule:
    """Φ_T = θ + gτ + Δτ² with Δ ≠ 0."""

    gamma: GammaCtx
    g: FieldElem
    delta: FieldElem

    def __post_init__(self):
        ext = self.gamma.ctx.ext
        if self.g.field is not ext or self.delta.field is not ext:
            raise ContextMismatchError("g and Δ must be elements of L")
        if self.delta.is_zero():
            raise ValueError("Δ must be nonzero for a rank-2 module")

    @classmethod
    def from_codes(cls, gamma: GammaCtx, g: int, delta: int) -> "DrinfeldModule":
        ext = gamma.ctx.ext
        return cls(gamma, ext.element(g), ext.element(delta))

    @property
    def codes(self) -> Tuple[int, int]:
        return (self.g.code, self.delta.code)

    @property
    def phi_t(self) -> OrePoly:
        return OrePoly(self.gamma.ctx, (self.gamma.theta.code, self.g.code, self.delta.code))

    def __str__(self) -> str:
        return f"Φ_T = {self.phi_t.format()}"


@dataclass(frozen=True)
class CharPoly:
    """P_Φ(X) = X² − cX + μP^m; ``mu`` is an F_q code."""

    c: APoly
    mu: int
    P: APoly
    m: int

    @property
    def norm_part(self) -> APoly:
        """μ·P^m, the constant term of P_Φ."""
        return (self.P**self.m).scale(self.mu)

    def value_at_one(self) -> APoly:
        """P_Φ(1) = 1 − c + μP^m."""
        return APoly.one(self.c.field) - self.c + self.norm_part

    def disc(self) -> APoly:
        return frobenius_disc(self)

    def key(self) -> Tuple[Tuple[int, ...], int]:
        return (self.c.coeffs, self.mu)

    def format(self) -> str:
        return f"X^2 - ({self.c})*X + {self.mu}*({self.P})^{self.m}"


@dataclass(frozen=True)
class ModuleShape:
    """L^Φ ≅ A/(i1) ⊕ A/(i2) with i1 | i2, both monic."""

    i1: APoly
    i2: APoly

    @property
    def is_cyclic(self) -> bool:
        return self.i1.is_one()

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.i1.coeffs, self.i2.coeffs)


def phi_image(module: DrinfeldModule, a: APoly) -> OrePoly:
    """Φ_a = Σ a_j (Φ_T)^j by Horner's rule in L{τ}."""
    ctx = module.gamma.ctx
    if a.field is not ctx.base:
        raise ContextMismatchError("a must lie in F_q[T] of the module's context")
    phi_t = module.phi_t
    acc = OrePoly(ctx, ())
    for coeff in reversed(a.coeffs):
        acc = acc * phi_t + OrePoly.constant(ctx, coeff)
    return acc


def module_shape(module: DrinfeldModule) -> ModuleShape:
    """Invariant factors of L as an F_q[T]-module with T acting through Φ_T.

    Raises:
        TooManyFactorsError: More than two nontrivial invariant factors.
    """
    ctx = module.gamma.ctx
    factors = invariant_factors(matrix_over_fq(module.phi_t, ctx))
    if len(factors) > 2:
        raise TooManyFactorsError(
            f"{len(factors)} nontrivial invariant factors for (g, Δ) = {module.codes}"
        )
    if len(factors) == 1:
        return ModuleShape(APoly.one(ctx.base), factors[0])
    if not factors:
        raise InvariantViolationError("L^Φ has no nontrivial invariant factor")
    return ModuleShape(factors[0], factors[1])


def _flatten(ctx: FieldCtx, u: OrePoly, top: int) -> List[int]:
    """F_q coordinates of the τ^0..τ^top coefficients of u, concatenated."""
    out: List[int] = []
    for t in range(top + 1):
        out.extend(ctx.fq_coordinates(u.coefficient(t)))
    return out


def _frobenius_in_phi(module: DrinfeldModule) -> Optional[APoly]:
    """The a ∈ A with F = Φ_a, if there is one."""
    gamma = module.gamma
    ctx = gamma.ctx
    n = ctx.n
    if n % 2:
        return None
    base = ctx.base
    powers = [phi_image(module, APoly.t(base) ** j) for j in range(n // 2 + 1)]
    columns = [_flatten(ctx, u, n) for u in powers]
    rows = [list(r) for r in zip(*columns)]
    rhs = _flatten(ctx, OrePoly.frobenius(ctx), n)
    try:
        coeffs = solve_unique(base, rows, rhs)
    except NoSolutionError:
        return None
    return APoly(base, tuple(coeffs))


def frobenius_charpoly(module: DrinfeldModule) -> CharPoly:
    """The characteristic polynomial of the Frobenius F = τ^n.

    Solves ``F² − Φ_c F + μΦ_{P^m} = 0`` for ``c = Σ_{j ≤ n/2} c_j T^j`` and
    ``μ ∈ F_q*`` as a single linear system over F_q: every τ-coefficient of
    the relation, read in F_q coordinates, is one block of equations.

    When F itself lies in Φ(A), say F = Φ_a (possible for supersingular
    modules with m even), the relation has a line of solutions; the answer is
    then ``(X − a)²``.

    Raises:
        NoSolutionError: No (c, μ) with μ ≠ 0 satisfies the relation.
        MultipleSolutionsError: The solution is not unique and F ∉ Φ(A).
    """
    gamma = module.gamma
    ctx = gamma.ctx
    n = ctx.n
    base = ctx.base
    top = 2 * n
    half = n // 2
    frob = OrePoly.frobenius(ctx)
    phi_t = module.phi_t

    columns = []
    power = OrePoly.one(ctx)
    for _ in range(half + 1):
        columns.append(_flatten(ctx, power * frob, top))
        power = power * phi_t
    columns.append(_flatten(ctx, -phi_image(module, gamma.P**gamma.m), top))
    rows = [list(r) for r in zip(*columns)]
    rhs = _flatten(ctx, frob * frob, top)

    try:
        solution = solve_unique(base, rows, rhs)
    except MultipleSolutionsError:
        a = _frobenius_in_phi(module)
        if a is None:
            raise
        mu = base.mul(a.leading, a.leading)
        cp = CharPoly(a.scale(base.from_int(2)), mu, gamma.P, gamma.m)
        if a * a != cp.norm_part:
            raise InvariantViolationError(f"F = Φ_a with a² ≠ μP^m for {module.codes}")
        return cp
    mu = solution[-1]
    if mu == 0:
        raise NoSolutionError(f"only μ = 0 satisfies the Frobenius relation for {module.codes}")
    return CharPoly(APoly(base, tuple(solution[:-1])), mu, gamma.P, gamma.m)


def is_ordinary(module: DrinfeldModule) -> bool:
    """Height one: the τ^d coefficient of Φ_P is nonzero."""
    gamma = module.gamma
    return phi_image(module, gamma.P).coefficient(gamma.d) != 0


def frobenius_disc(cp: CharPoly) -> APoly:
    """disc(P_Φ) = c² − 4μP^m."""
    four = cp.c.field.from_int(4)
    return cp.c * cp.c - cp.norm_part.scale(four)


def _twist_period(ctx: FieldCtx, g: int) -> int:
    group = ctx.order - 1
    q = ctx.q
    period = group // math.gcd(group, q * q - 1)
    if g:
        period = math.lcm(period, group // math.gcd(group, q - 1))
    return period


def twist_orbit(module: DrinfeldModule) -> List[Tuple[int, int]]:
    """All (g, Δ) codes L-isomorphic to the module, in the order c = ω^0, ω^1, ...

    ω is the primitive element of L; the list has no repetitions.
    """
    ctx = module.gamma.ctx
    ext = ctx.ext
    q = ctx.q
    g, delta = module.codes
    log_g = ext.log(g) if g else None
    log_d = ext.log(delta)
    orbit = []
    for k in range(_twist_period(ctx, g)):
        new_g = ext.exp(log_g + k * (q - 1)) if log_g is not None else 0
        orbit.append((new_g, ext.exp(log_d + k * (q * q - 1))))
    return orbit


def twist_orbit_representative(module: DrinfeldModule) -> DrinfeldModule:
    """The lexicographically least (g, Δ) in the module's L-isomorphism class."""
    g, delta = min(twist_orbit(module))
    return DrinfeldModule.from_codes(module.gamma, g, delta)


def automorphism_count(module: DrinfeldModule) -> int:
    """#Aut_L(Φ): the c ∈ L* fixing (g, Δ) under the twist action."""
    ctx = module.gamma.ctx
    return (ctx.order - 1) // _twist_period(ctx, module.g.code)
