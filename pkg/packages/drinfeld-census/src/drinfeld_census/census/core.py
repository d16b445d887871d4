"""Exhaustive census of rank-2 Drinfeld modules over L for a fixed characteristic.

The sweep walks every ``(g, Δ)`` with Δ ≠ 0 in ascending code order. The first
pair met in an L-isomorphism class is the least one, so twist orbits are
marked on the fly and each class is evaluated once (every member is evaluated
too when twist invariance is checked). The work unit handed to a worker is one
``g`` row; results come back in row order so the report never depends on
scheduling.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

from drinfeld_census.apoly import APoly, square_divisors
from drinfeld_census.census.claims import verify_claims
from drinfeld_census.config import CensusSettings
from drinfeld_census.drinfeld import (
    CharPoly,
    DrinfeldModule,
    GammaCtx,
    frobenius_charpoly,
    frobenius_disc,
    gamma_from_theta,
    is_ordinary,
    module_shape,
    twist_orbit,
)
from drinfeld_census.errors import CapExceededError, CensusError, InvariantViolationError
from drinfeld_census.fields import make_ctx
from drinfeld_census.quadclass import hurwitz, is_imaginary

logger = logging.getLogger(__name__)

Codes = Tuple[int, ...]


@dataclass(frozen=True)
class ModuleRecord:
    """Invariants of one L-isomorphism class, as plain codes so it crosses process boundaries."""

    g: int
    delta: int
    orbit_size: int
    automorphisms: int
    ordinary: bool
    i1: Codes
    i2: Codes
    c: Codes
    mu: int


@dataclass(frozen=True)
class IsogenyClassKey:
    c: APoly
    mu: int


@dataclass
class ShapeCount:
    """n(P_Φ, ·) for one observed shape of an isogeny class."""

    i1: APoly
    i2: APoly
    count: int
    cumulative: int
    hurwitz_smaller: Optional[int] = None
    hurwitz_larger: Optional[int] = None


@dataclass
class IsogenyClassRecord:
    key: IsogenyClassKey
    charpoly: CharPoly
    disc: APoly
    value_at_one: APoly
    iso_count: int
    weighted_count: Fraction
    automorphism_orders: Tuple[int, ...]
    representatives: List[Tuple[int, int]]
    shapes: List[ShapeCount]
    expected_i1: List[APoly]
    hurwitz: Optional[int] = None

    @property
    def all_cyclic(self) -> bool:
        return all(s.i1.is_one() for s in self.shapes)

    @property
    def any_cyclic(self) -> bool:
        return any(s.i1.is_one() for s in self.shapes)

    @property
    def noncyclic_count(self) -> int:
        return sum(s.count for s in self.shapes if not s.i1.is_one())


@dataclass
class CensusReport:
    """Everything a census establishes about one (q, d, m)."""

    p: int
    s: int
    n: int
    d: int
    P: APoly
    theta: int
    module_count: int
    orbit_size_total: int
    iso_total: int
    supersingular_total: int
    ordinary_iso_total: int
    cyclic_iso_total: int
    classes: List[IsogenyClassRecord]
    admissible_pairs: int
    admissible_imaginary_pairs: Optional[int]
    claims: list = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def m(self) -> int:
        return self.n // self.d

    @property
    def odd_q(self) -> bool:
        return self.p != 2

    @property
    def noncyclic_iso_total(self) -> int:
        return self.ordinary_iso_total - self.cyclic_iso_total

    @property
    def isogeny_class_count(self) -> int:
        return len(self.classes)

    @property
    def cyclic_classes(self) -> int:
        """Isogeny classes all of whose members are cyclic."""
        return sum(1 for c in self.classes if c.all_cyclic)

    @property
    def noncyclic_classes(self) -> int:
        return self.isogeny_class_count - self.cyclic_classes

    @property
    def cyclic_classes_any(self) -> int:
        """Isogeny classes with at least one cyclic member."""
        return sum(1 for c in self.classes if c.any_cyclic)

    @property
    def C(self) -> Fraction:
        return Fraction(self.cyclic_iso_total, self.ordinary_iso_total)

    @property
    def N(self) -> Fraction:
        return Fraction(self.noncyclic_iso_total, self.ordinary_iso_total)

    @property
    def C0(self) -> Fraction:
        return Fraction(self.cyclic_classes, self.isogeny_class_count)

    @property
    def N0(self) -> Fraction:
        return Fraction(self.noncyclic_classes, self.isogeny_class_count)

    @property
    def C0_any(self) -> Fraction:
        return Fraction(self.cyclic_classes_any, self.isogeny_class_count)


# -- worker side ----------------------------------------------------------------

_WORKER_GAMMA: Optional[GammaCtx] = None


def _init_worker(p: int, s: int, n: int, theta: int) -> None:
    global _WORKER_GAMMA
    ctx = make_ctx(p, s, n, cap=None)
    _WORKER_GAMMA = gamma_from_theta(ctx, ctx.elem(theta))


def _evaluate(gamma: GammaCtx, g: int, delta: int) -> Tuple[bool, Codes, Codes, Codes, int]:
    module = DrinfeldModule.from_codes(gamma, g, delta)
    try:
        ordinary = is_ordinary(module)
        shape = module_shape(module)
        cp = frobenius_charpoly(module)
    except CensusError as exc:
        raise InvariantViolationError(f"(g, Δ) = ({g}, {delta}): {exc}") from exc
    _check_module(gamma, (g, delta), ordinary, shape.i1, shape.i2, cp)
    return ordinary, shape.i1.coeffs, shape.i2.coeffs, cp.c.coeffs, cp.mu


def _check_module(gamma: GammaCtx, codes, ordinary: bool, i1: APoly, i2: APoly, cp: CharPoly):
    n = gamma.n
    failures = []
    if i1.degree + i2.degree != n:
        failures.append(f"deg i1 + deg i2 = {i1.degree + i2.degree} ≠ {n}")
    if not i1.divides(i2):
        failures.append(f"i1 = {i1} does not divide i2 = {i2}")
    if cp.value_at_one().monic() != i1 * i2:
        failures.append(f"monic P_Φ(1) = {cp.value_at_one().monic()} ≠ i1·i2 = {i1 * i2}")
    if cp.c.degree > n // 2:
        failures.append(f"deg c = {cp.c.degree} exceeds n/2")
    if ordinary == gamma.P.divides(cp.c):
        failures.append(f"height test says ordinary={ordinary} but P | c is {not ordinary}")
    if ordinary and frobenius_disc(cp).is_zero():
        failures.append("ordinary module with zero discriminant")
    if failures:
        raise InvariantViolationError(f"(g, Δ) = {codes}: " + "; ".join(failures))


def _evaluate_row(task) -> List[ModuleRecord]:
    g, entries = task
    gamma = _WORKER_GAMMA
    group = gamma.ctx.order - 1
    records = []
    for delta, orbit_size, members in entries:
        result = _evaluate(gamma, g, delta)
        for other in members:
            if _evaluate(gamma, *other) != result:
                raise InvariantViolationError(
                    f"(g, Δ) = {other} is isomorphic to ({g}, {delta}) but its invariants differ"
                )
        ordinary, i1, i2, c, mu = result
        records.append(
            ModuleRecord(g, delta, orbit_size, group // orbit_size, ordinary, i1, i2, c, mu)
        )
    return records


# -- parent side ----------------------------------------------------------------


def _orbit_rows(gamma: GammaCtx, with_members: bool) -> List[tuple]:
    """One task per g: the least pairs of the twist orbits first met in that row."""
    size = gamma.ctx.order
    seen = bytearray(size * size)
    rows = []
    for g in range(size):
        entries = []
        for delta in range(1, size):
            if seen[g * size + delta]:
                continue
            orbit = twist_orbit(DrinfeldModule.from_codes(gamma, g, delta))
            for other_g, other_delta in orbit:
                seen[other_g * size + other_delta] = 1
            members = tuple(orbit[1:]) if with_members else ()
            entries.append((delta, len(orbit), members))
        if entries:
            rows.append((g, entries))
    return rows


def _collect(
    gamma: GammaCtx, settings: CensusSettings, rows: Sequence[tuple]
) -> List[ModuleRecord]:
    ctx = gamma.ctx
    initargs = (ctx.p, ctx.s, ctx.n, gamma.theta.code)
    if settings.jobs == 1:
        _init_worker(*initargs)
        return [r for row in rows for r in _evaluate_row(row)]
    with Pool(settings.jobs, initializer=_init_worker, initargs=initargs) as pool:
        return [r for batch in pool.imap(_evaluate_row, rows) for r in batch]


def _expected_i1(c: APoly, value_at_one: APoly) -> List[APoly]:
    two = APoly.constant(c.field, c.field.from_int(2))
    trace = c - two
    return [i for i in square_divisors(value_at_one) if i.divides(trace)]


def _hurwitz_or_none(D: APoly) -> Optional[int]:
    if D.is_zero() or not is_imaginary(D):
        return None
    return hurwitz(D)


def _build_class(
    gamma: GammaCtx, key: IsogenyClassKey, members: List[ModuleRecord], odd_q: bool
) -> IsogenyClassRecord:
    base = gamma.ctx.base
    q = gamma.q
    cp = CharPoly(key.c, key.mu, gamma.P, gamma.m)
    disc = frobenius_disc(cp)
    value_at_one = cp.value_at_one().monic()
    tally = Counter((r.i1, r.i2) for r in members)
    shapes = []
    for (i1_codes, i2_codes), count in sorted(
        tally.items(), key=lambda kv: APoly(base, kv[0][0]).sort_key()
    ):
        i1, i2 = APoly(base, i1_codes), APoly(base, i2_codes)
        cumulative = sum(k for (j1, _), k in tally.items() if i1.divides(APoly(base, j1)))
        shape = ShapeCount(i1, i2, count, cumulative)
        if odd_q:
            if (i1 * i1).divides(disc):
                shape.hurwitz_smaller = _hurwitz_or_none(disc // (i1 * i1))
            if (i2 * i2).divides(disc):
                shape.hurwitz_larger = _hurwitz_or_none(disc // (i2 * i2))
        shapes.append(shape)
    record = IsogenyClassRecord(
        key=key,
        charpoly=cp,
        disc=disc,
        value_at_one=value_at_one,
        iso_count=len(members),
        weighted_count=sum((Fraction(q - 1, r.automorphisms) for r in members), Fraction(0)),
        automorphism_orders=tuple(sorted({r.automorphisms for r in members})),
        representatives=[(r.g, r.delta) for r in members],
        shapes=shapes,
        expected_i1=_expected_i1(key.c, value_at_one),
    )
    if odd_q:
        record.hurwitz = _hurwitz_or_none(disc)
        if record.hurwitz is None:
            logger.warning("discriminant %s of class c=%s is not imaginary", disc, key.c)
    return record


def admissible_pairs(gamma: GammaCtx) -> Tuple[int, Optional[int]]:
    """Count (c, μ) with deg c ≤ md/2, μ ≠ 0, P ∤ c; and those with imaginary disc."""
    base = gamma.ctx.base
    odd_q = gamma.ctx.p != 2
    total, imaginary = 0, 0
    for coeffs in itertools.product(range(base.order), repeat=gamma.n // 2 + 1):
        c = APoly(base, coeffs)
        if gamma.P.divides(c):
            continue
        for mu in range(1, base.order):
            total += 1
            if odd_q and is_imaginary(frobenius_disc(CharPoly(c, mu, gamma.P, gamma.m))):
                imaginary += 1
    return total, (imaginary if odd_q else None)


def run_census(gamma: GammaCtx, settings: Optional[CensusSettings] = None) -> CensusReport:
    """Enumerate every module over L for the characteristic ``gamma`` and aggregate.

    Args:
        gamma: The characteristic data (θ, P).
        settings: Limits and parallelism; defaults to ``CensusSettings()``.

    Returns:
        CensusReport with claim verdicts attached.

    Raises:
        CapExceededError: If q^n exceeds ``settings.cap``.
        InvariantViolationError: If any structural identity fails; the message
            names the offending (g, Δ).
    """
    settings = settings or CensusSettings()
    ctx = gamma.ctx
    if ctx.order > settings.cap:
        raise CapExceededError(f"q^n = {ctx.order} exceeds the enumeration cap {settings.cap}")
    odd_q = ctx.p != 2
    size = ctx.order
    logger.info(
        "census started: q=%d n=%d d=%d m=%d P=%s (%d modules, %d jobs)",
        ctx.q,
        ctx.n,
        gamma.d,
        gamma.m,
        gamma.P,
        size * (size - 1),
        settings.jobs,
    )
    rows = _orbit_rows(gamma, settings.check_twist_invariance)
    records = _collect(gamma, settings, rows)

    orbit_size_total = sum(r.orbit_size for r in records)
    if orbit_size_total != size * (size - 1):
        raise InvariantViolationError(
            f"twist orbits cover {orbit_size_total} modules, expected {size * (size - 1)}"
        )

    base = ctx.base
    grouped: Dict[Tuple[Codes, int], List[ModuleRecord]] = {}
    for r in records:
        if r.ordinary:
            grouped.setdefault((r.c, r.mu), []).append(r)
    keys = sorted(grouped, key=lambda k: (APoly(base, k[0]).sort_key(), k[1]))
    classes = []
    for c_codes, mu in keys:
        key = IsogenyClassKey(APoly(base, c_codes), mu)
        classes.append(_build_class(gamma, key, grouped[(c_codes, mu)], odd_q))
        logger.debug("isogeny class c=%s μ=%d: W=%d", key.c, mu, classes[-1].iso_count)

    ordinary = [r for r in records if r.ordinary]
    if not ordinary:
        raise InvariantViolationError("no ordinary module found")
    if not odd_q:
        logger.warning("q = %d is even: class-number cross-checks are skipped", ctx.q)
    admissible, admissible_imaginary = admissible_pairs(gamma)
    report = CensusReport(
        p=ctx.p,
        s=ctx.s,
        n=ctx.n,
        d=gamma.d,
        P=gamma.P,
        theta=gamma.theta.code,
        module_count=size * (size - 1),
        orbit_size_total=orbit_size_total,
        iso_total=len(records),
        supersingular_total=len(records) - len(ordinary),
        ordinary_iso_total=len(ordinary),
        cyclic_iso_total=sum(1 for r in ordinary if r.i1 == (1,)),
        classes=classes,
        admissible_pairs=admissible,
        admissible_imaginary_pairs=admissible_imaginary,
    )
    if report.C + report.N != 1 or report.C0 + report.N0 != 1:
        raise InvariantViolationError("cyclic and non-cyclic proportions do not sum to one")
    if sum(c.iso_count for c in classes) != report.ordinary_iso_total:
        raise InvariantViolationError("isogeny classes do not partition the ordinary modules")
    report.claims = verify_claims(report)
    logger.info(
        "census finished: %d iso classes (%d supersingular), %d isogeny classes, C=%s C0=%s",
        report.iso_total,
        report.supersingular_total,
        report.isogeny_class_count,
        report.C,
        report.C0,
    )
    return report
