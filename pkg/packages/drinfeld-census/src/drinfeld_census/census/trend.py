"""Behaviour of C and C0 as q grows for a fixed (d, m)."""

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, List, Sequence

from drinfeld_census.errors import MixedParametersError

if TYPE_CHECKING:
    from drinfeld_census.census.core import CensusReport


@dataclass(frozen=True)
class TrendRow:
    q: int
    C: Fraction
    C0: Fraction

    @property
    def one_minus_C(self) -> Fraction:
        return 1 - self.C

    @property
    def one_minus_C0(self) -> Fraction:
        return 1 - self.C0


@dataclass(frozen=True)
class TrendTable:
    d: int
    m: int
    rows: List[TrendRow]

    @property
    def one_minus_c0_decreasing(self) -> bool:
        """Strictly decreasing 1 − C0 down the rows; charted, never asserted."""
        values = [r.one_minus_C0 for r in self.rows]
        return all(a > b for a, b in zip(values, values[1:]))


def conjecture_trend(reports: Sequence["CensusReport"]) -> TrendTable:
    """One row per report, ordered by q.

    Raises:
        MixedParametersError: If the reports do not share (d, m), or none is given.
    """
    if not reports:
        raise MixedParametersError("a trend needs at least one report")
    params = {(r.d, r.m) for r in reports}
    if len(params) != 1:
        raise MixedParametersError(f"reports mix (d, m) values {sorted(params)}")
    d, m = params.pop()
    rows = [TrendRow(r.q, r.C, r.C0) for r in sorted(reports, key=lambda r: r.q)]
    return TrendTable(d, m, rows)
