"""Serialization of census reports.

JSON is the full structure (sorted keys, no timestamps, validated against the
packaged schema). CSV carries one ``class`` row per ordinary isogeny class and
one ``summary`` row. Polynomials use the text form of
:meth:`drinfeld_census.apoly.APoly.format`; exact rationals are ``"a/b"``.
"""

import abc
import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence, TextIO

from drinfeld_census.census.claims import ClaimVerdict
from drinfeld_census.census.core import CensusReport, IsogenyClassRecord
from drinfeld_census.census.trend import TrendTable
from drinfeld_census.errors import InvariantViolationError
from drinfeld_census.validators import ReportValidator

SCHEMA_VERSION = "1.0"


def _claim_to_dict(v: ClaimVerdict) -> Dict[str, str]:
    return {
        "claim_id": v.claim_id,
        "paper_value": v.paper_value,
        "empirical_value": v.empirical_value,
        "verdict": v.verdict.value,
        "note": v.note,
    }


def _class_to_dict(record: IsogenyClassRecord) -> Dict[str, Any]:
    return {
        "c": record.key.c.format(),
        "mu": record.key.mu,
        "charpoly": record.charpoly.format(),
        "disc": record.disc.format(),
        "value_at_one": record.value_at_one.format(),
        "iso_count": record.iso_count,
        "weighted_count": str(record.weighted_count),
        "automorphism_orders": list(record.automorphism_orders),
        "hurwitz": record.hurwitz,
        "all_cyclic": record.all_cyclic,
        "any_cyclic": record.any_cyclic,
        "expected_i1": [i.format() for i in record.expected_i1],
        "representatives": [list(pair) for pair in record.representatives],
        "shapes": [
            {
                "i1": s.i1.format(),
                "i2": s.i2.format(),
                "count": s.count,
                "cumulative": s.cumulative,
                "hurwitz_smaller": s.hurwitz_smaller,
                "hurwitz_larger": s.hurwitz_larger,
            }
            for s in record.shapes
        ],
    }


def report_to_dict(report: CensusReport) -> Dict[str, Any]:
    """Plain-data form of a report, the document validated by the report schema."""
    return {
        "schema_version": SCHEMA_VERSION,
        "parameters": {
            "p": report.p,
            "s": report.s,
            "q": report.q,
            "n": report.n,
            "d": report.d,
            "m": report.m,
            "P": report.P.format(),
            "theta": report.theta,
        },
        "totals": {
            "modules": report.module_count,
            "orbit_size_total": report.orbit_size_total,
            "iso_classes": report.iso_total,
            "supersingular_iso_classes": report.supersingular_total,
            "ordinary_iso_classes": report.ordinary_iso_total,
            "cyclic_iso_classes": report.cyclic_iso_total,
            "noncyclic_iso_classes": report.noncyclic_iso_total,
            "ordinary_isogeny_classes": report.isogeny_class_count,
            "cyclic_isogeny_classes": report.cyclic_classes,
            "noncyclic_isogeny_classes": report.noncyclic_classes,
            "cyclic_isogeny_classes_any": report.cyclic_classes_any,
            "admissible_pairs": report.admissible_pairs,
            "admissible_imaginary_pairs": report.admissible_imaginary_pairs,
        },
        "statistics": {
            "C": str(report.C),
            "C0": str(report.C0),
            "N": str(report.N),
            "N0": str(report.N0),
            "C0_any": str(report.C0_any),
        },
        "class_numbers_checked": report.odd_q,
        "isogeny_classes": [_class_to_dict(c) for c in report.classes],
        "claims": [_claim_to_dict(v) for v in report.claims],
    }


class ReportWriter(abc.ABC):
    """Renders a census report into one output format."""

    @abc.abstractmethod
    def render(self, report: CensusReport) -> str:
        """Render the report.

        Args:
            report: A completed census report

        Returns:
            The full document text
        """
        raise NotImplementedError

    def write(self, report: CensusReport, stream: TextIO) -> None:
        """Render the report into an open text stream."""
        stream.write(self.render(report))


class JsonReportWriter(ReportWriter):
    """Full report as schema-validated JSON."""

    def __init__(self, validator: Optional[ReportValidator] = None):
        self.validator = validator or ReportValidator(raise_on_error=False)

    def render(self, report: CensusReport) -> str:
        data = report_to_dict(report)
        if not self.validator.validate_report(data):
            raise InvariantViolationError(
                f"report does not match its schema: {self.validator.get_last_error()}"
            )
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


CSV_COLUMNS = [
    "row_type",
    "q",
    "n",
    "d",
    "m",
    "c",
    "mu",
    "disc",
    "iso_count",
    "weighted_count",
    "hurwitz",
    "all_cyclic",
    "any_cyclic",
    "shapes",
    "iso_classes",
    "supersingular_iso_classes",
    "ordinary_iso_classes",
    "ordinary_isogeny_classes",
    "C",
    "C0",
    "N",
    "N0",
]


class CsvReportWriter(ReportWriter):
    """One row per ordinary isogeny class plus a summary row."""

    def rows(self, report: CensusReport) -> List[Dict[str, Any]]:
        params = {"q": report.q, "n": report.n, "d": report.d, "m": report.m}
        out = []
        for record in report.classes:
            shapes = ";".join(f"{s.i1.format()}|{s.i2.format()}:{s.count}" for s in record.shapes)
            out.append(
                {
                    "row_type": "class",
                    **params,
                    "c": record.key.c.format(),
                    "mu": record.key.mu,
                    "disc": record.disc.format(),
                    "iso_count": record.iso_count,
                    "weighted_count": str(record.weighted_count),
                    "hurwitz": "" if record.hurwitz is None else record.hurwitz,
                    "all_cyclic": record.all_cyclic,
                    "any_cyclic": record.any_cyclic,
                    "shapes": shapes,
                }
            )
        out.append(
            {
                "row_type": "summary",
                **params,
                "iso_classes": report.iso_total,
                "supersingular_iso_classes": report.supersingular_total,
                "ordinary_iso_classes": report.ordinary_iso_total,
                "ordinary_isogeny_classes": report.isogeny_class_count,
                "C": str(report.C),
                "C0": str(report.C0),
                "N": str(report.N),
                "N0": str(report.N0),
            }
        )
        return out

    def render(self, report: CensusReport) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows(report))
        return buffer.getvalue()


class ReportWriterFactory:
    """Factory to create report writers by format name."""

    class Format:
        JSON = "json"
        CSV = "csv"

    def create_writer(self, fmt: str) -> ReportWriter:
        """
        Create a writer for the given format.

        Args:
            fmt: One of ``ReportWriterFactory.Format``

        Returns:
            ReportWriter: The writer instance

        Raises:
            ValueError: If the format is not supported

        Example:
            writer = ReportWriterFactory().create_writer(ReportWriterFactory.Format.JSON)
        """
        if fmt == self.Format.JSON:
            return JsonReportWriter()
        if fmt == self.Format.CSV:
            return CsvReportWriter()
        raise ValueError(f"Unsupported report format: {fmt}")


def verdict_table(reports: Sequence[CensusReport]) -> List[Dict[str, Any]]:
    """Consolidated claim verdicts across several censuses, one row per (run, claim)."""
    rows = []
    for report in reports:
        for v in report.claims:
            rows.append({"q": report.q, "n": report.n, "d": report.d, **_claim_to_dict(v)})
    return rows


def format_table(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    """Plain aligned text table."""
    cells = [[str(c) for c in columns]] + [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def trend_rows(table: TrendTable) -> List[Dict[str, Any]]:
    return [
        {
            "q": r.q,
            "C": str(r.C),
            "C0": str(r.C0),
            "1-C": str(r.one_minus_C),
            "1-C0": str(r.one_minus_C0),
        }
        for r in table.rows
    ]
