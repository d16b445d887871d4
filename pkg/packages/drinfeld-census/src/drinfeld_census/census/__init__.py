"""Census of rank-2 Drinfeld modules: enumeration, claim audit, trends and report I/O."""

from drinfeld_census.census.claims import CLAIM_IDS, ClaimVerdict, Verdict, verify_claims
from drinfeld_census.census.core import (
    CensusReport,
    IsogenyClassKey,
    IsogenyClassRecord,
    ModuleRecord,
    ShapeCount,
    admissible_pairs,
    run_census,
)
from drinfeld_census.census.report_io import (
    CsvReportWriter,
    JsonReportWriter,
    ReportWriter,
    ReportWriterFactory,
    report_to_dict,
)
from drinfeld_census.census.trend import TrendRow, TrendTable, conjecture_trend

__all__ = [
    "CLAIM_IDS",
    "CensusReport",
    "ClaimVerdict",
    "CsvReportWriter",
    "IsogenyClassKey",
    "IsogenyClassRecord",
    "JsonReportWriter",
    "ModuleRecord",
    "ReportWriter",
    "ReportWriterFactory",
    "ShapeCount",
    "TrendRow",
    "TrendTable",
    "Verdict",
    "admissible_pairs",
    "conjecture_trend",
    "report_to_dict",
    "run_census",
    "verify_claims",
]
