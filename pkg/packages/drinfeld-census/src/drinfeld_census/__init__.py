"""Drinfeld Census - exact census of rank-2 Drinfeld modules over finite fields"""

from drinfeld_census.apoly import APoly
from drinfeld_census.census import (
    CensusReport,
    ReportWriterFactory,
    conjecture_trend,
    run_census,
    verify_claims,
)
from drinfeld_census.config import CensusSettings
from drinfeld_census.drinfeld import (
    CharPoly,
    DrinfeldModule,
    GammaCtx,
    ModuleShape,
    frobenius_charpoly,
    is_ordinary,
    make_gamma,
    module_shape,
)
from drinfeld_census.factories import CensusFactory, DrinfeldFactory, FieldCtxFactory
from drinfeld_census.fields import FieldCtx, FiniteField, make_ctx
from drinfeld_census.quadclass import class_number, hurwitz
from drinfeld_census.traceability import verifies

__version__ = "0.0.0"

__all__ = [
    "APoly",
    "CensusFactory",
    "CensusReport",
    "CensusSettings",
    "CharPoly",
    "DrinfeldFactory",
    "DrinfeldModule",
    "FieldCtx",
    "FieldCtxFactory",
    "FiniteField",
    "GammaCtx",
    "ModuleShape",
    "ReportWriterFactory",
    "class_number",
    "conjecture_trend",
    "frobenius_charpoly",
    "hurwitz",
    "is_ordinary",
    "make_ctx",
    "make_gamma",
    "module_shape",
    "run_census",
    "verifies",
    "verify_claims",
]
