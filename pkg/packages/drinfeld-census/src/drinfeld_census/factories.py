"""Factories that build fields, characteristics, modules and censuses from plain integers."""

from typing import Optional

from drinfeld_census.apoly import APoly
from drinfeld_census.census.core import CensusReport, run_census
from drinfeld_census.config import CensusSettings
from drinfeld_census.drinfeld import DrinfeldModule, GammaCtx, gamma_from_theta, make_gamma
from drinfeld_census.fields import FieldCtx, make_ctx, prime_power_decomposition


class FieldCtxFactory:
    """Factory to create field towers F_p ⊂ F_q ⊂ F_{q^n}."""

    def create_ctx(self, q: int, n: int = 1, cap: Optional[int] = None) -> FieldCtx:
        """
        Create the tower for L = F_{q^n}.

        Args:
            q: Prime power
            n: Degree of L over F_q
            cap: Largest allowed q^n, None for no limit

        Returns:
            FieldCtx: The (cached) tower
        """
        p, s = prime_power_decomposition(q)
        return make_ctx(p, s, n, cap=cap)

    def create_poly(self, q: int, text: str) -> APoly:
        """Parse polynomial text over F_q, e.g. ``create_poly(3, "T^3-T")``."""
        return APoly.parse(text, self.create_ctx(q).base)


class DrinfeldFactory:
    """Factory to create characteristics and modules over a tower."""

    def __init__(self, fields: Optional[FieldCtxFactory] = None):
        self.fields = fields or FieldCtxFactory()

    def create_gamma(
        self, q: int, n: int, d: Optional[int] = None, theta: Optional[int] = None
    ) -> GammaCtx:
        """
        Create the characteristic data for (q, n, d).

        Args:
            q: Prime power
            n: Degree of L over F_q
            d: Degree of P, defaults to n; ignored when ``theta`` is given
            theta: Code of θ in L, the P is then its minimal polynomial

        Returns:
            GammaCtx: The characteristic

        Example:
            gamma = DrinfeldFactory().create_gamma(3, 2, d=1)
        """
        ctx = self.fields.create_ctx(q, n)
        if theta is not None:
            return gamma_from_theta(ctx, ctx.elem(theta))
        return make_gamma(ctx, n if d is None else d)

    def create_module(self, gamma: GammaCtx, g: int, delta: int) -> DrinfeldModule:
        return DrinfeldModule.from_codes(gamma, g, delta)


class CensusFactory:
    """Factory to run in-process censuses with test-sized settings."""

    def __init__(self, drinfeld: Optional[DrinfeldFactory] = None):
        self.drinfeld = drinfeld or DrinfeldFactory()

    def create_settings(self, **overrides) -> CensusSettings:
        """Single-process settings with the given fields replaced."""
        return CensusSettings(jobs=1).with_overrides(**overrides)

    def create_report(self, q: int, n: int, d: Optional[int] = None, **overrides) -> CensusReport:
        """
        Run the census for (q, n, d) in the current process.

        Args:
            q: Prime power
            n: Degree of L over F_q
            d: Degree of P, defaults to n
            **overrides: CensusSettings fields, e.g. ``check_twist_invariance=False``

        Returns:
            CensusReport: The report with claim verdicts attached
        """
        gamma = self.drinfeld.create_gamma(q, n, d)
        return run_census(gamma, self.create_settings(**overrides))
