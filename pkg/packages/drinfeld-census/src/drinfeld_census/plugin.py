"""Pytest plugin to register census markers and fixtures."""

import pytest

from drinfeld_census.factories import CensusFactory, DrinfeldFactory, FieldCtxFactory
from drinfeld_census.traceability import claim_coverage, uncovered_claims

COVERAGE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    """Register custom markers for drinfeld-census."""
    config.addinivalue_line(
        "markers", "claim(claim_id): mark test with the census claim it checks"
    )
    config.addinivalue_line(
        "markers", "slow: exhaustive census sweeps, deselect with -m 'not slow'"
    )


def pytest_collection_modifyitems(config, items):
    """Add claim IDs to test properties for JUnit XML report and record claim coverage."""
    for item in items:
        claim_ids = [str(m.args[0]) for m in item.iter_markers(name="claim") if m.args]
        if claim_ids:
            item.user_properties.append(("claims", ", ".join(claim_ids)))
            for claim_id in claim_ids:
                item.user_properties.append(("claim", claim_id))
    coverage = claim_coverage(items)
    if any(coverage.values()):
        config.stash[COVERAGE_KEY] = coverage


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """List the claim rows no collected test verifies."""
    coverage = config.stash.get(COVERAGE_KEY, None)
    if coverage is None:
        return
    missing = uncovered_claims(coverage)
    covered = len(coverage) - len(missing)
    terminalreporter.write_sep("-", f"claim coverage: {covered}/{len(coverage)}")
    if missing:
        terminalreporter.write_line("claims without a test: " + ", ".join(missing))


@pytest.fixture
def field_ctx_factory() -> FieldCtxFactory:
    """
    Factory fixture to create field towers and polynomials over F_q.

    Example:
        def test_parse(field_ctx_factory: FieldCtxFactory):
            D = field_ctx_factory.create_poly(3, "T^3-T")

    Returns:
        FieldCtxFactory: Factory to create FieldCtx instances
    """
    return FieldCtxFactory()


@pytest.fixture
def drinfeld_factory(field_ctx_factory: FieldCtxFactory) -> DrinfeldFactory:
    """
    Fixture to provide a factory for characteristics and Drinfeld modules.

    Returns:
        DrinfeldFactory: Factory to create GammaCtx and DrinfeldModule instances
    """
    return DrinfeldFactory(field_ctx_factory)


@pytest.fixture
def census_factory(drinfeld_factory: DrinfeldFactory) -> CensusFactory:
    """
    Fixture to provide a factory running single-process censuses.

    Returns:
        CensusFactory: Factory to create CensusReport instances
    """
    return CensusFactory(drinfeld_factory)
