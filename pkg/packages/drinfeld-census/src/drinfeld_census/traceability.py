"""Link tests to the rows of the claim-verdict table."""

from collections.abc import Callable, Iterable
from typing import Dict, List

import pytest

from drinfeld_census.census.claims import CLAIM_IDS


def verifies(*claim_ids: str) -> Callable[[Callable], Callable]:
    """Mark a test as checking one or more rows of the claim-verdict table.

    The ids must be ones :func:`~drinfeld_census.census.verify_claims` emits.
    They show up as ``claim`` properties in the JUnit report and feed the
    claim coverage summary printed at the end of a run:
    - Single claim: @verifies("iso-class-total")
    - Several: @verifies("ratio-identities", "ratio-numerators")
    - Stacked: @verifies("shape-completeness") @verifies("automorphism-order")

    Raises:
        ValueError: If no id is given or an id names no claim row.
    """
    if not claim_ids:
        raise ValueError("At least one claim ID must be provided")
    unknown = sorted(set(claim_ids) - set(CLAIM_IDS))
    if unknown:
        raise ValueError(f"unknown claim ids: {', '.join(unknown)}")

    def decorator(func: Callable) -> Callable:
        for claim_id in claim_ids:
            func = pytest.mark.claim(claim_id)(func)
        return func

    return decorator


def claim_coverage(items: Iterable[pytest.Item]) -> Dict[str, List[str]]:
    """Node ids of the collected tests per claim row, in verdict-table order.

    Every row of the table is present, with an empty list when no test carries it.
    """
    coverage: Dict[str, List[str]] = {claim_id: [] for claim_id in CLAIM_IDS}
    for item in items:
        for marker in item.iter_markers(name="claim"):
            if marker.args:
                coverage.setdefault(str(marker.args[0]), []).append(item.nodeid)
    return coverage


def uncovered_claims(coverage: Dict[str, List[str]]) -> List[str]:
    return [claim_id for claim_id, nodes in coverage.items() if not nodes]
