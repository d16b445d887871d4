"""Run settings shared by the library, the CLI and the pytest plugin."""

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from drinfeld_census.errors import ConfigError

DEFAULT_CAP = 4096
DEFAULT_BRUTE_FORCE_MAX_DEGREE = 5

ENV_CAP = "DRINFELD_CENSUS_CAP"
ENV_JOBS = "DRINFELD_CENSUS_JOBS"


@dataclass(frozen=True)
class CensusSettings:
    """Tunable limits of a census run.

    Attributes:
        cap: Largest admissible field size q^n for full enumeration.
        jobs: Worker processes for the (g, delta) sweep; 1 runs in-process.
        check_twist_invariance: Evaluate every module instead of one per
            isomorphism class and assert the invariants agree on each orbit.
        brute_force_max_degree: Degree guard for the form-enumeration oracle.
    """

    cap: int = DEFAULT_CAP
    jobs: int = 1
    check_twist_invariance: bool = True
    brute_force_max_degree: int = DEFAULT_BRUTE_FORCE_MAX_DEGREE

    def __post_init__(self):
        if self.cap < 2:
            raise ConfigError(f"cap must be at least 2, got {self.cap}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be a positive integer, got {self.jobs}")
        if self.brute_force_max_degree < 0:
            raise ConfigError("brute_force_max_degree must be non-negative")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "CensusSettings":
        """Build settings from environment overrides.

        Args:
            environ: Mapping to read from, defaults to ``os.environ``.

        Returns:
            CensusSettings with ``DRINFELD_CENSUS_CAP`` and ``DRINFELD_CENSUS_JOBS`` applied.

        Raises:
            ConfigError: If a variable is set but is not a positive integer.
        """
        environ = os.environ if environ is None else environ
        return cls(
            cap=_int_from_env(environ, ENV_CAP, DEFAULT_CAP),
            jobs=_int_from_env(environ, ENV_JOBS, os.cpu_count() or 1),
        )

    def with_overrides(self, **changes) -> "CensusSettings":
        """Return a copy with the non-None keyword arguments applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _int_from_env(environ: Mapping[str, str], name: str, default: int) -> int:
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value
