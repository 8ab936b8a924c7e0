"""Python surface of the bound-verification harness.

Configs are the same JSON documents the CLI consumes; results come back as
plain dicts mirroring the CSV schema.
"""

from ._core import (
    ConfigError,
    acceptance,
    acceptance_suites,
    canonical_config,
    config_hash,
    dyadic_horizons,
    run_config,
    to_csv,
)

__all__ = [
    "ConfigError",
    "acceptance",
    "acceptance_suites",
    "canonical_config",
    "config_hash",
    "dyadic_horizons",
    "run_config",
    "to_csv",
]
