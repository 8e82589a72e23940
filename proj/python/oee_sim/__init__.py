"""Python front end for the oee predator-prey simulator.

Configs are plain dicts using the same keys as the CLI's JSON files; missing
keys take their defaults.
"""

import json
from typing import Optional, Sequence

from . import _core
from ._core import (
    ValidationError,
    attribution,
    death_interval,
    random_symmetry_baseline,
    steering_scale,
)

__all__ = [
    "ValidationError",
    "attribution",
    "batch",
    "config_hash",
    "death_interval",
    "default_config",
    "random_symmetry_baseline",
    "replay",
    "run",
    "steering_scale",
]


def _dump(config: Optional[dict]) -> str:
    return json.dumps(config or {})


def default_config() -> dict:
    return json.loads(_core.default_config_json())


def config_hash(config: Optional[dict] = None) -> str:
    """Parameter hash of a config; the seed does not contribute."""
    return _core.config_hash(_dump(config))


def run(config: Optional[dict] = None, out_dir: Optional[str] = None) -> dict:
    """Runs one experiment. Returns ``{"summary", "series", "records"}``.

    With ``out_dir`` the event log and metrics CSV are written there as
    ``run_<seed>.jsonl`` and ``metrics_<seed>.csv``.
    """
    return _core.run(_dump(config), out_dir)


def replay(log_path: str, config: Optional[dict] = None) -> dict:
    """Recomputes metrics from a log. A given config must match the log's hash."""
    return _core.replay(log_path, None if config is None else _dump(config))


def batch(
    config: Optional[dict] = None,
    n_runs: int = 10,
    seeds: Sequence[int] = (),
    out_dir: Optional[str] = None,
    threads: int = 0,
) -> dict:
    return _core.batch(_dump(config), n_runs, list(seeds), out_dir, threads)
