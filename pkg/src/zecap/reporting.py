"""Self-describing JSON reports.

Every CLI command and verification harness emits a report with the same
envelope: the config that produced it, tool versions, a format version,
and a `timing` section.  Execution telemetry that may legitimately vary
between reruns (durations, worker count) lives only under `timing`, so two
runs of the same command agree byte-for-byte after strip_timing.
"""

from __future__ import annotations

import importlib.metadata
import json
import sys

import numba
import numpy

REPORT_FORMAT_VERSION = 1


def package_version() -> str:
    try:
        return importlib.metadata.version("zecap")
    except importlib.metadata.PackageNotFoundError:
        return "unknown"


def report_envelope(command: str, config: dict, seed: int | None = None) -> dict:
    return {
        "format_version": REPORT_FORMAT_VERSION,
        "command": command,
        "config": config,
        "seed": seed,
        "versions": {
            "zecap": package_version(),
            "numpy": numpy.__version__,
            "numba": numba.__version__,
            "python": ".".join(str(v) for v in sys.version_info[:3]),
        },
        "timing": {},
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def strip_timing(obj):
    """Recursively drop every `timing` key; the remainder must be
    reproducible across reruns and worker counts."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
