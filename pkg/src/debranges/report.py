"""Structured run reports.

Every CLI invocation writes one JSON report describing what ran, with
what inputs and tolerances, and what came out.  Reports are deterministic
except for the ``generated_at`` timestamp: keys are sorted, numpy types
are converted to plain Python, and complex numbers are emitted as
``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = ["jsonable", "build_report", "write_report"]


def jsonable(value):
    """Convert a result object into JSON-serializable plain data."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if np.isfinite(v) else repr(v)
    if isinstance(value, (complex, np.complexfloating)):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "as_dict"):
        return jsonable(value.as_dict())
    return repr(value)


def build_report(subcommand: str, operation: str, inputs: dict, config: dict,
                 results: dict, outputs=(), diagnostics=None) -> dict:
    from . import __version__

    return {
        "tool": {"name": "debranges", "version": __version__},
        "subcommand": subcommand,
        "operation": operation,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "inputs": jsonable(inputs),
        "config": jsonable(config),
        "results": jsonable(results),
        "diagnostics": jsonable(diagnostics or {}),
        "outputs": [str(p) for p in outputs],
    }


def write_report(path, report: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8")
    return path
