"""JSON report assembly shared by the verification suites."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from typing import Any


def jsonable(obj: Any) -> Any:
    """Convert dataclasses, numpy scalars and non-finite floats to JSON values."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def observed_order(errors: list[float], grids: list[int]) -> float | None:
    """Convergence order from the last two grid levels."""
    if len(errors) < 2:
        return None
    e0, e1 = errors[-2], errors[-1]
    if not (e0 > 0 and e1 > 0):
        return None
    return math.log(e0 / e1) / math.log(grids[-1] / grids[-2])


def suite_report(suite: str, cases: list[dict[str, Any]], config: dict[str, Any]) -> dict[str, Any]:
    return {"suite": suite, "cases": cases, "config": config}


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"
