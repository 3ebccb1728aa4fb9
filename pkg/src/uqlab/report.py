"""Verification outcomes and their deterministic JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalar import Cyclo

PASS, FAIL, ERROR = "pass", "fail", "error"


def to_jsonable(value):
    """Convert field elements and containers into plain JSON values."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return round(value, 12) + 0.0
    if isinstance(value, complex):
        return {"re": round(value.real, 12) + 0.0, "im": round(value.imag, 12) + 0.0}
    if isinstance(value, (Cyclo, Fraction)):
        return str(value)
    if hasattr(value, "serialize"):
        return value.serialize()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str = PASS
    witness: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, ERROR):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, **witness) -> CheckReport:
        self.status = FAIL
        self.witness.update(witness)
        return self

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": to_jsonable(self.params),
            "status": self.status,
            "witness": to_jsonable(self.witness),
            "elapsed_ms": self.elapsed_ms,
        }

    def sort_key(self) -> tuple[str, str]:
        return self.check, json.dumps(to_jsonable(self.params), sort_keys=True)


def run_timed(fn, *args, **kwargs) -> CheckReport:
    t0 = time.perf_counter()
    rep = fn(*args, **kwargs)
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def dumps_reports(reports, config: dict, version: str) -> str:
    if not reports:
        raise ValueError("no results to report")
    ordered = sorted(reports, key=CheckReport.sort_key)
    doc = {
        "version": version,
        "config": to_jsonable(config),
        "results": [r.to_dict() for r in ordered],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
