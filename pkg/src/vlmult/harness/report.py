"""Report rows, slope fits and CSV/JSON emission."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from ..norms import WEIGHTED_NORM_CONVENTION

CSV_HEADER = ("experiment", "param_id", "quantity", "value", "tolerance", "pass")


@dataclass
class Row:
    experiment: str
    param_id: str
    quantity: str
    value: float
    tolerance: Optional[float] = None
    passed: Optional[bool] = None  # None marks an informational row

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "param_id": self.param_id,
            "quantity": self.quantity,
            "value": _json_number(self.value),
            "tolerance": _json_number(self.tolerance),
            "pass": self.passed,
            "provenance": WEIGHTED_NORM_CONVENTION,
        }


@dataclass
class Slope:
    param_id: str
    slope: float
    residual: float
    points: int


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    rows: list = field(default_factory=list)
    slopes: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def info(self, param_id: str, quantity: str, value) -> Row:
        row = Row(self.experiment, param_id, quantity, float(value))
        self.rows.append(row)
        return row

    def check(self, param_id: str, quantity: str, value, tolerance, passed) -> Row:
        value = float(value)
        row = Row(self.experiment, param_id, quantity, value, float(tolerance), bool(passed) and not math.isnan(value))
        self.rows.append(row)
        return row

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows if r.passed is not None)

    def failures(self) -> list:
        return [r for r in self.rows if r.passed is False]

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "passed": self.passed,
            "config": self.config,
            "rows": [r.to_dict() for r in self.rows],
            "slopes": [
                {"param_id": s.param_id, "slope": s.slope, "residual": s.residual, "points": s.points}
                for s in self.slopes
            ],
            "notes": list(self.notes),
            "extra": self.extra,
            "provenance": {"weighted_norm": WEIGHTED_NORM_CONVENTION, "threads": 1},
        }


def fit_slope(x, y, param_id: str = "") -> Slope:
    """Least squares slope of log y against log x over the upper half of the sweep."""
    lx, ly = np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float))
    start = len(lx) // 2
    lx, ly = lx[start:], ly[start:]
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = float(np.sqrt(np.mean((A @ coef - ly) ** 2)))
    return Slope(param_id, float(coef[0]), resid, int(lx.size))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return format(float(v), ".17g")


def _json_number(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else str(v)


def to_csv(reports, reproducible: bool = False) -> str:
    buf = io.StringIO()
    if not reproducible:
        buf.write(f"# generated {datetime.now(timezone.utc).isoformat()}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        for r in rep.rows:
            w.writerow([r.experiment, r.param_id, r.quantity, _fmt(r.value), _fmt(r.tolerance),
                        "" if r.passed is None else _fmt(r.passed)])
    return buf.getvalue()


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return _json_number(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def to_json(reports) -> str:
    return json.dumps({"reports": [_clean(r.to_dict()) for r in reports]}, indent=2, sort_keys=True)


def write_reports(reports, out: Path, reproducible: bool = False) -> tuple[Path, Path]:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(to_csv(reports, reproducible))
    sidecar = out.with_suffix(".json")
    sidecar.write_text(to_json(reports))
    return out, sidecar
