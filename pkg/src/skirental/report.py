"""CSV and JSON records for solver sweeps, robustness ranges and simulations.

Headers are fixed. Unbounded values are written as the token ``inf``,
missing statistics as an empty CSV field or JSON ``null``. Floats use the
shortest representation that round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import astuple, dataclass, fields

from .errors import DomainError
from .markers import UNBOUNDED, Unbounded
from .simulator import SimulationSummary, Table1Row
from .solver import (
    GuaranteeReport,
    Prediction,
    check_probability,
    cr_interval,
    optimal_cr,
    optimal_cutoff_z,
    sensitivity_delta,
)

__all__ = [
    "SWEEP_HEADER",
    "ROBUSTNESS_HEADER",
    "SIMULATION_HEADER",
    "TABLE1_HEADER",
    "GUARANTEE_HEADER",
    "SweepRow",
    "RobustnessRow",
    "alpha_grid",
    "emit_sweep",
    "emit_robustness",
    "records_to_csv",
    "records_to_json",
    "parse_csv",
    "parse_sweep_csv",
    "parse_robustness_csv",
    "guarantee_record",
    "simulation_record",
    "table1_record",
]

INF_TOKEN = "inf"

SWEEP_HEADER = ("alpha", "z_star", "cutoff_days", "optimal_cr", "delta")
ROBUSTNESS_HEADER = ("alpha_hat", "cr_best", "cr_worst")
SIMULATION_HEADER = (
    "label", "trials", "seed", "mean_cr", "std_err", "ci95_lo", "ci95_hi", "theoretical",
)
TABLE1_HEADER = SIMULATION_HEADER + ("bound",)
GUARANTEE_HEADER = tuple(f.name for f in fields(GuaranteeReport))


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    z_star: float | Unbounded
    cutoff_days: float | Unbounded
    optimal_cr: float
    delta: float | Unbounded


@dataclass(frozen=True)
class RobustnessRow:
    alpha_hat: float
    cr_best: float
    cr_worst: float | Unbounded


def alpha_grid(start: float, stop: float, step: float) -> list[float]:
    """Points ``start, start + step, ...`` up to and including ``stop``."""
    start, stop, step = float(start), float(stop), float(step)
    if not step > 0.0:
        raise DomainError(f"step must be positive, got {step!r}")
    check_probability(start, "start")
    check_probability(stop, "stop")
    if not start < stop:
        raise DomainError(f"empty grid: start={start!r} must be below stop={stop!r}")
    count = math.floor((stop - start) / step + 1e-9)
    # Rounding keeps grid points such as 0.15 exact decimal literals.
    grid = [min(round(start + i * step, 12), stop) for i in range(count + 1)]
    return sorted(set(grid))


def emit_sweep(alpha_start: float, alpha_stop: float, step: float, buy_cost: float = 10.0) -> list[SweepRow]:
    rows = []
    for alpha in alpha_grid(alpha_start, alpha_stop, step):
        z = optimal_cutoff_z(alpha)
        rows.append(
            SweepRow(
                alpha=alpha,
                z_star=z,
                cutoff_days=UNBOUNDED if z is UNBOUNDED else buy_cost * z,
                optimal_cr=optimal_cr(alpha),
                delta=sensitivity_delta(alpha),
            )
        )
    return rows


def emit_robustness(alpha_start: float, alpha_stop: float, step: float) -> list[RobustnessRow]:
    """Best case (correct prediction) and worst case (maximal error) per prediction."""
    rows = []
    for alpha_hat in alpha_grid(alpha_start, alpha_stop, step):
        _, worst = cr_interval(Prediction.worst_case(alpha_hat))
        rows.append(RobustnessRow(alpha_hat, optimal_cr(alpha_hat), worst))
    return rows


def guarantee_record(report: GuaranteeReport) -> dict:
    return dict(zip(GUARANTEE_HEADER, astuple(report)))


def simulation_record(label: str, summary: SimulationSummary, theoretical) -> dict:
    return {
        "label": label,
        "trials": summary.trials,
        "seed": summary.seed,
        "mean_cr": summary.mean_cr,
        "std_err": summary.std_err,
        "ci95_lo": summary.ci95_lo,
        "ci95_hi": summary.ci95_hi,
        "theoretical": theoretical,
    }


def table1_record(row: Table1Row) -> dict:
    record = simulation_record(row.label, row.summary, row.theoretical)
    record["bound"] = row.bound
    return record


def _as_dict(record, header) -> dict:
    if isinstance(record, dict):
        return {key: record[key] for key in header}
    return dict(zip(header, astuple(record)))


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if value is UNBOUNDED:
        return INF_TOKEN
    if isinstance(value, bool):
        raise TypeError("booleans are not part of any record")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite float {value!r} must be reported as UNBOUNDED")
        return repr(value)
    return str(value)


def _json_value(value):
    if value is UNBOUNDED:
        return INF_TOKEN
    if isinstance(value, float) and not math.isfinite(value):
        raise DomainError(f"non-finite float {value!r} must be reported as UNBOUNDED")
    return value


def records_to_csv(records, header) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        row = _as_dict(record, header)
        writer.writerow([_csv_cell(row[key]) for key in header])
    return buffer.getvalue()


def records_to_json(records, header, single: bool = False) -> str:
    objects = [
        {key: _json_value(value) for key, value in _as_dict(r, header).items()} for r in records
    ]
    payload = objects[0] if single else objects
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _parse_cell(text: str):
    if text == "":
        return None
    if text == INF_TOKEN:
        return UNBOUNDED
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str, header) -> list[dict]:
    reader = csv.reader(io.StringIO(text))
    found = tuple(next(reader))
    if found != tuple(header):
        raise DomainError(f"unexpected CSV header {found!r}, expected {tuple(header)!r}")
    return [dict(zip(header, (_parse_cell(cell) for cell in row))) for row in reader]


def _as_float(value):
    return value if value is UNBOUNDED or value is None else float(value)


def parse_sweep_csv(text: str) -> list[SweepRow]:
    return [
        SweepRow(**{k: _as_float(v) for k, v in row.items()}) for row in parse_csv(text, SWEEP_HEADER)
    ]


def parse_robustness_csv(text: str) -> list[RobustnessRow]:
    return [
        RobustnessRow(**{k: _as_float(v) for k, v in row.items()})
        for row in parse_csv(text, ROBUSTNESS_HEADER)
    ]
