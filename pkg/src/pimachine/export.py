"""Serialisation of traces, counts and reports to JSON-able dicts and CSV text."""

from __future__ import annotations

import csv
import io
import json

from .angles import CertifiedCount
from .equivalence import ComparisonReport
from .grover import GroverInstance, probability_trace
from .machine import CollisionTrace, MachineConfig

TRACE_COLUMNS = ("index", "event_type", "v1_num", "v1_den", "v2_num", "v2_den")
GROVER_COLUMNS = ("t", "P_statevector", "P_closed_form", "theta_t")
COMPARE_COLUMNS = ("t", "machine_theta", "grover_theta", "deviation")
BATCH_COLUMNS = (
    "mass_ratio",
    "machine_count",
    "closed_form_count",
    "counts_match",
    "max_angle_deviation",
    "offset_used",
)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def trace_records(trace: CollisionTrace) -> list[dict]:
    """One record per event, with the velocities right after it."""
    records = []
    for i, (before, after) in enumerate(zip(trace.states, trace.states[1:]), start=1):
        records.append(
            {
                "index": i,
                "event_type": before.next_event.value,
                "v1_num": str(after.v1.numerator),
                "v1_den": str(after.v1.denominator),
                "v2_num": str(after.v2.numerator),
                "v2_den": str(after.v2.denominator),
            }
        )
    return records


def trace_json(trace: CollisionTrace, c: MachineConfig) -> dict:
    out = count_only_json(trace, c)
    out["events"] = trace_records(trace)
    return out


def trace_csv(trace: CollisionTrace) -> str:
    return to_csv(TRACE_COLUMNS, ([r[col] for col in TRACE_COLUMNS] for r in trace_records(trace)))


def count_only_json(trace: CollisionTrace, c: MachineConfig) -> dict:
    return {"total_collisions": trace.total_collisions, "m1": str(c.m1), "m2": str(c.m2)}


def certified_count_json(result: CertifiedCount) -> dict:
    return {
        "count": result.count,
        "certified": result.certified,
        "precision_used": result.precision_used,
        "mass_ratio": str(result.mass_ratio),
    }


def grover_json(instance: GroverInstance, steps: int) -> dict:
    rows = probability_trace(instance, steps)
    return {
        "instance": instance.as_dict(),
        "rows": [dict(zip(GROVER_COLUMNS, row)) for row in rows],
    }


def grover_csv(instance: GroverInstance, steps: int) -> str:
    return to_csv(GROVER_COLUMNS, (tuple(map(repr, row)) for row in probability_trace(instance, steps)))


def comparison_csv(report: ComparisonReport) -> str:
    rows = []
    for t, (m, g) in enumerate(zip(report.machine_angles, report.grover_angles), start=1):
        rows.append((t, repr(m), repr(g), repr(abs(m - g))))
    return to_csv(COMPARE_COLUMNS, rows)


def batch_csv(reports: list[ComparisonReport]) -> str:
    rows = (
        (
            str(r.mass_ratio),
            r.machine_count,
            r.closed_form_count,
            r.counts_match,
            repr(r.max_angle_deviation),
            repr(r.offset_used),
        )
        for r in reports
    )
    return to_csv(BATCH_COLUMNS, rows)
