"""Report documents: JSON with a schema version, and plain text."""

import json
from typing import Any, Optional

from ..models.code import CodeSpec, Role
from ..models.configuration import AdaptedSchedule
from ..models.coupler import MetricsReport, format_fraction
from ..models.routing import RoutingReport
from ..models.schedule import Schedule
from ..models.verification import VerificationReport
from .instruction_table import format_instruction_table

SCHEMA_VERSION = 1


def to_json(document: dict[str, Any]) -> str:
    """Serialize a report document with its schema version."""
    return json.dumps({"schema": SCHEMA_VERSION, **document}, indent=2, default=str)


def code_document(code: CodeSpec, n: int, k: int) -> dict[str, Any]:
    return {
        "name": code.name,
        "l": code.l,
        "m": code.m,
        "A": code.A.format(),
        "B": code.B.format(),
        "boundary": code.boundary,
        "n": n,
        "k": k,
        "n_qubits": n if code.boundary == "open" else code.n_qubits,
    }


def format_code_text(code: CodeSpec, n: int, k: int) -> str:
    """Parameter summary printed by ``build``."""
    lines = [
        f"code: {code.name or '-'}",
        f"parameters: [[{n},{k}]]",
        f"torus: l={code.l}, m={code.m} ({code.boundary})",
        f"A: {code.A.format()}",
        f"B: {code.B.format()}",
    ]
    if code.boundary == "periodic":
        lines.append(f"grid: {code.width}x{code.height}, {code.n_qubits} qubits")
    return "\n".join(lines)


def schedule_document(schedule: Schedule) -> dict[str, Any]:
    return {
        "code": schedule.code.label(),
        "scheme": schedule.scheme.value,
        "depth": schedule.depth,
        "default_gate": schedule.default_gate.value,
        "transposed": schedule.transposed,
        "init": [str(swap) for swap in schedule.init],
        "table": format_instruction_table(schedule),
        "metadata": dict(schedule.metadata),
    }


def verification_document(
    report: VerificationReport, adapted: Optional[AdaptedSchedule] = None
) -> dict[str, Any]:
    document = report.to_dict()
    if adapted is not None:
        document["adaptation"] = adaptation_document(adapted)
    return document


def format_verification_text(report: VerificationReport) -> str:
    """Verdict line, one line per check, then diagnostics."""
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"{verdict}: {report.scheme} on {report.code}"]
    for name, ok in report.flags().items():
        lines.append(f"  {name}: {'ok' if ok else 'FAILED'}")
    if report.counts:
        counts = ", ".join(f"{key}={value}" for key, value in report.counts.items())
        lines.append(f"  counts: {counts}")
    lines.extend(f"  {message}" for message in report.failure_messages())
    return "\n".join(lines)


def adaptation_document(adapted: AdaptedSchedule) -> dict[str, Any]:
    adaptation = adapted.adaptation
    return {
        "strategy": adaptation.strategy.value,
        "absent": sorted(str(q) for q in adaptation.absent.sites),
        "inactive_checks": sorted(str(q) for q in adaptation.inactive_checks),
        "truncated_checks": sorted(str(q) for q in adaptation.truncated_checks),
        "padding_swaps": adapted.padding_swaps,
        "idle_swaps": adapted.idle_swaps,
        "extra_couplers": [str(c) for c in adapted.extra_couplers],
    }


def _fraction(value: Optional[Any]) -> Optional[str]:
    return format_fraction(value) if value is not None else None


def metrics_document(
    report: MetricsReport, reference: Optional[tuple[Any, Any]] = None
) -> dict[str, Any]:
    return {
        "scheme": report.scheme.value if report.scheme else None,
        "avg_degree": format_fraction(report.avg_degree),
        "avg_distance": format_fraction(report.avg_distance),
        "n_couplers": report.n_couplers,
        "n_qubits": report.n_qubits,
        "predicted_degree": _fraction(report.predicted_degree),
        "role_degree": {
            role.value: format_fraction(v) for role, v in report.role_degree.items()
        },
        "role_distance": {
            role.value: format_fraction(v) for role, v in report.role_distance.items()
        },
        "required_terms": {
            role.value: terms for role, terms in report.required_terms.items()
        },
        "length_histogram": {str(k): v for k, v in report.length_histogram.items()},
        "reference": (
            {
                "avg_degree": _fraction(reference[0]),
                "avg_distance": _fraction(reference[1]),
            }
            if reference is not None
            else None
        ),
    }


def format_metrics_text(
    report: MetricsReport, reference: Optional[tuple[Any, Any]] = None
) -> str:
    """``degree, distance`` on the first line, details below."""
    lines = [report.pair()]
    lines.append(f"  couplers: {report.n_couplers} on {report.n_qubits} qubits")
    if report.predicted_degree is not None:
        lines.append(f"  predicted degree: {format_fraction(report.predicted_degree)}")
    for role in (Role.X, Role.Z):
        if role in report.role_degree:
            terms = ", ".join(report.required_terms.get(role, [])) or "-"
            lines.append(
                f"  {role.value} couplers per unit: "
                f"{format_fraction(report.role_degree[role])} "
                f"(distance {format_fraction(report.role_distance[role])}; "
                f"terms {terms})"
            )
    histogram = ", ".join(f"{k}:{v}" for k, v in report.length_histogram.items())
    lines.append(f"  lengths: {histogram or '-'}")
    if reference is not None:
        degree, distance = reference
        shown = format_fraction(distance) if distance is not None else "not specified"
        lines.append(f"  reference: {format_fraction(degree)}, {shown}")
    return "\n".join(lines)


def routing_document(report: RoutingReport, paths: bool = False) -> dict[str, Any]:
    document: dict[str, Any] = {
        "tiers": report.tiers,
        "complete": report.complete,
        "direct_couplers": len(report.direct),
        "long_couplers": report.n_long,
        "avg_length": format_fraction(report.avg_length),
        "bumps_per_coupler": format_fraction(report.bumps_per_coupler),
        "tsvs_per_coupler": format_fraction(report.tsvs_per_coupler),
        "routed_per_tier": {str(t): n for t, n in report.routed_per_tier.items()},
        "failures": list(report.failures),
    }
    if paths:
        document["paths"] = [
            {
                "coupler": str(path.coupler),
                "tier": path.tier,
                "cells": [list(cell) for cell in path.cells],
            }
            for path in report.paths
        ]
    return document


def format_routing_text(report: RoutingReport, paths: bool = False) -> str:
    """Tier count and per-coupler costs; optionally the path dump."""
    lines = [
        f"tiers: {report.tiers}",
        f"  direct couplers: {len(report.direct)}",
        f"  long couplers: {report.n_long}",
        f"  avg length: {format_fraction(report.avg_length)}",
        f"  bumps per coupler: {format_fraction(report.bumps_per_coupler)}",
        f"  TSVs per coupler: {format_fraction(report.tsvs_per_coupler)}",
    ]
    per_tier = ", ".join(f"{t}:{n}" for t, n in report.routed_per_tier.items())
    lines.append(f"  routed per tier: {per_tier}")
    lines.extend(f"  unrouted: {failure}" for failure in report.failures)
    if paths:
        lines.extend(path.format() for path in report.paths)
    return "\n".join(lines)
