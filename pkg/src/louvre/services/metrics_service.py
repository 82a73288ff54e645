"""Metrics service: couplers implied by a schedule and their statistics."""

import logging
from fractions import Fraction
from typing import Optional

import pandas as pd  # type: ignore[import-untyped]

from ..models.code import CodeSpec, Role
from ..models.configuration import PhysicalGate, SiteAdaptation, TrackRecord
from ..models.coupler import Coupler, CouplerGraph, MetricsReport, format_fraction
from ..models.schedule import Schedule, Scheme
from .code_service import CodeService
from .tracker_service import TrackerService

logger = logging.getLogger(__name__)

Pair = tuple[Fraction, Optional[Fraction]]

# Published (degree, distance) pairs; None marks a value left blank.
REFERENCE_VALUES: dict[str, dict[Scheme, Pair]] = {
    "18,4,4": {
        Scheme.REGULAR: (Fraction(6), Fraction(10)),
        Scheme.L7: (Fraction(9, 2), Fraction(15, 2)),
        Scheme.L8: (Fraction(4), Fraction(6)),
    },
    "72,8,9": {
        Scheme.REGULAR: (Fraction(8), Fraction(54)),
        Scheme.L7: (Fraction(5), Fraction(28)),
        Scheme.L7R: (Fraction(5), Fraction(26)),
        Scheme.L8: (Fraction(9, 2), Fraction(28)),
        Scheme.L8R: (Fraction(9, 2), Fraction(26)),
    },
    "72,8,10": {
        Scheme.REGULAR: (Fraction(8), None),
        Scheme.L7: (Fraction(6), None),
        Scheme.L8: (Fraction(5), None),
    },
    "72,12,6": {
        Scheme.REGULAR: (Fraction(6), Fraction(22)),
        Scheme.L7: (Fraction(9, 2), Fraction(33, 2)),
        Scheme.L7R: (Fraction(9, 2), Fraction(27, 2)),
        Scheme.L8: (Fraction(4), Fraction(12)),
        Scheme.L8R: (Fraction(9, 2), Fraction(21, 2)),
    },
    "72,8,4": {
        Scheme.REGULAR: (Fraction(6), Fraction(10)),
        Scheme.L7: (Fraction(9, 2), Fraction(15, 2)),
        Scheme.L7R: (Fraction(7, 2), Fraction(7, 2)),
        Scheme.L8: (Fraction(4), Fraction(6)),
    },
    "96,10,12": {
        Scheme.REGULAR: (Fraction(8), Fraction(62)),
        Scheme.L7: (Fraction(6), Fraction(43)),
        Scheme.L7R: (Fraction(6), Fraction(37)),
        Scheme.L8: (Fraction(5), Fraction(32)),
        Scheme.L8R: (Fraction(11, 2), Fraction(55, 2)),
    },
    "128,16,8": {
        Scheme.REGULAR: (Fraction(8), Fraction(44)),
        Scheme.L7: (Fraction(6), Fraction(32)),
        Scheme.L7R: (Fraction(6), Fraction(26)),
        Scheme.L8: (Fraction(5), Fraction(23)),
        Scheme.L8R: (Fraction(11, 2), Fraction(39, 2)),
    },
}


class MetricsService:
    """Service for coupler extraction and degree/distance statistics."""

    @staticmethod
    def coupler_for(code: CodeSpec, gate: PhysicalGate) -> Coupler:
        """Edge between the two sites a gate acts on."""
        length = CodeService.torus_distance(
            gate.control_pos, gate.target_pos, code.width, code.height
        )
        return Coupler(gate.control_pos, gate.target_pos, length)

    @staticmethod
    def graph_from_records(
        code: CodeSpec,
        records: list[TrackRecord],
        adaptation: Optional[SiteAdaptation] = None,
    ) -> CouplerGraph:
        """Collapse the gates of tracked rounds into a coupler graph.

        Within a layer X gates are visited before Z gates, so a coupler both
        classes need in one layer is attributed to X.
        """
        n_qubits = code.n_qubits - len(adaptation.missing if adaptation else ())
        graph = CouplerGraph(width=code.width, height=code.height, n_qubits=n_qubits)
        for record in records:
            for layer in record.layers:
                ordered = sorted(layer, key=lambda g: g.role is not Role.X)
                for gate in ordered:
                    coupler = MetricsService.coupler_for(code, gate)
                    graph.add(coupler, gate.role, gate.term)
        return graph

    @staticmethod
    def extract_couplers(
        schedule: Schedule, adaptation: Optional[SiteAdaptation] = None
    ) -> CouplerGraph:
        """Couplers a schedule needs, from one tracked forward round.

        The reversed round replays the same gates on the same sites, so one
        round determines the graph.
        """
        record = TrackerService.run(schedule, adaptation)
        graph = MetricsService.graph_from_records(schedule.code, [record], adaptation)
        logger.debug(
            "%s on %s needs %d couplers",
            schedule.scheme.value,
            schedule.code.label(),
            len(graph),
        )
        return graph

    @staticmethod
    def metrics_report(
        graph: CouplerGraph,
        scheme: Optional[Scheme] = None,
        code: Optional[CodeSpec] = None,
    ) -> MetricsReport:
        """Exact averages over all qubits.

        Args:
            graph: Coupler graph
            scheme: Scheme tag for the report and the degree formula
            code: Code used for the degree formula

        Returns:
            Report with ``avg_degree = 2|C| / n`` and
            ``avg_distance = 2 * sum(lengths) / n``
        """
        n = graph.n_qubits
        total_length = sum(c.length for c in graph.couplers)
        avg_degree = Fraction(2 * len(graph), n) if n else Fraction(0)
        avg_distance = Fraction(2 * total_length, n) if n else Fraction(0)

        role_degree: dict[Role, Fraction] = {}
        role_distance: dict[Role, Fraction] = {}
        per_class = max(graph.width * graph.height // 4, 1)
        for role in (Role.X, Role.Z):
            owned = [c for c, (r, _) in graph.first_use.items() if r is role]
            role_degree[role] = Fraction(len(owned), per_class)
            role_distance[role] = Fraction(sum(c.length for c in owned), per_class)

        predicted = None
        if scheme is not None and code is not None:
            predicted = MetricsService.predicted_degree(scheme, code.n_a, code.n_b)
        return MetricsReport(
            avg_degree=avg_degree,
            avg_distance=avg_distance,
            n_couplers=len(graph),
            n_qubits=n,
            role_degree=role_degree,
            role_distance=role_distance,
            length_histogram=graph.length_histogram(),
            required_terms=MetricsService.required_terms(graph),
            scheme=scheme,
            predicted_degree=predicted,
        )

    @staticmethod
    def required_terms(graph: CouplerGraph) -> dict[Role, list[str]]:
        """Terms behind the couplers each ancilla class installs first."""
        return {
            role: [str(term) for term in sorted(terms)]
            for role, terms in graph.terms_by_role().items()
        }

    @staticmethod
    def predicted_degree(scheme: Scheme, n_a: int, n_b: int) -> Optional[Fraction]:
        """Closed-form average degree; ``None`` for searched schemes.

        Raises:
            ValueError: If a polynomial has no terms
        """
        if n_a < 1 or n_b < 1:
            raise ValueError("Both polynomials need at least one term")
        if scheme is Scheme.REGULAR:
            return Fraction(n_a + n_b)
        if scheme is Scheme.L7:
            return Fraction(n_a + n_b) - Fraction(max(n_a, n_b), 2)
        if scheme is Scheme.L8:
            return Fraction(n_a + n_b, 2) + 1
        return None

    @staticmethod
    def reference(code_name: str, scheme: Scheme) -> Optional[Pair]:
        """Published values for a code and scheme, if any."""
        key = code_name.strip("[] ")
        return REFERENCE_VALUES.get(key, {}).get(scheme)

    @staticmethod
    def reference_cell(code_name: str, scheme: Scheme) -> str:
        """Published pair as ``degree, distance``; blanks read not specified."""
        values = MetricsService.reference(code_name, scheme)
        if values is None:
            return ""
        degree, distance = values
        shown = format_fraction(distance) if distance is not None else "not specified"
        return f"{format_fraction(degree)}, {shown}"

    @staticmethod
    def comparison_matrix(
        reports: dict[str, dict[Scheme, Optional[MetricsReport]]],
        with_reference: bool = True,
    ) -> pd.DataFrame:
        """Codes by schemes, each cell ``degree, distance``.

        Args:
            reports: Report per code label and scheme; ``None`` marks a pair
                that could not be scheduled
            with_reference: Add a ``<scheme> (ref)`` column beside each scheme

        Returns:
            DataFrame indexed by code label
        """
        schemes = [s for s in Scheme if any(s in row for row in reports.values())]
        rows = []
        for code_name, row in reports.items():
            record: dict[str, str] = {"code": code_name}
            for scheme in schemes:
                if scheme in row:
                    report = row[scheme]
                    record[scheme.value] = report.pair() if report else "n/a"
                else:
                    record[scheme.value] = ""
                if with_reference:
                    record[f"{scheme.value} (ref)"] = MetricsService.reference_cell(
                        code_name, scheme
                    )
            rows.append(record)
        return pd.DataFrame(rows).set_index("code") if rows else pd.DataFrame()
