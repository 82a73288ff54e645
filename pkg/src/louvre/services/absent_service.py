"""Absent-site adaptation: running a schedule on a lattice with holes."""

import logging

import numpy as np

from ..exceptions import AbsentSiteError
from ..models.code import CheckMatrices, CodeSpec, QubitId, Role
from ..models.configuration import AdaptedSchedule, SiteAdaptation
from ..models.schedule import AbsentSiteMap, Schedule, Strategy
from .code_service import CodeService
from .metrics_service import MetricsService
from .tracker_service import TrackerService

logger = logging.getLogger(__name__)


class AbsentService:
    """Service for absent data or ancilla sites."""

    @staticmethod
    def parse_site(text: str, code: CodeSpec) -> QubitId:
        """Parse ``i,j,ROLE`` into a qubit of the code.

        Raises:
            AbsentSiteError: On malformed text or a site outside the torus
        """
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3:
            raise AbsentSiteError(f"Absent site {text!r} must look like i,j,ROLE")
        try:
            i, j = int(parts[0]), int(parts[1])
            role = Role(parts[2].upper())
        except ValueError as err:
            raise AbsentSiteError(f"Absent site {text!r}: {err}") from err
        if not (0 <= i < code.m and 0 <= j < code.l):
            raise AbsentSiteError(
                f"Absent site {text!r} is outside the {code.m}x{code.l} torus"
            )
        return QubitId(i, j, role)

    @staticmethod
    def build_adaptation(code: CodeSpec, absent: AbsentSiteMap) -> SiteAdaptation:
        """Decide which checks survive around the absent sites.

        Checks of type ``absent.drop_checks`` touching an absent data qubit go
        inactive; checks of the other type lose that qubit.

        Raises:
            AbsentSiteError: If a site is off the torus or a surviving check
                would keep fewer than two data qubits
        """
        if absent.is_empty:
            return SiteAdaptation(absent=absent)
        for site in absent.sites:
            if not (0 <= site.i < code.m and 0 <= site.j < code.l):
                raise AbsentSiteError(f"Absent site {site} is off the torus")

        removed = frozenset(q for q in absent.sites if not q.role.is_ancilla)
        inactive = {q for q in absent.sites if q.role.is_ancilla}
        truncated = set()
        for role in (Role.X, Role.Z):
            for check in CodeService.all_qubits(code, role):
                support = CodeService.stabilizer_support(code, check)
                if not support & removed or check in inactive:
                    continue
                if role is absent.drop_checks:
                    inactive.add(check)
                    continue
                remaining = support - removed
                lost = support & removed
                if len(remaining) < 2:
                    raise AbsentSiteError(
                        f"Check {check} keeps {len(remaining)} data qubit(s) "
                        f"after removing {', '.join(sorted(map(str, lost)))}"
                    )
                truncated.add(check)

        missing = (
            absent.sites
            if absent.strategy is Strategy.EXTRA_COUPLERS
            else frozenset()
        )
        adaptation = SiteAdaptation(
            absent=absent,
            missing=frozenset(missing),
            removed_data=removed,
            inactive_checks=frozenset(inactive),
            truncated_checks=frozenset(truncated),
        )
        logger.info(
            "Absent sites %s: %d inactive and %d truncated checks",
            ", ".join(sorted(map(str, absent.sites))),
            len(inactive),
            len(truncated),
        )
        return adaptation

    @staticmethod
    def adapt_absent_sites(
        schedule: Schedule, absent: AbsentSiteMap
    ) -> AdaptedSchedule:
        """Run a schedule around absent sites.

        Under padding every site keeps a qubit and the routing stays global.
        Under extra couplers a missing site blocks its routing partner, which
        stays put, and the couplers it then needs are reported.

        Returns:
            The schedule with its adaptation, the extra couplers and the number
            of routing gates that lost their CNOT
        """
        adaptation = AbsentService.build_adaptation(schedule.code, absent)
        if adaptation.is_complete:
            return AdaptedSchedule(schedule=schedule, adaptation=adaptation)

        record = TrackerService.run(schedule, adaptation)
        adapted_graph = MetricsService.graph_from_records(
            schedule.code, [record], adaptation
        )
        nominal_graph = MetricsService.extract_couplers(schedule)
        extra = adapted_graph.difference(nominal_graph)
        if absent.strategy is Strategy.PADDING and extra:
            logger.warning(
                "Padding left %d couplers outside the nominal graph", len(extra)
            )
        return AdaptedSchedule(
            schedule=schedule,
            adaptation=adaptation,
            extra_couplers=extra,
            padding_swaps=record.padding_swaps,
            idle_swaps=record.idle_swaps,
        )

    @staticmethod
    def check_matrices(code: CodeSpec, adaptation: SiteAdaptation) -> CheckMatrices:
        """Check matrices of the adapted code: active checks, remaining data."""
        full = CodeService.check_matrices(code)
        if adaptation.is_complete:
            return full
        columns = [c for c, q in enumerate(full.data) if adaptation.in_code(q)]
        x_rows = [r for r, q in enumerate(full.x_checks) if adaptation.in_code(q)]
        z_rows = [r for r, q in enumerate(full.z_checks) if adaptation.in_code(q)]
        return CheckMatrices(
            hx=full.hx[np.ix_(x_rows, columns)],
            hz=full.hz[np.ix_(z_rows, columns)],
            x_checks=[full.x_checks[r] for r in x_rows],
            z_checks=[full.z_checks[r] for r in z_rows],
            data=[full.data[c] for c in columns],
        )
