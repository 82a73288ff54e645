"""Metrics command for louvre."""

import logging
from typing import Optional

import click

from ..exceptions import LouvreError
from ..models.coupler import MetricsReport
from ..models.schedule import Scheme
from ..serializers.dataframe import FORMATS, export_matrix
from ..serializers.report import (
    adaptation_document,
    format_metrics_text,
    metrics_document,
    to_json,
)
from ..services.absent_service import AbsentService
from ..services.metrics_service import MetricsService
from ..services.ordering_service import OrderingService
from ..services.schedule_service import ScheduleService
from ..utils.validators import validate_file_writable
from .common import (
    absent_map,
    absent_option,
    budget_option,
    configuration,
    drop_checks_option,
    exit_code_for,
    fail,
    format_option,
    load_code,
    out_option,
    resolve_schedule,
    scheme_option,
    search_option,
    seed_option,
    strategy_option,
    table_option,
    write_output,
)
from .config import Configuration

logger = logging.getLogger(__name__)


def _matrix_reports(
    code_paths: tuple[str, ...],
    search: bool,
    config: Configuration,
    budget: Optional[float],
    seed: Optional[int],
) -> dict[str, dict[Scheme, Optional[MetricsReport]]]:
    """Metrics of every scheme for every code; searched schemes need --search."""
    reports: dict[str, dict[Scheme, Optional[MetricsReport]]] = {}
    budget_seconds = budget if budget is not None else config.search_budget_seconds
    for code_path in code_paths:
        code = load_code(code_path)
        row: dict[Scheme, Optional[MetricsReport]] = {}
        for scheme in Scheme:
            if scheme.needs_table_or_search and not search:
                continue
            try:
                if scheme.needs_table_or_search:
                    schedule = OrderingService.optimize_ordering(
                        code,
                        scheme,
                        budget_seconds=budget_seconds,
                        seed=seed if seed is not None else config.seed,
                        max_swap_layers=config.max_swap_layers,
                    )
                else:
                    schedule = ScheduleService.build(code, scheme)
                graph = MetricsService.extract_couplers(schedule)
                row[scheme] = MetricsService.metrics_report(
                    graph, scheme, schedule.code
                )
            except LouvreError as err:
                logger.warning("%s on %s: %s", scheme.value, code.label(), err)
                row[scheme] = None
        reports[code.name or code.label()] = row
    return reports


@click.command(
    epilog="""
  # Average degree and distance of one scheme
  louvre metrics --code bb72.code --scheme l8

  # Couplers added around an absent data qubit
  louvre metrics --code bb18.code --scheme l7 --absent 0,0,L \\
      --strategy extra-couplers

  # Comparison matrix of several codes, exported for a spreadsheet
  louvre metrics --code bb18.code --code bb72.code --all-schemes \\
      --export table.csv --export-format csv

Matrix cells read "degree, distance"; "(ref)" columns hold published values.
"""
)
@click.option(
    "--code",
    "code_paths",
    required=True,
    multiple=True,
    type=click.Path(),
    help="""Path to a code file; repeat for several rows of --all-schemes.""",
)
@scheme_option
@table_option
@search_option
@budget_option
@seed_option
@click.option(
    "--all-schemes",
    is_flag=True,
    help="""Print the comparison matrix over every scheme.

    Searched schemes are included only with --search.""",
)
@click.option(
    "--export",
    "export_path",
    type=click.Path(),
    help="""Write the comparison matrix to this file.""",
)
@click.option(
    "--export-format",
    type=click.Choice(list(FORMATS)),
    default="csv",
    show_default=True,
    help="""Format of the exported matrix.""",
)
@absent_option
@strategy_option
@drop_checks_option
@format_option
@out_option
@click.pass_context
def metrics(
    ctx: click.Context,
    code_paths: tuple[str, ...],
    scheme: Optional[str],
    table_path: Optional[str],
    search: bool,
    budget: Optional[float],
    seed: Optional[int],
    all_schemes: bool,
    export_path: Optional[str],
    export_format: str,
    absent: tuple[str, ...],
    strategy: str,
    drop_checks: str,
    output_format: Optional[str],
    out_path: Optional[str],
) -> None:
    """Report the couplers a schedule needs: average degree and distance."""
    config = configuration(ctx)
    output_format = output_format or config.output_format

    if all_schemes:
        reports = _matrix_reports(code_paths, search, config, budget, seed)
        frame = MetricsService.comparison_matrix(reports)
        if export_path:
            errors = validate_file_writable(export_path)
            if errors:
                fail("; ".join(errors))
            export_matrix(
                frame,
                export_path,
                format=export_format,
                metadata={"schemes": [s.value for s in Scheme]},
            )
            click.echo(f"Wrote {export_path}", err=True)
        if output_format == "json":
            text = to_json({"matrix": frame.reset_index().to_dict(orient="records")})
        else:
            text = frame.to_string()
        write_output(text, out_path)
        return

    if len(code_paths) != 1:
        fail("Pass a single --code unless --all-schemes is set")
    code = load_code(code_paths[0])
    schedule = resolve_schedule(code, scheme, table_path, search, config, budget, seed)
    absent_sites = absent_map(code, absent, strategy, drop_checks)
    try:
        adapted = (
            AbsentService.adapt_absent_sites(schedule, absent_sites)
            if absent_sites is not None
            else None
        )
        graph = MetricsService.extract_couplers(
            schedule, adapted.adaptation if adapted else None
        )
        report = MetricsService.metrics_report(graph, schedule.scheme, schedule.code)
    except LouvreError as err:
        fail(str(err), exit_code_for(err))
    reference = MetricsService.reference(code.name, schedule.scheme)

    if output_format == "json":
        document = metrics_document(report, reference)
        if adapted is not None:
            document["adaptation"] = adaptation_document(adapted)
        text = to_json(document)
    else:
        text = format_metrics_text(report, reference)
        if adapted is not None:
            text += f"\n  extra couplers: {len(adapted.extra_couplers)}"
            text += "".join(f"\n    {c}" for c in adapted.extra_couplers)
    write_output(text, out_path)
