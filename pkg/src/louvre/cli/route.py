"""Route command for louvre."""

import sys
from typing import Optional

import click

from ..exceptions import LouvreError
from ..serializers.report import format_routing_text, routing_document, to_json
from ..services.metrics_service import MetricsService
from ..services.router_service import RouterService
from .common import (
    EXIT_OK,
    EXIT_ROUTING,
    budget_option,
    code_option,
    configuration,
    exit_code_for,
    fail,
    format_option,
    load_code,
    out_option,
    resolve_schedule,
    scheme_option,
    search_option,
    seed_option,
    table_option,
    write_output,
)


@click.command(
    epilog="""
  # Tiers needed by the regular scheme
  louvre route --code bb72.code --scheme regular

  # Louvre-7 with a different tie-break seed and the path dump
  louvre route --code bb72.code --scheme l7 --seed 3 --paths

Exit codes: 0 every coupler routed, 2 input error, 3 routing failure.
"""
)
@code_option
@scheme_option
@table_option
@search_option
@budget_option
@seed_option
@click.option(
    "--paths",
    is_flag=True,
    help="""Also dump every routed path, one line per coupler.""",
)
@format_option
@out_option
@click.pass_context
def route(
    ctx: click.Context,
    code_path: str,
    scheme: Optional[str],
    table_path: Optional[str],
    search: bool,
    budget: Optional[float],
    seed: Optional[int],
    paths: bool,
    output_format: Optional[str],
    out_path: Optional[str],
) -> None:
    """Place the couplers of a schedule on stacked chip tiers.

    Chip-adjacent couplers sit on tier 1; longer ones are routed with A* on
    further tiers until every coupler has a path.
    """
    config = configuration(ctx)
    code = load_code(code_path)
    schedule = resolve_schedule(code, scheme, table_path, search, config, budget, seed)
    try:
        graph = MetricsService.extract_couplers(schedule)
        report = RouterService.route_multitier(
            graph,
            seed=seed if seed is not None else config.seed,
            bump_penalty=config.bump_penalty,
            max_layer_switches=config.max_layer_switches,
            max_tiers=config.max_tiers,
        )
    except LouvreError as err:
        fail(str(err), exit_code_for(err))

    errors = RouterService.routing_errors(report, config.max_layer_switches)
    if (output_format or config.output_format) == "json":
        document = routing_document(report, paths)
        document["errors"] = errors
        text = to_json(document)
    else:
        text = format_routing_text(report, paths)
        text += "".join(f"\n  invalid: {error}" for error in errors)
    write_output(text, out_path)
    sys.exit(EXIT_OK if report.complete and not errors else EXIT_ROUTING)
