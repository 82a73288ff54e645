"""Verify command for louvre."""

import sys
from typing import Optional

import click

from ..exceptions import LouvreError
from ..models.configuration import AdaptedSchedule
from ..serializers.report import (
    format_verification_text,
    to_json,
    verification_document,
)
from ..services.absent_service import AbsentService
from ..services.verification_service import VerificationService
from .common import (
    EXIT_OK,
    EXIT_VERIFICATION,
    absent_map,
    absent_option,
    budget_option,
    code_option,
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


@click.command(
    epilog="""
  # Full verification of a generated schedule
  louvre verify --code bb18.code --scheme l8

  # Verify a hand-written table around an absent data qubit
  louvre verify --code bb18.code --table l7.table --absent 0,0,L \\
      --strategy extra-couplers

  # Show how an inconsistent order fails
  louvre verify --code bb72.code --adversarial --format json

Exit codes: 0 all checks pass, 1 a check fails, 2 input error.
"""
)
@code_option
@scheme_option
@table_option
@search_option
@budget_option
@seed_option
@click.option(
    "--adversarial",
    is_flag=True,
    help="""Verify a fixed non-commuting order (weight-6 codes) instead.""",
)
@click.option(
    "--max-coupler-length",
    type=int,
    help="""Flag any gate longer than this torus distance.""",
)
@absent_option
@strategy_option
@drop_checks_option
@format_option
@out_option
@click.pass_context
def verify(
    ctx: click.Context,
    code_path: str,
    scheme: Optional[str],
    table_path: Optional[str],
    search: bool,
    budget: Optional[float],
    seed: Optional[int],
    adversarial: bool,
    max_coupler_length: Optional[int],
    absent: tuple[str, ...],
    strategy: str,
    drop_checks: str,
    output_format: Optional[str],
    out_path: Optional[str],
) -> None:
    """Check that a schedule measures the code's stabilizers.

    Runs the structural, coverage, commutation, determinism, single-fault,
    logical-preservation and restoration checks.
    """
    config = configuration(ctx)
    code = load_code(code_path)
    if adversarial:
        try:
            target = VerificationService.adversarial_schedule(code)
        except ValueError as err:
            fail(str(err))
    else:
        target = resolve_schedule(
            code, scheme, table_path, search, config, budget, seed
        )

    adapted: Optional[AdaptedSchedule] = None
    absent_sites = absent_map(code, absent, strategy, drop_checks)
    try:
        if absent_sites is not None:
            adapted = AbsentService.adapt_absent_sites(target, absent_sites)
        report = VerificationService.verify_syndromes(
            target,
            adapted.adaptation if adapted else None,
            seed=seed if seed is not None else config.seed,
            max_coupler_length=max_coupler_length,
        )
    except LouvreError as err:
        fail(str(err), exit_code_for(err))

    if (output_format or config.output_format) == "json":
        text = to_json(verification_document(report, adapted))
    else:
        text = format_verification_text(report)
    write_output(text, out_path)
    sys.exit(EXIT_OK if report.passed else EXIT_VERIFICATION)
