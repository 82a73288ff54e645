"""Emit command for louvre."""

from typing import Optional

import click

from ..exceptions import LouvreError, VerificationFailedError
from ..serializers.report import format_verification_text
from ..services.absent_service import AbsentService
from ..services.circuit_service import CircuitService
from .common import (
    EXIT_VERIFICATION,
    absent_map,
    absent_option,
    budget_option,
    code_option,
    configuration,
    drop_checks_option,
    exit_code_for,
    fail,
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
  # Six noisy rounds of Louvre-7 as a stim circuit
  louvre emit --code bb18.code --scheme l7 --out bb18-l7.stim

  # Noiseless X-memory experiment
  louvre emit --code bb72.code --scheme l8 --noise-p 0 --basis X

  # Heavier SWAP noise
  louvre emit --code bb72.code --scheme l8 --swap-factor 2

The schedule is verified first; a failing schedule exits with code 1.
"""
)
@code_option
@scheme_option
@table_option
@search_option
@budget_option
@seed_option
@click.option(
    "--rounds",
    type=int,
    help="""Syndrome-extraction rounds (default: rounds).""",
)
@click.option(
    "--noise-p",
    type=float,
    help="""SI1000 base error probability (default: noise_p).""",
)
@click.option(
    "--swap-factor",
    type=float,
    help="""SWAP noise relative to two-qubit noise (default: swap_factor).""",
)
@click.option(
    "--basis",
    type=click.Choice(["X", "Z"], case_sensitive=False),
    help="""Memory basis (default: memory_basis).""",
)
@click.option(
    "--no-verify",
    is_flag=True,
    help="""Skip the verification suite.""",
)
@absent_option
@strategy_option
@drop_checks_option
@out_option
@click.pass_context
def emit(
    ctx: click.Context,
    code_path: str,
    scheme: Optional[str],
    table_path: Optional[str],
    search: bool,
    budget: Optional[float],
    seed: Optional[int],
    rounds: Optional[int],
    noise_p: Optional[float],
    swap_factor: Optional[float],
    basis: Optional[str],
    no_verify: bool,
    absent: tuple[str, ...],
    strategy: str,
    drop_checks: str,
    out_path: Optional[str],
) -> None:
    """Write a noise-annotated memory-experiment circuit in stim format.

    Routed schemes alternate forward and reversed rounds.
    """
    config = configuration(ctx)
    if noise_p is not None:
        config.noise_p = noise_p
    if swap_factor is not None:
        config.swap_factor = swap_factor
    errors = config.validate()
    if errors:
        fail("; ".join(errors))

    code = load_code(code_path)
    schedule = resolve_schedule(code, scheme, table_path, search, config, budget, seed)
    absent_sites = absent_map(code, absent, strategy, drop_checks)
    try:
        adaptation = (
            AbsentService.build_adaptation(schedule.code, absent_sites)
            if absent_sites is not None
            else None
        )
        circuit = CircuitService.emit_circuit(
            schedule,
            rounds=rounds if rounds is not None else config.rounds,
            noise=config.noise(),
            adaptation=adaptation,
            memory_basis=(basis or config.memory_basis).upper(),
            verify=not no_verify,
        )
    except VerificationFailedError as err:
        click.echo(format_verification_text(err.report), err=True)
        fail(str(err), EXIT_VERIFICATION)
    except LouvreError as err:
        fail(str(err), exit_code_for(err))

    write_output(str(circuit), out_path)
