"""Helpers shared by the louvre commands."""

import sys
from typing import NoReturn, Optional

import click

from ..exceptions import (
    LouvreError,
    RoutingError,
    StructuralError,
    VerificationFailedError,
)
from ..models.code import CodeSpec, Role
from ..models.schedule import AbsentSiteMap, Schedule, Scheme, Strategy
from ..parsers.code_parser import CodeParser
from ..parsers.table_parser import TableParser
from ..services.absent_service import AbsentService
from ..services.ordering_service import OrderingService
from ..services.schedule_service import ScheduleService
from ..utils.validators import validate_file_readable, validate_file_writable
from .config import Configuration

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_ROUTING = 3

SCHEME_NAMES = [scheme.value for scheme in Scheme]

code_option = click.option(
    "--code",
    "code_path",
    required=True,
    type=click.Path(),
    help="""Path to a code file (key=value lines: name, l, m, A, B, boundary).""",
)
scheme_option = click.option(
    "--scheme",
    type=click.Choice(SCHEME_NAMES, case_sensitive=False),
    help="""Syndrome-extraction scheme.

    l7r, l8r and cxswap-only need --table or --search.""",
)
table_option = click.option(
    "--table",
    "table_path",
    type=click.Path(),
    help="""Instruction table to use instead of a generated schedule.""",
)
search_option = click.option(
    "--search",
    is_flag=True,
    help="""Run the ordering search for l7r, l8r or cxswap-only.""",
)
budget_option = click.option(
    "--budget",
    type=float,
    help="""Search time limit in seconds (default: search_budget_seconds).""",
)
seed_option = click.option(
    "--seed",
    type=int,
    help="""Random seed for search, simulation and routing (default: seed).""",
)
out_option = click.option(
    "--out",
    "out_path",
    type=click.Path(),
    help="""Write output to this file instead of stdout.""",
)
format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json"]),
    help="""Report format (default: output_format).""",
)
absent_option = click.option(
    "--absent",
    multiple=True,
    help="""Absent site as i,j,ROLE (ROLE in X, Z, L, R); repeatable.""",
)
strategy_option = click.option(
    "--strategy",
    type=click.Choice([s.value for s in Strategy]),
    default=Strategy.PADDING.value,
    show_default=True,
    help="""How the schedule works around absent sites.""",
)
drop_checks_option = click.option(
    "--drop-checks",
    type=click.Choice(["X", "Z"], case_sensitive=False),
    default="X",
    show_default=True,
    help="""Check type idled around an absent data qubit.""",
)


def fail(message: str, exit_code: int = EXIT_INPUT) -> NoReturn:
    """Print ``Error: message`` on stderr and exit."""
    click.echo(f"Error: {message}", err=True)
    sys.exit(exit_code)


def exit_code_for(error: Exception) -> int:
    """Map a failure to the documented exit code."""
    if isinstance(error, (VerificationFailedError, StructuralError)):
        return EXIT_VERIFICATION
    if isinstance(error, RoutingError):
        return EXIT_ROUTING
    return EXIT_INPUT


def configuration(ctx: click.Context) -> Configuration:
    """Configuration loaded by the group, or defaults plus environment."""
    config = ctx.find_object(Configuration)
    if config is None:
        try:
            config = Configuration.from_env_and_dict()
        except ValueError as err:
            fail(str(err))
    return config


def load_code(code_path: str) -> CodeSpec:
    """Read a code file or exit with an input error."""
    errors = validate_file_readable(code_path)
    if errors:
        fail("; ".join(errors))
    try:
        return CodeParser.parse_code_file(code_path)
    except LouvreError as err:
        fail(str(err))


def resolve_schedule(
    code: CodeSpec,
    scheme_name: Optional[str],
    table_path: Optional[str],
    search: bool,
    config: Configuration,
    budget: Optional[float] = None,
    seed: Optional[int] = None,
) -> Schedule:
    """Schedule from a table, the ordering search or a closed-form builder.

    Exits with an input error when a routed scheme has neither a table nor
    ``--search``.
    """
    scheme = Scheme(scheme_name.lower()) if scheme_name else None
    try:
        if table_path:
            errors = validate_file_readable(table_path)
            if errors:
                fail("; ".join(errors))
            schedule = TableParser.parse_table_file(table_path, code)
            if scheme is not None and schedule.scheme is not scheme:
                fail(
                    f"Table {table_path} holds a {schedule.scheme.value} schedule, "
                    f"not {scheme.value}"
                )
            return schedule
        if scheme is None:
            fail("Pass --scheme or --table")
        if search:
            return OrderingService.optimize_ordering(
                code,
                scheme,
                budget_seconds=(
                    budget if budget is not None else config.search_budget_seconds
                ),
                seed=seed if seed is not None else config.seed,
                max_swap_layers=config.max_swap_layers,
            )
        return ScheduleService.build(code, scheme)
    except LouvreError as err:
        fail(str(err), exit_code_for(err))


def absent_map(
    code: CodeSpec, absent: tuple[str, ...], strategy: str, drop_checks: str = "X"
) -> Optional[AbsentSiteMap]:
    """Parse ``--absent`` values; ``None`` when there are none."""
    if not absent:
        return None
    try:
        sites = frozenset(AbsentService.parse_site(text, code) for text in absent)
    except LouvreError as err:
        fail(str(err))
    return AbsentSiteMap(
        sites=sites,
        strategy=Strategy(strategy),
        drop_checks=Role(drop_checks.upper()),
    )


def write_output(text: str, out_path: Optional[str]) -> None:
    """Echo to stdout or write to ``out_path``."""
    if not out_path:
        click.echo(text)
        return
    errors = validate_file_writable(out_path)
    if errors:
        fail("; ".join(errors))
    with open(out_path, "w", encoding="utf-8") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    click.echo(f"Wrote {out_path}", err=True)
