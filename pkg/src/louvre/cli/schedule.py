"""Schedule command for louvre."""

from typing import Optional

import click

from ..serializers.instruction_table import format_grid, format_instruction_table
from ..serializers.report import schedule_document, to_json
from .common import (
    budget_option,
    code_option,
    configuration,
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
  # Louvre-7 instruction table for the [[18,4,4]] code
  louvre schedule --code bb18.code --scheme l7

  # Search a Louvre-7R order and save it as a table
  louvre schedule --code bb72.code --scheme l7r --search --budget 30 \\
      --out bb72-l7r.table

  # Re-read a table and show it as an aligned grid
  louvre schedule --code bb72.code --table bb72-l7r.table --grid
"""
)
@code_option
@scheme_option
@table_option
@search_option
@budget_option
@seed_option
@click.option(
    "--grid",
    is_flag=True,
    help="""Print an aligned table with one column per layer.""",
)
@format_option
@out_option
@click.pass_context
def schedule(
    ctx: click.Context,
    code_path: str,
    scheme: Optional[str],
    table_path: Optional[str],
    search: bool,
    budget: Optional[float],
    seed: Optional[int],
    grid: bool,
    output_format: Optional[str],
    out_path: Optional[str],
) -> None:
    """Print the instruction table of a scheme.

    The text output is the instruction-table format read back by --table.
    """
    config = configuration(ctx)
    code = load_code(code_path)
    result = resolve_schedule(code, scheme, table_path, search, config, budget, seed)

    if (output_format or config.output_format) == "json":
        text = to_json(schedule_document(result))
    elif grid:
        text = format_grid(result)
    else:
        text = format_instruction_table(result).rstrip("\n")
    write_output(text, out_path)
