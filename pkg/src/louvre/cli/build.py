"""Build command for louvre."""

from typing import Optional

import click

from ..serializers.report import code_document, format_code_text, to_json
from ..services.code_service import CodeService
from .common import (
    EXIT_INPUT,
    configuration,
    fail,
    format_option,
    load_code,
    out_option,
    write_output,
)


@click.command(
    epilog="""
  # Parameters of a code file
  louvre build --code bb72.code

  # Add the brute-force distance (small codes only)
  louvre build --code bb18.code --distance

  # La-Cross parameters grown from a classical [n1, k1] seed
  louvre build --product 6 3 --boundary open
"""
)
@click.option(
    "--code",
    "code_path",
    type=click.Path(),
    help="""Path to a code file (key=value lines: name, l, m, A, B, boundary).""",
)
@click.option(
    "--distance",
    is_flag=True,
    help="""Also compute the code distance by exhaustive search (n <= 20).""",
)
@click.option(
    "--product",
    nargs=2,
    type=int,
    help="""Seed length and dimension N1 K1 of a hypergraph-product code.""",
)
@click.option(
    "--boundary",
    type=click.Choice(["open", "periodic"]),
    default="open",
    show_default=True,
    help="""Boundary used with --product.""",
)
@format_option
@out_option
@click.pass_context
def build(
    ctx: click.Context,
    code_path: Optional[str],
    distance: bool,
    product: Optional[tuple[int, int]],
    boundary: str,
    output_format: Optional[str],
    out_path: Optional[str],
) -> None:
    """Parse a code file and print its parameters [[n, k]]."""
    config = configuration(ctx)
    output_format = output_format or config.output_format

    if product:
        try:
            n, k = CodeService.hypergraph_product_params(*product, boundary=boundary)
        except ValueError as err:
            fail(str(err), EXIT_INPUT)
        document = {"seed": list(product), "boundary": boundary, "n": n, "k": k}
        text = (
            to_json(document)
            if output_format == "json"
            else f"parameters: [[{n},{k}]] ({boundary})"
        )
        write_output(text, out_path)
        return

    if not code_path:
        fail("Pass --code or --product")
    code = load_code(code_path)
    try:
        matrices = CodeService.check_matrices(code)
        n, k = matrices.n, CodeService.compute_k(code, matrices)
        d = CodeService.code_distance(code) if distance else None
    except ValueError as err:
        fail(str(err), EXIT_INPUT)

    if output_format == "json":
        document = code_document(code, n, k)
        if d is not None:
            document["d"] = d
        text = to_json(document)
    else:
        text = format_code_text(code, n, k)
        if d is not None:
            text += f"\ndistance: {d}"
    write_output(text, out_path)
