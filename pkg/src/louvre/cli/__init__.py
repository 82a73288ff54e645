"""Main CLI group for louvre."""

import logging
from typing import Any, Optional

import click
import yaml

from ..parsers.yaml_parser import YamlParser
from ..utils.validators import validate_file_readable
from .build import build
from .common import fail
from .config import Configuration
from .emit import emit
from .metrics import metrics
from .route import route
from .schedule import schedule
from .verify import verify

_LOG_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def load_configuration(config_path: Optional[str]) -> Configuration:
    """Defaults, then the YAML file, then ``LOUVRE_*`` variables."""
    config_dict: dict[str, Any] = {}
    if config_path:
        read_errors = validate_file_readable(config_path)
        if read_errors:
            fail("; ".join(read_errors))
        try:
            config_dict, errors = YamlParser.parse_and_validate(config_path)
        except yaml.YAMLError as err:
            fail(str(err))

        # Separate errors from warnings
        problems = [err for err in errors if not err.startswith("Warning:")]
        warnings = [warn for warn in errors if warn.startswith("Warning:")]
        if problems:
            click.echo("Config file validation errors:", err=True)
            for problem in problems:
                click.echo(f"  - {problem}", err=True)
            fail(f"Invalid config file {config_path}")
        for warning in warnings:
            click.echo(warning, err=True)

    try:
        config = Configuration.from_env_and_dict(config_dict)
    except ValueError as err:
        fail(str(err))
    errors = config.validate()
    if errors:
        fail("; ".join(errors))
    return config


@click.group()
@click.version_option()
@click.option(
    "-v",
    "--verbose",
    count=True,
    help="""Log progress to stderr; repeat for debug detail.""",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(),
    help="""YAML file with run settings (noise_p, rounds, seed, ...).

    LOUVRE_<KEY> environment variables override it.""",
)
@click.pass_context
def cli_group(ctx: click.Context, verbose: int, config_path: Optional[str]) -> None:
    """Louvre - routed syndrome-extraction schedules for bicycle codes."""
    logging.basicConfig(
        level=_LOG_LEVELS.get(verbose, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = load_configuration(config_path)


cli_group.add_command(build, name="build")
cli_group.add_command(schedule, name="schedule")
cli_group.add_command(verify, name="verify")
cli_group.add_command(metrics, name="metrics")
cli_group.add_command(route, name="route")
cli_group.add_command(emit, name="emit")
