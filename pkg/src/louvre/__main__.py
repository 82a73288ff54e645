"""Command-line interface."""

from .cli import cli_group


def main() -> None:
    """Louvre CLI entry point."""
    cli_group(prog_name="louvre")


if __name__ == "__main__":
    main()  # pragma: no cover
