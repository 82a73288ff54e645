"""YAML parser for louvre configuration files."""

from typing import Any

import yaml

KNOWN_CONFIG_KEYS = {
    "noise_p",
    "swap_factor",
    "rounds",
    "seed",
    "search_budget_seconds",
    "max_swap_layers",
    "bump_penalty",
    "max_layer_switches",
    "max_tiers",
    "memory_basis",
    "output_format",
}


class YamlParser:
    """Parser for YAML configuration files."""

    @staticmethod
    def parse_config_file(file_path: str) -> dict[str, Any]:
        """Parse a YAML configuration file.

        Args:
            file_path: Path to the YAML file

        Returns:
            Dictionary with the parsed configuration

        Raises:
            YAMLError: If YAML parsing fails
        """
        try:
            with open(file_path, encoding="utf-8") as f:
                content = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"Invalid YAML in {file_path}: {e}") from e
        return content  # type: ignore[no-any-return]

    @staticmethod
    def validate_config_schema(config: Any) -> list[str]:
        """Validate the shape of a configuration mapping.

        Args:
            config: Parsed YAML content

        Returns:
            List of errors; unknown keys are reported as warnings
        """
        errors: list[str] = []
        if not isinstance(config, dict):
            errors.append("Root of config file must be a dictionary/object")
            return errors

        for key in sorted(set(config) - KNOWN_CONFIG_KEYS, key=str):
            errors.append(f"Warning: Unknown configuration key {key!r} will be ignored")

        for key in ("noise_p", "swap_factor", "search_budget_seconds"):
            value = config.get(key)
            if value is not None and (
                isinstance(value, bool) or not isinstance(value, (int, float))
            ):
                errors.append(f"{key!r} must be a number")
        for key in (
            "rounds",
            "seed",
            "max_swap_layers",
            "bump_penalty",
            "max_layer_switches",
            "max_tiers",
        ):
            value = config.get(key)
            if value is not None and (
                isinstance(value, bool) or not isinstance(value, int)
            ):
                errors.append(f"{key!r} must be an integer")
        for key in ("memory_basis", "output_format"):
            value = config.get(key)
            if value is not None and not isinstance(value, str):
                errors.append(f"{key!r} must be a string")
        return errors

    @staticmethod
    def parse_and_validate(file_path: str) -> tuple[dict[str, Any], list[str]]:
        """Parse a configuration file and validate its schema.

        Returns:
            Tuple of (config_dict, errors_list)
        """
        config = YamlParser.parse_config_file(file_path)
        errors = YamlParser.validate_config_schema(config)
        return (config if isinstance(config, dict) else {}), errors
