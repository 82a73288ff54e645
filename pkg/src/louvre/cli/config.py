"""Configuration handling for louvre."""

import os
from dataclasses import dataclass
from typing import Any, Optional

from ..models.noise import NoiseParams
from ..utils.validators import (
    validate_at_least,
    validate_choice,
    validate_probability,
)

_FLOAT_KEYS = ("noise_p", "swap_factor", "search_budget_seconds")
_INT_KEYS = (
    "rounds",
    "seed",
    "max_swap_layers",
    "bump_penalty",
    "max_layer_switches",
    "max_tiers",
)
_STR_KEYS = ("memory_basis", "output_format")


@dataclass
class Configuration:
    """Run settings shared by every command."""

    # Circuit noise
    noise_p: float = 0.001
    swap_factor: float = 1.5
    rounds: int = 6
    memory_basis: str = "Z"

    # Search and routing
    seed: int = 0
    search_budget_seconds: float = 60.0
    max_swap_layers: int = 1
    bump_penalty: int = 3
    max_layer_switches: int = 10
    max_tiers: int = 32

    # Output settings
    output_format: str = "text"

    @classmethod
    def from_dict(cls, config_dict: Optional[dict[str, Any]] = None) -> "Configuration":
        """Create configuration from dictionary; unknown keys are ignored."""
        if config_dict is None:
            config_dict = {}
        defaults = cls()

        return cls(
            noise_p=float(config_dict.get("noise_p", defaults.noise_p)),
            swap_factor=float(config_dict.get("swap_factor", defaults.swap_factor)),
            rounds=int(config_dict.get("rounds", defaults.rounds)),
            memory_basis=str(
                config_dict.get("memory_basis", defaults.memory_basis)
            ).upper(),
            seed=int(config_dict.get("seed", defaults.seed)),
            search_budget_seconds=float(
                config_dict.get("search_budget_seconds", defaults.search_budget_seconds)
            ),
            max_swap_layers=int(
                config_dict.get("max_swap_layers", defaults.max_swap_layers)
            ),
            bump_penalty=int(config_dict.get("bump_penalty", defaults.bump_penalty)),
            max_layer_switches=int(
                config_dict.get("max_layer_switches", defaults.max_layer_switches)
            ),
            max_tiers=int(config_dict.get("max_tiers", defaults.max_tiers)),
            output_format=str(
                config_dict.get("output_format", defaults.output_format)
            ).lower(),
        )

    @classmethod
    def from_env_and_dict(
        cls, config_dict: Optional[dict[str, Any]] = None
    ) -> "Configuration":
        """Create configuration from environment variables and dictionary.

        Every key can be overridden by ``LOUVRE_<KEY>`` (for example
        ``LOUVRE_NOISE_P``); environment values win over the dictionary.

        Raises:
            ValueError: If an environment value does not convert
        """
        merged = dict(config_dict or {})

        for key in (*_FLOAT_KEYS, *_INT_KEYS, *_STR_KEYS):
            env_value = os.getenv(f"LOUVRE_{key.upper()}")
            if env_value is None:
                continue
            try:
                if key in _FLOAT_KEYS:
                    merged[key] = float(env_value)
                elif key in _INT_KEYS:
                    merged[key] = int(env_value)
                else:
                    merged[key] = env_value
            except ValueError as err:
                raise ValueError(
                    f"LOUVRE_{key.upper()}={env_value!r} is not a valid {key}"
                ) from err

        return cls.from_dict(merged)

    def validate(self) -> list[str]:
        """Range checks on every setting.

        Returns:
            List of validation error messages
        """
        errors = validate_probability(self.noise_p, "noise_p")
        errors += validate_at_least(self.swap_factor, 1, "swap_factor")
        if not errors and (self.swap_factor * self.noise_p > 1 or 5 * self.noise_p > 1):
            errors.append(f"noise_p {self.noise_p} scales past 1 for SWAP or readout")
        errors += validate_at_least(self.rounds, 1, "rounds")
        errors += validate_at_least(self.seed, 0, "seed")
        errors += validate_at_least(
            self.search_budget_seconds, 0, "search_budget_seconds"
        )
        errors += validate_at_least(self.max_swap_layers, 0, "max_swap_layers")
        errors += validate_at_least(self.bump_penalty, 0, "bump_penalty")
        errors += validate_at_least(self.max_layer_switches, 0, "max_layer_switches")
        errors += validate_at_least(self.max_tiers, 2, "max_tiers")
        errors += validate_choice(self.memory_basis, ("X", "Z"), "memory_basis")
        errors += validate_choice(self.output_format, ("text", "json"), "output_format")
        return errors

    def noise(self) -> NoiseParams:
        """SI1000 parameters built from ``noise_p`` and ``swap_factor``."""
        return NoiseParams(p=self.noise_p, swap_factor=self.swap_factor)
