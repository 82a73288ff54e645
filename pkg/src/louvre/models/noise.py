"""Circuit-level noise parameters."""

from dataclasses import dataclass


@dataclass(frozen=True)
class NoiseParams:
    """Superconducting-inspired SI1000 noise with a base probability ``p``.

    Two-qubit gates depolarize with ``p`` and SWAP gates with
    ``swap_factor * p``; idling in a gate layer costs ``p / 10``; resets flip
    with ``2p``; measurements flip with ``5p``; idling during reset or
    measurement costs ``2p``.
    """

    p: float = 0.001
    swap_factor: float = 1.5

    def __post_init__(self) -> None:
        """Validate probabilities."""
        if not 0 <= self.p <= 1:
            raise ValueError(f"Noise probability must be in [0, 1], got {self.p}")
        if self.swap_factor < 1:
            raise ValueError(f"SWAP noise factor must be >= 1, got {self.swap_factor}")
        if self.swap_factor * self.p > 1 or 5 * self.p > 1:
            raise ValueError(f"Noise probability {self.p} scales past 1")

    @property
    def noiseless(self) -> bool:
        return self.p == 0

    @property
    def two_qubit(self) -> float:
        return self.p

    @property
    def swap(self) -> float:
        return self.swap_factor * self.p

    @property
    def gate_idle(self) -> float:
        return self.p / 10

    @property
    def reset_flip(self) -> float:
        return 2 * self.p

    @property
    def measure_flip(self) -> float:
        return 5 * self.p

    @property
    def readout_idle(self) -> float:
        return 2 * self.p
