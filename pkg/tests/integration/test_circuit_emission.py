"""Integration tests for memory-experiment circuits."""

import numpy as np
import pytest

from louvre.exceptions import CircuitEmissionError, VerificationFailedError
from louvre.models.code import CodeSpec
from louvre.models.noise import NoiseParams
from louvre.parsers.code_parser import CodeParser
from louvre.services.circuit_service import CircuitService
from louvre.services.schedule_service import ScheduleService
from louvre.services.verification_service import VerificationService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


class TestEmission:
    """Test detectors, observables and noise."""

    @pytest.mark.parametrize("basis", ["Z", "X"])
    def test_detector_count(self, basis: str) -> None:
        """Test one-sided first and last rounds around full middle rounds."""
        schedule = ScheduleService.build_louvre7(load("bb18.code"))

        circuit = CircuitService.emit_circuit(schedule, rounds=3, memory_basis=basis)

        assert circuit.num_detectors == 54
        assert circuit.num_observables == 4

    def test_noiseless_circuit_is_deterministic(self) -> None:
        """Test that no detector fires without noise."""
        schedule = ScheduleService.build_louvre8(load("bb18.code"))

        circuit = CircuitService.emit_circuit(
            schedule, rounds=2, noise=NoiseParams(p=0)
        )
        samples = circuit.compile_detector_sampler().sample(shots=8)

        assert not np.any(samples)
        circuit.detector_error_model()

    def test_noisy_circuit_has_error_model(self) -> None:
        """Test that SI1000 noise yields a detector error model."""
        schedule = ScheduleService.build_regular(load("bb18.code"))

        circuit = CircuitService.emit_circuit(
            schedule, rounds=2, noise=NoiseParams(p=0.001), verify=False
        )
        model = circuit.detector_error_model()

        assert model.num_errors > 0
        assert model.num_detectors == circuit.num_detectors

    def test_swap_layers_carry_scaled_noise(self) -> None:
        """Test that SWAP layers depolarize with swap_factor * p and CX with p."""
        schedule = ScheduleService.build_louvre8(load("bb18.code"))
        noise = NoiseParams(p=0.001, swap_factor=2.0)

        circuit = CircuitService.emit_circuit(
            schedule, rounds=2, noise=noise, verify=False
        )

        layer: dict[str, list[int]] = {}
        swap_channels = cx_channels = 0
        for instruction in circuit:
            if instruction.name == "TICK":
                layer = {}
                continue
            targets = sorted(t.value for t in instruction.targets_copy())
            if instruction.name in ("CX", "SWAP", "CXSWAP", "SWAPCX"):
                layer[instruction.name] = targets
            elif instruction.name == "DEPOLARIZE2":
                (probability,) = instruction.gate_args_copy()
                if targets == layer.get("SWAP"):
                    assert probability == pytest.approx(0.002)
                    swap_channels += 1
                    continue
                interacting = sorted(
                    layer.get("CX", [])
                    + layer.get("CXSWAP", [])
                    + layer.get("SWAPCX", [])
                )
                assert targets == interacting
                assert probability == pytest.approx(0.001)
                cx_channels += 1

        assert swap_channels > 0
        assert cx_channels > 0


class TestEmissionErrors:
    """Test rejected parameters."""

    def test_needs_a_round(self) -> None:
        """Test that zero rounds are rejected."""
        schedule = ScheduleService.build_regular(load("bb18.code"))

        with pytest.raises(CircuitEmissionError, match="at least one round"):
            CircuitService.emit_circuit(schedule, rounds=0)

    def test_memory_basis(self) -> None:
        """Test that only X and Z memories exist."""
        schedule = ScheduleService.build_regular(load("bb18.code"))

        with pytest.raises(CircuitEmissionError, match="X or Z"):
            CircuitService.emit_circuit(schedule, memory_basis="Y")

    def test_open_boundary(self) -> None:
        """Test that circuits need a periodic code."""
        schedule = ScheduleService.build_regular(load("lacross_open.code"))

        with pytest.raises(CircuitEmissionError, match="periodic"):
            CircuitService.emit_circuit(schedule)

    def test_failing_schedule(self) -> None:
        """Test that verification runs before emission."""
        schedule = VerificationService.adversarial_schedule(load("bb18.code"))

        with pytest.raises(VerificationFailedError) as info:
            CircuitService.emit_circuit(schedule, rounds=2)
        assert not info.value.report.commutation_ok
