"""Parser for instruction-table text files."""

import logging
from typing import Optional

from ..exceptions import TableParseError
from ..models.code import CodeSpec, GeneratingPolynomial, Role
from ..models.schedule import (
    GateKind,
    InitSwap,
    InstructionCell,
    Layer,
    Schedule,
    Scheme,
    Term,
)
from ..services.code_service import CodeService
from ..services.schedule_service import ScheduleService
from .code_parser import CodeParser

logger = logging.getLogger(__name__)

_IDLE_MARKS = {"-", "–", "—"}
_KNOWN_KEYS = {"scheme", "default", "transposed", "A", "B", "init", "phase", "X", "Z"}


class TableParser:
    """Parser for ``key: value`` instruction tables."""

    @staticmethod
    def parse_gate(text: str) -> GateKind:
        """Parse a gate name (case-insensitive)."""
        try:
            return GateKind(text.strip().upper())
        except ValueError as err:
            raise TableParseError(f"Unknown gate {text.strip()!r}") from err

    @staticmethod
    def parse_cell(text: str, default: GateKind = GateKind.CNOT) -> InstructionCell:
        """Parse ``A3``, ``B1:CXSWAP`` or ``-``.

        Raises:
            TableParseError: On an unknown term label or gate
        """
        text = text.strip()
        if text in _IDLE_MARKS:
            return InstructionCell()
        label, _, gate = text.partition(":")
        try:
            term = Term.parse(label)
        except ValueError as err:
            raise TableParseError(str(err)) from err
        kind = TableParser.parse_gate(gate) if gate else default
        return InstructionCell(term, kind)

    @staticmethod
    def _ordered_code(code: CodeSpec, key: str, text: str) -> CodeSpec:
        """Reorder one polynomial of the code to the order written in the table."""
        poly = code.polynomial(key)
        try:
            written = CodeParser.parse_polynomial(
                text.replace(",", "+"), code.l, code.m
            )
        except ValueError as err:
            raise TableParseError(f"{key}: {err}") from err
        if sorted(written.terms) != sorted(poly.terms):
            raise TableParseError(
                f"{key} order {written.format()} does not match the code's "
                f"{poly.format()}"
            )
        order = GeneratingPolynomial(written.terms)
        return CodeSpec(
            l=code.l,
            m=code.m,
            A=order if key == "A" else code.A,
            B=order if key == "B" else code.B,
            name=code.name,
            boundary=code.boundary,
        )

    @staticmethod
    def _parse_init(text: str) -> tuple[InitSwap, ...]:
        swaps = []
        for item in text.split(","):
            item = item.strip()
            if not item or item in _IDLE_MARKS:
                continue
            role, _, term = item.partition(":")
            try:
                swaps.append(InitSwap(Role(role.strip().upper()), Term.parse(term)))
            except ValueError as err:
                raise TableParseError(f"Bad init swap {item!r}: {err}") from err
            if not swaps[-1].role.is_ancilla:
                raise TableParseError(f"Init swap {item!r} must name X or Z")
        return tuple(swaps)

    @staticmethod
    def parse_table_text(
        text: str, code: CodeSpec, source: str = "<string>"
    ) -> Schedule:
        """Parse an instruction table against a code.

        Args:
            text: Table text
            code: Code whose terms the table refers to
            source: Name used in error messages

        Returns:
            The schedule; ``init`` is derived from Phase-1 routing cells when
            the table has no ``init:`` line

        Raises:
            TableParseError: On unknown keys, labels or gates and ragged rows
        """
        values: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            key = key.strip()
            if not sep or key not in _KNOWN_KEYS:
                raise TableParseError(f"{source}:{lineno}: unexpected line {line!r}")
            if key in values:
                raise TableParseError(f"{source}:{lineno}: duplicate {key!r} line")
            values[key] = value.strip()

        missing = [key for key in ("scheme", "phase", "X", "Z") if key not in values]
        if missing:
            raise TableParseError(f"{source}: missing lines: {', '.join(missing)}")

        try:
            scheme = Scheme(values["scheme"].lower())
        except ValueError as err:
            raise TableParseError(
                f"{source}: unknown scheme {values['scheme']!r}"
            ) from err
        default = TableParser.parse_gate(values.get("default", "CNOT"))

        transposed = values.get("transposed", "no").lower() in ("yes", "true", "1")
        if transposed:
            code = CodeService.transpose(code)
        for key in ("A", "B"):
            if key in values:
                code = TableParser._ordered_code(code, key, values[key])

        try:
            phases = [int(p) for p in values["phase"].split("|")]
        except ValueError as err:
            raise TableParseError(f"{source}: phases must be integers") from err
        x_cells = [TableParser.parse_cell(c, default) for c in values["X"].split("|")]
        z_cells = [TableParser.parse_cell(c, default) for c in values["Z"].split("|")]
        if not len(phases) == len(x_cells) == len(z_cells):
            raise TableParseError(
                f"{source}: ragged rows (phase {len(phases)}, X {len(x_cells)}, "
                f"Z {len(z_cells)} layers)"
            )

        try:
            layers = tuple(
                Layer(x, z, phase) for x, z, phase in zip(x_cells, z_cells, phases)
            )
            init: Optional[tuple[InitSwap, ...]] = None
            if "init" in values:
                init = TableParser._parse_init(values["init"])
            schedule = Schedule(
                code=code,
                scheme=scheme,
                layers=layers,
                init=init if init is not None else ScheduleService.derive_init(layers),
                default_gate=default,
                transposed=transposed,
            )
        except TableParseError:
            raise
        except ValueError as err:
            raise TableParseError(f"{source}: {err}") from err
        logger.debug("Parsed %s table of depth %d", scheme.value, schedule.depth)
        return schedule

    @staticmethod
    def parse_table_file(file_path: str, code: CodeSpec) -> Schedule:
        """Parse an instruction table file from disk."""
        with open(file_path, encoding="utf-8") as f:
            return TableParser.parse_table_text(f.read(), code, source=file_path)
