"""Instruction-table text output."""

from ..models.schedule import GateKind, InstructionCell, Schedule


def format_cell(cell: InstructionCell, default: GateKind = GateKind.CNOT) -> str:
    """``A3``, ``B1:CXSWAP`` or ``-``; the default gate is left implicit."""
    if cell.term is None:
        return "-"
    if cell.gate is default:
        return str(cell.term)
    return f"{cell.term}:{cell.gate.value}"


def format_instruction_table(schedule: Schedule) -> str:
    """Render a schedule in the text format the table parser reads."""
    code = schedule.code
    default = schedule.default_gate
    lines = [f"scheme: {schedule.scheme.value}"]
    if default is not GateKind.CNOT:
        lines.append(f"default: {default.value}")
    if schedule.transposed:
        lines.append("transposed: yes")
    lines.append("A: " + ", ".join(term.format() for term in code.A.terms))
    lines.append("B: " + ", ".join(term.format() for term in code.B.terms))
    lines.append("init: " + (", ".join(str(s) for s in schedule.init) or "-"))
    lines.append("phase: " + " | ".join(str(layer.phase) for layer in schedule.layers))
    for role, cells in (
        ("X", [layer.x for layer in schedule.layers]),
        ("Z", [layer.z for layer in schedule.layers]),
    ):
        lines.append(f"{role}: " + " | ".join(format_cell(c, default) for c in cells))
    return "\n".join(lines) + "\n"


def format_grid(schedule: Schedule) -> str:
    """Aligned human-readable table with one column per layer."""
    default = schedule.default_gate
    header = [
        "",
        *(f"L{k + 1}/P{layer.phase}" for k, layer in enumerate(schedule.layers)),
    ]
    rows = [
        header,
        ["X", *(format_cell(layer.x, default) for layer in schedule.layers)],
        ["Z", *(format_cell(layer.z, default) for layer in schedule.layers)],
    ]
    widths = [max(len(row[k]) for row in rows) for k in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    )
