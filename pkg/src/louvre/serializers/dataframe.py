"""Comparison-matrix export."""

import json
import pickle  # nosec B403
from pathlib import Path
from typing import Any, Optional

import pandas as pd  # type: ignore[import-untyped]

FORMATS = ("csv", "json", "pickle")


def export_matrix(
    frame: pd.DataFrame,
    output_path: str,
    format: str = "csv",
    metadata: Optional[dict[str, Any]] = None,
) -> None:
    """Write a comparison matrix with its code index as the first column.

    Args:
        frame: Matrix indexed by code
        output_path: Destination file
        format: ``csv``, ``json`` or ``pickle``
        metadata: Extra keys for json and pickle output

    Raises:
        ValueError: For any other format
    """
    if format not in FORMATS:
        raise ValueError(f"Unsupported format: {format}")
    output = Path(output_path)
    metadata = metadata or {}

    if format == "csv":
        frame.reset_index().to_csv(output, index=False)
    elif format == "json":
        document = {
            "schema": 1,
            "data": frame.reset_index().to_dict(orient="records"),
            "metadata": metadata,
        }
        output.write_text(json.dumps(document, indent=2, default=str), "utf-8")
    else:
        with open(output, "wb") as f:
            pickle.dump({"df": frame, "metadata": metadata}, f)  # nosec B301
