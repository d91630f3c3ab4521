"""
Report rendering for the command-line front end
JSON by default, or a plain-text table through pandas
"""

import json
import math
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from src import __version__
from src.utils.config import config


def round_sig(value: float, digits: Optional[int] = None) -> float:
    """Round to the configured number of significant digits"""
    digits = digits or config.REPORT_SIGNIFICANT_DIGITS
    if value == 0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def clean(obj: Any) -> Any:
    """Convert numpy values and round floats, recursively"""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    if isinstance(obj, complex):
        return {"re": round_sig(obj.real), "im": round_sig(obj.imag)}
    return obj


def build_report(command: str, inputs: Dict[str, Any], result: Dict[str, Any]) -> Dict[str, Any]:
    """Envelope carrying the library version and the full input echo"""
    return {
        "version": __version__,
        "command": command,
        "input": clean(inputs),
        "result": clean(result),
    }


def _table(result: Dict[str, Any]) -> str:
    sections = []
    scalars = {k: v for k, v in result.items() if not isinstance(v, (list, dict))}
    if scalars:
        frame = pd.DataFrame({"field": list(scalars), "value": list(scalars.values())})
        sections.append(frame.to_string(index=False))

    for key, value in result.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            sections.append(f"[{key}]\n" + pd.DataFrame(value).to_string(index=False))
        elif isinstance(value, list) and value and not isinstance(value[0], list):
            sections.append(f"[{key}]\n" + pd.Series(value).to_string())
        elif isinstance(value, dict) and set(value) == {"re", "im"} and isinstance(value["re"], list):
            # complex matrix: one grid per part
            for part in ("re", "im"):
                grid = pd.DataFrame(value[part]).to_string(index=False, header=False)
                sections.append(f"[{key}.{part}]\n{grid}")
        elif isinstance(value, dict):
            frame = pd.DataFrame({"field": list(value), "value": [str(v) for v in value.values()]})
            sections.append(f"[{key}]\n" + frame.to_string(index=False))
    return "\n\n".join(sections)


def render(report: Dict[str, Any], fmt: str = "json") -> str:
    """
    Render a report

    Args:
        report: Output of build_report
        fmt: "json" or "table"
    """
    if fmt == "table":
        header = f"realignbound {report['version']} :: {report['command']}"
        return header + "\n\n" + _table(report["result"])
    return json.dumps(report, indent=2)
