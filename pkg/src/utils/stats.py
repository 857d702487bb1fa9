import logging
from typing import Sequence

import numpy as np

logger = logging.getLogger("ZonalStab.Stats")


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or len(x) < 2:
        raise ValueError("slope fit needs two equally long sequences with at least two points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive data")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def sweep_summary(records) -> dict:
    """Counts over a list of SweepRecord."""
    unstable = [r for r in records if r.ok and r.unstable_count > 0]
    failed = [r for r in records if not r.ok]
    peak = max((r.max_imag for r in records if r.ok), default=0.0)
    return {
        "points": len(records),
        "unstable_points": len(unstable),
        "failed_points": len(failed),
        "peak_max_imag": peak,
        "last_unstable_omega": unstable[-1].omega if unstable else None,
    }


def format_report(title: str, sections: dict) -> str:
    """Formats nested result dicts into a readable block for logs and stdout."""
    lines = [title, "-" * len(title)]
    for name, body in sections.items():
        lines.append(f"{name}")
        if isinstance(body, dict):
            for key, value in body.items():
                if isinstance(value, float):
                    value = f"{value:.6g}"
                lines.append(f"  {key}: {value}")
        else:
            lines.append(f"  {body}")
    return "\n".join(lines)
