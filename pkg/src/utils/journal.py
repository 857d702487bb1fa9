import csv
import json
import logging
import os
from typing import Iterable, Sequence

import numpy as np

logger = logging.getLogger("ZonalStab.Journal")

FLOAT_FORMAT = "%.17g"


def format_value(value) -> str:
    """17 significant digits for floats so reruns are byte-identical."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % float(value)
    if value is None:
        return ""
    return str(value)


class ResultJournal:
    """CSV result log: header on creation, rows flushed as they are written."""

    def __init__(self, filename: str, headers: Sequence[str]):
        self.filename = filename
        self.headers = list(headers)
        self.rows_written = 0
        self._initialize_csv()

    def _initialize_csv(self):
        directory = os.path.dirname(self.filename)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.filename, mode="w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(self.headers)
        logger.info(f"Journal: Created {self.filename}")

    def log_row(self, row: Sequence):
        if len(row) != len(self.headers):
            raise ValueError(f"row has {len(row)} fields, header has {len(self.headers)}")
        with open(self.filename, mode="a", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow([format_value(v) for v in row])
        self.rows_written += 1

    def log_rows(self, rows: Iterable[Sequence]):
        for row in rows:
            self.log_row(row)
        logger.info(f"Journal: {self.rows_written} rows in {self.filename}")


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def write_json(filename: str, payload: dict):
    """Sorted keys and no timestamps, so identical inputs give identical files."""
    directory = os.path.dirname(filename)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filename, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    logger.info(f"Journal: Wrote {filename}")
