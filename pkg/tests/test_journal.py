import json

import numpy as np
import pytest

from src.utils.journal import ResultJournal, format_value, write_json


def test_journal_writes_header_and_rows(tmp_path):
    path = tmp_path / "nested" / "sweep.csv"
    journal = ResultJournal(str(path), ["Omega", "max_imag", "unstable_count", "status"])
    journal.log_row([0.1, 1e-3, 2, "ok"])
    journal.log_rows([[0.2, np.float64(0.0), np.int64(0), "guarded"]])

    lines = path.read_text().splitlines()
    assert lines[0] == "Omega,max_imag,unstable_count,status"
    assert lines[1] == "0.10000000000000001,0.001,2,ok"
    assert lines[2] == "0.20000000000000001,0,0,guarded"
    assert journal.rows_written == 2


def test_journal_rejects_short_rows(tmp_path):
    journal = ResultJournal(str(tmp_path / "t.csv"), ["a", "b"])
    with pytest.raises(ValueError):
        journal.log_row([1.0])


def test_journal_truncates_on_creation(tmp_path):
    path = tmp_path / "t.csv"
    ResultJournal(str(path), ["a"]).log_row([1])
    ResultJournal(str(path), ["a"])
    assert path.read_text() == "a\n"


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(np.bool_(False)) == "false"
    assert format_value(None) == ""
    assert format_value(3) == "3"
    assert format_value(1 / 3) == "0.33333333333333331"
    assert float(format_value(np.pi)) == np.pi


def test_write_json_is_sorted_and_deterministic(tmp_path):
    payload = {"zeta": np.float64(1.5), "alpha": np.int64(3), "vec": np.array([1.0, 2.0]), "z": 1 + 2j}
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    write_json(str(first), payload)
    write_json(str(second), dict(reversed(list(payload.items()))))
    assert first.read_bytes() == second.read_bytes()

    loaded = json.loads(first.read_text())
    assert list(loaded) == ["alpha", "vec", "z", "zeta"]
    assert loaded["vec"] == [1.0, 2.0]
    assert loaded["z"] == [1.0, 2.0]


def test_write_json_rejects_unknown_types(tmp_path):
    with pytest.raises(TypeError):
        write_json(str(tmp_path / "bad.json"), {"x": object()})
