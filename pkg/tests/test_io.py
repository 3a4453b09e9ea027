import json

import numpy as np
import pytest

from lrmipt.errors import CsvFormatError
from lrmipt.observables import EnsembleRecord, Observable
from lrmipt.utils import (
    load_manifest_records,
    read_cell_csv,
    read_manifest,
    read_table,
    write_cell_csv,
    write_json,
    write_manifest,
    write_rescaled_csv,
    write_table,
)


def make_record(observable=Observable.HALF_CHAIN, n=4):
    if observable is Observable.PURIFICATION_TIME:
        return EnsembleRecord(
            8, 2.0, 0.2, observable, np.array([5.0, 128.0, 17.0, 128.0])[:n],
            censored=np.array([False, True, False, True])[:n], depth_cap=128,
        )
    if observable is Observable.GLOBAL_ENTROPY:
        samples = np.arange(3 * n, dtype=float).reshape(n, 3) / 4
        return EnsembleRecord(8, 2.0, 0.2, observable, samples, times=np.array([0, 1, 2]))
    return EnsembleRecord(8, 2.0, 0.2, observable, np.linspace(0.5, 2.0, n))


def write_text(path, text):
    path.write_text(text, encoding="utf-8")
    return path


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------


def test_table_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    write_table(path, ["L", "y"], ["sites", "bits"], [(8, 0.5), (16, 1.25)])
    lines = path.read_text().splitlines()
    assert lines[:2] == ["L,y", "sites,bits"]
    cols = read_table(path, ["L", "y"])
    assert cols["L"].tolist() == [8.0, 16.0]
    assert cols["y"].tolist() == [0.5, 1.25]


def test_optional_columns_are_left_out(tmp_path):
    path = write_text(tmp_path / "t.csv", "L,p,y\n-,-,-\n8,0.1,1.0\n")
    cols = read_table(path, ["L", "p", "y"], ["dy"])
    assert set(cols) == {"L", "p", "y"}


@pytest.mark.parametrize(
    "text, line",
    [
        ("L,y\n", 2),
        ("L,y\n-\n", 2),
        ("L\n-\n8\n", 1),
        ("L,y\n-,-\n8,1.0\n16\n", 4),
        ("L,y\n-,-\n8,abc\n", 3),
    ],
)
def test_malformed_tables_name_the_line(tmp_path, text, line):
    path = write_text(tmp_path / "bad.csv", text)
    with pytest.raises(CsvFormatError) as info:
        read_table(path, ["L", "y"])
    assert info.value.line == line
    assert f"bad.csv:{line}" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(CsvFormatError) as info:
        read_table(tmp_path / "absent.csv", ["L"])
    assert info.value.line is None


# ----------------------------------------------------------------------
# Cells and manifest
# ----------------------------------------------------------------------


def test_scalar_cell(tmp_path):
    record = make_record()
    write_cell_csv(tmp_path / "c.csv", record)
    back = read_cell_csv(tmp_path / "c.csv", 8, 2.0, 0.2, Observable.HALF_CHAIN)
    assert back.samples.tolist() == record.samples.tolist()
    assert back.censored is None


def test_censored_flags_survive(tmp_path):
    record = make_record(Observable.PURIFICATION_TIME)
    write_cell_csv(tmp_path / "c.csv", record)
    assert tmp_path.joinpath("c.csv").read_text().splitlines()[2] == "0,5.0,0"
    back = read_cell_csv(tmp_path / "c.csv", 8, 2.0, 0.2, Observable.PURIFICATION_TIME, depth_cap=128)
    assert back.censored.tolist() == [False, True, False, True]
    assert back.depth_cap == 128
    assert back.summary().censored_majority is False


def test_series_cell(tmp_path):
    record = make_record(Observable.GLOBAL_ENTROPY, n=2)
    write_cell_csv(tmp_path / "s.csv", record)
    back = read_cell_csv(tmp_path / "s.csv", 8, 2.0, 0.2, Observable.GLOBAL_ENTROPY)
    assert back.times.tolist() == [0, 1, 2]
    assert np.array_equal(back.samples, record.samples)


def test_empty_cell_is_header_only(tmp_path):
    write_cell_csv(tmp_path / "e.csv", make_record(n=0))
    assert len(tmp_path.joinpath("e.csv").read_text().splitlines()) == 2
    assert read_cell_csv(tmp_path / "e.csv", 8, 2.0, 0.2, Observable.HALF_CHAIN).n == 0


def test_empty_series_cell(tmp_path):
    record = make_record(Observable.GLOBAL_ENTROPY, n=0)
    assert record.samples.shape == (0, 3)
    write_cell_csv(tmp_path / "e.csv", record)
    back = read_cell_csv(tmp_path / "e.csv", 8, 2.0, 0.2, Observable.GLOBAL_ENTROPY)
    assert back.n == 0
    assert back.times.size == 0
    assert np.isnan(back.summary().value)


def test_manifest_records_skip_failed_cells(tmp_path):
    write_cell_csv(tmp_path / "a.csv", make_record())
    write_cell_csv(tmp_path / "b.csv", make_record(Observable.PURIFICATION_TIME))
    cells = [
        {"file": "a.csv", "L": 8, "alpha": 2.0, "p": 0.2, "observable": "half_chain"},
        {"file": "b.csv", "L": 8, "alpha": 2.0, "p": 0.2, "observable": "purification_time", "depth_cap": 128},
        {"file": "c.csv", "L": 8, "alpha": 2.0, "p": 0.3, "observable": "half_chain"},
    ]
    write_manifest(tmp_path, {"cells": cells, "failed_cells": [{"file": "c.csv", "error": "boom"}]})
    assert read_manifest(tmp_path)["cells"] == cells
    assert not tmp_path.joinpath("manifest.json.tmp").exists()
    assert len(load_manifest_records(tmp_path)) == 2
    (only,) = load_manifest_records(tmp_path, Observable.PURIFICATION_TIME)
    assert only.depth_cap == 128


# ----------------------------------------------------------------------
# Export
# ----------------------------------------------------------------------


def test_json_accepts_numpy_values(tmp_path):
    write_json(tmp_path / "f.json", {"mu": np.float64(0.5), "reps": np.zeros((2, 3))})
    payload = json.loads(tmp_path.joinpath("f.json").read_text())
    assert payload == {"mu": 0.5, "reps": [[0.0] * 3] * 2}


def test_rescaled_csv_columns(tmp_path):
    points = {"x": np.array([0.1]), "Y": np.array([1.0]), "dY": np.array([0.1]), "L": np.array([16])}
    write_rescaled_csv(tmp_path / "r.csv", points, "beta")
    header, units, row = tmp_path.joinpath("r.csv").read_text().splitlines()
    assert header == "x,Y,dY,L"
    assert "y/L^beta" in units
    assert row == "0.1,1.0,0.1,16"
