# CSV tables with a two-line header (column names; units/tags) and the run manifest.

import csv
import json
import logging
import os
import subprocess
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from lrmipt.errors import CsvFormatError
from lrmipt.observables import EnsembleRecord, Observable

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
MANIFEST_NAME = "manifest.json"

_UNITS = {
    Observable.HALF_CHAIN: "bits",
    Observable.MUTUAL_INFORMATION: "bits",
    Observable.PURIFICATION_TIME: "steps",
    Observable.GLOBAL_ENTROPY: "bits",
}


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_table(path: PathLike, names: Sequence[str], units: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as outfile:
        writer = csv.writer(outfile, lineterminator="\n")
        writer.writerow(names)
        writer.writerow(units)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def read_table(
    path: PathLike, required: Sequence[str], optional: Sequence[str] = ()
) -> Dict[str, np.ndarray]:
    """Numeric columns of a two-header-line CSV; missing optional columns are left out."""
    path = Path(path)
    try:
        with open(path, "r", newline="", encoding="utf-8") as infile:
            lines = list(csv.reader(infile))
    except OSError as exc:
        raise CsvFormatError(path, None, f"cannot read file ({exc})") from exc
    if len(lines) < 2:
        raise CsvFormatError(path, len(lines) + 1, "expected a header line and a units line")
    header = [h.strip() for h in lines[0]]
    if len(lines[1]) != len(header):
        raise CsvFormatError(path, 2, f"units line has {len(lines[1])} fields, header has {len(header)}")
    missing = [name for name in required if name not in header]
    if missing:
        raise CsvFormatError(path, 1, f"missing column(s) {', '.join(missing)}")

    wanted = [name for name in list(required) + list(optional) if name in header]
    columns: Dict[str, List[float]] = {name: [] for name in wanted}
    for lineno, row in enumerate(lines[2:], start=3):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise CsvFormatError(path, lineno, f"expected {len(header)} fields, found {len(row)}")
        for name in wanted:
            cell = row[header.index(name)].strip()
            try:
                columns[name].append(float(cell))
            except ValueError as exc:
                raise CsvFormatError(path, lineno, f"column {name!r}: {cell!r} is not a number") from exc
    return {name: np.array(values) for name, values in columns.items()}


# ----------------------------------------------------------------------
# Ensemble cells
# ----------------------------------------------------------------------


def write_cell_csv(path: PathLike, record: EnsembleRecord) -> None:
    """Raw samples of one cell: scalars as ``(trajectory_index, value)``, series as
    ``(trajectory_index, t, value)``; purification times add a ``censored`` flag."""
    unit = _UNITS[record.observable]
    if record.observable.is_series:
        rows = (
            (i, int(t), record.samples[i, k])
            for i in range(record.n)
            for k, t in enumerate(record.times)
        )
        write_table(path, ["trajectory_index", "t", "value"], ["-", "steps", unit], rows)
    elif record.censored is not None:
        rows = ((i, record.samples[i], bool(record.censored[i])) for i in range(record.n))
        write_table(path, ["trajectory_index", "value", "censored"], ["-", unit, "flag"], rows)
    else:
        rows = ((i, record.samples[i]) for i in range(record.n))
        write_table(path, ["trajectory_index", "value"], ["-", unit], rows)


def read_cell_csv(
    path: PathLike,
    L: int,
    alpha: float,
    p: float,
    observable: Observable,
    depth_cap: Optional[int] = None,
) -> EnsembleRecord:
    observable = Observable(observable)
    if observable.is_series:
        cols = read_table(path, ["trajectory_index", "t", "value"])
        times = np.unique(cols["t"]).astype(np.int64)
        n = np.unique(cols["trajectory_index"]).size
        if cols["value"].size != n * times.size:
            raise CsvFormatError(path, None, "series rows do not form a complete (trajectory, t) grid")
        order = np.lexsort((cols["t"], cols["trajectory_index"]))
        samples = cols["value"][order].reshape(n, times.size)
        return EnsembleRecord(L, alpha, p, observable, samples, times=times)
    optional = ["censored"] if observable is Observable.PURIFICATION_TIME else []
    cols = read_table(path, ["trajectory_index", "value"], optional)
    order = np.argsort(cols["trajectory_index"], kind="stable")
    censored = cols["censored"][order].astype(bool) if "censored" in cols else None
    return EnsembleRecord(L, alpha, p, observable, cols["value"][order], censored=censored, depth_cap=depth_cap)


# ----------------------------------------------------------------------
# Manifest
# ----------------------------------------------------------------------


def git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            capture_output=True,
            text=True,
            cwd=Path(__file__).resolve().parent,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() if out.returncode == 0 and out.stdout.strip() else "unknown"


def write_manifest(directory: PathLike, manifest: dict) -> Path:
    """Write ``manifest.json`` atomically (temporary file, then rename)."""
    target = Path(directory) / MANIFEST_NAME
    tmp = target.with_suffix(".json.tmp")
    with open(tmp, "w", encoding="utf-8") as outfile:
        json.dump(manifest, outfile, indent=2, sort_keys=True)
        outfile.write("\n")
    os.replace(tmp, target)
    return target


def read_manifest(directory: PathLike) -> dict:
    path = Path(directory)
    if path.is_dir():
        path = path / MANIFEST_NAME
    with open(path, "r", encoding="utf-8") as infile:
        return json.load(infile)


def load_manifest_records(directory: PathLike, observable: Optional[Observable] = None) -> List[EnsembleRecord]:
    """Every completed cell listed in a run manifest, optionally filtered by observable."""
    directory = Path(directory)
    manifest = read_manifest(directory)
    failed = {entry["file"] for entry in manifest.get("failed_cells", [])}
    records = []
    for cell in manifest.get("cells", []):
        obs = Observable(cell["observable"])
        if cell["file"] in failed or (observable is not None and obs is not Observable(observable)):
            continue
        records.append(
            read_cell_csv(
                directory / cell["file"],
                int(cell["L"]),
                float(cell["alpha"]),
                float(cell["p"]),
                obs,
                cell.get("depth_cap"),
            )
        )
    return records
