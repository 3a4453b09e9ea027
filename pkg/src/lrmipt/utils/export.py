# fit records (json) and plot-ready rescaled curves (csv)

import json
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from lrmipt.utils.io import write_table


def write_json(path: Union[str, Path], payload) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        json.dump(payload, outfile, indent=2, sort_keys=True, default=_jsonable)
        outfile.write("\n")


def _jsonable(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_fit_json(path: Union[str, Path], records: Iterable[dict]) -> None:
    write_json(path, list(records))


def write_rescaled_csv(path: Union[str, Path], points: dict, exponent_name: str) -> None:
    """``(x, Y, dY, L[, slice])`` rows from ``scaling.rescale``."""
    names = ["x", "Y", "dY", "L"]
    units = ["(p-p_c)L^(1/nu)", f"y/L^{exponent_name}", f"dy/L^{exponent_name}", "sites"]
    if "slice" in points:
        names.append("slice")
        units.append("t/L^z")
        units[1] = units[2] = "bits"
    columns = [np.asarray(points[name]) for name in names]
    rows = zip(*(col.tolist() for col in columns))
    write_table(path, names, units, rows)
