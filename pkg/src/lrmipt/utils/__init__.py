# lrmipt/utils/__init__.py

from .io import (
    MANIFEST_NAME,
    git_describe,
    load_manifest_records,
    read_cell_csv,
    read_manifest,
    read_table,
    write_cell_csv,
    write_manifest,
    write_table,
)
from .export import write_fit_json, write_json, write_rescaled_csv


__all__ = [
    "MANIFEST_NAME",
    "git_describe",
    "load_manifest_records",
    "read_cell_csv",
    "read_manifest",
    "read_table",
    "write_cell_csv",
    "write_manifest",
    "write_table",
    "write_fit_json",
    "write_json",
    "write_rescaled_csv",
]
