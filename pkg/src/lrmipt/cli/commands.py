import logging
import os
import time
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from tqdm import tqdm

from lrmipt.cli.plan import ExperimentPlan, ProjectConfig, sweep_values
from lrmipt.errors import CsvFormatError, DegenerateOverlapError, PlanError
from lrmipt.heff import HeffSpec, renyi2_from_vector, solve
from lrmipt.observables import (
    Observable,
    estimate_global_entropy_series,
    estimate_half_chain,
    estimate_mutual_information,
    estimate_purification_time,
)
from lrmipt.scaling import (
    CollapseData,
    CollapseForm,
    bootstrap_exponents,
    crossing_exponent,
    expected_crossings,
    fit_collapse,
    fit_power_law,
    rescale,
)
from lrmipt.utils.export import write_fit_json, write_json, write_rescaled_csv
from lrmipt.utils.io import (
    git_describe,
    load_manifest_records,
    read_table,
    write_cell_csv,
    write_manifest,
    write_table,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_PARTIAL = 3

OUTPUT_ENV = "LRMIPT_OUTPUT_DIR"


def resolve_output_dir(cli_value: Optional[str], default: str) -> Path:
    """``--out`` wins, then ``LRMIPT_OUTPUT_DIR``, then the configured default."""
    chosen = cli_value or os.environ.get(OUTPUT_ENV) or default
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------


def _estimate(plan: ExperimentPlan, cell, workers: int):
    config = plan.circuit_config(cell)
    if cell.observable is Observable.HALF_CHAIN:
        return estimate_half_chain(config, plan.n, workers=workers)
    if cell.observable is Observable.MUTUAL_INFORMATION:
        return estimate_mutual_information(config, plan.n, workers=workers, region_denominator=plan.region_denominator)
    if cell.observable is Observable.PURIFICATION_TIME:
        return estimate_purification_time(config, plan.n, depth_cap=plan.depth_cap, workers=workers)
    return estimate_global_entropy_series(config, plan.n, sample_times=plan.sample_times, workers=workers)


def simulate(plan: ExperimentPlan, out_dir: Path, progress: bool = True) -> int:
    """Run every cell of ``plan``; the manifest is written first and finalized last."""
    cells = plan.validate_cells()
    started = time.time()
    manifest = {
        "config_hash": plan.config_hash(),
        "seed": plan.seed,
        "git_describe": git_describe(),
        "started_at": datetime.now(timezone.utc).isoformat(),
        "wall_time_s": None,
        "status": "incomplete",
        "plan": plan.model_dump(mode="json"),
        "cells": [
            {
                "file": c.filename,
                "L": c.L,
                "alpha": c.alpha,
                "p": c.p,
                "observable": c.observable.value,
                "n": plan.n,
                "depth_cap": (plan.depth_cap or 16 * c.L) if c.observable is Observable.PURIFICATION_TIME else None,
            }
            for c in cells
        ],
        "failed_cells": [],
    }
    write_manifest(out_dir, manifest)
    logger.info("simulating %d cells into %s", len(cells), out_dir)

    failed: List[dict] = []
    for cell in tqdm(cells, desc="cells", unit="cell", disable=not progress):
        logger.info("cell %s", cell.filename)
        try:
            record = _estimate(plan, cell, plan.workers)
            write_cell_csv(out_dir / cell.filename, record)
        except Exception as exc:  # a failed cell must not lose the rest of the sweep
            logger.error("cell %s failed: %s", cell.filename, exc)
            failed.append({"file": cell.filename, "error": f"{type(exc).__name__}: {exc}"})

    manifest["failed_cells"] = failed
    manifest["wall_time_s"] = round(time.time() - started, 3)
    manifest["status"] = "incomplete" if failed else "complete"
    write_manifest(out_dir, manifest)
    logger.info("wrote %d cell files (%d failed)", len(cells) - len(failed), len(failed))
    return EXIT_PARTIAL if failed else EXIT_OK


# ----------------------------------------------------------------------
# collapse
# ----------------------------------------------------------------------


def _table_data(path: Path, form: CollapseForm) -> CollapseData:
    optional = ["dy"] + (["t"] if form is CollapseForm.GLOBAL_S else [])
    cols = read_table(path, ["L", "p", "y"], optional)
    if form is CollapseForm.GLOBAL_S and "t" not in cols:
        raise CsvFormatError(path, 1, "global_s collapse needs a 't' column")
    if "dy" in cols:
        dy = cols["dy"]
    else:
        logger.warning("%s has no error column; using Poisson estimate dy = sqrt(|y|)", path)
        dy = np.sqrt(np.abs(cols["y"]))
    return CollapseData(cols["L"], cols["p"], cols["y"], dy, cols.get("t"))


def _directory_batches(path: Path, form: CollapseForm, alpha: Optional[float]) -> List[tuple]:
    """Split a run's records into one ``(stem, alpha, records)`` batch per interaction exponent."""
    records = load_manifest_records(path, form.observable)
    if alpha is not None:
        records = [r for r in records if np.isclose(r.alpha, alpha)]
    alphas = sorted({float(r.alpha) for r in records})
    if len(alphas) <= 1:
        return [(path.name, alphas[0] if alphas else alpha, records)]
    logger.info("%s holds %d values of alpha; fitting each separately", path, len(alphas))
    return [(f"{path.name}_a{a:g}", a, [r for r in records if float(r.alpha) == a]) for a in alphas]


def collapse(settings, out_dir: Path, workers: int = 1, progress: bool = True) -> int:
    """Fit every input (a run directory or a summary table) and write fit JSON plus rescaled CSV.

    A run directory holding several interaction exponents gets one fit per exponent
    unless ``collapse.alpha`` picks one.
    """
    form = CollapseForm(settings.form)
    grid = settings.grid.to_grid()
    if not settings.inputs:
        raise PlanError(["collapse.inputs is empty"])
    fits = []
    for source in settings.inputs:
        path = Path(source)
        if path.is_dir():
            batches = _directory_batches(path, form, settings.alpha)
        else:
            if settings.n_boot > 0:
                logger.warning("%s is a summary table; n_boot=%d is ignored", path, settings.n_boot)
            batches = [(path.stem, None, None)]
        for stem, alpha, records in batches:
            if records is None:
                data = _table_data(path, form)
                fit = fit_collapse(data, form, grid)
            else:
                data = CollapseData.from_records(records, form)
                if settings.n_boot > 0:
                    fit = bootstrap_exponents(
                        records,
                        form,
                        n_boot=settings.n_boot,
                        subsample=settings.subsample,
                        seed=settings.seed,
                        workers=workers,
                        init_grid=grid,
                        progress=progress,
                    )
                else:
                    fit = fit_collapse(data, form, grid)
            record = fit.to_record()
            record.update({"input": str(path), "alpha": alpha})
            fits.append(record)
            points = rescale(data, fit.params, form)
            csv_path = out_dir / f"collapse_{form.value}_{stem}.csv"
            write_rescaled_csv(csv_path, points, form.exponent_name)
            logger.info("wrote %s", csv_path)
    json_path = out_dir / f"collapse_{form.value}.json"
    write_fit_json(json_path, fits)
    logger.info("wrote %s", json_path)
    return EXIT_PARTIAL if any(f["flagged"] for f in fits) else EXIT_OK


# ----------------------------------------------------------------------
# powerfit
# ----------------------------------------------------------------------


def _half_chain_groups(path: Path) -> Dict[tuple, List[tuple]]:
    groups: Dict[tuple, List[tuple]] = defaultdict(list)
    for rec in load_manifest_records(path, Observable.HALF_CHAIN):
        if rec.n:
            groups[(rec.alpha, rec.p)].append((rec.L, float(rec.summary().value)))
    return groups


def _table_groups(path: Path) -> Dict[tuple, List[tuple]]:
    """Group ``L, S`` rows by ``(alpha, p)``; a missing column keys every row with ``None``."""
    cols = read_table(path, ["L", "S"], ["alpha", "p"])
    n = cols["L"].size
    alpha = cols["alpha"].tolist() if "alpha" in cols else [None] * n
    p = cols["p"].tolist() if "p" in cols else [None] * n
    groups: Dict[tuple, List[tuple]] = defaultdict(list)
    for L, S, a, pp in zip(cols["L"], cols["S"], alpha, p):
        groups[(a, pp)].append((L, S))
    return groups


def _group_order(item) -> tuple:
    return tuple(-np.inf if v is None else v for v in item[0])


def powerfit(settings, out_dir: Path) -> int:
    if not settings.inputs:
        raise PlanError(["powerfit.inputs is empty"])
    results = []
    for source in settings.inputs:
        path = Path(source)
        if path.is_dir():
            groups = _half_chain_groups(path)
        else:
            groups = _table_groups(path)
        for (alpha, p), points in sorted(groups.items(), key=_group_order):
            fit = fit_power_law(points, settings.L_min)
            entry = fit.to_record()
            entry.update({"input": str(path), "alpha": alpha, "p": p})
            results.append(entry)
            logger.info("power law alpha=%s p=%s: A=%.4g mu=%.4f", alpha, p, fit.amplitude, fit.mu)
    json_path = out_dir / "powerfit.json"
    write_json(json_path, results)
    logger.info("wrote %s", json_path)
    return EXIT_OK


# ----------------------------------------------------------------------
# crossings
# ----------------------------------------------------------------------


def crossings(settings, out_dir: Path) -> int:
    Ls = sorted(int(L) for L in settings.L)
    rows, exponents = [], []
    for alpha in sweep_values(settings.alpha):
        for L in Ls:
            rows.append((alpha, L, expected_crossings(L, alpha, settings.gates_per_layer)))
        if len(Ls) >= 3:
            fit = crossing_exponent(Ls, alpha, settings.gates_per_layer)
            exponents.append((alpha, fit.mu, max(2.0 - alpha, 0.0)))
    write_table(out_dir / "crossings.csv", ["alpha", "L", "expected_crossings"], ["-", "sites", "gates"], rows)
    write_table(out_dir / "crossing_exponents.csv", ["alpha", "mu", "max_2_minus_alpha"], ["-", "-", "-"], exponents)
    logger.info("wrote crossing counts for %d alpha values", len(exponents) or len(rows))
    return EXIT_OK


# ----------------------------------------------------------------------
# heff-scan
# ----------------------------------------------------------------------


def heff_scan(settings, out_dir: Path, progress: bool = True) -> int:
    sizes = settings.sizes or list(range(1, settings.L // 2 + 1))
    rows, skipped = [], 0
    for ratio in tqdm(sweep_values(settings.gamma_over_J), desc="gamma/J", disable=not progress):
        spec = HeffSpec(L=settings.L, J=settings.J, Gamma=ratio * settings.J, alpha=settings.alpha)
        ground = solve(spec)
        for size in sizes:
            try:
                rows.append((ratio, int(size), renyi2_from_vector(ground.vector, spec.L, range(int(size)))))
            except DegenerateOverlapError as exc:
                skipped += 1
                logger.warning("Gamma/J=%g |A|=%d: %s", ratio, size, exc)
    write_table(out_dir / "heff_scan.csv", ["gamma_over_J", "region_size", "renyi2"], ["-", "sites", "nats"], rows)
    return EXIT_PARTIAL if skipped else EXIT_OK


def run_command(
    name: str,
    config: ProjectConfig,
    out_dir: Path,
    workers: Optional[int] = None,
    progress: bool = True,
) -> int:
    if name == "simulate":
        if config.simulate is None:
            raise PlanError(["the config has no 'simulate' section"])
        plan = config.simulate
        if workers is not None:
            plan = plan.model_copy(update={"workers": workers})
        return simulate(plan, out_dir, progress)
    if name == "collapse":
        return collapse(config.collapse, out_dir, workers or 1, progress)
    if name == "powerfit":
        return powerfit(config.powerfit, out_dir)
    if name == "crossings":
        return crossings(config.crossings, out_dir)
    return heff_scan(config.heff_scan, out_dir, progress)
