"""Finite-size scaling collapse: quality of a master curve and simplex fits of
``(p_c, nu, exponent)``."""

import itertools
import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from lrmipt.errors import CollapseError
from lrmipt.scaling.data import DY_FLOOR, CollapseData, CollapseForm, ScalingFit

logger = logging.getLogger(__name__)

TIME_SLICES = (0.5, 2.0 / 3.0, 2.0)
_NU_MIN = 1e-3


class CollapseParams(NamedTuple):
    p_c: float
    nu: float
    exponent: float


@dataclass(frozen=True)
class SearchGrid:
    """Restart grid over ``(p_c, nu, exponent)`` and the number of best nodes refined."""

    p_c: Tuple[float, float] = (0.05, 0.5)
    nu: Tuple[float, float] = (0.7, 3.0)
    exponent: Tuple[float, float] = (0.0, 2.0)
    points: int = 5
    n_starts: int = 8

    def axes(self):
        return [np.linspace(lo, hi, self.points) for lo, hi in (self.p_c, self.nu, self.exponent)]

    def steps(self) -> np.ndarray:
        n = max(self.points - 1, 1)
        return np.array([(hi - lo) / n for lo, hi in (self.p_c, self.nu, self.exponent)]) / 2


# ----------------------------------------------------------------------
# Rescaling and quality
# ----------------------------------------------------------------------


def _check(data: CollapseData, params: CollapseParams) -> None:
    if data.sizes.size < 3:
        raise CollapseError(f"a collapse needs at least 3 system sizes, got {data.sizes.size}")
    if not params.nu > 0:
        raise CollapseError("nu must be positive")


def rescale(data: CollapseData, params, form: CollapseForm) -> dict:
    """Plot-ready rescaled points: ``x``, ``Y``, ``dY``, ``L`` and, for ``global_s``, ``slice``."""
    form = CollapseForm(form)
    params = CollapseParams(*params)
    if form is CollapseForm.GLOBAL_S:
        parts = [_time_slice(data, params, c) for c in TIME_SLICES]
        out = {"x": [], "Y": [], "dY": [], "L": [], "slice": []}
        for c, (x, Y, dY, L) in zip(TIME_SLICES, parts):
            out["x"].append(x)
            out["Y"].append(Y)
            out["dY"].append(dY)
            out["L"].append(L)
            out["slice"].append(np.full(x.size, c))
        return {k: np.concatenate(v) if v else np.empty(0) for k, v in out.items()}
    x = (data.p - params.p_c) * data.L ** (1.0 / params.nu)
    scale = data.L.astype(np.float64) ** params.exponent
    return {"x": x, "Y": data.y / scale, "dY": data.dy / scale, "L": data.L}


def _pair_deviations(x: np.ndarray, Y: np.ndarray, dY: np.ndarray, L: np.ndarray) -> Tuple[float, int]:
    """Sum and count of ``(ΔY)² / var`` over (point, other size) pairs with an interpolant."""
    total, count = 0.0, 0
    sizes = np.unique(L)
    curves = {}
    for size in sizes:
        sel = L == size
        order = np.argsort(x[sel], kind="stable")
        curves[size] = (x[sel][order], Y[sel][order], dY[sel][order])
    for size in sizes:
        sel = L == size
        xi, Yi, dYi = x[sel], Y[sel], dY[sel]
        for other in sizes:
            if other == size:
                continue
            xo, Yo, dYo = curves[other]
            if xo.size < 2:
                continue
            inside = (xi >= xo[0]) & (xi <= xo[-1])
            if not inside.any():
                continue
            xs = xi[inside]
            hi = np.clip(np.searchsorted(xo, xs, side="right"), 1, xo.size - 1)
            lo = hi - 1
            span = xo[hi] - xo[lo]
            w = np.divide(xs - xo[lo], span, out=np.zeros_like(xs), where=span > 0)
            y_interp = (1 - w) * Yo[lo] + w * Yo[hi]
            var_interp = (1 - w) ** 2 * dYo[lo] ** 2 + w**2 * dYo[hi] ** 2
            var = dYi[inside] ** 2 + var_interp
            total += float(np.sum((Yi[inside] - y_interp) ** 2 / var))
            count += int(xs.size)
    return total, count


def _time_slice(data: CollapseData, params: CollapseParams, c: float):
    """Interpolate each ``(L, p)`` series at ``t = c·L**z``; returns ``(x, Y, dY, L)``."""
    if data.t is None:
        raise CollapseError("global_s data needs a time column")
    xs, Ys, dYs, Ls = [], [], [], []
    keys = np.unique(np.stack([data.L.astype(np.float64), data.p]), axis=1).T
    for size, p in keys:
        sel = (data.L == size) & (data.p == p)
        order = np.argsort(data.t[sel], kind="stable")
        t, y, dy = data.t[sel][order], data.y[sel][order], data.dy[sel][order]
        target = c * size**params.exponent
        if t.size == 0 or target < t[0] or target > t[-1]:
            continue
        hi = int(np.clip(np.searchsorted(t, target, side="right"), 1, max(t.size - 1, 1)))
        if t.size == 1:
            Y, dY = y[0], dy[0]
        else:
            lo = hi - 1
            span = t[hi] - t[lo]
            w = (target - t[lo]) / span if span > 0 else 0.0
            Y = (1 - w) * y[lo] + w * y[hi]
            dY = np.sqrt((1 - w) ** 2 * dy[lo] ** 2 + w**2 * dy[hi] ** 2)
        xs.append((p - params.p_c) * size ** (1.0 / params.nu))
        Ys.append(Y)
        dYs.append(dY)
        Ls.append(int(size))
    return np.array(xs, dtype=float), np.array(Ys, dtype=float), np.array(dYs, dtype=float), np.array(Ls, dtype=np.int64)


def collapse_quality(data: CollapseData, params, form: CollapseForm) -> float:
    """
    Mean squared deviation of every rescaled point from the linear interpolant of each other
    system size whose x-range contains it, in units of the combined variance.

    ``global_s`` averages the quality of the three time slices ``t = c·L**z``, each
    collapsed in ``x`` only.
    """
    form = CollapseForm(form)
    params = CollapseParams(*params)
    _check(data, params)
    if form is CollapseForm.GLOBAL_S:
        total, count = 0.0, 0
        for c in TIME_SLICES:
            x, Y, dY, L = _time_slice(data, params, c)
            if np.unique(L).size < 3:
                continue
            s, n = _pair_deviations(x, Y, np.maximum(dY, DY_FLOOR), L)
            total, count = total + s, count + n
    else:
        r = rescale(data, params, form)
        total, count = _pair_deviations(r["x"], r["Y"], r["dY"], r["L"])
    if count == 0:
        raise CollapseError("no rescaled point lies inside another size's range")
    return total / count


# ----------------------------------------------------------------------
# Fitting
# ----------------------------------------------------------------------


def _objective(data: CollapseData, form: CollapseForm):
    def cost(v: np.ndarray) -> float:
        if v[1] <= _NU_MIN:
            return np.inf
        try:
            return collapse_quality(data, v, form)
        except CollapseError:
            return np.inf

    return cost


def refine(
    data: CollapseData,
    form: CollapseForm,
    start: Sequence[float],
    steps: np.ndarray,
    xatol: float = 1e-6,
    fatol: float = 1e-10,
    maxiter: int = 2000,
):
    """One Nelder-Mead run from ``start`` with an axis-aligned initial simplex."""
    x0 = np.asarray(start, dtype=np.float64)
    simplex = np.vstack([x0, x0 + np.diag(steps)])
    return minimize(
        _objective(data, form),
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": xatol, "fatol": fatol, "maxiter": maxiter},
    )


def fit_collapse(data: CollapseData, form: CollapseForm, init_grid: Optional[SearchGrid] = None) -> ScalingFit:
    """Minimize ``collapse_quality`` by simplex descent restarted from the best grid nodes."""
    form = CollapseForm(form)
    grid = init_grid or SearchGrid()
    _check(data, CollapseParams(0.0, 1.0, 0.0))
    cost = _objective(data, form)

    nodes = np.array(list(itertools.product(*grid.axes())))
    values = np.array([cost(v) for v in nodes])
    finite = np.flatnonzero(np.isfinite(values))
    if finite.size == 0:
        raise CollapseError("collapse quality is undefined on the whole search grid")
    starts = nodes[finite[np.argsort(values[finite], kind="stable")[: grid.n_starts]]]

    best = None
    converged = False
    for i, start in enumerate(starts):
        result = refine(data, form, start, grid.steps())
        logger.debug("restart %d from %s -> %s (%.6g)", i, start, result.x, result.fun)
        converged |= bool(result.success)
        if np.isfinite(result.fun) and (best is None or result.fun < best.fun):
            best = result
    if best is None:
        raise CollapseError("every simplex restart diverged")

    fit = ScalingFit(
        form=form,
        p_c=float(best.x[0]),
        nu=float(best.x[1]),
        exponent=float(best.x[2]),
        quality=float(best.fun),
        converged=converged,
        flagged=not converged,
    )
    if fit.flagged:
        logger.warning("collapse fit did not converge; reporting best-so-far %s", fit.params)
    logger.info(
        "%s collapse: p_c=%.4f nu=%.3f %s=%.3f quality=%.4g",
        form.value,
        fit.p_c,
        fit.nu,
        form.exponent_name,
        fit.exponent,
        fit.quality,
    )
    return fit


def global_entropy_check(data: CollapseData, tau_fit: ScalingFit, init_grid: Optional[SearchGrid] = None) -> dict:
    """Quality of the S(t) slices with the purification-time exponents versus a direct fit."""
    fixed = collapse_quality(data, tau_fit.params, CollapseForm.GLOBAL_S)
    direct = fit_collapse(data, CollapseForm.GLOBAL_S, init_grid)
    ratio = fixed / direct.quality if direct.quality > 0 else (1.0 if fixed == 0 else np.inf)
    return {"quality_fixed": fixed, "quality_direct": direct.quality, "ratio": float(ratio), "direct_fit": direct}
