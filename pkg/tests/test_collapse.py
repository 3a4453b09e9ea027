import numpy as np
import pytest

from lrmipt.errors import CollapseError
from lrmipt.observables import EnsembleRecord, Observable
from lrmipt.scaling import (
    DY_FLOOR,
    CollapseData,
    CollapseForm,
    ScalingFit,
    SearchGrid,
    collapse_quality,
    fit_collapse,
    global_entropy_check,
    rescale,
)

SIZES = (16, 32, 64, 128)
PS = np.round(np.arange(0.15, 0.3501, 0.01), 10)


def make_collapse_data(p_c=0.25, nu=1.3, exponent=1.0, sizes=SIZES):
    """Noise-free points on the exactly linear master curve ``Y = 3 + x/2``."""
    L, p = np.meshgrid(sizes, PS, indexing="ij")
    L, p = L.ravel(), p.ravel()
    x = (p - p_c) * L ** (1.0 / nu)
    scale = L.astype(float) ** exponent
    return CollapseData(L, p, scale * (3.0 + 0.5 * x), 0.01 * scale)


def make_series_data(p_c=0.25, nu=1.3, z=1.0, sizes=SIZES):
    """``S = 3 + x/2 + t/(5 L**z)``, linear in both scaling variables."""
    rows = []
    for L in sizes:
        for p in PS:
            for t in np.arange(0, 2.5 * L + 1, L / 8):
                x = (p - p_c) * L ** (1.0 / nu)
                rows.append((L, p, 3.0 + 0.5 * x + 0.2 * t / L**z, 0.01, t))
    L, p, y, dy, t = (np.array(c) for c in zip(*rows))
    return CollapseData(L, p, y, dy, t)


# ----------------------------------------------------------------------
# Data container
# ----------------------------------------------------------------------


def test_error_bars_are_floored():
    data = CollapseData([8, 16, 32], [0.1, 0.1, 0.1], [1.0, 2.0, 3.0], [0.0, -0.5, 1e-9])
    assert data.dy.tolist() == [DY_FLOOR, 0.5, DY_FLOOR]


def test_mismatched_columns_raise():
    with pytest.raises(CollapseError):
        CollapseData([8, 16], [0.1], [1.0, 2.0], [0.1, 0.1])


def test_non_finite_values_raise():
    with pytest.raises(CollapseError):
        CollapseData([8], [0.1], [np.nan], [0.1])


def test_from_records_skips_censored_majority_cells():
    records = [
        EnsembleRecord(16, 2.0, 0.2, Observable.PURIFICATION_TIME, [4.0, 6.0, 8.0], censored=[False] * 3, depth_cap=256),
        EnsembleRecord(16, 2.0, 0.3, Observable.PURIFICATION_TIME, [256.0] * 3, censored=[True] * 3, depth_cap=256),
    ]
    data = CollapseData.from_records(records, CollapseForm.TAU_P)
    assert data.p.tolist() == [0.2]
    assert data.y.tolist() == [6.0]


def test_from_records_expands_series():
    record = EnsembleRecord(16, 2.0, 0.2, Observable.GLOBAL_ENTROPY, [[16, 8, 2], [16, 6, 0]], times=[0, 2, 4])
    data = CollapseData.from_records([record], CollapseForm.GLOBAL_S)
    assert data.t.tolist() == [0.0, 2.0, 4.0]
    assert data.y.tolist() == [16.0, 7.0, 1.0]


# ----------------------------------------------------------------------
# Quality
# ----------------------------------------------------------------------


@pytest.mark.parametrize("form, exponent", [(CollapseForm.TAU_P, 1.0), (CollapseForm.IAB, 0.3)])
def test_quality_vanishes_at_planted_parameters(form, exponent):
    data = make_collapse_data(exponent=exponent)
    assert collapse_quality(data, (0.25, 1.3, exponent), form) == pytest.approx(0.0, abs=1e-12)
    assert collapse_quality(data, (0.3, 1.3, exponent), form) > 1.0
    assert collapse_quality(data, (0.25, 1.3, exponent + 0.2), form) > 1.0


def test_quality_needs_three_sizes():
    data = make_collapse_data(sizes=(16, 32))
    with pytest.raises(CollapseError):
        collapse_quality(data, (0.25, 1.3, 1.0), CollapseForm.TAU_P)


def test_quality_needs_overlapping_curves():
    data = make_collapse_data()
    with pytest.raises(CollapseError):
        collapse_quality(data, (5.0, 0.05, 1.0), CollapseForm.TAU_P)


def test_rescale_returns_plot_points():
    data = make_collapse_data()
    points = rescale(data, (0.25, 1.3, 1.0), CollapseForm.TAU_P)
    assert set(points) == {"x", "Y", "dY", "L"}
    assert np.allclose(points["Y"], 3.0 + 0.5 * points["x"])
    assert np.allclose(points["dY"], 0.01)


# ----------------------------------------------------------------------
# Fits
# ----------------------------------------------------------------------


@pytest.mark.parametrize("form, exponent", [(CollapseForm.TAU_P, 1.0), (CollapseForm.IAB, 0.3)])
def test_fit_recovers_planted_exponents(form, exponent):
    fit = fit_collapse(make_collapse_data(exponent=exponent), form)
    assert fit.p_c == pytest.approx(0.25, abs=1e-3)
    assert fit.nu == pytest.approx(1.3, abs=1e-3)
    assert fit.exponent == pytest.approx(exponent, abs=1e-3)
    assert fit.quality < 1e-6
    assert fit.converged
    assert not fit.flagged


def test_fit_record_names_the_exponent():
    fit = fit_collapse(make_collapse_data(exponent=0.3), CollapseForm.IAB)
    record = fit.to_record()
    assert record["exponent_name"] == "beta"
    assert fit.beta == pytest.approx(0.3, abs=1e-3)
    assert fit.z is None


def test_search_grid_steps_are_half_the_spacing():
    grid = SearchGrid(p_c=(0.0, 0.4), nu=(1.0, 3.0), exponent=(0.0, 2.0), points=5)
    assert np.allclose(grid.steps(), [0.05, 0.25, 0.25])


# ----------------------------------------------------------------------
# S(t) slices
# ----------------------------------------------------------------------


def test_global_entropy_quality_uses_time_slices():
    data = make_series_data()
    assert collapse_quality(data, (0.25, 1.3, 1.0), CollapseForm.GLOBAL_S) == pytest.approx(0.0, abs=1e-12)
    assert collapse_quality(data, (0.25, 1.3, 1.3), CollapseForm.GLOBAL_S) > 1.0
    points = rescale(data, (0.25, 1.3, 1.0), CollapseForm.GLOBAL_S)
    assert set(np.unique(points["slice"])) == {0.5, 2.0 / 3.0, 2.0}


def test_global_entropy_without_times_raises():
    with pytest.raises(CollapseError):
        collapse_quality(make_collapse_data(), (0.25, 1.3, 1.0), CollapseForm.GLOBAL_S)


def test_no_refit_check_with_planted_tau_exponents():
    tau_fit = ScalingFit(CollapseForm.TAU_P, p_c=0.25, nu=1.3, exponent=1.0, quality=0.0)
    result = global_entropy_check(make_series_data(), tau_fit)
    assert result["quality_fixed"] < 1e-6
    assert result["quality_direct"] >= 0.0
    assert result["direct_fit"].form is CollapseForm.GLOBAL_S
