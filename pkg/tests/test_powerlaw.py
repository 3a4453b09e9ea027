import numpy as np
import pytest

from lrmipt.errors import FitError
from lrmipt.scaling import fit_power_law


def make_points(amplitude, mu, sizes=(16, 32, 64, 128, 256)):
    return [(L, amplitude * L**mu) for L in sizes]


def test_exact_square_root_law():
    fit = fit_power_law(make_points(1.5, 0.5))
    assert fit.mu == pytest.approx(0.5)
    assert fit.amplitude == pytest.approx(1.5)
    assert fit.residual == pytest.approx(0.0, abs=1e-20)
    assert fit.n_points == 5
    assert fit.L_min == 16


def test_lower_cutoff_drops_small_sizes():
    points = make_points(2.0, 0.75) + [(4, 100.0)]
    fit = fit_power_law(points, L_min=16)
    assert fit.mu == pytest.approx(0.75)
    assert fit.L_min == 16
    assert fit.n_points == 5


def test_non_positive_entropies_are_skipped():
    fit = fit_power_law(make_points(1.0, 0.3) + [(512, 0.0)])
    assert fit.n_points == 5
    assert fit.mu == pytest.approx(0.3)


def test_too_few_points_raise():
    with pytest.raises(FitError):
        fit_power_law([(16, 2.0), (32, 2.5)])
    with pytest.raises(FitError):
        fit_power_law(make_points(1.0, 0.5), L_min=128)


def test_record_fields():
    record = fit_power_law(make_points(1.0, 0.5)).to_record()
    assert set(record) == {"amplitude", "mu", "residual", "L_min", "n_points"}
    assert np.isfinite(record["mu"])
