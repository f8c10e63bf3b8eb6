import math

import numpy as np
import pytest

import gdicke


def test_single_mode_spectrum_and_energy():
    form = gdicke.QuadraticBosonForm(np.array([[2.0]]), np.array([[1.0]]))
    spectrum = gdicke.bogoliubov_spectrum(form)
    assert spectrum.classification == gdicke.Stability.AllPositive
    assert abs(spectrum.frequencies[0] - math.sqrt(3.0)) < 1e-12
    assert abs(gdicke.ground_energy(form, spectrum) - (math.sqrt(3.0) - 2.0) / 2.0) < 1e-12


def test_transform_is_returned_for_stable_forms():
    form = gdicke.normal_form(gdicke.ModelParams(lambda_=0.3))
    result = gdicke.diagonalize(form)
    t = result.transformation
    eta = np.diag([1, 1, 1, -1, -1, -1])
    assert np.allclose(t @ eta @ t.conj().T @ eta, np.eye(6), atol=1e-10)


def test_critical_points_at_resonance():
    assert abs(gdicke.find_critical(gdicke.Branch.Normal) - math.sqrt(0.5)) < 1e-5
    assert abs(gdicke.find_complex_onset() - 0.7698) < 5e-4
    assert abs(gdicke.find_critical(gdicke.Branch.Sr3) - 0.8457) < 5e-4


def test_sweep_records():
    grid = gdicke.linear_grid(0.0, 1.0, 11)
    records = gdicke.sweep(gdicke.ModelParams(), gdicke.Branch.Sr1, grid)
    assert [r.lambda_ for r in records] == grid
    assert not records[0].physical and records[0].frequencies is None
    assert records[-1].physical
    assert abs(records[-1].energy_density + 0.25) < 1e-4


def test_fit_exponent():
    assert abs(gdicke.fit_exponent(gdicke.FitTarget.Gap) - 1.0) < 0.02


def test_oracles():
    form = gdicke.QuadraticBosonForm(np.array([[2.0]]), np.array([[1.0]]))
    levels = gdicke.fock_ed(form, [40], 2)
    assert abs(levels[1] - levels[0] - math.sqrt(3.0)) < 1e-8
    free = gdicke.spin_ed(1.0, 1.0, 0.0, [0.0, 1.0], 3, 4)
    assert free == [0.0, 1.0, 1.0, 1.0]
    bb, bc = gdicke.collective_commutators([0.0, math.pi / 2, math.pi, 3 * math.pi / 2])
    assert bb == 1.0
    assert abs(bc) < 1e-15


def test_errors_are_mapped():
    with pytest.raises(gdicke.DisplacementUndefined):
        gdicke.superradiant_form(gdicke.ModelParams(lambda_=0.5), gdicke.Branch.Sr1)
    with pytest.raises(gdicke.InvalidArgument):
        gdicke.QuadraticBosonForm(np.array([[1.0, 2.0], [0.0, 1.0]]), np.zeros((2, 2)))
    with pytest.raises(gdicke.Error):
        gdicke.ModelParams(omega=-1.0)
