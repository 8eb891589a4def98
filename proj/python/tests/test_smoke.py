import os
import subprocess

import numpy as np
import pytest

import biofilm


def test_scaled_defaults():
    s = biofilm.default_scaled_params()
    assert s.D0 == pytest.approx(1.0, rel=1e-12)
    assert s.M0 == pytest.approx(1e-3, rel=1e-12)
    assert s.Gamma1_0 == pytest.approx(0.1, rel=1e-12)
    p = biofilm.default_physical_params()
    assert biofilm.characteristic_potential(p) == pytest.approx(4e-6, rel=1e-12)


def test_potentials_vectorised():
    u = np.linspace(-3.0, 4.0, 101)
    d2 = biofilm.truncated_singular_d2(u, N=1e3, delta=1e-4)
    assert d2.shape == u.shape
    assert np.all(d2 >= 0.0)
    m = biofilm.truncated_mobility(u, 1e-2)
    assert np.all(m >= biofilm.mobility(np.clip(u, 0.0, 1.0)) - 1e-15)
    phi = biofilm.truncated_entropy(np.array([0.5]), 1e-3)
    assert abs(phi[0]) < 1e-15
    assert all(passed for _, _, _, passed in biofilm.check_potentials())


def test_run_case3_short():
    out = biofilm.run({"case": 3, "n_cells": 32, "dt": 0.01, "horizon": 0.2})
    assert out["steps"] == 20
    assert out["x"].shape == (32,)
    diag = out["diagnostics"]
    assert len(diag["t"]) == 21
    assert np.all(np.diff(diag["mass_u"]) >= -1e-10)
    assert out["final"]["u"].min() >= 0.0
    assert len(out["snapshots"]) == 5


def test_compare_models():
    cmp = biofilm.compare_models({"case": 1, "n_cells": 16, "dt": 0.01, "horizon": 0.1})
    assert cmp["l2_u"][0] == 0.0
    assert cmp["wang_zhang"]["final"]["v"].shape == (16,)


def test_config_errors():
    with pytest.raises(ValueError):
        biofilm.run({"delta": 0.7})
    with pytest.raises(ValueError):
        biofilm.run({"unknown": 1})
    assert "case = 4" in biofilm.config_text({"case": 4})


def test_orders_and_restriction():
    assert biofilm.observed_orders([1.0, 1.0 / 16.0], [1.0, 0.25]) == pytest.approx([2.0])
    fine = np.arange(8.0)
    np.testing.assert_allclose(biofilm.restrict_to(fine, 2), [1.5, 5.5])
    assert biofilm.l2_distance([0.0, 1.0], [0.0, 0.0], 0.5) == pytest.approx(np.sqrt(0.5))


def test_initial_data():
    x, u, v = biofilm.initial_data(2, 10)
    assert u[0] == 0.2 and u[-1] == 0.01
    assert np.all(v == 0.1)


@pytest.mark.skipif("BIOFILM_CLI" not in os.environ, reason="CLI binary not provided")
def test_cli_check_potentials():
    r = subprocess.run([os.environ["BIOFILM_CLI"], "check-potentials"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "FAIL" not in r.stdout
