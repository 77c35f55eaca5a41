import math

import numpy as np
import pytest

import cytovisc


def test_einstein_reference_value():
    assert cytovisc.einstein_diffusion() == pytest.approx(1.1347747442452137e-11, rel=1e-12)
    d = cytovisc.einstein_diffusion(viscosity_mPas=2.0)
    assert cytovisc.viscosity_from_diffusion(d) == pytest.approx(2.0, rel=1e-12)


def test_wiener_path_and_estimate():
    path = cytovisc.generate_wiener(fps=40.0, observation_s=60.0, seed=3)
    assert path.shape == (2401, 3)
    assert np.all(path[0] == 0.0)
    d = cytovisc.estimate_diffusion(path, 1 / 40.0)
    assert d == pytest.approx(cytovisc.einstein_diffusion(), rel=4 / math.sqrt(2400))
    again = cytovisc.generate_wiener(fps=40.0, observation_s=60.0, seed=3)
    assert np.array_equal(path, again)


def test_ensemble_report_layout():
    report = cytovisc.run_ensemble(observation_s=10.0, trials=5, seed=1)
    assert set(report) == {"config", "convention", "per_resolution", "ensemble", "seeds"}
    assert [r["fps"] for r in report["per_resolution"]] == [40.0, 20.0, 10.0]
    assert len(report["seeds"]["per_trial"]) == 5
    assert report["config"]["warnings"]


def test_langevin_and_counting_helpers():
    paths = cytovisc.simulate_langevin(observation_s=0.5, particles=2, geometry="halfspace", substeps=10)
    assert len(paths) == 2
    assert all(p[:, 2].min() >= 0.0 for p in paths)
    p = cytovisc.stay_probability(cytovisc.einstein_diffusion(), 2e-6, 0.1)
    assert 0.0 < p < 1.0


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        cytovisc.einstein_diffusion(radius_m=1.0)
    with pytest.raises(ValueError):
        cytovisc.simulate_langevin(geometry="sphere")
