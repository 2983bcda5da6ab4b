import numpy as np
import pytest

import orbitlab


def test_catalogs():
    assert orbitlab.suites() == ["group", "coadjoint", "quantization", "groupoid", "semiclassics", "induction"]
    assert set(orbitlab.experiments()) == {"trace", "character", "covariance", "haar"}


def test_config_defaults_and_grid():
    cfg = orbitlab.ExperimentConfig()
    assert cfg.points == 256 and cfg.metric == "cosine"
    nodes, weights = cfg.nodes(), cfg.weights()
    assert nodes.shape == (256,) and weights.shape == (256,)
    # Weights integrate 1 to the Riemannian length of the cosine metric.
    assert weights.sum() == pytest.approx(2 * np.pi, rel=1e-12)
    assert cfg.h_grid()[0] == 0.125


def test_parse_config_errors_carry_line_and_field():
    cfg = orbitlab.parse_config("[manifold]\npoints = 64\n[run]\nseed = 7\n")
    assert cfg.points == 64 and cfg.seed == 7
    with pytest.raises(orbitlab.ConfigError, match=r"config:2 \[manifold.points\]"):
        orbitlab.parse_config("[manifold]\npoints = 100\n")
    with pytest.raises(orbitlab.ConfigError, match="unknown key"):
        orbitlab.parse_config("[manifold]\nradius = 1\n")


def test_unknown_suite():
    with pytest.raises(orbitlab.UnknownSuiteError):
        orbitlab.run_suite("nope")


def test_coadjoint_suite_passes():
    result = orbitlab.run_suite("coadjoint")
    assert result.passed
    check = result.check("coadjoint.alpha0_agreement")
    assert check.relation == "at_most" and check.value <= check.bound == 1e-9


def test_sweep_is_deterministic_and_converges():
    cfg = orbitlab.ExperimentConfig()
    cfg.k_max = 7
    a = orbitlab.sweep("trace", cfg)
    b = orbitlab.sweep("trace", cfg)
    assert a.csv == b.csv
    assert a.csv.splitlines()[0] == "h,value_real,value_imag,target_real,target_imag,abs_error"
    assert len(a.report.h_values) == 5
    assert max(a.report.errors) < 1e-9
