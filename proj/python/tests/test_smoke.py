import math

import pytest

import jratio


def test_constants():
    assert jratio.main_constant(0.6) == pytest.approx(1.5634737703113704333, abs=1e-15)
    assert jratio.ball_constant(0.6) == 1.6
    table = jratio.constants_table(0.3)
    assert table.c_case12 <= table.c_main <= table.c_ball < table.c_go


def test_sharp_pair():
    assert jratio.ratio_J(0.6, 0.5, -0.5) == pytest.approx(jratio.main_constant(0.6), abs=1e-12)
    a = complex(0.0, 0.3)
    z = a / (2 * abs(a))
    assert jratio.ratio_J(a, z, -z) == pytest.approx(jratio.main_constant(0.3), abs=1e-12)


def test_geometry_and_metric():
    h = jratio.DiskAutomorphism(0.6)
    assert h(0.5) == pytest.approx(11 / 13, abs=1e-15)
    domain = jratio.PuncturedDisk([0j])
    assert jratio.j_metric(domain, 0.5, -0.5) == pytest.approx(math.log(3.0), abs=1e-15)
    branch = jratio.t_branch(0.6, 0.5, -0.5)
    assert branch.tag == jratio.BranchTag.BoundaryAtZ


def test_small_estimate():
    cfg = jratio.SearchConfig()
    cfg.grid_n = 24
    cfg.seed = 3
    report = jratio.estimate_lipschitz(0.6, cfg)
    assert report.closed_form == pytest.approx(jratio.main_constant(0.6))
    assert report.sup_estimate <= report.closed_form + 1e-9
    assert abs(report.gap) <= 1e-3


def test_lemma_suites():
    results = jratio.run_lemma_suites(samples=1000, seed=2)
    assert len(results) == 7
    assert all(r.passed for r in results)


def test_errors_raise_value_error():
    with pytest.raises(ValueError):
        jratio.DiskAutomorphism(1.0)
    with pytest.raises(ValueError):
        jratio.ratio_J(0.6, 0.5, 0.5)
    with pytest.raises(ValueError):
        jratio.estimate_lipschitz(0.0)
    with pytest.raises(ValueError):
        jratio.j_metric(jratio.PuncturedDisk([0j]), 0j, 0.5)
