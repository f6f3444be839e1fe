"""Sweep planning, deterministic CSV output, failure capture."""
import math

import numpy as np
import pytest

import filmcasimir.sweep as sweep
from filmcasimir.estructure import ef_ratio, film_state
from filmcasimir.lifshitz import delta_P
from filmcasimir.materials import derive_bulk
from filmcasimir.sweep import FIGURES, SweepPlan, figure_default_materials, figure_plan, run


def small_ratio_plan(presets, outdir, **overrides):
    kw = dict(x_grid=(0.6, 1.1, 2.4), output_dir=str(outdir))
    kw.update(overrides)
    return SweepPlan("EF_ratio", (presets["Cs"],), ("FWM", "IWM"), **kw)


def read_body(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_plan_validation_fires_before_compute(presets):
    mats = (presets["Cs"],)
    with pytest.raises(ValueError):
        SweepPlan("entropy", mats, ("FWM",), x_grid=(1.0,)).validate()
    with pytest.raises(ValueError):
        SweepPlan("EF_ratio", (), ("FWM",), x_grid=(1.0,)).validate()
    with pytest.raises(ValueError):
        SweepPlan("EF_ratio", mats, ("XWM",), x_grid=(1.0,)).validate()
    with pytest.raises(ValueError):
        SweepPlan("EF_ratio", mats, ("FWM",), x_grid=()).validate()
    with pytest.raises(ValueError):
        SweepPlan("delta_P", mats, ("FWM",), D_grid=(2.0, 1.0), ell_grid=(1.0,)).validate()
    with pytest.raises(ValueError):
        SweepPlan("delta_D", mats, ("FWM",), D_grid=(1.0,), ell_grid=(1.0,),
                  gammas=()).validate()
    with pytest.raises(ValueError):
        SweepPlan("delta_D", mats, ("FWM",), D_grid=(1.0,), ell_grid=(1.0,),
                  gammas=(-1e13,)).validate()
    with pytest.raises(ValueError):
        small_ratio_plan(presets, ".", force_tol=0.0).validate()
    with pytest.raises(ValueError):
        small_ratio_plan(presets, ".", workers=0).validate()


def test_rerun_is_byte_identical(presets, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    rep_a = run(small_ratio_plan(presets, a))
    rep_b = run(small_ratio_plan(presets, b))
    assert [p.name for p in rep_a.files] == [p.name for p in rep_b.files]
    for pa, pb in zip(rep_a.files, rep_b.files):
        assert pa.read_bytes() == pb.read_bytes()
    assert not rep_a.failures


def test_ratio_rows_match_library(presets, tmp_path):
    rep = run(small_ratio_plan(presets, tmp_path))
    bulk = derive_bulk(presets["Cs"])
    path = [p for p in rep.files if "FWM" in p.name][0]
    body = read_body(path)
    assert body[0] == "D_nm,kFD_over_pi,EF_over_EFB,m0"
    for ln, x in zip(body[1:], (0.6, 1.1, 2.4)):
        d_s, x_s, r_s, m_s = ln.split(",")
        d = x * math.pi / bulk.kF_bulk
        assert float(d_s) == d and float(x_s) == x
        st = film_state(presets["Cs"], "FWM", d)
        assert float(r_s) == ef_ratio(st, bulk)
        assert int(m_s) == st.m0


def test_force_reduction_rows_match_library(presets, tmp_path):
    plan = SweepPlan("delta_P", (presets["Cs"],), ("FWM",), output_dir=str(tmp_path),
                     D_grid=(1.0,), ell_grid=(1.0, 5.0), force_tol=1e-6)
    rep = run(plan)
    assert not rep.failures
    (path,) = rep.files
    body = read_body(path)
    assert body[0] == "D_nm,ell_nm,gamma_rad_s,F_reference_Pa,F_quantized_Pa,delta"
    for ln, ell in zip(body[1:], (1.0, 5.0)):
        d_s, ell_s, g_s, fr, fq, delta = (float(v) for v in ln.split(","))
        assert (d_s, ell_s, g_s) == (1.0, ell, 0.0)
        assert delta == (fr - fq) / fr
        assert delta == delta_P(presets["Cs"], "FWM", 1.0, ell, tol=1e-6)


def test_point_failures_recorded_and_sweep_continues(presets, tmp_path, monkeypatch):
    real = sweep.film_state

    def flaky(material, model, d_film):
        if d_film > 1.0:
            raise RuntimeError("injected")
        return real(material, model, d_film)

    monkeypatch.setattr(sweep, "film_state", flaky)
    rep = run(small_ratio_plan(presets, tmp_path))
    assert len(rep.failures) == 2  # two models x the one point past 1 nm
    assert all("injected" in f for f in rep.failures)
    for path in rep.files:
        assert len(read_body(path)) == 3  # header + the two surviving points
    text = rep.manifest.read_text()
    assert text.count("failure=") == 2
    assert "failures=2" in text


def test_manifest_round_trip(presets, tmp_path):
    plan = small_ratio_plan(presets, tmp_path, tag="demo")
    rep = run(plan)
    assert rep.manifest.name == "demo_manifest.txt"
    kv = dict(ln.split("=", 1) for ln in rep.manifest.read_text().splitlines())
    assert kv["quantity"] == "EF_ratio"
    assert kv["materials"] == "Cs"
    assert kv["models"] == "FWM,IWM"
    assert tuple(float(v) for v in kv["x_grid"].split(",")) == plan.x_grid
    assert kv["failures"] == "0"
    assert int(kv["files"]) == len(rep.files)
    assert all("demo_EF_ratio_Cs" in p.name for p in rep.files)


def test_worker_pool_matches_serial(presets, tmp_path):
    a, b = tmp_path / "serial", tmp_path / "pool"
    rep_a = run(small_ratio_plan(presets, a))
    rep_b = run(small_ratio_plan(presets, b, workers=2))
    for pa, pb in zip(rep_a.files, rep_b.files):
        assert read_body(pa) == read_body(pb)


def test_relaxation_grouping_and_preset_gammas(presets, tmp_path):
    plan = SweepPlan("delta_D", (presets["Cs"],), ("FWM",), output_dir=str(tmp_path),
                     D_grid=(1.0,), ell_grid=(1.0,), gammas=None, force_tol=1e-5)
    rep = run(plan)
    # gamma=0 plus the material's two preset rates
    assert len(rep.files) == 3
    names = sorted(p.name for p in rep.files)
    assert names[0] == "delta_D_Cs_FWM_gamma0.csv"
    assert any("gamma5e+13" in n for n in names)
    assert "gammas=presets" in rep.manifest.read_text()


def test_figure_plans_are_valid_and_scoped():
    for figure in FIGURES:
        plan = figure_plan(figure, n_points=4, output_dir="unused")
        assert plan.tag == figure
    assert figure_default_materials("fig8") == ("Ag",)
    assert figure_default_materials("fig9") == ("Ag",)
    assert figure_default_materials("fig4") == ("Al", "Ag", "Cs")
    assert figure_plan("fig2", n_points=4).quantity == "EF_ratio"
    assert figure_plan("fig3", n_points=4).models == ("FWM", "IWM", "PBM")
    assert figure_plan("fig6", n_points=4).gammas is None
    assert figure_plan("fig9", n_points=4).ell_grid == (5.0,)
    assert figure_plan("fig5", n_points=4, force_tol=1e-5).force_tol == 1e-5
    assert len(figure_plan("fig4", n_points=7).ell_grid) == 7
    with pytest.raises(ValueError):
        figure_plan("fig1")
