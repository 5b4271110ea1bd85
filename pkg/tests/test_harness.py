import json
import math

import pytest

from sarc import harness
from sarc.cli import main
from sarc.harness import ExperimentSpec, SpecError, fit_loglog, fit_slope, read_summary_csv, run_montecarlo, run_single

from conftest import ROOT

CONFIGS = ROOT / "configs"


def exact_spec(**kw):
    base = dict(problem="quadratic", n=2, oracle="exact", config={"x0": [1.0, 0.0], "eps_f_prime": 1e-14}, epsilon_grid=[1e-2, 1e-4], seed_count=2)
    base.update(kw)
    return ExperimentSpec.from_dict(base)


def test_run_single_exact_seed7(tmp_path):
    out = run_single(exact_spec(), 7, tmp_path)
    assert out.violations == [] and out.exit_status == 0
    assert json.loads((tmp_path / "violations_seed7.json").read_text()) == []
    consts = json.loads((tmp_path / "constants_seed7.json").read_text())
    assert [c["theory"] for c in consts] == ["within-theory", "within-theory"]
    assert (tmp_path / "trace_e1_seed7.csv").exists()


def test_delta_above_half_rejected():
    with pytest.raises(ValueError, match=r"delta1 < 1/2"):
        exact_spec(config={"delta1": 0.6})


@pytest.mark.parametrize(
    "bad",
    [{"oracle": "magic"}, {"epsilon_grid": [1e-4, 1e-2]}, {"epsilon_grid": []}, {"seed_count": 0},
     {"noise": {"b": 1.0}}, {"oracle": "laplace_gaussian"}, {"C": 0.0}],
)
def test_spec_validation(bad):
    with pytest.raises(SpecError):
        exact_spec(**bad)


def test_spec_rejects_unknown_keys_and_families():
    with pytest.raises(SpecError):
        ExperimentSpec.from_dict({"problem": "quadratic", "n": 2, "colour": "red"})
    with pytest.raises(SpecError):
        ExperimentSpec.from_dict({"problem": "banana", "n": 2}).build()
    with pytest.raises(SpecError):
        ExperimentSpec.from_dict({"problem": "quadratic", "n": 2, "oracle": "subsampled"}).build()


def test_spec_round_trip():
    spec = ExperimentSpec.load(CONFIGS / "noisy_quadratic.json")
    assert ExperimentSpec.from_dict(spec.to_dict()) == spec


def test_run_single_byte_identical(tmp_path):
    spec = ExperimentSpec.load(CONFIGS / "noisy_quadratic.json")
    a, b = tmp_path / "a", tmp_path / "b"
    pa, pb = run_single(spec, 3, a).paths, run_single(spec, 3, b).paths
    for x, y in zip(pa, pb):
        assert x.read_bytes() == y.read_bytes()


def test_montecarlo_exact_two_seeds(tmp_path):
    res = run_montecarlo(exact_spec(), tmp_path, workers=1)
    rows = read_summary_csv(tmp_path / "summary.csv")
    for eps in (1e-2, 1e-4):
        Ts = [r["T_eps"] for r in rows if r["epsilon"] == eps]
        assert len(Ts) == 2 and Ts[0] == Ts[1]
    assert res.exit_status == 0 and res.bound_violations == 0
    assert (tmp_path / "cdf_vs_bound.svg").read_text().startswith("<svg")


def test_montecarlo_needs_two_seeds(tmp_path):
    with pytest.raises(SpecError):
        run_montecarlo(exact_spec(seed_count=1), tmp_path)


def test_below_floor_epsilon_is_labelled(tmp_path):
    spec = ExperimentSpec.from_dict(dict(
        json.loads((CONFIGS / "noisy_quadratic.json").read_text()),
        epsilon_grid=[0.05, 1e-3], seed_count=2,
    ))
    res = run_montecarlo(spec, tmp_path, workers=1)
    labels = {(r["epsilon"], r["theory"]) for r in res.summary_rows}
    assert labels == {(0.05, "within-theory"), (1e-3, "outside-theory")}
    assert {r["theory"] for r in res.comparison_rows if r["epsilon"] == 1e-3} == {"outside-theory"}


def test_workers_do_not_change_results(tmp_path):
    spec = ExperimentSpec.load(CONFIGS / "noisy_quadratic.json")
    spec = ExperimentSpec.from_dict(dict(spec.to_dict(), seed_count=4))
    run_montecarlo(spec, tmp_path / "one", workers=1)
    run_montecarlo(spec, tmp_path / "two", workers=2)
    for name in ("summary.csv", "cdf.csv", "tail_comparison.csv", "stats.json"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_fit_loglog_power_law():
    eps = [1e-1, 1e-2, 1e-3]
    fit = fit_loglog(eps, [e**-1.5 for e in eps])
    assert fit.slope == pytest.approx(-1.5, abs=1e-12) and fit.residual < 1e-12
    assert fit_loglog(eps, [7, 7, 7]).slope == 0.0


def test_fit_slope_needs_three_points():
    rows = [{"epsilon": e, "T_eps": t} for e, t in ((0.1, 10), (0.01, 300))]
    with pytest.raises(ValueError, match="degenerate"):
        fit_slope(rows)
    rows.append({"epsilon": 0.001, "T_eps": None})
    with pytest.raises(ValueError):
        fit_slope(rows)


def test_fit_slope_uses_medians():
    rows = [{"epsilon": e, "T_eps": t} for e, ts in ((0.1, (4, 5, 6)), (0.01, (50, 40, 45)), (0.001, (400, 500, 450)))
            for t in ts]
    fit = fit_slope(rows)
    assert fit.slope == pytest.approx(fit_loglog([0.1, 0.01, 0.001], [5, 45, 450]).slope)


def test_default_tail_parameters_sit_inside_window():
    spec = ExperimentSpec.load(CONFIGS / "noisy_quadratic.json")
    problem, oracles = spec.build()
    c = harness.constants_for(spec, problem, oracles, 0.02)
    s, p_hat = harness.default_tail_parameters(c)
    assert s == c.K
    assert 0.5 + (4 * c.eps_f_prime + s) / (c.c1 * c.epsilon**1.5) < p_hat < c.p
    assert math.isfinite(harness.analysis.tail_floor(s, p_hat, c, c.epsilon, c.eps_f_prime))


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["run", "--spec", str(CONFIGS / "exact_quadratic.json"), "--seed", "7", "--out", str(tmp_path)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"problem": "quadratic", "n": 2, "config": {"delta1": 0.6}}))
    assert main(["run", "--spec", str(bad), "--seed", "0", "--out", str(tmp_path)]) == 1
    assert main(["run", "--spec", str(tmp_path / "missing.json"), "--seed", "0", "--out", str(tmp_path)]) == 1
    assert main(["frobnicate"]) == 1
    capsys.readouterr()
    assert main(["constants", "--spec", str(CONFIGS / "noisy_quadratic.json")]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert [c["theory"] for c in printed] == ["within-theory", "within-theory"]
    assert all(c["C"] == 1.0 for c in printed)


def test_cli_montecarlo_and_slope(tmp_path, capsys):
    out = tmp_path / "mc"
    assert main(["montecarlo", "--spec", str(CONFIGS / "exact_quadratic.json"), "--out", str(out), "--workers", "1"]) == 0
    capsys.readouterr()
    # two grid points cannot support a slope fit
    assert main(["slope", "--summary", str(out / "summary.csv")]) == 1


def test_cli_reports_violations_with_status_two(tmp_path, monkeypatch):
    monkeypatch.setattr(harness.driver, "assert_lemmas", lambda *a: [(0, "a")])
    assert main(["run", "--spec", str(CONFIGS / "exact_quadratic.json"), "--seed", "0", "--out", str(tmp_path)]) == 2
