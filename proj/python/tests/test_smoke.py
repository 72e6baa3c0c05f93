import math

import pytest

import sspvb


def week_problem(**bounds):
    settings = sspvb.SyntheticSettings()
    settings.days = 7
    model = sspvb.SizingModel(sspvb.generate_synthetic(settings))
    b = sspvb.SizingBounds()
    b.n_pv_max = bounds.get("n_pv_max", 20)
    b.n_bes_max = bounds.get("n_bes_max", 10)
    return sspvb.SizingProblem(model, b)


def quick_settings(seed=1):
    s = sspvb.OptimizerSettings()
    s.mopso.swarm_size = 30
    s.mopso.iterations = 30
    s.mopso.seed = seed
    s.nsga2.population = 30
    s.nsga2.generations = 30
    s.nsga2.seed = seed
    return s


def test_synthetic_dataset_shape():
    ds = sspvb.generate_synthetic()
    assert ds.hours == 8760
    assert len(ds.irradiance) == len(ds.load) == 8760
    assert max(ds.irradiance) <= 1100.0


def test_simulation_three_hour_trace():
    battery = sspvb.BatterySpec()
    battery.capacity_per_unit = 10.0
    battery.charge_eff = 1.0
    battery.discharge_eff = 1.0
    battery.max_charge_rate = 100.0
    battery.max_discharge_rate = 100.0
    pv = sspvb.PVSpec()
    pv.rated_power_per_unit = 1.0
    pv.derating = 1.0
    pv.temp_coeff = 0.0
    ds = sspvb.AnnualDataset([0.0, 1000.0, 0.0], [25.0, 25.0, 25.0], [4.0, 2.0, 4.0])
    r = sspvb.simulate(sspvb.Design(8, 1, 0.6), ds, pv, battery)
    assert r.soc == pytest.approx([6.0, 10.0, 6.0])
    assert sum(r.deficit) == 0.0
    assert sspvb.compute_llp(r) == 0.0


def test_llp_matches_deficit_over_load():
    problem = week_problem()
    e = problem.evaluate_design(sspvb.Design(6, 3, 0.5))
    assert e.llp == pytest.approx(e.totals.total_deficit / e.totals.total_load, rel=1e-12)
    assert e.coe == e.cost.atc / e.energy


def test_economics():
    assert sspvb.crf(0.0, 10.0) == pytest.approx(0.1)
    assert sspvb.crf(0.06, 20.0) == pytest.approx(0.06 * 1.06**20 / (1.06**20 - 1.0))
    assert math.isinf(sspvb.compute_coe(5.0, 0.0))
    assert sspvb.battery_cycle_life(1.0) == pytest.approx(600.0)


def test_pareto_helpers():
    pts = [[1.0, 4.0], [2.0, 2.0], [3.0, 3.0], [4.0, 1.0]]
    assert sspvb.dominates([2.0, 2.0], [3.0, 3.0])
    assert sspvb.non_dominated_sort(pts) == [[0, 1, 3], [2]]
    assert sspvb.hypervolume_2d([[1.0, 1.0]], [2.0, 2.0]) == pytest.approx(1.0)


@pytest.mark.parametrize("algorithm", [sspvb.Algorithm.mopso, sspvb.Algorithm.nsga2])
def test_optimize_front_is_nondominated_and_reproducible(algorithm):
    problem = week_problem()
    a = sspvb.optimize(problem, algorithm, quick_settings())
    b = sspvb.optimize(problem, algorithm, quick_settings())
    assert [s.objectives for s in a] == [s.objectives for s in b]
    assert a
    for s in a:
        for t in a:
            assert not sspvb.dominates(s.objectives, t.objectives)
        n_pv, n_bes, dod = s.decision
        assert 0 <= n_pv <= 20 and 0 <= n_bes <= 10 and 0.2 <= dod <= 0.8
        e = problem.evaluate_design(sspvb.Design(int(n_pv), int(n_bes), dod))
        assert [e.coe, e.llp] == s.objectives


def test_sweep_rows_flag_feasibility():
    problem = week_problem()
    rows = sspvb.dod_sweep(problem, [0.3, 0.7], 0.05, sspvb.Algorithm.nsga2, quick_settings())
    assert [r.dod for r in rows] == [0.3, 0.7]
    for r in rows:
        assert r.feasible == (r.llp <= 0.05)


def test_invalid_input_raises():
    problem = week_problem()
    with pytest.raises(ValueError):
        problem.evaluate_design(sspvb.Design(-1, 0, 0.5))
    with pytest.raises(sspvb.InputError):
        sspvb.parse_algorithm("pso")
    cfg = sspvb.RunConfig()
    with pytest.raises(sspvb.InputError, match="unknown config key"):
        cfg.set("battery.capacity", "1")


def test_run_optimize_writes_outputs(tmp_path):
    cfg = sspvb.RunConfig()
    for key, value in {
        "synth.days": "3",
        "bounds.n_pv_max": "10",
        "bounds.n_bes_max": "5",
        "mopso.iterations": "5",
        "mopso.swarm_size": "10",
        "nsga2.generations": "5",
        "nsga2.population": "10",
        "run.out": str(tmp_path),
    }.items():
        cfg.set(key, value)
    sspvb.run_optimize(cfg)
    for name in ("front_mopso.csv", "front_nsga2.csv", "comparison.csv", "summary.txt"):
        assert (tmp_path / name).exists()
