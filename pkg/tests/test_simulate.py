import io
import math

import numpy as np
import pytest

import divorient.simulate as sim
from divorient.rng import mix_words


def small_config(**overrides):
    base = dict(
        n_values=(4, 8),
        rho_values=(0.2, 0.5),
        samples_per_cell=12,
        master_seed=99,
        statistic="lscc_size",
    )
    base.update(overrides)
    return sim.ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        small_config(n_values=())
    with pytest.raises(ValueError):
        small_config(n_values=(8, 4))
    with pytest.raises(ValueError):
        small_config(rho_values=(1.5,))
    with pytest.raises(ValueError):
        small_config(samples_per_cell=0)
    with pytest.raises(ValueError):
        small_config(statistic="girth")


def test_rho_zero_degenerate():
    records = sim.run_grid(sim.ExperimentConfig((5, 20), (0.0,), 8, 1, "lscc_size"))
    for r in records:
        assert r.mean == 1.0
        assert r.variance == 0.0


def test_single_vertex_diameter_zero():
    (rec,) = sim.run_grid(sim.ExperimentConfig((1,), (0.3,), 5, 1, "diameter"))
    assert rec.mean == 0.0 and rec.variance == 0.0


def test_single_sample_variance_flag():
    (rec,) = sim.run_grid(sim.ExperimentConfig((6,), (0.5,), 1, 1, "lscc_size"))
    assert rec.samples == 1
    assert rec.variance == 0.0
    assert rec.variance_is_degenerate


def test_seed_derivation_is_documented_mix():
    seeds = sim.cell_stream_seeds(42, 3, 1, 4)
    assert seeds.tolist() == [mix_words(42, 3, 1, j) for j in range(4)]


def test_grid_determinism_and_worker_independence():
    config = small_config(samples_per_cell=30)
    reference = sim.run_grid(config, workers=1)
    for workers in (2, 5):
        assert sim.run_grid(config, workers=workers) == reference
    buf1, buf2 = io.StringIO(), io.StringIO()
    sim.write_csv(reference, buf1, config.statistic, config.master_seed)
    sim.write_csv(sim.run_grid(config, workers=3), buf2, config.statistic, config.master_seed)
    assert buf1.getvalue() == buf2.getvalue()


def test_record_order_and_bounds():
    config = small_config()
    records = sim.run_grid(config)
    assert [(r.n, r.rho) for r in records] == [
        (n, rho) for n in config.n_values for rho in config.rho_values
    ]
    for r in records:
        assert 1.0 <= r.mean <= r.n
        assert r.variance >= 0.0


def test_variance_unbiased_hand_check(monkeypatch):
    values = np.array([1, 3, 3, 5], dtype=np.int64)
    monkeypatch.setattr(sim, "_cell_values", lambda *a, **k: values)
    (rec,) = sim.run_grid(sim.ExperimentConfig((5,), (0.5,), 4, 1, "lscc_size"), workers=1)
    assert rec.mean == 3.0
    assert rec.variance == pytest.approx(8.0 / 3.0)  # sum sq dev = 8, n-1 = 3


def test_failed_cell_identifies_itself(monkeypatch):
    def boom(*args, **kwargs):
        raise ValueError("kernel exploded")

    monkeypatch.setattr(sim, "_cell_values", boom)
    with pytest.raises(RuntimeError, match=r"grid cell \(n=4, rho=0.2\)"):
        sim.run_grid(small_config(), workers=1)


def test_linfit_exact_affine():
    records = [
        sim.SimRecord(n, 0.5, 10, 2.0 * math.log(n) + 3.0, 0.0, "diameter")
        for n in (100, 200, 400, 1600)
    ]
    fit = sim.linfit_log(records)
    assert fit.alpha == pytest.approx(2.0, abs=1e-12)
    assert fit.beta == pytest.approx(3.0, abs=1e-12)
    assert fit.mse == pytest.approx(0.0, abs=1e-24)


def test_linfit_two_points_interpolates():
    records = [
        sim.SimRecord(10, 0.5, 5, 4.0, 0.0, "diameter"),
        sim.SimRecord(1000, 0.5, 5, 9.0, 0.0, "diameter"),
    ]
    assert sim.linfit_log(records).mse == pytest.approx(0.0, abs=1e-20)


def test_linfit_matches_normal_equations():
    rng = np.random.default_rng(2024)
    ns = np.unique(rng.integers(10, 10**6, size=20))
    x = np.log(ns.astype(float))
    y = 0.48 * x + 4.5 + rng.normal(0, 0.2, size=len(ns))
    records = [
        sim.SimRecord(int(n), 0.5, 10, float(v), 0.0, "diameter") for n, v in zip(ns, y)
    ]
    fit = sim.linfit_log(records)
    # independent solve of the 2x2 normal equations
    a = np.array([[len(x), x.sum()], [x.sum(), (x * x).sum()]])
    b = np.array([y.sum(), (x * y).sum()])
    beta0, alpha0 = np.linalg.solve(a, b)
    assert fit.alpha == pytest.approx(alpha0, abs=1e-10)
    assert fit.beta == pytest.approx(beta0, abs=1e-10)
    mse0 = float(((y - (alpha0 * x + beta0)) ** 2).mean())
    assert fit.mse == pytest.approx(mse0, abs=1e-10)


def test_linfit_rejects_degenerate():
    one_n = [sim.SimRecord(10, 0.5, 5, 1.0, 0.0, "diameter")] * 3
    with pytest.raises(ValueError):
        sim.linfit_log(one_n)
    mixed = [
        sim.SimRecord(10, 0.5, 5, 1.0, 0.0, "diameter"),
        sim.SimRecord(20, 0.4, 5, 2.0, 0.0, "diameter"),
    ]
    with pytest.raises(ValueError):
        sim.linfit_log(mixed)


def test_frontier_ratio():
    records = [sim.SimRecord(5, 0.5, 100, 1.5, 0.7, "lscc_size")]
    assert sim.frontier_ratio(records) == [(5, 0.3)]
    records = sim.run_grid(small_config())
    for n, ratio in sim.frontier_ratio(records):
        assert 0.0 < ratio <= 1.0
    with pytest.raises(ValueError):
        sim.frontier_ratio([sim.SimRecord(5, 0.5, 10, 1.0, 0.0, "diameter")])


def test_csv_round_trip():
    config = small_config()
    records = sim.run_grid(config)
    buf = io.StringIO()
    sim.write_csv(records, buf, config.statistic, config.master_seed)
    text = buf.getvalue()
    assert text.startswith(
        "# divorient v1, statistic=lscc_size, master_seed=99, diameter_convention=largest_scc\n"
    )
    meta, parsed = sim.read_csv(io.StringIO(text))
    assert meta["master_seed"] == "99"
    assert meta["diameter_convention"] == "largest_scc"
    assert parsed == records


def test_read_csv_rejects_garbage():
    with pytest.raises(ValueError):
        sim.read_csv(io.StringIO("nonsense,file\n1,2\n"))
    with pytest.raises(ValueError):
        sim.read_csv(io.StringIO(""))


def test_rho_reflection_symmetry():
    # full edge reversal pairs the distributions at rho and 1 - rho
    n_samples = 4000
    left = sim.run_grid(sim.ExperimentConfig((12,), (0.3,), n_samples, 5, "lscc_size"))[0]
    right = sim.run_grid(sim.ExperimentConfig((12,), (0.7,), n_samples, 6, "lscc_size"))[0]
    se = math.sqrt(left.variance / n_samples + right.variance / n_samples)
    assert abs(left.mean - right.mean) < 5 * se


def test_run_grid_diameter_statistic_small():
    records = sim.run_grid(sim.ExperimentConfig((5, 64), (0.5,), 25, 11, "diameter"))
    for r in records:
        assert 0.0 <= r.mean <= r.n - 1
        assert r.statistic == "diameter"


def test_monte_carlo_tracks_exact_values():
    from divorient.exact import evaluate, exact_expectation_polynomial

    config = sim.ExperimentConfig((4, 7, 9), (0.1, 0.3, 0.5), 20000, 17, "lscc_size")
    records = sim.run_grid(config)
    polys = {n: exact_expectation_polynomial(n) for n in config.n_values}
    for r in records:
        exact_mean = evaluate(polys[r.n], r.rho)
        assert abs(r.mean - exact_mean) < 4 * sim.standard_error(r) + 1e-9


def test_grid_constants_mirror_experiment_scales():
    assert len(sim.SCC_GRID_FULL) == 1024 and sim.SCC_GRID_FULL[-1] == 262144
    assert len(sim.DIAMETER_GRID_FULL) == 323 and sim.DIAMETER_GRID_FULL[-1] == 330752
    assert sim.SCC_GRID_DESK[-1] == 16384
    assert sim.DIAMETER_GRID_DESK[-1] == 16384
    assert sim.RHO_GRID_DEFAULT == (0.1, 0.2, 0.3, 0.4, 0.5)
