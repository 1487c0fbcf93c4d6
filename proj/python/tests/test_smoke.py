import math
import random

import pytest

collide = pytest.importorskip("collide")


def test_sync_lambda():
    assert collide.lambda_sync(0.5, 1) == 0.5
    assert collide.lambda_sync(0.5, 0) == 0.0


def test_lambda_matches_oracle():
    rng = random.Random(3)
    for _ in range(20):
        bits = [rng.choice((-1, 1)) for _ in range(40)]
        a, tau, phi = rng.uniform(0.1, 10), rng.uniform(-4, 4), rng.uniform(0, 2 * math.pi)
        for branch in ("I", "Q"):
            exact = collide.lambda_branch(a, tau, phi, bits, 10, branch)
            numeric = collide.lambda_oracle(a, tau, phi, bits, 10, branch)
            assert exact == pytest.approx(numeric, rel=1e-9, abs=1e-9)


def test_carrier_phase_pi_negates():
    bits = [1] * 40
    assert collide.lambda_branch(1.0, 0.0, math.pi, bits, 5, "I") == pytest.approx(-1.0)


def test_chip_table_roundtrip():
    table = collide.chip_table()
    assert len(table) == 16 and all(len(r) == 32 for r in table)
    for s in range(16):
        chips = collide.spread_symbols([s])
        assert collide.hdd_decode(chips)["symbol"] == s
        assert collide.sdd_decode([0.3 * c for c in chips])["symbol"] == s
        assert collide.hdd_decode([-c for c in chips])["symbol"] == s


def test_sweep_deterministic():
    cfg = collide.ExperimentConfig()
    cfg.packets_per_point = 40
    cfg.coding = collide.Coding.HDD
    cfg.tau_grid = [0.0, 1.0]
    cfg.sir_db_grid = [-10.0, 10.0]
    a = collide.sweep(cfg, threads=1)
    b = collide.sweep(cfg, threads=2)
    assert a == b
    assert len(a) == 4
    assert all(0.0 <= p["prr_mean"] <= 1.0 for p in a)
    assert a[1]["prr_mean"] == 1.0


def test_bad_config_raises():
    cfg = collide.ExperimentConfig()
    cfg.packets_per_point = 0
    cfg.tau_grid = [0.0]
    cfg.sir_db_grid = [0.0]
    with pytest.raises(ValueError):
        cfg.validate()


def test_presets_and_zone():
    names = collide.preset_names()
    assert "fig5a" in names and "fig11c" in names
    cfg = collide.preset_config("fig11a")
    cfg.packets_per_point = 20
    cells = collide.capture_zone(cfg, -40.0, [0.0], [0.0, math.pi / 2], threads=1)
    assert len(cells) == 2
    assert cells[0][2] < 0.01


def test_n_interferer_rows():
    cfg = collide.preset_config("fig9")
    cfg.packets_per_point = 10
    rows = collide.n_interferer_experiment(cfg, max_n=2, threads=1)
    assert len(rows) == 8
