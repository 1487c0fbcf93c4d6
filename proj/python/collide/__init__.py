"""Packet collision link-level simulator for MSK / O-QPSK DSSS receivers."""

from ._collide import (
    HALF_BIT_NS,
    Coding,
    ExperimentConfig,
    PayloadMode,
    PowerSplit,
    Target,
    capture_zone,
    chip_table,
    hdd_decode,
    lambda_branch,
    lambda_oracle,
    lambda_sync,
    make_grid,
    n_interferer_experiment,
    preset_config,
    preset_names,
    run_point,
    sdd_decode,
    spread_symbols,
    sweep,
    thresholds,
)

__all__ = [
    "HALF_BIT_NS",
    "Coding",
    "ExperimentConfig",
    "PayloadMode",
    "PowerSplit",
    "Target",
    "capture_zone",
    "chip_table",
    "hdd_decode",
    "lambda_branch",
    "lambda_oracle",
    "lambda_sync",
    "make_grid",
    "n_interferer_experiment",
    "preset_config",
    "preset_names",
    "run_point",
    "sdd_decode",
    "spread_symbols",
    "sweep",
    "thresholds",
]
