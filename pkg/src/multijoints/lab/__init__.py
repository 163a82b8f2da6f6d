"""Configuration generators, experiment drivers and report I/O."""
from .config import ExperimentConfig
from .experiments import (BoundReport, PartitionReport, bound_ratio_sq, build_families,
                          run_bound_experiment, run_partition_experiment, run_sampling_experiment)
from .generators import bush_config, degenerate_config, grid_config, random_config
from .reports import emit_report, render

__all__ = [
    "BoundReport", "ExperimentConfig", "PartitionReport", "bound_ratio_sq", "build_families",
    "bush_config", "degenerate_config", "emit_report", "grid_config", "random_config", "render",
    "run_bound_experiment", "run_partition_experiment", "run_sampling_experiment",
]
