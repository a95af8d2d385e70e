"""Cause-effect inference for variable pairs from decision-tree complexity."""

from .bench import BenchConfig, BenchReport, run_benchmark
from .binning import BinSpec, EqualWidthBinner, apply_bins, fit_bins, midpoint
from .core import CriterionKind, DataKind, Direction, PairDataset, validate_dataset
from .criteria import (
    DEFAULT_SIGNS,
    CriterionScore,
    SignConfig,
    TreeComplexityDirection,
    decide,
    evaluate_all,
    fit_both,
)
from .scm import GenConfig, NoiseMode, NoiseSpec, generate_dataset
from .tree import UnboundedTreeClassifier, fit_tree

__all__ = [
    "BenchConfig",
    "BenchReport",
    "BinSpec",
    "CriterionKind",
    "CriterionScore",
    "DEFAULT_SIGNS",
    "DataKind",
    "Direction",
    "EqualWidthBinner",
    "GenConfig",
    "NoiseMode",
    "NoiseSpec",
    "PairDataset",
    "SignConfig",
    "TreeComplexityDirection",
    "UnboundedTreeClassifier",
    "apply_bins",
    "decide",
    "evaluate_all",
    "fit_bins",
    "fit_both",
    "fit_tree",
    "generate_dataset",
    "midpoint",
    "run_benchmark",
    "validate_dataset",
]

__version__ = "0.1.0"
