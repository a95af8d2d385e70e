"""Run the criteria over many generated datasets and aggregate the results."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .binning import DEFAULT_N_BINS
from .core import CriterionKind, Direction, EmptyInput, LengthMismatch
from .criteria import ALL_CRITERIA, DEFAULT_SIGNS, SignConfig, evaluate_all
from .scm import GenConfig, derive_seed, generate_dataset

log = logging.getLogger(__name__)


class BenchmarkError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    gen: GenConfig = field(default_factory=GenConfig)
    n_datasets: int = 1000
    n_bins: int = DEFAULT_N_BINS
    histogram_bins: int = 50
    signs: SignConfig = DEFAULT_SIGNS
    n_jobs: int = 1

    def validate(self) -> None:
        if self.n_datasets < 1:
            raise ValueError("n_datasets must be >= 1")
        if self.histogram_bins < 1:
            raise ValueError("histogram_bins must be >= 1")
        if self.n_bins < 1:
            raise ValueError("n_bins must be >= 1")
        self.gen.validate()

    def to_dict(self) -> dict:
        return {
            "gen": self.gen.to_dict(),
            "n_datasets": self.n_datasets,
            "n_bins": self.n_bins,
            "histogram_bins": self.histogram_bins,
            "signs": self.signs.to_dict(),
        }


@dataclass(frozen=True)
class CriterionRecord:
    j_oriented: float
    decision: Direction
    measure_xy: float
    measure_yx: float


@dataclass(frozen=True)
class DatasetRecord:
    index: int
    seed: int
    truth: Direction
    scores: dict  # CriterionKind -> CriterionRecord


@dataclass(frozen=True)
class FigureData:
    bin_edges: list
    counts_truth_xy: list
    counts_truth_yx: list


@dataclass(frozen=True)
class CriterionSummary:
    kind: CriterionKind
    n: int
    n_correct: int
    n_abstain: int
    accuracy: float
    accuracy_excluding_abstentions: float
    abstention_rate: float
    mean_measure_causal: float
    mean_measure_anticausal: float
    histogram: FigureData

    @property
    def n_wrong(self) -> int:
        return self.n - self.n_correct - self.n_abstain

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


@dataclass(frozen=True)
class BenchReport:
    config: dict
    summaries: tuple
    duration_seconds: float

    def summary(self, kind) -> CriterionSummary:
        kind = CriterionKind(kind)
        for s in self.summaries:
            if s.kind is kind:
                return s
        raise KeyError(kind)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "criteria": {s.kind.value: s.to_dict() for s in self.summaries},
            "duration_seconds": self.duration_seconds,
        }


def histogram_scores(scores, truths, n_hist_bins: int = 50) -> FigureData:
    """Equal-width histogram over the shared score range, split by true direction."""
    scores = np.asarray(scores, dtype=float).ravel()
    truths = [Direction(t) for t in truths]
    if len(scores) != len(truths):
        raise LengthMismatch(f"{len(scores)} scores but {len(truths)} truths")
    if len(scores) == 0:
        raise EmptyInput("nothing to histogram")
    if Direction.ABSTAIN in truths:
        raise ValueError("ground truth cannot be abstain")
    lo, hi = float(scores.min()), float(scores.max())
    if hi == lo:
        edges = lo + np.arange(n_hist_bins + 1, dtype=float)
        idx = np.zeros(len(scores), dtype=np.int64)
    else:
        edges = np.linspace(lo, hi, n_hist_bins + 1)
        width = (hi - lo) / n_hist_bins
        idx = np.clip(np.floor((scores - lo) / width), 0, n_hist_bins - 1).astype(np.int64)
    is_xy = np.array([t is Direction.X_TO_Y for t in truths])
    return FigureData(
        bin_edges=edges.tolist(),
        counts_truth_xy=np.bincount(idx[is_xy], minlength=n_hist_bins).tolist(),
        counts_truth_yx=np.bincount(idx[~is_xy], minlength=n_hist_bins).tolist(),
    )


def aggregate(records, histogram_bins: int = 50) -> list[CriterionSummary]:
    """Per-criterion accuracy, abstention and causal/anti-causal measure means.

    Abstentions count as errors in ``accuracy``. The causal model is the one
    fitted in the true direction.
    """
    records = sorted(records, key=lambda r: r.index)
    if not records:
        raise EmptyInput("no records to aggregate")
    kinds = [k for k in ALL_CRITERIA if k in records[0].scores]
    n = len(records)
    out = []
    for kind in kinds:
        correct = abstain = 0
        causal, anticausal, scores, truths = [], [], [], []
        for r in records:
            s = r.scores[kind]
            if s.decision is Direction.ABSTAIN:
                abstain += 1
            elif s.decision is r.truth:
                correct += 1
            if r.truth is Direction.X_TO_Y:
                causal.append(s.measure_xy)
                anticausal.append(s.measure_yx)
            else:
                causal.append(s.measure_yx)
                anticausal.append(s.measure_xy)
            scores.append(s.j_oriented)
            truths.append(r.truth)
        decided = n - abstain
        out.append(
            CriterionSummary(
                kind=kind,
                n=n,
                n_correct=correct,
                n_abstain=abstain,
                accuracy=correct / n,
                accuracy_excluding_abstentions=correct / decided if decided else 0.0,
                abstention_rate=abstain / n,
                mean_measure_causal=float(np.mean(causal)),
                mean_measure_anticausal=float(np.mean(anticausal)),
                histogram=histogram_scores(scores, truths, histogram_bins),
            )
        )
    return out


def evaluate_index(cfg: BenchConfig, index: int) -> DatasetRecord:
    seed = derive_seed(cfg.gen.seed, index)
    try:
        ld = generate_dataset(cfg.gen.with_seed(seed))
        scores = evaluate_all(ld.data, cfg.n_bins, cfg.signs)
    except Exception as exc:
        raise BenchmarkError(f"dataset {index} (seed {seed}) failed: {exc}") from exc
    return DatasetRecord(
        index=index,
        seed=seed,
        truth=ld.truth,
        scores={
            s.kind: CriterionRecord(s.j_oriented, s.decision, s.measure_xy, s.measure_yx)
            for s in scores
        },
    )


def _evaluate_chunk(cfg: BenchConfig, indices) -> list[DatasetRecord]:
    return [evaluate_index(cfg, i) for i in indices]


def run_records(cfg: BenchConfig) -> list[DatasetRecord]:
    cfg.validate()
    indices = range(cfg.n_datasets)
    if cfg.n_jobs <= 1:
        return _evaluate_chunk(cfg, indices)
    chunks = [list(indices[k :: cfg.n_jobs]) for k in range(cfg.n_jobs)]
    with ProcessPoolExecutor(max_workers=cfg.n_jobs) as pool:
        parts = pool.map(_evaluate_chunk, [cfg] * len(chunks), chunks)
        records = [r for part in parts for r in part]
    return sorted(records, key=lambda r: r.index)


def run_benchmark(cfg: BenchConfig = BenchConfig()) -> BenchReport:
    t0 = time.perf_counter()
    records = run_records(cfg)
    summaries = aggregate(records, cfg.histogram_bins)
    duration = time.perf_counter() - t0
    log.info("benchmark of %d datasets took %.1fs", cfg.n_datasets, duration)
    return BenchReport(cfg.to_dict(), tuple(summaries), duration)
