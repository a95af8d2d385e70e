import dataclasses

import numpy as np
import pytest

import treecause.bench as bench
from treecause.bench import (
    BenchConfig,
    BenchmarkError,
    CriterionRecord,
    DatasetRecord,
    aggregate,
    histogram_scores,
    run_benchmark,
    run_records,
)
from treecause.core import CriterionKind, Direction, EmptyInput, LengthMismatch
from treecause.criteria import evaluate_all
from treecause.scm import GenConfig, NoiseFamily, NoiseSpec, generate_dataset

XY, YX, ABSTAIN = Direction.X_TO_Y, Direction.Y_TO_X, Direction.ABSTAIN
CONT = NoiseSpec(NoiseFamily.CONTINUOUS_UNIFORM)


def _record(i, truth, decision, j=1.0, m_xy=1.0, m_yx=2.0):
    rec = CriterionRecord(j, decision, m_xy, m_yx)
    return DatasetRecord(i, i, truth, {k: rec for k in CriterionKind})


def test_histogram_two_points():
    fig = histogram_scores([-1.0, 1.0], [YX, XY], 2)
    assert fig.bin_edges == [-1.0, 0.0, 1.0]
    assert fig.counts_truth_yx == [1, 0]
    assert fig.counts_truth_xy == [0, 1]


def test_histogram_degenerate_range():
    fig = histogram_scores([0.0, 0.0, 0.0], [XY, YX, XY], 50)
    assert len(fig.bin_edges) == 51
    assert fig.counts_truth_xy[0] == 2 and fig.counts_truth_yx[0] == 1
    assert sum(fig.counts_truth_xy) + sum(fig.counts_truth_yx) == 3


def test_histogram_errors():
    with pytest.raises(LengthMismatch):
        histogram_scores([1.0], [XY, YX])
    with pytest.raises(EmptyInput):
        histogram_scores([], [])
    with pytest.raises(ValueError):
        histogram_scores([1.0], [ABSTAIN])


def test_aggregate_counts_abstention_as_wrong():
    recs = [_record(0, XY, XY), _record(1, YX, YX), _record(2, XY, XY), _record(3, YX, ABSTAIN, j=0.0)]
    s = aggregate(recs)[0]
    assert s.accuracy == 0.75
    assert s.accuracy_excluding_abstentions == 1.0
    assert s.abstention_rate == 0.25
    assert s.n_correct + s.n_wrong + s.n_abstain == 4
    # causal model is the true-direction one: m_xy for XY truths, m_yx for YX
    assert s.mean_measure_causal == pytest.approx((1 + 2 + 1 + 2) / 4)


def test_aggregate_all_abstain():
    s = aggregate([_record(i, XY, ABSTAIN, j=0.0) for i in range(3)])[0]
    assert (s.accuracy, s.accuracy_excluding_abstentions, s.abstention_rate) == (0, 0, 1)
    with pytest.raises(EmptyInput):
        aggregate([])


def test_table_accuracy_pair_implies_abstention():
    # accuracy = correct / n and excluding = correct / (n - abstain)
    implied = 1 - 0.986 / 0.998
    assert implied == pytest.approx(0.012, abs=5e-4)


def test_single_dataset_report():
    rep = run_benchmark(BenchConfig(n_datasets=1, gen=GenConfig(n_samples=100)))
    assert len(rep.summaries) == 6
    for s in rep.summaries:
        assert s.accuracy in (0.0, 1.0)
        assert s.n_correct + s.n_wrong + s.n_abstain == 1


def test_bad_config():
    with pytest.raises(ValueError):
        run_benchmark(BenchConfig(n_datasets=0))
    with pytest.raises(ValueError):
        run_benchmark(BenchConfig(histogram_bins=0))


def test_failure_reports_index_and_seed(monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("kaput")

    monkeypatch.setattr(bench, "evaluate_all", boom)
    with pytest.raises(BenchmarkError, match=r"dataset 0 \(seed \d+\)"):
        run_benchmark(BenchConfig(n_datasets=2, gen=GenConfig(n_samples=20)))


def _strip(rep):
    return dataclasses.replace(rep, duration_seconds=0.0)


def test_seed_determinism_and_worker_independence():
    cfg = BenchConfig(n_datasets=12, gen=GenConfig(CONT, CONT, n_samples=150, seed=5))
    a = run_benchmark(cfg)
    b = run_benchmark(cfg)
    c = run_benchmark(dataclasses.replace(cfg, n_jobs=2))
    assert _strip(a) == _strip(b) == _strip(c)
    assert a.to_dict()["criteria"] == c.to_dict()["criteria"]


def test_label_symmetry():
    cfg = BenchConfig(n_datasets=30, gen=GenConfig(n_samples=200, seed=8))
    recs = run_records(cfg)
    flipped = []
    for r in recs:
        ld = generate_dataset(cfg.gen.with_seed(r.seed))
        scores = evaluate_all(ld.data.swapped())
        flipped.append(
            DatasetRecord(r.index, r.seed, r.truth.flipped(),
                          {s.kind: CriterionRecord(s.j_oriented, s.decision, s.measure_xy, s.measure_yx)
                           for s in scores})
        )
    for a, b in zip(aggregate(recs), aggregate(flipped)):
        assert a.accuracy == b.accuracy
        assert a.abstention_rate == b.abstention_rate
        assert a.mean_measure_causal == b.mean_measure_causal


def test_discrete_causal_trees_are_smaller():
    rep = run_benchmark(BenchConfig(n_datasets=60, gen=GenConfig(n_samples=500, seed=2)))
    for k in ("TD", "TN", "TL", "PL"):
        s = rep.summary(k)
        assert s.mean_measure_causal < s.mean_measure_anticausal


def test_continuous_ih_histogram_sides():
    rep = run_benchmark(BenchConfig(n_datasets=80, gen=GenConfig(CONT, CONT, n_samples=400, seed=4)))
    fig = rep.summary("IH").histogram
    edges = np.array(fig.bin_edges)
    centers = (edges[:-1] + edges[1:]) / 2
    xy, yx = np.array(fig.counts_truth_xy), np.array(fig.counts_truth_yx)
    assert xy[centers > 0].sum() > 0.8 * xy.sum()
    assert yx[centers < 0].sum() > 0.8 * yx.sum()
    assert xy.sum() + yx.sum() == 80
