import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treecause.core import CriterionKind, DataKind, Direction, NonFinite, validate_dataset
from treecause.criteria import (
    DEFAULT_SIGNS,
    SignConfig,
    TreeComplexityDirection,
    decide,
    direction_measure,
    evaluate_all,
    fit_both,
    orient,
    score_criterion,
)
from treecause.scm import GenConfig, NoiseFamily, NoiseSpec, derive_seed, generate_dataset

TD, TN, TL, PL, RE, IH = CriterionKind
XY, YX, ABSTAIN = Direction.X_TO_Y, Direction.Y_TO_X, Direction.ABSTAIN


def test_decide():
    assert decide(1.2) is XY
    assert decide(-0.3) is YX
    assert decide(0.0) is ABSTAIN
    assert decide(-0.0) is ABSTAIN
    with pytest.raises(NonFinite):
        decide(float("nan"))


def test_orientation_with_table_means():
    # mean depths of the causal and anti-causal discrete trees
    s = orient(TD, 9.252, 37.417, DataKind.DISCRETE)
    assert s.j_raw == pytest.approx(-28.165)
    assert s.j_oriented == pytest.approx(28.165)
    assert s.decision is XY
    # mean misclassification of the causal and anti-causal discrete trees
    s = orient(IH, 0.865, 0.118, DataKind.DISCRETE)
    assert s.j_oriented == pytest.approx(0.747)
    assert s.decision is XY
    # normalized entropy decrease, causal below anti-causal
    assert orient(RE, 0.214, 0.819, DataKind.DISCRETE).decision is XY
    assert orient(RE, 0.024, 0.113, DataKind.CONTINUOUS).decision is XY
    # continuous width criteria are flipped
    assert orient(TN, 198.766, 188.454, DataKind.CONTINUOUS).decision is XY
    assert orient(TN, 39.0, 437.215, DataKind.DISCRETE).decision is XY
    for kind in CriterionKind:
        assert orient(kind, 3.0, 3.0, DataKind.CONTINUOUS).decision is ABSTAIN


def test_sign_config():
    assert len(DEFAULT_SIGNS.signs) == 12
    flipped = DEFAULT_SIGNS.with_sign(TD, "discrete", 1)
    assert flipped.sign(TD, DataKind.DISCRETE) == 1
    assert SignConfig.from_dict(DEFAULT_SIGNS.to_dict()) == DEFAULT_SIGNS
    with pytest.raises(ValueError):
        SignConfig({(TD, DataKind.DISCRETE): 1})
    with pytest.raises(ValueError):
        DEFAULT_SIGNS.with_sign(TD, "discrete", 0)


def test_constant_target_gives_single_leaf():
    ds = validate_dataset([1, 2, 3, 4], [7, 7, 7, 7], "discrete")
    fp = fit_both(ds)
    assert fp.tree_xy.n_nodes == 1
    assert [direction_measure(fp, k, XY) for k in (TD, TN, TL, PL)] == [0, 1, 1, 0]
    assert direction_measure(fp, RE, XY) == 0.0


def test_perfect_fit_has_full_entropy_decrease():
    ds = validate_dataset([0, 1, 2, 3], [0, 0, 1, 1], "discrete")
    fp = fit_both(ds)
    assert direction_measure(fp, IH, XY) == 0.0
    # residuals are all zero, so the entire target entropy is removed
    assert direction_measure(fp, RE, XY) == 1.0


def test_swapped_dataset_mirrors_fit():
    ld = generate_dataset(GenConfig(n_samples=300, seed=3))
    fp = fit_both(ld.data)
    fs = fit_both(ld.data.swapped())
    assert fs.tree_xy == fp.tree_yx and fs.tree_yx == fp.tree_xy


def test_continuous_polynomial_fits_split():
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, 1000)
    y = 2 * x**3 - x + 0.3 * rng.uniform(-1, 1, 1000)
    fp = fit_both(validate_dataset(x, y, "continuous"))
    assert fp.tree_xy.n_nodes >= 3 and fp.tree_yx.n_nodes >= 3
    assert fp.x.labels.max() == 99


def test_identical_columns_abstain():
    x = np.random.default_rng(1).integers(-10, 10, 200)
    for kind in ("discrete", "continuous"):
        scores = evaluate_all(validate_dataset(x, x, kind))
        assert [s.j_raw for s in scores] == [0.0] * 6
        assert all(s.decision is ABSTAIN for s in scores)


def test_seeded_dataset_mostly_right():
    ld = generate_dataset(GenConfig(seed=derive_seed(0, 0)))
    scores = evaluate_all(ld.data)
    assert sum(s.decision is ld.truth for s in scores) >= 4


def test_deterministic_scores():
    ld = generate_dataset(GenConfig(NoiseSpec(NoiseFamily.CONTINUOUS_GAUSSIAN),
                                    NoiseSpec(NoiseFamily.CONTINUOUS_GAUSSIAN), seed=9))
    assert evaluate_all(ld.data) == evaluate_all(ld.data)


pairs = st.integers(2, 60).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
        st.sampled_from(["discrete", "continuous"]),
    )
)


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_antisymmetry(data):
    x, y, kind = data
    ds = validate_dataset(x, y, kind)
    fwd = evaluate_all(ds, n_bins=5)
    bwd = evaluate_all(ds.swapped(), n_bins=5)
    for a, b in zip(fwd, bwd):
        assert a.j_oriented == -b.j_oriented
        assert a.decision is b.decision.flipped()
        assert (a.decision is ABSTAIN) == (a.j_oriented == 0)
        assert a.j_raw == a.measure_xy - a.measure_yx


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_entropy_decrease_at_most_one(data):
    x, y, kind = data
    fp = fit_both(validate_dataset(x, y, kind), n_bins=5)
    for d in (XY, YX):
        m = direction_measure(fp, RE, d)
        assert np.isfinite(m) and m <= 1.0
    # tiny samples can have more residual categories than target categories,
    # e.g. a binary target with residuals -1, 0 and 1


HEAVY_TAIL = pytest.mark.xfail(
    strict=True,
    reason="heavy-tailed targets pile into one equal-width bin, so H(target) is small "
    "while residuals binned on their own range spread out",
)


@pytest.mark.parametrize(
    "family",
    [
        NoiseFamily.DISCRETE_UNIFORM,
        NoiseFamily.CONTINUOUS_UNIFORM,
        pytest.param(NoiseFamily.CONTINUOUS_GAUSSIAN, marks=HEAVY_TAIL),
    ],
)
def test_entropy_decrease_range_on_generated_data(family):
    spec = NoiseSpec(family, 20 if family is NoiseFamily.DISCRETE_UNIFORM else None)
    for i in range(40):
        ld = generate_dataset(GenConfig(spec, spec, n_samples=1000, seed=derive_seed(6, i)))
        fp = fit_both(ld.data)
        for d in (XY, YX):
            # H(residual) / H(target) must stay within [0, 1.5]
            assert -0.5 <= direction_measure(fp, RE, d) <= 1.0


def test_estimator_api():
    ld = generate_dataset(GenConfig(seed=derive_seed(0, 1)))
    X = np.column_stack([ld.data.x, ld.data.y])
    est = TreeComplexityDirection(criterion="TD")
    assert est.get_params()["n_bins"] == 100
    est.fit(X)
    assert est.kind_ is DataKind.DISCRETE
    assert est.direction_ is est.scores_[TD].decision
    est2 = TreeComplexityDirection(criterion="TD").fit(ld.data.x, ld.data.y)
    assert est2.decision_function() == est.decision_function()
    cont = TreeComplexityDirection().fit(X + 0.5)
    assert cont.kind_ is DataKind.CONTINUOUS
    with pytest.raises(ValueError):
        est.fit(np.zeros((5, 3)))
