import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import maskmetrics as mm
from maskmetrics import ZeroDivisionPolicy as Policy
from oracle import OVERLAP_ORACLES, o_ari, pixel_confusion

# shared fixture: tp=2, fp=1, tn=4, fn=1 (n=8); expected values were
# recomputed with exact rationals in tests/oracle.py before being frozen
CM1 = mm.ConfusionCounts(tp=2, fp=1, tn=4, fn=1)

CM1_EXPECTED = {
    "dice": 2 / 3,
    "iou": 0.5,
    "sensitivity": 2 / 3,
    "specificity": 0.8,
    "precision": 2 / 3,
    "accuracy": 0.75,
    "balanced_accuracy": 11 / 15,
    "auc": 11 / 15,
    "kappa": 7 / 15,
    "volumetric_similarity": 1.0,
}

METRIC_FNS = {
    "dice": mm.dice,
    "iou": mm.iou,
    "sensitivity": mm.sensitivity,
    "specificity": mm.specificity,
    "precision": mm.precision,
    "accuracy": mm.accuracy,
    "balanced_accuracy": mm.balanced_accuracy,
    "auc": mm.auc_binary,
    "kappa": mm.kappa,
    "volumetric_similarity": mm.volumetric_similarity,
}

counts_strategy = st.tuples(
    st.integers(0, 40), st.integers(0, 40), st.integers(0, 40), st.integers(0, 40)
).filter(lambda c: sum(c) > 0)


def _cm(c):
    return mm.ConfusionCounts(tp=c[0], fp=c[1], tn=c[2], fn=c[3])


@pytest.mark.parametrize("name", sorted(CM1_EXPECTED))
def test_cm1_fixture(name):
    score = METRIC_FNS[name](CM1)
    assert score.defined
    assert math.isclose(score.value, CM1_EXPECTED[name], rel_tol=0, abs_tol=1e-12)


def test_cm1_ari():
    table = mm.ContingencyTable(
        counts=np.array([[4, 1], [1, 2]], dtype=np.int64), classes=(0, 1)
    )
    score = mm.adjusted_rand_index(table)
    assert math.isclose(score.value, 9 / 65, abs_tol=1e-12)  # 0.138461...


class TestIdentityCases:
    def test_identical_nonempty(self):
        cm = mm.ConfusionCounts(tp=3, fp=0, tn=5, fn=0)
        for name in ("dice", "iou", "sensitivity", "specificity", "precision",
                     "accuracy", "balanced_accuracy", "auc", "kappa",
                     "volumetric_similarity"):
            assert METRIC_FNS[name](cm).value == 1.0, name

    def test_disjoint(self):
        cm = mm.ConfusionCounts(tp=0, fp=2, tn=4, fn=2)
        assert mm.iou(cm).value == 0.0
        assert mm.dice(cm).value == 0.0

    def test_sensitivity_extremes(self):
        assert mm.sensitivity(mm.ConfusionCounts(3, 1, 1, 0)).value == 1.0
        assert mm.sensitivity(mm.ConfusionCounts(0, 1, 1, 3)).value == 0.0

    def test_specificity_extremes(self):
        assert mm.specificity(mm.ConfusionCounts(1, 0, 3, 1)).value == 1.0
        assert mm.specificity(mm.ConfusionCounts(1, 3, 0, 1)).value == 0.0

    def test_precision_extremes(self):
        assert mm.precision(mm.ConfusionCounts(3, 0, 1, 1)).value == 1.0
        assert mm.precision(mm.ConfusionCounts(0, 3, 1, 1)).value == 0.0

    def test_accuracy_complement(self):
        cm = mm.ConfusionCounts(tp=0, fp=2, tn=0, fn=2)
        assert mm.accuracy(cm).value == 0.0

    def test_balanced_accuracy_complement(self):
        cm = mm.ConfusionCounts(tp=0, fp=3, tn=0, fn=2)
        assert mm.balanced_accuracy(cm).value == 0.0

    def test_vs_hand_case(self):
        assert mm.volumetric_similarity(mm.ConfusionCounts(0, 3, 4, 1)).value == 0.5

    def test_kappa_identity(self):
        cm = mm.ConfusionCounts(tp=3, fp=0, tn=5, fn=0)
        assert mm.kappa(cm).value == 1.0

    def test_ari_diagonal(self):
        table = mm.ContingencyTable(
            counts=np.array([[3, 0], [0, 5]], dtype=np.int64), classes=(0, 1)
        )
        assert mm.adjusted_rand_index(table).value == 1.0


class TestZeroDivisionPolicy:
    EMPTY = mm.ConfusionCounts(tp=0, fp=0, tn=8, fn=0)  # class absent both sides
    ONE_SIDED = mm.ConfusionCounts(tp=0, fp=3, tn=5, fn=0)  # pred-only class

    def test_default_empty_agreement(self):
        for fn in (mm.dice, mm.iou, mm.volumetric_similarity):
            score = fn(self.EMPTY)
            assert score.value == 1.0 and not score.defined and score.reason

    def test_default_one_sided(self):
        # truth lacks the class, prediction has it: sensitivity denominator
        # vanishes and the substitute is punishing
        score = mm.sensitivity(self.ONE_SIDED)
        assert score.value == 0.0 and not score.defined

    def test_one_sided_precision(self):
        cm = mm.ConfusionCounts(tp=0, fp=0, tn=5, fn=3)  # truth-only class
        score = mm.precision(cm)
        assert score.value == 0.0 and not score.defined

    def test_score_zero_and_one(self):
        for fn in (mm.dice, mm.iou, mm.sensitivity, mm.volumetric_similarity):
            assert fn(self.EMPTY, Policy.SCORE_ZERO).value == 0.0
            assert fn(self.EMPTY, Policy.SCORE_ONE).value == 1.0

    def test_error_policy_raises(self):
        with pytest.raises(mm.MetricUndefined) as err:
            mm.dice(self.EMPTY, Policy.ERROR)
        assert "dice" in str(err.value)

    def test_error_policy_names_denominator(self):
        with pytest.raises(mm.MetricUndefined) as err:
            mm.sensitivity(self.ONE_SIDED, Policy.ERROR)
        assert "TP+FN" in str(err.value)

    def test_kappa_degenerate_all_positive(self):
        n = 6
        cm = mm.ConfusionCounts(tp=n, fp=0, tn=0, fn=0)
        score = mm.kappa(cm)
        assert score.value == 1.0 and not score.defined
        assert mm.kappa(cm, Policy.SCORE_ZERO).value == 0.0
        with pytest.raises(mm.MetricUndefined):
            mm.kappa(cm, Policy.ERROR)

    def test_ari_single_class_table(self):
        table = mm.ContingencyTable(
            counts=np.array([[7]], dtype=np.int64), classes=(0,)
        )
        score = mm.adjusted_rand_index(table)
        assert score.value == 1.0 and not score.defined
        with pytest.raises(mm.MetricUndefined):
            mm.adjusted_rand_index(table, Policy.ERROR)

    def test_defined_results_ignore_policy(self):
        for policy in Policy:
            assert mm.dice(CM1, policy).value == pytest.approx(2 / 3)
            assert mm.dice(CM1, policy).defined


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_matches_fraction_oracle(c):
    tp, fp, tn, fn = c
    cm = _cm(c)
    for name, oracle in OVERLAP_ORACLES.items():
        expected = oracle(tp, fp, tn, fn)
        if expected is None:
            continue
        got = METRIC_FNS[name](cm, Policy.ERROR)
        assert got.defined
        assert math.isclose(got.value, float(expected), rel_tol=0, abs_tol=1e-12), name


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_dice_jaccard_identity(c):
    cm = _cm(c)
    d = mm.dice(cm)
    j = mm.iou(cm)
    if d.defined and j.defined:
        assert abs(d.value - 2 * j.value / (1 + j.value)) < 1e-12


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_auc_equals_balanced_accuracy(c):
    tp, fp, tn, fn = c
    cm = _cm(c)
    if tp + fn > 0 and tn + fp > 0:
        assert abs(mm.auc_binary(cm).value - mm.balanced_accuracy(cm).value) < 1e-12


@given(counts_strategy, st.sampled_from(list(Policy)))
@settings(max_examples=200, deadline=None)
def test_auc_identity_holds_even_when_substituted(c, policy):
    # the policy-mediated rate terms keep the algebraic identity intact
    if policy is Policy.ERROR:
        return
    cm = _cm(c)
    assert abs(mm.auc_binary(cm, policy).value
               - mm.balanced_accuracy(cm, policy).value) < 1e-12


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_swap_laws(c):
    cm = _cm(c)
    swapped = cm.swapped()
    for fn in (mm.dice, mm.iou, mm.accuracy, mm.kappa, mm.volumetric_similarity):
        assert fn(cm).value == fn(swapped).value, fn.__name__
    assert mm.sensitivity(swapped).value == mm.precision(cm).value


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_complement_law(c):
    cm = _cm(c)
    comp = cm.complemented()
    assert mm.sensitivity(comp).value == mm.specificity(cm).value
    assert mm.specificity(comp).value == mm.sensitivity(cm).value


@given(counts_strategy)
@settings(max_examples=300, deadline=None)
def test_ranges(c):
    cm = _cm(c)
    for name in ("dice", "iou", "sensitivity", "specificity", "precision",
                 "accuracy", "balanced_accuracy", "auc", "volumetric_similarity"):
        score = METRIC_FNS[name](cm)
        if score.defined:
            assert 0.0 <= score.value <= 1.0, name
    k = mm.kappa(cm)
    if k.defined:
        assert -1.0 - 1e-12 <= k.value <= 1.0 + 1e-12


def test_accuracy_is_one_minus_hamming(rng):
    from conftest import random_binary_pair

    for _ in range(100):
        t, p = random_binary_pair(rng)
        cm = mm.confusion(t, p)
        hamming = int(np.count_nonzero(t.bits != p.bits))
        assert mm.accuracy(cm).value == pytest.approx(1 - hamming / t.bits.size)


def test_ari_matches_label_oracle(rng):
    from conftest import random_mask_pair

    checked = 0
    for _ in range(200):
        t, p = random_mask_pair(rng, max_side=12)
        expected = o_ari(t.data.tolist(), p.data.tolist())
        table = mm.contingency(t, p, mm.classes_of(t, p))
        if expected is None:
            assert not mm.adjusted_rand_index(table).defined
            continue
        got = mm.adjusted_rand_index(table, Policy.ERROR)
        assert math.isclose(got.value, float(expected), rel_tol=0, abs_tol=1e-12)
        checked += 1
    assert checked > 100


def test_ari_range(rng):
    from conftest import random_mask_pair

    for _ in range(200):
        t, p = random_mask_pair(rng, max_side=10)
        score = mm.adjusted_rand_index(mm.contingency(t, p, mm.classes_of(t, p)))
        if score.defined:
            assert -1.0 - 1e-12 <= score.value <= 1.0 + 1e-12


def test_huge_counts_stay_exact():
    # counts near the 2048^3 voxel scale keep integer exactness
    big = 2048 ** 3
    cm = mm.ConfusionCounts(tp=big // 2, fp=1, tn=big // 2 - 1, fn=0)
    score = mm.dice(cm)
    assert 0.0 < score.value <= 1.0
    table = mm.ContingencyTable(
        counts=np.array([[big // 2, 1], [0, big // 2 - 1]], dtype=np.int64),
        classes=(0, 1),
    )
    assert mm.adjusted_rand_index(table).defined
