"""Confusion-matrix based scores for binarized mask pairs.

All scores are computed from exact integer tallies with a single final
floating-point division, so results are deterministic and as precise as
float64 allows. A vanishing denominator is resolved by an explicit
ZeroDivisionPolicy instead of NaN propagation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import ConfusionCounts, ContingencyTable
from .errors import MetricUndefined


class ZeroDivisionPolicy(enum.Enum):
    """What to report when a score's denominator is zero.

    PERFECT_ON_EMPTY_AGREEMENT (the default) scores 1.0 when the
    degeneracy arises because both masks agree (e.g. the class is absent
    from both), and 0.0 when only one side is degenerate. SCORE_ZERO and
    SCORE_ONE substitute constants; ERROR raises MetricUndefined.
    """

    PERFECT_ON_EMPTY_AGREEMENT = "perfect-empty"
    SCORE_ZERO = "zero"
    SCORE_ONE = "one"
    ERROR = "error"

    @classmethod
    def from_string(cls, text: str) -> "ZeroDivisionPolicy":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown zero-division policy: {text!r}")


DEFAULT_POLICY = ZeroDivisionPolicy.PERFECT_ON_EMPTY_AGREEMENT


@dataclass(frozen=True)
class Score:
    """A metric value plus a flag telling whether the zero-division policy
    had to intervene (defined=False) and, if so, why."""

    value: float
    defined: bool = True
    reason: str | None = None


def _fallback(
    policy: ZeroDivisionPolicy,
    agreement: bool,
    metric: str,
    denominator: str,
) -> Score:
    """Resolve a vanished denominator according to the policy."""
    if policy is ZeroDivisionPolicy.ERROR:
        raise MetricUndefined(metric, denominator)
    if policy is ZeroDivisionPolicy.SCORE_ZERO:
        value = 0.0
    elif policy is ZeroDivisionPolicy.SCORE_ONE:
        value = 1.0
    else:
        value = 1.0 if agreement else 0.0
    side = "masks agree" if agreement else "one-sided disagreement"
    return Score(
        value=value,
        defined=False,
        reason=f"{metric}: denominator {denominator} is zero ({side})",
    )


def dice(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Dice similarity coefficient (F1): 2*TP / (2*TP + FP + FN)."""
    den = 2 * cm.tp + cm.fp + cm.fn
    if den == 0:
        return _fallback(policy, cm.fp == 0 and cm.fn == 0, "dice", "2*TP+FP+FN")
    return Score(2 * cm.tp / den)


def iou(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Intersection over union (Jaccard): TP / (TP + FP + FN)."""
    den = cm.tp + cm.fp + cm.fn
    if den == 0:
        return _fallback(policy, cm.fp == 0 and cm.fn == 0, "iou", "TP+FP+FN")
    return Score(cm.tp / den)


def sensitivity(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """True positive rate: TP / (TP + FN)."""
    den = cm.tp + cm.fn
    if den == 0:
        return _fallback(policy, cm.fp == 0, "sensitivity", "TP+FN")
    return Score(cm.tp / den)


def specificity(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """True negative rate: TN / (TN + FP)."""
    den = cm.tn + cm.fp
    if den == 0:
        return _fallback(policy, cm.fn == 0, "specificity", "TN+FP")
    return Score(cm.tn / den)


def precision(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Positive predictive value: TP / (TP + FP)."""
    den = cm.tp + cm.fp
    if den == 0:
        return _fallback(policy, cm.fn == 0, "precision", "TP+FP")
    return Score(cm.tp / den)


def accuracy(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Fraction of correctly classified pixels: (TP + TN) / N."""
    n = cm.total
    if n == 0:
        # unreachable for masks built through this package (extents >= 1)
        return _fallback(policy, True, "accuracy", "TP+TN+FP+FN")
    return Score((cm.tp + cm.tn) / n)


def balanced_accuracy(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Mean of sensitivity and specificity, each under the same policy."""
    s = sensitivity(cm, policy)
    p = specificity(cm, policy)
    value = (s.value + p.value) / 2
    if s.defined and p.defined:
        return Score(value)
    reason = s.reason if not s.defined else p.reason
    return Score(value, defined=False, reason=f"balanced_accuracy: {reason}")


def auc_binary(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Hard-label AUC: 1 - (FPR + FNR) / 2.

    For hard (already thresholded) masks this expression is algebraically
    identical to balanced accuracy; it is computed independently from its
    own rate terms. A vanished rate denominator is substituted through the
    policy (the substituted error rate is 1 minus the policy score, which
    keeps the balanced-accuracy identity intact under every policy).
    """
    reason = None
    fpr_den = cm.fp + cm.tn
    if fpr_den == 0:
        sub = _fallback(policy, cm.fn == 0, "auc", "FP+TN")
        fpr = 1.0 - sub.value
        reason = sub.reason
    else:
        fpr = cm.fp / fpr_den
    fnr_den = cm.fn + cm.tp
    if fnr_den == 0:
        sub = _fallback(policy, cm.fp == 0, "auc", "FN+TP")
        fnr = 1.0 - sub.value
        reason = sub.reason if reason is None else reason
    else:
        fnr = cm.fn / fnr_den
    value = 1.0 - (fpr + fnr) / 2
    if reason is None:
        return Score(value)
    return Score(value, defined=False, reason=reason)


def kappa(cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY) -> Score:
    """Cohen's kappa: agreement corrected for chance.

    With f_c = ((TN+FN)(TN+FP) + (FP+TP)(FN+TP)) / N the score is
    ((TP+TN) - f_c) / (N - f_c); both quotients are reorganized into a
    single exact-integer numerator and denominator.
    """
    n = cm.total
    chance = (cm.tn + cm.fn) * (cm.tn + cm.fp) + (cm.fp + cm.tp) * (cm.fn + cm.tp)
    den = n * n - chance  # == (N - f_c) * N
    if den == 0:
        return _fallback(policy, cm.fp == 0 and cm.fn == 0, "kappa", "N-f_c")
    return Score(((cm.tp + cm.tn) * n - chance) / den)


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def adjusted_rand_index(
    table: ContingencyTable, policy: ZeroDivisionPolicy = DEFAULT_POLICY
) -> Score:
    """Adjusted Rand index over a full contingency table.

    index    = sum_ij C(n_ij, 2)
    expected = sum_i C(a_i, 2) * sum_j C(b_j, 2) / C(n, 2)
    max      = (sum_i C(a_i, 2) + sum_j C(b_j, 2)) / 2
    ARI      = (index - expected) / (max - expected)

    All intermediates are exact Python integers (arbitrary precision), so
    the only rounding is the final division.
    """
    index = int(sum(_comb2(int(v)) for v in table.counts.reshape(-1)))
    sum_a = int(sum(_comb2(int(v)) for v in table.row_sums))
    sum_b = int(sum(_comb2(int(v)) for v in table.col_sums))
    pairs = _comb2(table.total)
    num = 2 * (index * pairs - sum_a * sum_b)
    den = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b
    if den == 0:
        return _fallback(
            policy, table.is_diagonal(), "adjusted_rand_index", "max-expected"
        )
    return Score(num / den)


def volumetric_similarity(
    cm: ConfusionCounts, policy: ZeroDivisionPolicy = DEFAULT_POLICY
) -> Score:
    """Volume agreement: 1 - |FN - FP| / (2*TP + FP + FN)."""
    den = 2 * cm.tp + cm.fp + cm.fn
    if den == 0:
        return _fallback(
            policy, cm.fp == 0 and cm.fn == 0, "volumetric_similarity", "2*TP+FP+FN"
        )
    return Score(1.0 - abs(cm.fn - cm.fp) / den)
