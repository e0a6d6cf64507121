"""Metric registry and the single `evaluate` entry point.

`evaluate` resolves a metric by name, alias, or callable, decides between
binary and multi-class treatment, runs the metric one-vs-rest per class,
and aggregates. It is the programmatic face of the whole package:

    result = evaluate(truth, pred, "dice")
    result.per_class[1].value

Binary problems (labels within {0, 1}) score the positive class 1 only;
multi-class problems score every observed class and report unweighted and
truth-volume-weighted means over the defined per-class scores.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from . import distance as _distance
from . import overlap as _overlap
from .core import (
    BinaryMask,
    ConfusionCounts,
    ContingencyTable,
    LabelMask,
    binarize,
    classes_of,
    confusion,
    contingency,
    validate_pair,
)
from .distance import HausdorffAlgo, check_spacing
from .errors import DuplicateName, EmptyPointSet, NoDefinedScores, UnknownMetric
from .overlap import DEFAULT_POLICY, Score, ZeroDivisionPolicy


class MetricKind(enum.Enum):
    OVERLAP = "overlap"          # fn(ConfusionCounts, policy) -> Score
    CONTINGENCY = "contingency"  # fn(ContingencyTable, policy) -> Score
    DISTANCE = "distance"        # fn(truth_bits, pred_bits, spacing, algo) -> float
    CUSTOM = "custom"            # fn(truth_bits, pred_bits) -> Score | float


@dataclass(frozen=True)
class MetricDescriptor:
    name: str
    aliases: tuple[str, ...]
    kind: MetricKind
    fn: Callable


@dataclass(frozen=True)
class Registry:
    """Immutable name/alias -> metric lookup. Extend with register_metric."""

    descriptors: tuple[MetricDescriptor, ...]

    @cached_property
    def _lookup(self) -> dict[str, MetricDescriptor]:
        table: dict[str, MetricDescriptor] = {}
        for desc in self.descriptors:
            for key in (desc.name, *desc.aliases):
                table[key] = desc
        return table

    def resolve(self, name: str) -> MetricDescriptor:
        try:
            return self._lookup[name]
        except KeyError:
            raise UnknownMetric(name) from None

    def names(self) -> list[str]:
        """Canonical metric names, sorted."""
        return sorted(d.name for d in self.descriptors)

    def all_keys(self) -> set[str]:
        return set(self._lookup)


def register_metric(registry: Registry, descriptor: MetricDescriptor) -> Registry:
    """Return a new registry including `descriptor`.

    Built-ins can never be shadowed: any collision between the new name or
    aliases and an existing name or alias is an error.
    """
    taken = registry.all_keys()
    for key in (descriptor.name, *descriptor.aliases):
        if key in taken:
            raise DuplicateName(f"metric name or alias already registered: {key!r}")
    return Registry(descriptors=registry.descriptors + (descriptor,))


_BUILTINS = (
    MetricDescriptor("dice", ("dsc", "f1"), MetricKind.OVERLAP, _overlap.dice),
    MetricDescriptor("iou", ("jaccard",), MetricKind.OVERLAP, _overlap.iou),
    MetricDescriptor(
        "sensitivity", ("recall", "tpr"), MetricKind.OVERLAP, _overlap.sensitivity
    ),
    MetricDescriptor("specificity", ("tnr",), MetricKind.OVERLAP, _overlap.specificity),
    MetricDescriptor("precision", ("ppv",), MetricKind.OVERLAP, _overlap.precision),
    MetricDescriptor("accuracy", ("acc", "rand"), MetricKind.OVERLAP, _overlap.accuracy),
    MetricDescriptor(
        "balanced_accuracy", ("bacc",), MetricKind.OVERLAP, _overlap.balanced_accuracy
    ),
    MetricDescriptor(
        "adjusted_rand_index",
        ("ari",),
        MetricKind.CONTINGENCY,
        _overlap.adjusted_rand_index,
    ),
    MetricDescriptor("auc", ("auc_binary",), MetricKind.OVERLAP, _overlap.auc_binary),
    MetricDescriptor("kappa", ("cohen_kappa",), MetricKind.OVERLAP, _overlap.kappa),
    MetricDescriptor(
        "volumetric_similarity", ("vs",), MetricKind.OVERLAP,
        _overlap.volumetric_similarity,
    ),
    MetricDescriptor("hausdorff", ("hd",), MetricKind.DISTANCE, _distance.hausdorff),
    MetricDescriptor(
        "avg_hausdorff", ("ahd",), MetricKind.DISTANCE, _distance.avg_hausdorff
    ),
)

DEFAULT_REGISTRY = Registry(descriptors=_BUILTINS)


class EvalMode(enum.Enum):
    AUTO = "auto"
    BINARY = "binary"
    MULTICLASS = "multiclass"

    @classmethod
    def from_string(cls, text: str) -> "EvalMode":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown mode: {text!r}")


class Aggregation(enum.Enum):
    MACRO = "macro"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class EvaluationResult:
    """Per-class scores plus aggregates for one metric on one mask pair."""

    metric: str
    mode: EvalMode
    per_class: Mapping[int, Score]
    class_weights: Mapping[int, int]  # truth pixel count per scored class
    macro: float | None
    weighted: float | None
    overall: Score | None = field(default=None)  # whole-table score (ARI only)

    def undefined_reasons(self) -> dict[int, str]:
        return {
            c: s.reason or "undefined"
            for c, s in self.per_class.items()
            if not s.defined
        }


def aggregate(result: EvaluationResult, scheme: Aggregation) -> float:
    """Aggregate the defined per-class scores of a result.

    MACRO is the unweighted mean; WEIGHTED weighs each class by its truth
    pixel count. Classes whose score is undefined contribute neither value
    nor weight. Raises NoDefinedScores when nothing can be aggregated
    (including a weighted request where every defined class has zero truth
    volume).
    """
    defined = [(c, s.value) for c, s in result.per_class.items() if s.defined]
    if not defined:
        raise NoDefinedScores("no defined per-class scores to aggregate")
    if scheme is Aggregation.MACRO:
        return sum(v for _, v in defined) / len(defined)
    mass = sum(result.class_weights[c] for c, _ in defined)
    if mass == 0:
        raise NoDefinedScores("defined per-class scores carry zero truth volume")
    return sum(result.class_weights[c] * v for c, v in defined) / mass


def _one_vs_rest_table(cm: ConfusionCounts) -> ContingencyTable:
    counts = np.array([[cm.tn, cm.fp], [cm.fn, cm.tp]], dtype=np.int64)
    counts.flags.writeable = False
    return ContingencyTable(counts=counts, classes=(0, 1))


def _class_score(
    desc: MetricDescriptor,
    truth_bin: BinaryMask,
    pred_bin: BinaryMask,
    policy: ZeroDivisionPolicy,
    spacing: tuple[float, ...],
    hd_algo: HausdorffAlgo,
) -> Score:
    if desc.kind is MetricKind.OVERLAP:
        return desc.fn(confusion(truth_bin, pred_bin), policy)
    if desc.kind is MetricKind.CONTINGENCY:
        return desc.fn(_one_vs_rest_table(confusion(truth_bin, pred_bin)), policy)
    if desc.kind is MetricKind.DISTANCE:
        try:
            return Score(desc.fn(truth_bin, pred_bin, spacing, hd_algo))
        except EmptyPointSet as exc:
            return Score(math.nan, defined=False, reason=str(exc))
    out = desc.fn(truth_bin, pred_bin)
    return out if isinstance(out, Score) else Score(float(out))


def evaluate(
    truth: LabelMask,
    pred: LabelMask,
    metric: str | Callable,
    *,
    mode: EvalMode = EvalMode.AUTO,
    policy: ZeroDivisionPolicy = DEFAULT_POLICY,
    spacing: Sequence[float] | None = None,
    hd_algo: HausdorffAlgo = HausdorffAlgo.DISTANCE_TRANSFORM,
    include_background: bool = True,
    registry: Registry | None = None,
) -> EvaluationResult:
    """Score one metric on a validated mask pair.

    `metric` is a canonical name, an alias, or a callable taking the
    binarized (truth, pred) pair per class and returning a Score (reported
    under the name "custom"). AUTO mode treats labels within {0, 1} as a
    binary problem scoring class 1; anything else is scored one-vs-rest
    per observed class. `include_background=False` drops class 0 from
    multi-class per-class results and aggregates.

    The adjusted Rand index additionally reports a whole-table score in
    `result.overall`: the index is a partition-agreement measure, so the
    single score over the full class-by-class table is its primary
    reading, while the per-class entries are one-vs-rest reductions kept
    for symmetry with the other metrics. The whole-table score always uses
    every observed class regardless of `include_background`.

    Distance metrics ignore the zero-division policy: a class with no
    foreground on either side yields an undefined entry carrying the
    reason, never a substituted number.
    """
    validate_pair(truth, pred)
    sp = check_spacing(spacing, truth.rank)
    reg = registry if registry is not None else DEFAULT_REGISTRY
    if isinstance(metric, str):
        desc = reg.resolve(metric)
    elif callable(metric):
        desc = MetricDescriptor("custom", (), MetricKind.CUSTOM, metric)
    else:
        raise UnknownMetric(repr(metric))

    classes = classes_of(truth, pred)
    resolved = mode
    if mode is EvalMode.AUTO:
        resolved = (
            EvalMode.BINARY if set(classes) <= {0, 1} else EvalMode.MULTICLASS
        )
    if resolved is EvalMode.BINARY:
        scored_classes = [1]
    else:
        scored_classes = [c for c in classes if include_background or c != 0]

    truth_flat = truth.data
    per_class: dict[int, Score] = {}
    weights: dict[int, int] = {}
    for c in scored_classes:
        t_bin = binarize(truth, c)
        p_bin = binarize(pred, c)
        per_class[c] = _class_score(desc, t_bin, p_bin, policy, sp, hd_algo)
        weights[c] = int(np.count_nonzero(truth_flat == c))

    overall: Score | None = None
    if desc.kind is MetricKind.CONTINGENCY:
        if resolved is EvalMode.BINARY:
            cm = confusion(binarize(truth, 1), binarize(pred, 1))
            overall = desc.fn(_one_vs_rest_table(cm), policy)
        else:
            overall = desc.fn(contingency(truth, pred, classes), policy)

    result = EvaluationResult(
        metric=desc.name,
        mode=resolved,
        per_class=per_class,
        class_weights=weights,
        macro=None,
        weighted=None,
        overall=overall,
    )
    macro = weighted = None
    try:
        macro = aggregate(result, Aggregation.MACRO)
    except NoDefinedScores:
        pass
    try:
        weighted = aggregate(result, Aggregation.WEIGHTED)
    except NoDefinedScores:
        pass
    return EvaluationResult(
        metric=desc.name,
        mode=resolved,
        per_class=per_class,
        class_weights=weights,
        macro=macro,
        weighted=weighted,
        overall=overall,
    )
