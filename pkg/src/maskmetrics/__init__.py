"""maskmetrics: evaluation metrics for semantic segmentation masks.

The package computes the standard catalog of overlap scores (Dice, IoU,
sensitivity/specificity, precision, accuracy, balanced accuracy, hard-label
AUC, Cohen's kappa, adjusted Rand index, volumetric similarity) and the
Hausdorff / average Hausdorff distances on 2D and 3D integer label masks,
for binary and multi-class problems alike, behind one `evaluate` call:

    >>> import numpy as np, maskmetrics as mm
    >>> truth = mm.as_mask(np.array([[0, 1], [1, 1]]))
    >>> pred = mm.as_mask(np.array([[0, 1], [0, 1]]))
    >>> mm.evaluate(truth, pred, "dice").per_class[1].value
    0.8
"""

__version__ = "0.1.0"

from .core import (
    BinaryMask,
    ConfusionCounts,
    ContingencyTable,
    LabelMask,
    as_mask,
    binarize,
    classes_of,
    confusion,
    contingency,
    make_mask,
    validate_pair,
)
from .distance import (
    DistanceField,
    HausdorffAlgo,
    PointSet,
    avg_hausdorff,
    directed_avg_naive,
    directed_hausdorff_naive,
    distance_transform,
    foreground_points,
    hausdorff,
    make_point_set,
)
from .errors import (
    DuplicateName,
    EmptyPointSet,
    FormatUnsupported,
    HeaderCorrupt,
    LabelInvalid,
    LengthMismatch,
    MaskMetricsError,
    MetricUndefined,
    NoDefinedScores,
    ShapeInvalid,
    ShapeMismatch,
    SizeMismatch,
    SpacingMismatch,
    UnknownLabel,
    UnknownMetric,
)
from .evaluator import (
    DEFAULT_REGISTRY,
    Aggregation,
    EvalMode,
    EvaluationResult,
    MetricDescriptor,
    MetricKind,
    Registry,
    aggregate,
    evaluate,
    register_metric,
)
from .mask_io import load_mask, save_mask, save_pgm, save_raw
from .overlap import (
    DEFAULT_POLICY,
    Score,
    ZeroDivisionPolicy,
    accuracy,
    adjusted_rand_index,
    auc_binary,
    balanced_accuracy,
    dice,
    iou,
    kappa,
    precision,
    sensitivity,
    specificity,
    volumetric_similarity,
)

__all__ = [
    "__version__",
    # core
    "LabelMask", "BinaryMask", "ConfusionCounts", "ContingencyTable",
    "make_mask", "as_mask", "validate_pair", "classes_of", "binarize",
    "confusion", "contingency",
    # overlap metrics
    "Score", "ZeroDivisionPolicy", "DEFAULT_POLICY",
    "dice", "iou", "sensitivity", "specificity", "precision", "accuracy",
    "balanced_accuracy", "auc_binary", "kappa", "adjusted_rand_index",
    "volumetric_similarity",
    # distance metrics
    "PointSet", "DistanceField", "HausdorffAlgo", "foreground_points",
    "make_point_set", "directed_hausdorff_naive", "directed_avg_naive",
    "distance_transform", "hausdorff", "avg_hausdorff",
    # evaluator
    "MetricDescriptor", "MetricKind", "Registry", "DEFAULT_REGISTRY",
    "register_metric", "evaluate", "aggregate", "Aggregation", "EvalMode",
    "EvaluationResult",
    # io
    "load_mask", "save_mask", "save_pgm", "save_raw",
    # errors
    "MaskMetricsError", "ShapeInvalid", "LengthMismatch", "LabelInvalid",
    "ShapeMismatch", "UnknownLabel", "MetricUndefined", "EmptyPointSet",
    "SpacingMismatch", "DuplicateName", "UnknownMetric", "NoDefinedScores",
    "FormatUnsupported", "HeaderCorrupt", "SizeMismatch",
]
