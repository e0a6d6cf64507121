"""Mask representations and the confusion/contingency statistics behind
every overlap metric.

Masks are 2D or 3D grids of integer class labels in [0, 65535]. All types
are immutable after construction, so they can be shared freely across
threads; every operation here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    LabelInvalid,
    LengthMismatch,
    ShapeInvalid,
    ShapeMismatch,
    UnknownLabel,
)

MAX_LABEL = 65535  # labels are a 16-bit class space


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LabelMask:
    """An n-dimensional grid of class labels (rank 2 or 3, row-major)."""

    shape: tuple[int, ...]
    values: np.ndarray  # uint16, shaped like `shape`, read-only

    @property
    def rank(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def data(self) -> np.ndarray:
        """Flat row-major view of the labels."""
        return self.values.reshape(-1)

    def labels(self) -> np.ndarray:
        """Sorted distinct labels present in the mask."""
        return np.unique(self.values)


@dataclass(frozen=True)
class BinaryMask:
    """One-vs-rest foreground indicator derived from a LabelMask."""

    shape: tuple[int, ...]
    bits: np.ndarray  # bool, shaped like `shape`, read-only

    @property
    def rank(self) -> int:
        return len(self.shape)

    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.bits))


@dataclass(frozen=True)
class ConfusionCounts:
    """Pixel tallies of one binary (one-vs-rest) comparison."""

    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def swapped(self) -> "ConfusionCounts":
        """Counts after exchanging the roles of truth and prediction."""
        return ConfusionCounts(tp=self.tp, fp=self.fn, tn=self.tn, fn=self.fp)

    def complemented(self) -> "ConfusionCounts":
        """Counts after flipping foreground and background in both masks."""
        return ConfusionCounts(tp=self.tn, fp=self.fn, tn=self.tp, fn=self.fp)


@dataclass(frozen=True)
class ContingencyTable:
    """K-by-K pixel-count table: counts[i][j] = pixels with truth class i
    and predicted class j, under a fixed class ordering."""

    counts: np.ndarray  # int64 (K, K), read-only
    classes: tuple[int, ...]

    @cached_property
    def row_sums(self) -> np.ndarray:
        return _frozen(self.counts.sum(axis=1))

    @cached_property
    def col_sums(self) -> np.ndarray:
        return _frozen(self.counts.sum(axis=0))

    @cached_property
    def total(self) -> int:
        return int(self.counts.sum())

    def is_diagonal(self) -> bool:
        off = self.counts.sum() - np.trace(self.counts)
        return int(off) == 0


def _check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(s) for s in shape)
    if len(shape) not in (2, 3):
        raise ShapeInvalid(f"mask rank must be 2 or 3, got {len(shape)}")
    if any(s < 1 for s in shape):
        raise ShapeInvalid(f"every extent must be >= 1, got {shape}")
    return shape


def make_mask(shape: Sequence[int], data) -> LabelMask:
    """Build a validated, immutable LabelMask from a flat row-major label
    array. Labels must be integers in [0, 65535]."""
    shape = _check_shape(shape)
    arr = np.asarray(data)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    n = 1
    for s in shape:
        n *= s
    if arr.size != n:
        raise LengthMismatch(
            f"data has {arr.size} elements, shape {shape} needs {n}"
        )
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.bool_):
            arr = arr.astype(np.uint16)
        else:
            raise LabelInvalid(
                f"labels must be integers, got dtype {arr.dtype}"
            )
    if arr.size and (arr.min() < 0 or arr.max() > MAX_LABEL):
        raise LabelInvalid(
            f"labels must lie in [0, {MAX_LABEL}], got range "
            f"[{arr.min()}, {arr.max()}]"
        )
    values = _frozen(arr.astype(np.uint16).reshape(shape))
    return LabelMask(shape=shape, values=values)


def as_mask(array) -> LabelMask:
    """Convenience constructor from any 2D/3D integer array-like."""
    arr = np.asarray(array)
    return make_mask(arr.shape, arr.reshape(-1))


def validate_pair(truth: LabelMask, pred: LabelMask) -> None:
    """Require identical rank and extents; raises ShapeMismatch otherwise."""
    if truth.shape != pred.shape:
        raise ShapeMismatch(truth.shape, pred.shape)


def classes_of(truth: LabelMask, pred: LabelMask) -> list[int]:
    """Sorted ascending union of the labels present in both masks."""
    union = np.union1d(truth.labels(), pred.labels())
    return [int(c) for c in union]


def binarize(mask: LabelMask, positive: int) -> BinaryMask:
    """Reduce to foreground == `positive`, background otherwise."""
    bits = _frozen(mask.values == positive)
    return BinaryMask(shape=mask.shape, bits=bits)


def confusion(truth: BinaryMask, pred: BinaryMask) -> ConfusionCounts:
    """Pixel-wise TP/FP/TN/FN tallies for a binarized pair."""
    if truth.shape != pred.shape:
        raise ShapeMismatch(truth.shape, pred.shape)
    t = truth.bits
    p = pred.bits
    tp = int(np.count_nonzero(t & p))
    fp = int(np.count_nonzero(~t & p))
    fn = int(np.count_nonzero(t & ~p))
    tn = t.size - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def contingency(
    truth: LabelMask, pred: LabelMask, classes: Sequence[int]
) -> ContingencyTable:
    """Full class-by-class pair-count table over the given class ordering.

    Every label occurring in either mask must appear in `classes`.
    """
    validate_pair(truth, pred)
    classes = tuple(int(c) for c in classes)
    k = len(classes)
    lookup = np.full(MAX_LABEL + 1, -1, dtype=np.int64)
    for i, c in enumerate(classes):
        lookup[c] = i
    t_idx = lookup[truth.data]
    p_idx = lookup[pred.data]
    if (t_idx < 0).any() or (p_idx < 0).any():
        present = np.union1d(truth.labels(), pred.labels())
        missing = sorted(set(int(c) for c in present) - set(classes))
        raise UnknownLabel(f"labels {missing} not covered by classes {classes}")
    flat = t_idx * k + p_idx
    counts = np.bincount(flat, minlength=k * k).reshape(k, k)
    return ContingencyTable(counts=_frozen(counts.astype(np.int64)), classes=classes)
