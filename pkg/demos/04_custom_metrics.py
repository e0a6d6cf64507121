"""Plugging custom metrics into evaluate(): ad-hoc callables and
registered named metrics.

Run with: python demos/04_custom_metrics.py
"""
import numpy as np

import maskmetrics as mm
from maskmetrics import MetricDescriptor, MetricKind, Score

rng = np.random.default_rng(5)
truth = mm.as_mask(rng.integers(0, 3, size=(10, 10)))
pred = mm.as_mask(rng.integers(0, 3, size=(10, 10)))


# A custom metric receives the binarized (truth, pred) pair per class and
# returns a Score (or a plain float). Here: the overlap coefficient
# (intersection over the smaller mask).
def overlap_coefficient(truth_bits, pred_bits):
    cm = mm.confusion(truth_bits, pred_bits)
    smaller = min(cm.tp + cm.fn, cm.tp + cm.fp)
    if smaller == 0:
        return Score(0.0, defined=False, reason="a side has no foreground")
    return Score(cm.tp / smaller)


# Passing the callable directly reports it under the name "custom":
result = mm.evaluate(truth, pred, overlap_coefficient)
print("ad-hoc callable:", result.metric,
      {c: round(s.value, 4) for c, s in result.per_class.items()})

# Registering gives it a resolvable name next to the built-ins. The
# registry is immutable; registration returns a new one.
registry = mm.register_metric(
    mm.DEFAULT_REGISTRY,
    MetricDescriptor("overlap_coef", ("oc",), MetricKind.CUSTOM, overlap_coefficient),
)
named = mm.evaluate(truth, pred, "oc", registry=registry)
print("registered name:", named.metric, f"macro={named.macro:.4f}")

# Built-in names stay protected:
try:
    mm.register_metric(
        registry,
        MetricDescriptor("dice", (), MetricKind.CUSTOM, overlap_coefficient),
    )
except mm.DuplicateName as exc:
    print("shadowing blocked:", exc)

# A custom callable that reimplements a built-in reproduces it exactly:
rebuilt = mm.evaluate(truth, pred, lambda t, p: mm.dice(mm.confusion(t, p)))
builtin = mm.evaluate(truth, pred, "dice")
assert all(
    rebuilt.per_class[c].value == builtin.per_class[c].value
    for c in builtin.per_class
)
print("custom dice parity: exact")
