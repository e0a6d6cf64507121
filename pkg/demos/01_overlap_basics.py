"""Overlap scores on a small binary mask pair, step by step.

Run with: python demos/01_overlap_basics.py
"""
import numpy as np

import maskmetrics as mm

# A 4x4 "ground truth" blob and a prediction that overshoots to the right.
truth = mm.as_mask(np.array([
    [0, 0, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 1, 0],
    [0, 0, 0, 0],
]))
pred = mm.as_mask(np.array([
    [0, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 0, 1, 1],
    [0, 0, 0, 0],
]))

# Everything overlap-based starts from the one-vs-rest confusion counts.
cm = mm.confusion(mm.binarize(truth, 1), mm.binarize(pred, 1))
print(f"confusion: tp={cm.tp} fp={cm.fp} tn={cm.tn} fn={cm.fn} (n={cm.total})")

for fn in (mm.dice, mm.iou, mm.sensitivity, mm.specificity, mm.precision,
           mm.accuracy, mm.balanced_accuracy, mm.auc_binary, mm.kappa,
           mm.volumetric_similarity):
    score = fn(cm)
    print(f"{fn.__name__:22s} {score.value:.6f}")

# The same numbers drop out of the one-line evaluate() interface; labels
# within {0, 1} are automatically treated as a binary problem on class 1.
result = mm.evaluate(truth, pred, "dice")
print("\nevaluate('dice') ->", result.per_class[1].value, "mode:", result.mode.value)

# Degenerate denominators are controlled by an explicit policy instead of
# silently propagating NaN. Compare a control sample (no foreground in
# either mask) under the four policies:
empty = mm.as_mask(np.zeros((4, 4), dtype=np.int64))
for policy in mm.ZeroDivisionPolicy:
    if policy is mm.ZeroDivisionPolicy.ERROR:
        continue
    score = mm.evaluate(empty, empty, "dice", policy=policy).per_class[1]
    print(f"empty vs empty, policy={policy.value:14s} -> {score.value} "
          f"(defined={score.defined})")
