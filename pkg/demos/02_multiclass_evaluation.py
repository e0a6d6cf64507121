"""Multi-class evaluation: one-vs-rest scoring, aggregation, and the
whole-table adjusted Rand index.

Run with: python demos/02_multiclass_evaluation.py
"""
import numpy as np

import maskmetrics as mm

rng = np.random.default_rng(11)

# Three tissue classes plus background on a 12x12 grid; the "prediction"
# is the truth with a band of random corruption.
truth_arr = rng.integers(0, 4, size=(12, 12))
pred_arr = truth_arr.copy()
pred_arr[4:7] = rng.integers(0, 4, size=(3, 12))
truth = mm.as_mask(truth_arr)
pred = mm.as_mask(pred_arr)

result = mm.evaluate(truth, pred, "dice")
print("mode:", result.mode.value)
for cls, score in result.per_class.items():
    weight = result.class_weights[cls]
    print(f"  class {cls}: dice={score.value:.4f}  truth volume={weight}")
print(f"macro    = {result.macro:.6f}  (plain mean)")
print(f"weighted = {result.weighted:.6f}  (truth-volume weighted)")

# Dropping the background class from the aggregates:
no_bg = mm.evaluate(truth, pred, "dice", include_background=False)
print(f"macro without background = {no_bg.macro:.6f} over classes "
      f"{sorted(no_bg.per_class)}")

# The adjusted Rand index is a partition-agreement measure, so besides the
# one-vs-rest entries it reports one score over the full contingency table:
ari = mm.evaluate(truth, pred, "ari")
print(f"\nARI whole-table = {ari.overall.value:.6f}")
print("ARI one-vs-rest =", {c: round(s.value, 4) for c, s in ari.per_class.items()})

# Aggregates can also be recomputed from a result:
print("\nre-aggregated:",
      mm.aggregate(result, mm.Aggregation.MACRO),
      mm.aggregate(result, mm.Aggregation.WEIGHTED))
