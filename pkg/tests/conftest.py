import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracle` importable

import maskmetrics as mm


def random_mask_pair(rng, max_side=16, max_label=3, rank=2):
    """A random LabelMask pair with occasional degenerate (constant) masks."""
    shape = tuple(int(rng.integers(1, max_side + 1)) for _ in range(rank))
    masks = []
    for _ in range(2):
        style = rng.integers(0, 10)
        if style == 0:
            arr = np.zeros(shape, dtype=np.int64)
        elif style == 1:
            arr = np.full(shape, int(rng.integers(0, max_label + 1)), dtype=np.int64)
        else:
            arr = rng.integers(0, max_label + 1, size=shape)
        masks.append(mm.as_mask(arr))
    return masks[0], masks[1]


def random_binary_pair(rng, max_side=16, rank=2, density=None, require_fg=False):
    """A random BinaryMask pair over a shared shape."""
    shape = tuple(int(rng.integers(1, max_side + 1)) for _ in range(rank))
    out = []
    for _ in range(2):
        p = density if density is not None else rng.uniform(0.05, 0.9)
        bits = rng.random(shape) < p
        if require_fg and not bits.any():
            bits.flat[int(rng.integers(0, bits.size))] = True
        labels = bits.astype(np.int64)
        out.append(mm.binarize(mm.as_mask(labels), 1))
    return out[0], out[1]


@pytest.fixture
def rng():
    return np.random.default_rng(20240911)
