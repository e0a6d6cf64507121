import math

import numpy as np
import pytest

import maskmetrics as mm
from maskmetrics import HausdorffAlgo
from conftest import random_binary_pair
from oracle import brute_avg_hausdorff, brute_hausdorff, min_distances


def bmask(rows):
    arr = np.asarray(rows, dtype=np.int64)
    return mm.binarize(mm.as_mask(arr), 1)


class TestForegroundPoints:
    def test_row_major_order(self):
        pts = mm.foreground_points(bmask([[0, 1], [1, 0]]))
        assert pts.points.tolist() == [[0, 1], [1, 0]]
        assert pts.spacing == (1.0, 1.0)

    def test_empty(self):
        pts = mm.foreground_points(bmask([[0, 0], [0, 0]]))
        assert len(pts) == 0

    def test_all_true(self):
        pts = mm.foreground_points(bmask([[1, 1], [1, 1]]))
        assert len(pts) == 4


class TestDirectedNaive:
    def test_three_four_five(self):
        a = mm.make_point_set([(0, 0)])
        b = mm.make_point_set([(3, 4)])
        assert mm.directed_hausdorff_naive(a, b) == 5.0
        assert mm.directed_avg_naive(a, b) == 5.0

    def test_identical_sets(self):
        a = mm.make_point_set([(0, 0), (1, 2), (3, 1)])
        assert mm.directed_hausdorff_naive(a, a) == 0.0
        assert mm.directed_avg_naive(a, a) == 0.0

    def test_max_of_mins(self):
        a = mm.make_point_set([(0, 0), (0, 3)])
        b = mm.make_point_set([(0, 0)])
        assert mm.directed_hausdorff_naive(a, b) == 3.0
        assert mm.directed_avg_naive(a, b) == 1.5

    def test_empty_side_named(self):
        a = mm.make_point_set([(0, 0)])
        empty = mm.make_point_set([], spacing=(1.0, 1.0))
        with pytest.raises(mm.EmptyPointSet, match="target"):
            mm.directed_hausdorff_naive(a, empty)
        with pytest.raises(mm.EmptyPointSet, match="source"):
            mm.directed_avg_naive(empty, a)

    def test_spacing_mismatch(self):
        a = mm.make_point_set([(0, 0)], spacing=(1.0, 1.0))
        b = mm.make_point_set([(0, 1)], spacing=(1.0, 2.0))
        with pytest.raises(mm.SpacingMismatch):
            mm.directed_hausdorff_naive(a, b)

    def test_matches_loop_oracle(self, rng):
        for _ in range(40):
            t, p = random_binary_pair(rng, max_side=10, require_fg=True)
            sp = tuple(float(s) for s in rng.uniform(0.5, 2.0, size=2))
            a = mm.foreground_points(t, sp)
            b = mm.foreground_points(p, sp)
            expected = max(min_distances(a.points.tolist(), b.points.tolist(), sp))
            got = mm.directed_hausdorff_naive(a, b)
            assert math.isclose(got, expected, rel_tol=1e-12, abs_tol=1e-12)


class TestDistanceTransform:
    def test_1d_line(self):
        field = mm.distance_transform(bmask([[1, 0, 0, 0]]))
        assert field.values.reshape(-1).tolist() == [0.0, 1.0, 2.0, 3.0]

    def test_all_true_zero(self):
        field = mm.distance_transform(bmask([[1, 1], [1, 1]]))
        assert (field.values == 0).all()

    def test_spacing_scaled(self):
        field = mm.distance_transform(bmask([[1, 0]]), spacing=(1.0, 2.5))
        assert field.values.reshape(-1).tolist() == [0.0, 2.5]

    def test_empty_is_infinite(self):
        field = mm.distance_transform(bmask([[0, 0], [0, 0]]))
        assert np.isinf(field.values).all()

    def test_zero_exactly_on_foreground(self, rng):
        for _ in range(30):
            t, _ = random_binary_pair(rng, max_side=12, require_fg=True)
            field = mm.distance_transform(t)
            assert ((field.values == 0.0) == t.bits).all()

    def test_matches_brute_force(self, rng):
        # every field value equals the minimum over foreground points,
        # including anisotropic spacing
        for trial in range(25):
            t, _ = random_binary_pair(rng, max_side=16, require_fg=True)
            sp = (
                (1.0, 1.0)
                if trial % 2 == 0
                else tuple(float(s) for s in rng.uniform(0.3, 3.0, size=2))
            )
            field = mm.distance_transform(t, sp)
            fg = mm.foreground_points(t, sp).points.tolist()
            for idx in np.ndindex(t.shape):
                expected = min(
                    math.sqrt(sum(((i - q) * s) ** 2 for i, q, s in zip(idx, pt, sp)))
                    for pt in fg
                )
                assert abs(field.values[idx] - expected) <= 1e-9 * max(1.0, expected)


class TestHausdorff:
    def test_single_points(self):
        t = bmask([[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0]])
        p = bmask([[0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 1]])
        for algo in HausdorffAlgo:
            assert mm.hausdorff(t, p, algo=algo) == 5.0
            assert mm.avg_hausdorff(t, p, algo=algo) == 5.0

    def test_asymmetric_sets(self):
        t = bmask([[1, 0, 0, 1]])
        p = bmask([[1, 0, 0, 0]])
        for algo in HausdorffAlgo:
            assert mm.hausdorff(t, p, algo=algo) == 3.0
            assert mm.avg_hausdorff(t, p, algo=algo) == 1.5

    def test_identical(self):
        t = bmask([[1, 0], [0, 1]])
        for algo in HausdorffAlgo:
            assert mm.hausdorff(t, t, algo=algo) == 0.0
            assert mm.avg_hausdorff(t, t, algo=algo) == 0.0

    def test_empty_sides(self):
        full = bmask([[1, 1], [1, 1]])
        empty = bmask([[0, 0], [0, 0]])
        with pytest.raises(mm.EmptyPointSet, match="pred"):
            mm.hausdorff(full, empty)
        with pytest.raises(mm.EmptyPointSet, match="truth"):
            mm.hausdorff(empty, full)
        with pytest.raises(mm.EmptyPointSet):
            mm.avg_hausdorff(empty, empty)

    def test_shape_mismatch(self):
        with pytest.raises(mm.ShapeMismatch):
            mm.hausdorff(bmask([[1, 0]]), bmask([[1], [0]]))

    def test_bad_spacing(self):
        t = bmask([[1, 0]])
        with pytest.raises(mm.SpacingMismatch):
            mm.hausdorff(t, t, spacing=(1.0,))
        with pytest.raises(mm.SpacingMismatch):
            mm.hausdorff(t, t, spacing=(1.0, -2.0))

    def test_symmetry(self, rng):
        for _ in range(50):
            t, p = random_binary_pair(rng, require_fg=True)
            for algo in HausdorffAlgo:
                assert mm.hausdorff(t, p, algo=algo) == mm.hausdorff(p, t, algo=algo)
                assert mm.avg_hausdorff(t, p, algo=algo) == mm.avg_hausdorff(
                    p, t, algo=algo
                )

    def test_zero_iff_identical(self, rng):
        for _ in range(50):
            t, p = random_binary_pair(rng, require_fg=True)
            hd = mm.hausdorff(t, p)
            if (t.bits == p.bits).all():
                assert hd == 0.0
            else:
                assert hd > 0.0

    def test_dominance(self, rng):
        for _ in range(50):
            t, p = random_binary_pair(rng, require_fg=True)
            for algo in HausdorffAlgo:
                hd = mm.hausdorff(t, p, algo=algo)
                ahd = mm.avg_hausdorff(t, p, algo=algo)
                assert ahd <= hd * (1 + 1e-12) + 1e-15

    def test_algorithms_agree_2d(self, rng):
        for trial in range(120):
            t, p = random_binary_pair(rng, max_side=24, require_fg=True)
            sp = (
                None
                if trial % 2 == 0
                else tuple(float(s) for s in rng.uniform(0.3, 3.0, size=2))
            )
            hd_n = mm.hausdorff(t, p, spacing=sp, algo=HausdorffAlgo.NAIVE)
            hd_e = mm.hausdorff(t, p, spacing=sp, algo=HausdorffAlgo.DISTANCE_TRANSFORM)
            assert math.isclose(hd_n, hd_e, rel_tol=1e-9, abs_tol=1e-12)
            ahd_n = mm.avg_hausdorff(t, p, spacing=sp, algo=HausdorffAlgo.NAIVE)
            ahd_e = mm.avg_hausdorff(
                t, p, spacing=sp, algo=HausdorffAlgo.DISTANCE_TRANSFORM
            )
            assert math.isclose(ahd_n, ahd_e, rel_tol=1e-9, abs_tol=1e-12)

    def test_algorithms_agree_3d(self, rng):
        for _ in range(40):
            t, p = random_binary_pair(rng, max_side=8, rank=3, require_fg=True)
            hd_n = mm.hausdorff(t, p, algo=HausdorffAlgo.NAIVE)
            hd_e = mm.hausdorff(t, p, algo=HausdorffAlgo.DISTANCE_TRANSFORM)
            assert math.isclose(hd_n, hd_e, rel_tol=1e-9, abs_tol=1e-12)

    def test_matches_brute_force_oracle(self, rng):
        for _ in range(30):
            t, p = random_binary_pair(rng, max_side=10, require_fg=True)
            a = mm.foreground_points(t).points.tolist()
            b = mm.foreground_points(p).points.tolist()
            expected_hd = brute_hausdorff(a, b, (1.0, 1.0))
            expected_ahd = brute_avg_hausdorff(a, b, (1.0, 1.0))
            for algo in HausdorffAlgo:
                assert math.isclose(
                    mm.hausdorff(t, p, algo=algo), expected_hd, rel_tol=1e-9
                )
                assert math.isclose(
                    mm.avg_hausdorff(t, p, algo=algo), expected_ahd,
                    rel_tol=1e-9, abs_tol=1e-12,
                )

    def test_spacing_linearity(self, rng):
        for _ in range(40):
            t, p = random_binary_pair(rng, require_fg=True)
            base = tuple(float(s) for s in rng.uniform(0.5, 2.0, size=2))
            lam = float(rng.uniform(0.1, 10.0))
            scaled = tuple(lam * s for s in base)
            for algo in HausdorffAlgo:
                h0 = mm.hausdorff(t, p, spacing=base, algo=algo)
                h1 = mm.hausdorff(t, p, spacing=scaled, algo=algo)
                if h0 > 0:
                    assert abs(h1 - lam * h0) <= 1e-12 * max(1.0, abs(lam * h0))
