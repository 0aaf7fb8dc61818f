import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convextube.bodies import make_builtin
from convextube.hilbert import HilbertGeometry
from convextube.hyperbolicity import (MetricSample, delta_scaling_profile,
                                      four_point_alpha, thin_triangle_delta)


def dist_matrix(pts, metric):
    n = len(pts)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = metric(pts[i], pts[j])
    return D


def euclid(p, q):
    return float(np.linalg.norm(np.asarray(p) - np.asarray(q)))


class TestMetricSample:
    def test_rejects_asymmetric(self):
        D = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(ValueError, match="symmetric"):
            MetricSample([0, 1], D)

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            MetricSample([0, 1], np.ones((2, 2)))

    def test_rejects_interval_inversion(self):
        lo = np.array([[0.0, 2.0], [2.0, 0.0]])
        hi = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="inversion"):
            MetricSample([0, 1], lo, dist_hi=hi)

    def test_interval_flag(self):
        lo = np.array([[0.0, 1.0], [1.0, 0.0]])
        hi = np.array([[0.0, 1.5], [1.5, 0.0]])
        assert MetricSample([0, 1], lo, dist_hi=hi).is_interval
        assert not MetricSample([0, 1], lo).is_interval


class TestFourPoint:
    def test_star_tree_zero(self):
        # center + 3 leaves at distance 1 (leaf-leaf distance 2)
        D = np.array([[0, 1, 1, 1],
                      [1, 0, 2, 2],
                      [1, 2, 0, 2],
                      [1, 2, 2, 0]], dtype=float)
        rep = four_point_alpha(MetricSample(range(4), D), budget=None)
        assert rep.alpha == 0.0

    def test_equidistant_zero(self):
        D = np.ones((4, 4)) - np.eye(4)
        rep = four_point_alpha(MetricSample(range(4), D), budget=None)
        assert rep.alpha == 0.0

    @pytest.mark.parametrize("s", [1.0, 3.0])
    def test_euclidean_square_corners(self, s):
        pts = [np.array(p) for p in
               [(0.0, 0.0), (s, 0.0), (0.0, s), (s, s)]]
        rep = four_point_alpha(MetricSample(pts, dist_matrix(pts, euclid)),
                               budget=None)
        assert rep.alpha >= s * (math.sqrt(2) - 1) - 1e-12

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(21)
        pts = [rng.standard_normal(3) for _ in range(7)]
        D = dist_matrix(pts, euclid)
        rep = four_point_alpha(MetricSample(pts, D), budget=None)
        perm = rng.permutation(7)
        rep2 = four_point_alpha(MetricSample([pts[i] for i in perm],
                                             D[np.ix_(perm, perm)]), budget=None)
        assert rep2.alpha == rep.alpha

    def test_duplicate_point_invariance(self):
        rng = np.random.default_rng(22)
        pts = [rng.standard_normal(2) for _ in range(6)]
        D = dist_matrix(pts, euclid)
        rep = four_point_alpha(MetricSample(pts, D), budget=None)
        pts2 = pts + [pts[0]]
        rep2 = four_point_alpha(MetricSample(pts2, dist_matrix(pts2, euclid)),
                                budget=None)
        assert rep2.alpha == rep.alpha

    def test_monotone_under_adding_points(self):
        rng = np.random.default_rng(23)
        pts = [rng.standard_normal(2) for _ in range(8)]
        a_small = four_point_alpha(
            MetricSample(pts[:6], dist_matrix(pts[:6], euclid)), budget=None).alpha
        a_big = four_point_alpha(
            MetricSample(pts, dist_matrix(pts, euclid)), budget=None).alpha
        assert a_big >= a_small

    def test_scaling_covariance(self):
        rng = np.random.default_rng(24)
        pts = [rng.standard_normal(2) for _ in range(6)]
        D = dist_matrix(pts, euclid)
        a1 = four_point_alpha(MetricSample(pts, D), budget=None).alpha
        a3 = four_point_alpha(MetricSample(pts, 3.0 * D), budget=None).alpha
        assert a3 == pytest.approx(3.0 * a1, rel=1e-14)

    def test_sampled_determinism(self):
        rng = np.random.default_rng(25)
        pts = [rng.standard_normal(2) for _ in range(12)]
        D = dist_matrix(pts, euclid)
        s = MetricSample(pts, D)
        r1 = four_point_alpha(s, budget=500, seed=9)
        r2 = four_point_alpha(s, budget=500, seed=9)
        assert r1.alpha == r2.alpha and r1.witness == r2.witness

    def test_sampled_requires_seed(self):
        pts = [np.array([float(i), 0.0]) for i in range(5)]
        s = MetricSample(pts, dist_matrix(pts, euclid))
        with pytest.raises(ValueError, match="seed"):
            four_point_alpha(s, budget=100)

    def test_sampled_below_exhaustive(self):
        rng = np.random.default_rng(26)
        pts = [rng.standard_normal(2) for _ in range(10)]
        s = MetricSample(pts, dist_matrix(pts, euclid))
        full = four_point_alpha(s, budget=None).alpha
        part = four_point_alpha(s, budget=200, seed=1).alpha
        assert part <= full + 1e-14

    def test_pessimistic_below_optimistic(self):
        rng = np.random.default_rng(27)
        pts = [rng.standard_normal(2) for _ in range(6)]
        D = dist_matrix(pts, euclid)
        pad = 0.05 * (1.0 - np.eye(len(pts)))
        s = MetricSample(pts, D, dist_hi=D + pad)
        rep = four_point_alpha(s, budget=None)
        exact = four_point_alpha(MetricSample(pts, D), budget=None)
        assert rep.alpha <= exact.alpha <= rep.alpha_optimistic

    def test_too_few_points(self):
        pts = [np.zeros(2), np.ones(2), np.array([2.0, 0.0])]
        with pytest.raises(ValueError):
            four_point_alpha(MetricSample(pts, dist_matrix(pts, euclid)))

    def test_witness_attains_alpha(self):
        rng = np.random.default_rng(28)
        pts = [rng.standard_normal(2) for _ in range(7)]
        D = dist_matrix(pts, euclid)
        rep = four_point_alpha(MetricSample(pts, D), budget=None)
        o, x, y, z = rep.witness
        gp = lambda a, b: 0.5 * (D[o, a] + D[o, b] - D[a, b])
        assert min(gp(x, z), gp(z, y)) - gp(x, y) == pytest.approx(rep.alpha, abs=1e-14)


class TestThinTriangles:
    def test_degenerate_triangle_zero(self):
        g = HilbertGeometry(make_builtin("disk"))
        a, b = np.array([-0.5, 0.0]), np.array([0.5, 0.0])
        m = g.geodesic_point(a, b, 0.5 * g.distance(a, b))
        geo = lambda p, q, s: g.geodesic_point(p, q, s)
        assert thin_triangle_delta(geo, g.distance, (a, b, m), 0.05) == \
            pytest.approx(0.0, abs=1e-6)

    def test_disk_triangles_thin(self):
        g = HilbertGeometry(make_builtin("disk"))
        geo = lambda p, q, s: g.geodesic_point(p, q, s)
        rng = np.random.default_rng(29)
        for _ in range(3):
            tri = [g.point_at_distance(np.zeros(2), rng.standard_normal(2),
                                       rng.uniform(1.0, 3.0)) for _ in range(3)]
            assert thin_triangle_delta(geo, g.distance, tri, 0.05) <= 1.6

    def test_square_triangles_fat(self):
        # product-affine geodesics (affine in arctanh coordinates) make
        # genuinely fat triangles on the square; straight chords do not
        g = HilbertGeometry(make_builtin("square"))

        def uv_path(a, b, t):
            u1, u2 = np.arctanh(np.asarray(a)), np.arctanh(np.asarray(b))
            return np.tanh(u1 + (u2 - u1) * t)

        def geo(a, b, s):
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if g.distance(np.asarray(a), uv_path(a, b, mid)) < s:
                    lo = mid
                else:
                    hi = mid
            return uv_path(a, b, 0.5 * (lo + hi))

        for s in (2.0, 4.0, 8.0, 16.0):
            tri = (np.zeros(2), np.array([math.tanh(s), 0.0]),
                   np.array([0.0, math.tanh(s)]))
            delta = thin_triangle_delta(geo, g.distance, tri, 0.5)
            assert delta >= 0.1 * s

    def test_inconsistent_oracle_rejected(self):
        g = HilbertGeometry(make_builtin("disk"))
        bad_geo = lambda p, q, s: np.zeros(2)  # "midpoint" off the geodesic
        tri = (np.array([0.3, 0.0]), np.array([-0.3, 0.1]), np.array([0.0, -0.4]))
        with pytest.raises(ValueError, match="inconsistent"):
            thin_triangle_delta(bad_geo, g.distance, tri, 0.05)


class TestScalingProfile:
    def test_bad_scales(self):
        with pytest.raises(ValueError):
            delta_scaling_profile(make_builtin("disk"), np.zeros(2), [2, 1], seed=0)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            delta_scaling_profile(make_builtin("disk"), np.zeros(2), [1.0],
                                  n_points=3, seed=0)

    def test_profile_rows_and_determinism(self):
        body = make_builtin("disk")
        kw = dict(n_points=16, n_quadruples=500, seed=5)
        p1 = delta_scaling_profile(body, np.zeros(2), [1.0, 2.0], **kw)
        p2 = delta_scaling_profile(body, np.zeros(2), [1.0, 2.0], **kw)
        assert [r.alpha_lo for r in p1.rows] == [r.alpha_lo for r in p2.rows]
        assert p1.slope == p2.slope
        assert all(r.n_points == 16 for r in p1.rows)
