import math

import numpy as np
import pytest

from convextube.bodies import (AffineMap, Ellipsoid, PointedBody, apply_affine,
                               direction_net, make_builtin)
from convextube.rescaling import (BlowupSpec, blowup_sequence, john_normalize,
                                  limit_strictness_verdict, orbit_limit)


class TestJohn:
    def test_unit_disk_identity(self):
        J = john_normalize(PointedBody(make_builtin("disk"), np.zeros(2)))
        assert np.allclose(J.linear, np.eye(2), atol=1e-9)
        assert np.allclose(J.translation, 0.0, atol=1e-9)

    def test_radius_five_disk(self):
        big = Ellipsoid([0.0, 0.0], np.eye(2) / 25.0)
        J = john_normalize(PointedBody(big, np.zeros(2)))
        assert np.allclose(J.linear, np.eye(2) / 5.0, atol=1e-9)

    def test_anisotropic_ellipse(self):
        e = make_builtin("ellipse")  # semi-axes 1 and 1/2
        J = john_normalize(PointedBody(e, np.zeros(2)))
        img = apply_affine(J, e)
        for u in np.eye(2):
            assert img.support(u) == pytest.approx(1.0, abs=1e-9)

    def test_square_identity(self):
        J = john_normalize(PointedBody(make_builtin("square"), np.zeros(2)))
        assert np.allclose(J.linear, np.eye(2), atol=1e-6)

    def test_basepoint_maps_to_origin(self):
        sq = make_builtin("square")
        p = np.array([0.3, -0.2])
        J = john_normalize(PointedBody(sq, p))
        assert np.allclose(J(p), 0.0, atol=1e-12)

    def test_sandwich_invariant(self):
        # normalized symmetrization sits between the unit ball and sqrt(d)*ball
        from convextube.bodies import HPolytope
        from convextube.rescaling import _symmetrized_constraints
        body = make_builtin("simplex")
        p = np.array([0.2, 0.25])
        J = john_normalize(PointedBody(body, p))
        A, b = _symmetrized_constraints(body, p)
        sym = apply_affine(AffineMap(J.linear, np.zeros(2)), HPolytope(A, b))
        for u in direction_net(2, n=64):
            s = sym.support(u)
            assert s >= 1.0 - 1e-4
            assert s <= math.sqrt(body.dim) + 1e-4

    def test_improper_body_rejected(self):
        from convextube.bodies import HPolytope
        slab = HPolytope([[1.0, 0.0], [-1.0, 0.0]], [1.0, 1.0])
        with pytest.raises(ValueError):
            john_normalize(PointedBody(slab, np.zeros(2)))


class TestBlowupSpec:
    def test_rates_must_increase(self):
        with pytest.raises(ValueError):
            BlowupSpec(make_builtin("square"), [1.0, 1.0], [4.0, 2.0])

    def test_bad_normalization(self):
        with pytest.raises(ValueError):
            BlowupSpec(make_builtin("square"), [1.0, 1.0], [2.0], normalization="x")

    def test_interior_target_rejected(self):
        spec = BlowupSpec(make_builtin("square"), [0.0, 0.0], [2.0])
        with pytest.raises(ValueError, match="interior"):
            blowup_sequence(spec)

    def test_off_boundary_target_rejected(self):
        spec = BlowupSpec(make_builtin("square"), [3.0, 3.0], [2.0])
        with pytest.raises(ValueError, match="boundary"):
            blowup_sequence(spec)


class TestBlowupLimits:
    def test_target_maps_near_origin(self):
        sq = make_builtin("square")
        spec = BlowupSpec(sq, np.array([1.0, 0.25]), [2.0, 8.0], seed=0)
        for A, pb in blowup_sequence(spec):
            assert np.allclose(A(np.array([1.0, 0.25])), 0.0, atol=1e-12)
            assert pb.body.contains(pb.basepoint)

    def test_square_edge_gives_halfplane(self):
        sq = make_builtin("square")
        spec = BlowupSpec(sq, np.array([1.0, 0.25]), [2.0 ** k for k in range(1, 7)],
                          seed=0)
        seq = [pb for _, pb in blowup_sequence(spec)]
        lim = orbit_limit(seq, 2.0, tol=1e-6)
        assert lim.cauchy
        # limit is {x1 < 0} truncated: support is 0 toward +e1, 2 sideways
        net = lim.limit
        i = int(np.argmax(net.dirs @ np.array([1.0, 0.0])))
        assert net.values[i] == pytest.approx(0.0, abs=1e-9)
        j = int(np.argmax(net.dirs @ np.array([0.0, 1.0])))
        assert net.values[j] == pytest.approx(2.0, abs=1e-3)

    def test_square_vertex_gives_quadrant(self):
        sq = make_builtin("square")
        spec = BlowupSpec(sq, np.array([1.0, 1.0]), [2.0 ** k for k in range(1, 7)],
                          seed=0)
        seq = [pb for _, pb in blowup_sequence(spec)]
        lim = orbit_limit(seq, 2.0, tol=1e-6)
        assert lim.cauchy
        v = limit_strictness_verdict(lim.limit, 1e-6)
        assert not v.strict
        assert v.witness.length >= 0.5

    def test_disk_boundary_flattens(self):
        # un-normalized blow-up of the disk converges to a half-plane
        disk = make_builtin("disk")
        spec = BlowupSpec(disk, np.array([1.0, 0.0]), [2.0 ** k for k in range(1, 9)],
                          seed=0)
        seq = [pb for _, pb in blowup_sequence(spec)]
        lim = orbit_limit(seq, 2.0, tol=1e-2)
        v = limit_strictness_verdict(lim.limit, 1e-3)
        assert not v.strict

    def test_ellipse_john_normalized_stays_strict(self):
        ell = make_builtin("ellipse")
        spec = BlowupSpec(ell, np.array([1.0, 0.0]), [2.0 ** k for k in range(1, 9)],
                          normalization="john", seed=0)
        seq = [pb for _, pb in blowup_sequence(spec)]
        lim = orbit_limit(seq, 2.0, tol=1e-3)
        v = limit_strictness_verdict(lim.limit, 1e-3)
        assert v.strict and v.witness is None

    def test_orbit_limit_determinism(self):
        sq = make_builtin("square")
        def run():
            spec = BlowupSpec(sq, np.array([1.0, 1.0]), [2.0, 4.0], seed=3)
            seq = [pb for _, pb in blowup_sequence(spec)]
            return orbit_limit(seq, 2.0, tol=1e-6)
        l1, l2 = run(), run()
        assert np.array_equal(l1.limit.values, l2.limit.values)
