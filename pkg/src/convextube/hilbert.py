"""Hilbert (cross-ratio) distance, segment geodesics, Gromov products."""

import math

import numpy as np

from .bodies import NotInterior, is_properly_convex

# Points closer than this relative threshold are treated as equal.
DEGENERATE_REL = 1e-14


class HilbertGeometry:
    """A properly convex body with its Hilbert metric.

    Distances use the 1/2 log normalization, so the unit disk carries the
    curvature -1 Klein model and values are directly comparable with the
    Kobayashi normalization arctanh on the disk.
    """

    def __init__(self, body):
        if not is_properly_convex(body):
            raise ValueError("Hilbert metric requires a properly convex body")
        self.body = body

    def distance(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s = float(np.linalg.norm(y - x))
        if s < DEGENERATE_REL * (1.0 + np.linalg.norm(x)):
            return 0.0
        if not self.body.contains(x):
            raise NotInterior(f"{x} is not interior")
        if not self.body.contains(y):
            raise NotInterior(f"{y} is not interior")
        v = (y - x) / s
        # exits measured from both endpoints: the ratios |x-b|/|y-b| and
        # |y-a|/|x-a| then never subtract nearly equal floats, which keeps
        # full precision when x or y sits close to the boundary
        t_plus = self.body.ray_exit(x, v)     # |x - b|
        t_minus = self.body.ray_exit(x, -v)   # |x - a|
        if not math.isfinite(t_plus) and not math.isfinite(t_minus):
            raise RuntimeError("both chord endpoints infinite on a properly convex body")
        val = 0.0
        if math.isfinite(t_plus):
            val += math.log(t_plus / self.body.ray_exit(y, v))      # |x-b| / |y-b|
        if math.isfinite(t_minus):
            val += math.log(self.body.ray_exit(y, -v) / t_minus)    # |y-a| / |x-a|
        return 0.5 * val

    def geodesic_point(self, x, y, s):
        """Point p on [x, y] with distance(x, p) = s (unit-speed segment geodesic)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = self.distance(x, y)
        if s < -1e-12 or s > total + 1e-12:
            raise ValueError(f"arclength {s} outside [0, {total}]")
        if s <= 0:
            return x.copy()
        if s >= total:
            return y.copy()
        lo, hi = 0.0, 1.0
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            if self.distance(x, x + mid * (y - x)) < s:
                lo = mid
            else:
                hi = mid
        return x + 0.5 * (lo + hi) * (y - x)

    def point_at_distance(self, x, v, s):
        """Point at Hilbert distance s from x along the ray x + t v."""
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        if s <= 0:
            return x.copy()
        t_exit = self.body.ray_exit(x, v)
        if math.isfinite(t_exit):
            # bisect on the chord fraction; distance is monotone and -> inf
            lo, hi = 0.0, 1.0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if self.distance(x, x + mid * t_exit * v) < s:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < 1e-13:
                    break
            return x + 0.5 * (lo + hi) * t_exit * v
        # recession direction: bracket then bisect on the parameter itself
        t_hi = 1.0
        while self.distance(x, x + t_hi * v) < s:
            t_hi *= 2.0
            if t_hi > 1e15:
                raise RuntimeError("distance does not reach target along ray")
        t_lo = t_hi / 2.0 if t_hi > 1.0 else 0.0
        for _ in range(200):
            mid = 0.5 * (t_lo + t_hi)
            if self.distance(x, x + mid * v) < s:
                t_lo = mid
            else:
                t_hi = mid
            if t_hi - t_lo < 1e-12 * max(1.0, t_hi):
                break
        return x + 0.5 * (t_lo + t_hi) * v


def gromov_product(d, o, x, y):
    """(x|y)_o = (d(o,x) + d(o,y) - d(x,y)) / 2 for a symmetric distance oracle d."""
    return 0.5 * (d(o, x) + d(o, y) - d(x, y))
