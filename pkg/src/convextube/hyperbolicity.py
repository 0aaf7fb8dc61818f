"""Gromov hyperbolicity statistics: four-point constant and thin triangles."""

import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert import HilbertGeometry


class MetricSample:
    """A finite metric sample: points plus a (possibly interval-valued) matrix.

    For exact distances pass a single symmetric matrix; for certified interval
    distances pass (lo, hi) matrices with lo <= hi entrywise.
    """

    def __init__(self, points, dist, dist_hi=None, slack=1e-8):
        self.points = list(points)
        lo = np.array(dist, dtype=float)
        hi = lo if dist_hi is None else np.array(dist_hi, dtype=float)
        n = lo.shape[0]
        if lo.shape != (n, n) or hi.shape != (n, n):
            raise ValueError("distance matrix must be square")
        if not np.allclose(np.diag(lo), 0.0, atol=0) or not np.allclose(np.diag(hi), 0.0, atol=0):
            raise ValueError("diagonal must be exactly zero")
        if not np.array_equal(lo, lo.T) or not np.array_equal(hi, hi.T):
            raise ValueError("distance matrices must be exactly symmetric")
        if np.any(hi < lo):
            raise ValueError("interval inversion in distance matrix")
        if np.any(lo < 0):
            raise ValueError("negative distances")
        self.lo = lo
        self.hi = hi
        self.slack = slack

    @property
    def n(self):
        return self.lo.shape[0]

    @property
    def is_interval(self):
        return self.hi is not self.lo and not np.array_equal(self.lo, self.hi)


@dataclass
class HyperbolicityReport:
    alpha: float                 # certified lower bound (pessimistic for intervals)
    alpha_optimistic: float      # upper-bound variant, equal to alpha for exact input
    witness: tuple               # (o, x, y, z) indices attaining alpha
    n_quadruples: int
    mode: str                    # "exhaustive" | "sampled"
    seed: int | None = None


def _gp(d_o_x, d_o_y, d_x_y):
    return 0.5 * (d_o_x + d_o_y - d_x_y)


def _candidate(lo, hi, o, x, y, z):
    """Certified lower bound on min{(x|z)_o, (z|y)_o} - (x|y)_o."""
    gxz = _gp(lo[o, x], lo[o, z], hi[x, z])
    gzy = _gp(lo[o, z], lo[o, y], hi[z, y])
    gxy = _gp(hi[o, x], hi[o, y], lo[x, y])
    return min(gxz, gzy) - gxy


def four_point_alpha(sample, budget=None, seed=None):
    """Best four-point constant over ordered quadruples (o, x, y, z).

    budget=None scans every quadruple of distinct indices (O(n^4)); an integer
    budget draws that many seeded quadruples.  Interval matrices yield a
    certified lower bound (alpha) and an optimistic upper variant.
    """
    n = sample.n
    if n < 4:
        raise ValueError("need at least 4 points")
    lo, hi = sample.lo, sample.hi
    if budget is None:
        return _four_point_exhaustive(lo, hi, n)
    if seed is None:
        raise ValueError("sampled mode requires a seed")
    rng = np.random.default_rng(seed)
    best = 0.0
    best_opt = 0.0
    witness = (0, 1, 2, 3)
    for _ in range(budget):
        o, x, y, z = (int(i) for i in rng.choice(n, size=4, replace=False))
        c = _candidate(lo, hi, o, x, y, z)
        if c > best:
            best = c
            witness = (o, x, y, z)
        c_opt = _candidate(hi, lo, o, x, y, z)
        if c_opt > best_opt:
            best_opt = c_opt
    return HyperbolicityReport(best, max(best_opt, best), witness, budget, "sampled", seed)


def _masked_alpha(g_min, g_sub, o, n):
    """max over x,y,z distinct (and != o) of max_z min(g_min[x,z], g_min[y,z]) - g_sub[x,y].

    Returns (value, witness (x,y,z)) with the lexicographically smallest
    (x, y, z) attaining the value.
    """
    M = np.minimum(g_min[:, None, :], g_min[None, :, :])  # (x, y, z)
    idx = np.arange(n)
    M[:, :, o] = -np.inf
    M[idx, :, idx] = -np.inf
    M[:, idx, idx] = -np.inf
    with np.errstate(invalid="ignore"):
        C = M.max(axis=2) - g_sub
    C[o, :] = -np.inf
    C[:, o] = -np.inf
    C[idx, idx] = -np.inf
    flat = int(np.argmax(C))  # row-major -> lexicographically first (x, y)
    x, y = divmod(flat, n)
    z = int(np.argmax(M[x, y]))  # first z attaining the inner max
    return float(C[x, y]), (x, y, z)


def _four_point_exhaustive(lo, hi, n):
    best = 0.0
    best_opt = 0.0
    witness = (0, 1, 2, 3)
    count = n * (n - 1) * (n - 2) * (n - 3)
    for o in range(n):
        g_lo = 0.5 * (lo[o][:, None] + lo[o][None, :] - hi)
        g_hi = 0.5 * (hi[o][:, None] + hi[o][None, :] - lo)
        val, (x, y, z) = _masked_alpha(g_lo, g_hi, o, n)
        if val > best:
            best = val
            witness = (o, x, y, z)
        val_opt, _ = _masked_alpha(g_hi, g_lo, o, n)
        if val_opt > best_opt:
            best_opt = val_opt
    return HyperbolicityReport(best, max(best_opt, best), witness, count, "exhaustive")


def thin_triangle_delta(geodesic, d, triangle, resolution):
    """Max over sampled side points of the min distance to the other two sides.

    geodesic(a, b, s) must return the point at arclength s on the side [a, b]
    and be additively consistent with d.  The result is a lower bound on the
    true thinness constant of the triangle.
    """
    a, b, c = triangle
    sides = [(a, b), (b, c), (c, a)]
    samples = []
    for p, q in sides:
        length = d(p, q)
        k = max(2, int(math.ceil(length / resolution)) + 1)
        ss = np.linspace(0.0, length, k)
        pts = [geodesic(p, q, s) for s in ss]
        # consistency probe at the midpoint
        mid = pts[len(pts) // 2]
        if abs(d(p, mid) + d(mid, q) - length) > 1e-6:
            raise ValueError("geodesic oracle inconsistent with the distance oracle")
        samples.append(pts)
    delta = 0.0
    for i in range(3):
        others = samples[(i + 1) % 3] + samples[(i + 2) % 3]
        for u in samples[i]:
            delta = max(delta, min(d(u, v) for v in others))
    return delta


@dataclass
class ProfileRow:
    scale: float
    n_points: int
    n_quadruples: int
    alpha_lo: float
    alpha_hi: float


@dataclass
class ScalingProfile:
    rows: list[ProfileRow] = field(default_factory=list)
    slope: float = 0.0

    def alphas(self):
        return [r.alpha_lo for r in self.rows]


def delta_scaling_profile(body, basepoint, scales, n_points=48, n_quadruples=10000, seed=0):
    """Four-point alpha of Hilbert-ball samples of growing radius, plus a slope.

    Points are drawn by shooting Hilbert geodesics from the basepoint in seeded
    random directions; half land on the sphere of radius scale (where extremal
    quadruples live), half at arclengths uniform in [0, scale].  The slope is a
    least-squares fit over the upper half of the scales, past the small-scale
    transient where alpha is capped by the sample diameter: hyperbolic spaces
    plateau there while flat directions keep growing linearly.
    """
    scales = list(scales)
    if any(s <= 0 for s in scales) or sorted(scales) != scales:
        raise ValueError("scales must be positive and increasing")
    if n_points < 4:
        raise ValueError("need at least 4 sample points per scale")
    geom = HilbertGeometry(body)
    base = np.asarray(basepoint, dtype=float)
    profile = ScalingProfile()
    for k, s in enumerate(scales):
        rng = np.random.default_rng((seed, k))
        pts = [base]
        while len(pts) < n_points:
            v = rng.standard_normal(body.dim)
            r = s if len(pts) % 2 else rng.uniform(0.0, s)
            pts.append(geom.point_at_distance(base, v, r))
        n = len(pts)
        D = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = geom.distance(pts[i], pts[j])
        rep = four_point_alpha(MetricSample(pts, D), budget=n_quadruples, seed=(seed, k, 1))
        profile.rows.append(ProfileRow(s, n, rep.n_quadruples, rep.alpha, rep.alpha_optimistic))
    xs = np.array(scales)
    ys = np.array(profile.alphas())
    tail = len(xs) // 2 if len(xs) >= 4 else 0
    if len(xs) - tail < 2:
        profile.slope = 0.0
    else:
        profile.slope = float(np.polyfit(xs[tail:], ys[tail:], 1)[0])
    return profile
