"""Convex bodies in R^d: representations, oracles, affine maps.

All bodies are *open* convex sets: membership uses strict inequalities and
boundary points are outside.  Every value is immutable after construction and
every operation is a pure function of its inputs.
"""

import math

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

# Bracket search for oracle ray exits declares +inf past this parameter.
RAY_INF_CAP = 1e12
RAY_REL_TOL = 1e-12


class DimensionMismatch(ValueError):
    pass


class NotInterior(ValueError):
    pass


def _as_point(x, dim):
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise DimensionMismatch(f"expected point of dim {dim}, got shape {x.shape}")
    return x


class AffineMap:
    """Invertible affine map x -> linear @ x + translation."""

    def __init__(self, linear, translation):
        self.linear = np.array(linear, dtype=float)
        self.translation = np.array(translation, dtype=float)
        d = self.translation.shape[0]
        if self.linear.shape != (d, d):
            raise DimensionMismatch("linear part shape does not match translation")
        det = np.linalg.det(self.linear)
        if det == 0.0 or not np.isfinite(det):
            raise ValueError("affine map must have invertible linear part")
        self.linear.setflags(write=False)
        self.translation.setflags(write=False)

    @property
    def dim(self):
        return self.translation.shape[0]

    def __call__(self, x):
        return self.linear @ np.asarray(x, dtype=float) + self.translation

    def inverse(self):
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.translation)

    def compose(self, other):
        """self after other: x -> self(other(x))."""
        return AffineMap(self.linear @ other.linear,
                         self.linear @ other.translation + self.translation)

    @staticmethod
    def identity(dim):
        return AffineMap(np.eye(dim), np.zeros(dim))

    @staticmethod
    def scaling(factor, dim, center=None):
        c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
        return AffineMap(factor * np.eye(dim), c - factor * c)

    def __repr__(self):
        return f"AffineMap(linear={self.linear.tolist()}, translation={self.translation.tolist()})"


class ConvexBody:
    """Abstract open convex body."""

    dim = None

    def contains(self, x):
        raise NotImplementedError

    def ray_exit(self, x, v):
        """sup{s > 0 : x + s v inside}; +inf iff v is a recession direction."""
        t, _ = self.ray_exit_normal(x, v)
        return t

    def ray_exit_normal(self, x, v):
        """(exit parameter, outward unit normal at the exit point or None)."""
        raise NotImplementedError

    def ray_exit_batch(self, x, dirs):
        """Exit parameters for many directions from one interior point."""
        dirs = np.asarray(dirs, dtype=float)
        return np.array([self.ray_exit(x, v) for v in dirs])

    def support(self, u):
        """sup over the body of <x, u>; +inf iff unbounded in direction u."""
        raise NotImplementedError

    def interior_point(self):
        raise NotImplementedError

    def _check_ray_args(self, x, v):
        x = _as_point(x, self.dim)
        v = _as_point(v, self.dim)
        if not np.any(v != 0.0):
            raise ValueError("zero direction")
        if not self.contains(x):
            raise NotInterior(f"{x} is not an interior point")
        return x, v


class HPolytope(ConvexBody):
    """{x : <x, n_i> < c_i} with unit normals n_i."""

    def __init__(self, normals, offsets):
        A = np.array(normals, dtype=float)
        b = np.array(offsets, dtype=float)
        if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
            raise ValueError("normals/offsets shape mismatch")
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("zero normal")
        # normalize defensively; constructor contract is unit normals
        A = A / norms[:, None]
        b = b / norms
        self.normals = A
        self.offsets = b
        self.normals.setflags(write=False)
        self.offsets.setflags(write=False)
        self.dim = A.shape[1]
        self._vertices = None  # lazy; False once known unbounded

    def contains(self, x):
        x = _as_point(x, self.dim)
        return bool(np.all(self.normals @ x < self.offsets))

    def ray_exit_normal(self, x, v):
        x, v = self._check_ray_args(x, v)
        num = self.offsets - self.normals @ x
        den = self.normals @ v
        with np.errstate(divide="ignore"):
            t_facet = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), np.inf)
        i = int(np.argmin(t_facet))
        t = float(t_facet[i])
        if not np.isfinite(t):
            return math.inf, None
        return t, self.normals[i].copy()

    def ray_exit_batch(self, x, dirs):
        x = _as_point(x, self.dim)
        if not self.contains(x):
            raise NotInterior(f"{x} is not an interior point")
        dirs = np.asarray(dirs, dtype=float)
        num = self.offsets - self.normals @ x          # (m,)
        den = dirs @ self.normals.T                    # (k, m)
        pos = den > 0.0
        with np.errstate(divide="ignore"):
            t = np.where(pos, num[None, :] / np.where(pos, den, 1.0), np.inf)
        return t.min(axis=1)

    def _vertex_cache(self):
        # vertex enumeration once, so support queries become dot products
        if self._vertices is None:
            try:
                from scipy.spatial import HalfspaceIntersection
                hs = np.hstack([self.normals, -self.offsets[:, None]])
                inter = HalfspaceIntersection(hs, self.interior_point())
                V = inter.intersections
                if np.all(np.isfinite(V)):
                    self._vertices = V
                else:
                    self._vertices = False
            except Exception:
                self._vertices = False
        return self._vertices

    def support(self, u):
        u = _as_point(u, self.dim)
        V = self._vertex_cache()
        if V is not False:
            return float(np.max(V @ u))
        # LP: max <x,u> s.t. A x <= b
        res = linprog(-u, A_ub=self.normals, b_ub=self.offsets,
                      bounds=[(None, None)] * self.dim, method="highs")
        if res.status == 3:  # unbounded
            return math.inf
        if not res.success:
            raise RuntimeError(f"support LP failed: {res.message}")
        return float(-res.fun)

    def interior_point(self):
        # Chebyshev center, box-bounded to keep the LP bounded for cones
        d = self.dim
        A = np.hstack([self.normals, np.ones((self.normals.shape[0], 1))])
        c = np.zeros(d + 1)
        c[-1] = -1.0
        bounds = [(-1e8, 1e8)] * d + [(0, 1e8)]
        res = linprog(c, A_ub=A, b_ub=self.offsets, bounds=bounds, method="highs")
        if not res.success or res.x[-1] <= 0:
            raise ValueError("h-polytope has empty interior")
        return res.x[:d]


class VPolytope(ConvexBody):
    """Interior of the convex hull of finitely many vertices (bounded only)."""

    def __init__(self, vertices):
        V = np.array(vertices, dtype=float)
        if V.ndim != 2:
            raise ValueError("vertices must be a point list")
        self.vertices = V
        self.vertices.setflags(write=False)
        self.dim = V.shape[1]
        centered = V - V.mean(axis=0)
        if np.linalg.matrix_rank(centered, tol=1e-10) < self.dim:
            raise ValueError("vertices must be affinely full-dimensional (>= dim+1 independent)")
        if self.dim == 1:
            lo, hi = float(V.min()), float(V.max())
            self._facets = HPolytope([[1.0], [-1.0]], [hi, -lo])
        else:
            hull = ConvexHull(V)
            # hull equations: a x + b <= 0
            self._facets = HPolytope(hull.equations[:, :-1], -hull.equations[:, -1])

    def contains(self, x):
        return self._facets.contains(x)

    def ray_exit_normal(self, x, v):
        return self._facets.ray_exit_normal(x, v)

    def support(self, u):
        u = _as_point(u, self.dim)
        return float(np.max(self.vertices @ u))

    def interior_point(self):
        return self.vertices.mean(axis=0)

    def as_hpolytope(self):
        return self._facets


class Ellipsoid(ConvexBody):
    """{x : (x-c)^T Q (x-c) < 1} with Q symmetric positive definite."""

    def __init__(self, center, shape):
        self.center = np.array(center, dtype=float)
        self.shape_matrix = np.array(shape, dtype=float)
        self.dim = self.center.shape[0]
        Q = self.shape_matrix
        if Q.shape != (self.dim, self.dim):
            raise DimensionMismatch("shape matrix has wrong dimensions")
        if not np.allclose(Q, Q.T, atol=1e-12):
            raise ValueError("shape matrix must be symmetric")
        eig = np.linalg.eigvalsh(Q)
        if eig[0] <= 0:
            raise ValueError("shape matrix must be positive definite")
        self.center.setflags(write=False)
        self.shape_matrix.setflags(write=False)

    def _q(self, x):
        y = x - self.center
        return float(y @ self.shape_matrix @ y)

    def contains(self, x):
        x = _as_point(x, self.dim)
        return self._q(x) < 1.0

    def ray_exit_normal(self, x, v):
        x, v = self._check_ray_args(x, v)
        y = x - self.center
        Q = self.shape_matrix
        a = v @ Q @ v
        b = v @ Q @ y
        g = y @ Q @ y
        t = (-b + math.sqrt(b * b + a * (1.0 - g))) / a
        p = x + t * v
        n = Q @ (p - self.center)
        return float(t), n / np.linalg.norm(n)

    def ray_exit_batch(self, x, dirs):
        x = _as_point(x, self.dim)
        if not self.contains(x):
            raise NotInterior(f"{x} is not an interior point")
        dirs = np.asarray(dirs, dtype=float)
        y = x - self.center
        Q = self.shape_matrix
        QV = dirs @ Q
        a = np.einsum("ij,ij->i", QV, dirs)
        b = QV @ y
        g = y @ Q @ y
        return (-b + np.sqrt(b * b + a * (1.0 - g))) / a

    def support(self, u):
        u = _as_point(u, self.dim)
        Qinv = np.linalg.inv(self.shape_matrix)
        return float(self.center @ u + math.sqrt(u @ Qinv @ u))

    def interior_point(self):
        return self.center.copy()


class SmoothOracle(ConvexBody):
    """Body given by membership and support callables plus a resolution hint."""

    def __init__(self, dim, membership, support_fn, interior_hint, resolution=1e-9, name=None):
        self.dim = dim
        self._membership = membership
        self._support = support_fn
        self._hint = np.array(interior_hint, dtype=float)
        self.resolution = resolution
        self.name = name

    def contains(self, x):
        x = _as_point(x, self.dim)
        return bool(self._membership(x))

    def ray_exit_normal(self, x, v):
        x, v = self._check_ray_args(x, v)
        # exponential bracket, then bisection to relative tolerance
        t_hi = 1.0
        t_lo = 0.0
        while self.contains(x + t_hi * v):
            t_lo = t_hi
            t_hi *= 2.0
            if t_hi > RAY_INF_CAP:
                return math.inf, None
        while t_hi - t_lo > RAY_REL_TOL * max(1.0, t_hi):
            mid = 0.5 * (t_lo + t_hi)
            if self.contains(x + mid * v):
                t_lo = mid
            else:
                t_hi = mid
        return 0.5 * (t_lo + t_hi), None

    def support(self, u):
        u = _as_point(u, self.dim)
        return float(self._support(u))

    def interior_point(self):
        return self._hint.copy()


class AffineImage(ConvexBody):
    """Image A(B) of an inner body under an invertible affine map."""

    def __init__(self, map_, inner):
        if map_.dim != inner.dim:
            raise DimensionMismatch("map and body dimensions differ")
        self.map = map_
        self.inner = inner
        self.dim = inner.dim
        self._inv = map_.inverse()

    def contains(self, x):
        x = _as_point(x, self.dim)
        return self.inner.contains(self._inv(x))

    def ray_exit_normal(self, x, v):
        x, v = self._check_ray_args(x, v)
        t, n = self.inner.ray_exit_normal(self._inv(x), self._inv.linear @ v)
        if n is not None:
            n = self._inv.linear.T @ n
            n = n / np.linalg.norm(n)
        return t, n

    def ray_exit_batch(self, x, dirs):
        dirs = np.asarray(dirs, dtype=float)
        return self.inner.ray_exit_batch(self._inv(x), dirs @ self._inv.linear.T)

    def support(self, u):
        u = _as_point(u, self.dim)
        inner_sup = self.inner.support(self.map.linear.T @ u)
        if not math.isfinite(inner_sup):
            return math.inf
        return float(self.map.translation @ u) + inner_sup

    def interior_point(self):
        return self.map(self.inner.interior_point())


class TubeBody(ConvexBody):
    """Realification of a tube over a base C in R^d.

    Coordinates are interleaved (x1, y1, ..., xd, yd); membership constrains
    only the x-part to the base, the y-part is free.
    """

    def __init__(self, base):
        self.base = base
        self.dim = 2 * base.dim

    @staticmethod
    def split(p):
        p = np.asarray(p, dtype=float)
        return p[0::2], p[1::2]

    def contains(self, p):
        p = _as_point(p, self.dim)
        xs, _ = self.split(p)
        return self.base.contains(xs)

    def ray_exit_normal(self, p, v):
        p, v = self._check_ray_args(p, v)
        xs, _ = self.split(p)
        vx, _ = self.split(v)
        if not np.any(np.abs(vx) > 0.0):
            return math.inf, None
        t, n = self.base.ray_exit_normal(xs, vx)
        if n is None:
            return t, None
        full = np.zeros(self.dim)
        full[0::2] = n
        return t, full

    def ray_exit_batch(self, p, dirs):
        p = _as_point(p, self.dim)
        dirs = np.asarray(dirs, dtype=float)
        xs, _ = self.split(p)
        vx = dirs[:, 0::2]
        out = np.full(dirs.shape[0], math.inf)
        moving = np.any(vx != 0.0, axis=1)
        if np.any(moving):
            out[moving] = self.base.ray_exit_batch(xs, vx[moving])
        return out

    def support(self, u):
        u = _as_point(u, self.dim)
        ux, uy = self.split(u)
        if np.any(np.abs(uy) > 0.0):
            return math.inf
        return self.base.support(ux)

    def interior_point(self):
        p = np.zeros(self.dim)
        p[0::2] = self.base.interior_point()
        return p


class PointedBody:
    """A body together with an interior basepoint."""

    def __init__(self, body, basepoint):
        basepoint = _as_point(basepoint, body.dim)
        if not body.contains(basepoint):
            raise NotInterior("basepoint is not interior")
        self.body = body
        self.basepoint = basepoint


# ---------------------------------------------------------------------------
# free-function operations


def contains(body, x):
    return body.contains(x)


def ray_exit(body, x, v):
    return body.ray_exit(x, v)


def support(body, u):
    return body.support(u)


def apply_affine(map_, body):
    """Affine image, rewritten exactly for the closed-form representations."""
    if map_.dim != body.dim:
        raise DimensionMismatch("map and body dimensions differ")
    if isinstance(body, HPolytope):
        Linv = np.linalg.inv(map_.linear)
        new_normals = body.normals @ Linv  # rows n_i^T L^{-1}
        new_offsets = body.offsets + new_normals @ map_.translation
        return HPolytope(new_normals, new_offsets)
    if isinstance(body, VPolytope):
        return VPolytope(body.vertices @ map_.linear.T + map_.translation)
    if isinstance(body, Ellipsoid):
        Linv = np.linalg.inv(map_.linear)
        return Ellipsoid(map_(body.center), Linv.T @ body.shape_matrix @ Linv)
    if isinstance(body, AffineImage):
        return AffineImage(map_.compose(body.map), body.inner)
    return AffineImage(map_, body)


def is_properly_convex(body, n_random=32, seed=0):
    """True iff the body contains no full affine line.

    Exact for the closed-form representations; a sampled certificate for
    oracle bodies (a detected line is a definitive False).
    """
    if isinstance(body, (VPolytope, Ellipsoid)):
        return True
    if isinstance(body, HPolytope):
        return np.linalg.matrix_rank(body.normals, tol=1e-10) == body.dim
    if isinstance(body, AffineImage):
        return is_properly_convex(body.inner, n_random, seed)
    if isinstance(body, TubeBody):
        # realification always contains the imaginary-fiber lines
        return False
    d = body.dim
    rng = np.random.default_rng(seed)
    dirs = list(np.eye(d)) + [rng.standard_normal(d) for _ in range(n_random)]
    for u in dirs:
        u = u / np.linalg.norm(u)
        if not math.isfinite(body.support(u)) and not math.isfinite(body.support(-u)):
            x0 = body.interior_point()
            if not math.isfinite(body.ray_exit(x0, u)) and not math.isfinite(body.ray_exit(x0, -u)):
                return False
    return True


def direction_net(dim, n=None, angular_spacing=None):
    """Deterministic near-uniform unit direction net."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        if n is None:
            spacing = 1e-3 if angular_spacing is None else angular_spacing
            n = int(math.ceil(2 * math.pi / spacing))
        theta = 2 * math.pi * np.arange(n) / n
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if n is None:
        n = 4096
    if dim == 3:
        # Fibonacci sphere
        i = np.arange(n)
        phi = math.pi * (3.0 - math.sqrt(5.0)) * i
        z = 1.0 - 2.0 * (i + 0.5) / n
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    # seeded low-discrepancy fallback for d > 3
    rng = np.random.default_rng(12345)
    g = rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=1)[:, None]


def _ball_exit(x, v, R):
    """Positive parameter where |x + t v| = R (requires |x| < R, |v| = finite)."""
    a = float(v @ v)
    b = float(x @ v)
    c = float(x @ x) - R * R
    return (-b + math.sqrt(b * b - a * c)) / a


def _truncated_boundary(body, R, dirs, x0=None):
    """Sample boundary points of closure(body) intersected with B_R."""
    if x0 is None:
        x0 = body.interior_point()
    if np.linalg.norm(x0) >= R:
        # march toward the origin while staying inside
        v = -x0
        t = body.ray_exit(x0, v)
        step = min(0.9, 0.5 * t if math.isfinite(t) else 0.9)
        x0 = x0 + step * v
        if np.linalg.norm(x0) >= R:
            raise ValueError("could not find an interior point inside the truncation ball")
    pts = np.empty((len(dirs), body.dim))
    for i, v in enumerate(dirs):
        t = body.ray_exit(x0, v)
        tb = _ball_exit(x0, v, R)
        pts[i] = x0 + min(t, tb) * v
    return pts


def truncated_support_values(body, R, dirs, x0=None):
    """Support function of closure(body & B_R) sampled on a direction net."""
    pts = _truncated_boundary(body, R, dirs, x0=x0)
    out = np.empty(len(dirs))
    block = 512
    for i in range(0, len(dirs), block):
        out[i:i + block] = np.max(pts @ dirs[i:i + block].T, axis=0)
    return out


def local_hausdorff(body1, body2, R, n_dirs=None, angular_spacing=None):
    """Hausdorff distance between ball-truncations, via support sampling.

    Approximation error is bounded by the net resolution times R.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    if body1.dim != body2.dim:
        raise DimensionMismatch("bodies have different dimensions")
    dirs = direction_net(body1.dim, n=n_dirs, angular_spacing=angular_spacing)
    h1 = truncated_support_values(body1, R, dirs)
    h2 = truncated_support_values(body2, R, dirs)
    return float(np.max(np.abs(h1 - h2)))


class SegmentWitness:
    """Two boundary points whose joining segment lies in the boundary (up to tol)."""

    def __init__(self, p, q):
        self.p = np.asarray(p, dtype=float)
        self.q = np.asarray(q, dtype=float)

    @property
    def length(self):
        return float(np.linalg.norm(self.q - self.p))

    def __repr__(self):
        return f"SegmentWitness({self.p.tolist()}, {self.q.tolist()}, length={self.length:.6g})"


def _to_hpolytope(body):
    if isinstance(body, HPolytope):
        return body
    if isinstance(body, VPolytope):
        return body.as_hpolytope()
    if isinstance(body, AffineImage):
        inner = _to_hpolytope(body.inner)
        if inner is not None:
            return apply_affine(body.map, inner)
    return None


def detect_boundary_segment(body, window, tol, n_samples=512, seed=0):
    """Search for a nontrivial boundary segment within the window ball.

    Returns a SegmentWitness (definitive non-strictness up to tol) or None
    (no segment found at this resolution).  A witness must have length at
    least sqrt(8 * tol * window): shorter chords with midpoint sag below tol
    are indistinguishable from curvature at the working resolution.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    min_len = math.sqrt(8.0 * tol * window)
    poly = _to_hpolytope(body)
    if poly is not None:
        return _polytope_segment(poly, window, min_len)
    return _sampled_segment(body, window, tol, min_len, n_samples, seed)


def _polytope_segment(poly, window, min_len):
    x0 = poly.interior_point()
    dirs = direction_net(poly.dim, n=max(1024, 4 * poly.normals.shape[0]) if poly.dim == 2 else 4096)
    best = None
    per_facet = {}
    for v in dirs:
        num = poly.offsets - poly.normals @ x0
        den = poly.normals @ v
        with np.errstate(divide="ignore"):
            t_facet = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), np.inf)
        i = int(np.argmin(t_facet))
        t = float(t_facet[i])
        if not math.isfinite(t):
            continue
        p = x0 + t * v
        if np.linalg.norm(p) <= window:
            per_facet.setdefault(i, []).append(p)
    for pts in per_facet.values():
        if len(pts) < 2:
            continue
        arr = np.array(pts)
        # farthest pair on this facet (points are collinear/coplanar on the facet)
        com = arr.mean(axis=0)
        i = int(np.argmax(np.linalg.norm(arr - com, axis=1)))
        j = int(np.argmax(np.linalg.norm(arr - arr[i], axis=1)))
        w = SegmentWitness(arr[i], arr[j])
        if w.length >= min_len and (best is None or w.length > best.length):
            best = w
    return best


def _sampled_segment(body, window, tol, min_len, n_samples, seed):
    x0 = body.interior_point()
    dirs = direction_net(body.dim, n=n_samples)
    pts = []
    for v in dirs:
        t = body.ray_exit(x0, v)
        if math.isfinite(t):
            p = x0 + t * v
            if np.linalg.norm(p) <= window:
                pts.append(p)
    n = len(pts)
    for i in range(n):
        stride = 1
        while i + stride < n:
            j = i + stride
            p, q = pts[i], pts[j]
            if np.linalg.norm(q - p) >= min_len:
                m = 0.5 * (p + q)
                if np.linalg.norm(m - x0) > 1e-12 and body.contains(m):
                    t = body.ray_exit(x0, m - x0)
                    b = x0 + t * (m - x0)
                    if np.linalg.norm(b - m) <= tol:
                        return _extend_segment(body, x0, m, q - p, tol)
            stride *= 2
    return None


def _extend_segment(body, x0, m, direction, tol):
    # push the near-boundary midpoint slightly inward, then take the full chord
    v = direction / np.linalg.norm(direction)
    inward = x0 - m
    inward = inward / np.linalg.norm(inward)
    m_in = m + min(tol, 1e-9) * inward
    if not body.contains(m_in):
        m_in = m
    t_plus = body.ray_exit(m_in, v)
    t_minus = body.ray_exit(m_in, -v)
    t_plus = t_plus if math.isfinite(t_plus) else 1e6
    t_minus = t_minus if math.isfinite(t_minus) else 1e6
    return SegmentWitness(m_in - t_minus * v, m_in + t_plus * v)


# ---------------------------------------------------------------------------
# builtin bodies and the JSON body specification


def _pz_hyperbola():
    def member(x):
        return x[0] > 0 and x[1] > 0 and x[0] * x[1] > 1

    def supp(u):
        a, b = -u[0], -u[1]
        if a < 0 or b < 0:
            return math.inf
        if a == 0 or b == 0:
            return 0.0
        return -2.0 * math.sqrt(a * b)

    return SmoothOracle(2, member, supp, interior_hint=[2.0, 2.0], name="pz-hyperbola")


def make_builtin(name):
    builtins = {
        "square": lambda: HPolytope(np.vstack([np.eye(2), -np.eye(2)]), np.ones(4)),
        "cube": lambda: HPolytope(np.vstack([np.eye(3), -np.eye(3)]), np.ones(6)),
        "disk": lambda: Ellipsoid([0.0, 0.0], np.eye(2)),
        "ball": lambda: Ellipsoid([0.0, 0.0, 0.0], np.eye(3)),
        "ellipse": lambda: Ellipsoid([0.0, 0.0], np.diag([1.0, 4.0])),
        "simplex": lambda: VPolytope([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
        "quadrant": lambda: HPolytope([[-1.0, 0.0], [0.0, -1.0]], [0.0, 0.0]),
        "strip": lambda: HPolytope([[1.0, 0.0], [-1.0, 0.0]], [1.0, 1.0]),
        "pz-hyperbola": _pz_hyperbola,
    }
    if name not in builtins:
        raise ValueError(f"unknown builtin body {name!r}; valid builtins: {', '.join(sorted(builtins))}")
    return builtins[name]()


BUILTIN_NAMES = ("square", "cube", "disk", "ball", "ellipse", "simplex",
                 "quadrant", "strip", "pz-hyperbola")


def body_from_spec(spec):
    """Parse the JSON body specification; unknown fields are rejected."""
    if isinstance(spec, str):
        return make_builtin(spec)
    if not isinstance(spec, dict):
        raise ValueError("body spec must be a dict or builtin name")
    kind = spec.get("type")
    if kind is None:
        raise ValueError("body spec missing required field 'type'")
    allowed = {
        "h-polytope": {"type", "normals", "offsets"},
        "v-polytope": {"type", "vertices"},
        "ellipsoid": {"type", "center", "shape"},
        "builtin": {"type", "name"},
    }
    if kind not in allowed:
        raise ValueError(f"unknown body type {kind!r}; valid types: {', '.join(sorted(allowed))}")
    extra = set(spec) - allowed[kind]
    if extra:
        raise ValueError(f"unknown field(s) for {kind!r}: {', '.join(sorted(extra))}")
    missing = allowed[kind] - set(spec)
    if missing:
        raise ValueError(f"missing field(s) for {kind!r}: {', '.join(sorted(missing))}")
    if kind == "h-polytope":
        return HPolytope(spec["normals"], spec["offsets"])
    if kind == "v-polytope":
        return VPolytope(spec["vertices"])
    if kind == "ellipsoid":
        return Ellipsoid(spec["center"], spec["shape"])
    return make_builtin(spec["name"])
