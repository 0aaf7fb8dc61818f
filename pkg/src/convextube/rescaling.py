"""Affine normalization of pointed bodies and blow-up limits at boundary points."""

import math
from dataclasses import dataclass, field

import cvxpy as cp
import numpy as np

from . import bodies as bd
from .bodies import (AffineMap, Ellipsoid, HPolytope, PointedBody,
                     apply_affine, detect_boundary_segment, direction_net,
                     is_properly_convex, truncated_support_values)

JOHN_TOL = 1e-8


def _symmetrized_constraints(body, basepoint, n_tangents=512):
    """H-representation (unit normals, offsets) of (B - p) & -(B - p)."""
    poly = bd._to_hpolytope(body)
    if poly is not None:
        A = poly.normals
        b = poly.offsets - A @ basepoint
    else:
        # tangent-halfplane outer approximation from support values
        dirs = direction_net(body.dim, n=n_tangents)
        b = np.array([body.support(u) for u in dirs]) - dirs @ basepoint
        finite = np.isfinite(b)
        A, b = dirs[finite], b[finite]
    A = np.vstack([A, -A])
    b = np.concatenate([b, b])
    if np.any(b <= 0):
        raise ValueError("basepoint is not interior")
    return A, b


def john_normalize(pb, n_tangents=512):
    """Affine map sending the basepoint to the origin and scaling so the
    maximal-volume inscribed ellipsoid of the symmetrized image is the unit ball.

    The symmetrized image then satisfies unit ball <= image <= d * ball.
    """
    body, p = pb.body, pb.basepoint
    if not is_properly_convex(body):
        raise ValueError("john normalization requires a properly convex body")
    d = body.dim
    if isinstance(body, Ellipsoid) and np.allclose(p, body.center, atol=1e-12):
        # symmetrized body is the ellipsoid itself; closed form
        w, V = np.linalg.eigh(body.shape_matrix)
        B_inv = V @ np.diag(np.sqrt(w)) @ V.T  # Q^{1/2}, symmetric positive
        return AffineMap(B_inv, -B_inv @ p)
    A, b = _symmetrized_constraints(body, p, n_tangents=n_tangents)
    B = cp.Variable((d, d), PSD=True)
    constraints = [cp.norm(A @ B, 2, axis=1) <= b]
    prob = cp.Problem(cp.Maximize(cp.log_det(B)), constraints)
    import warnings
    with warnings.catch_warnings():
        # near-degenerate tangent constraints trip the solver's own accuracy
        # heuristic; the exact feasibility rescale below is what we rely on
        warnings.simplefilter("ignore", UserWarning)
        try:
            prob.solve(solver=cp.CLARABEL)
        except cp.SolverError:
            prob.solve(solver=cp.SCS, eps=JOHN_TOL)
    if B.value is None:
        raise RuntimeError("inscribed-ellipsoid program failed")
    Bv = 0.5 * (B.value + B.value.T)
    # rescale so the ellipsoid is exactly feasible despite solver tolerance
    ratios = np.linalg.norm(Bv @ A.T, axis=0) / b
    Bv = Bv / (max(1.0, float(np.max(ratios))) * (1.0 + 1e-9))
    B_inv = np.linalg.inv(Bv)
    B_inv = 0.5 * (B_inv + B_inv.T)
    return AffineMap(B_inv, -B_inv @ p)


@dataclass
class BlowupSpec:
    body: object
    target: np.ndarray
    rates: list
    normalization: str = "none"  # "none" | "john"
    seed: int = 0

    def __post_init__(self):
        self.target = np.asarray(self.target, dtype=float)
        rates = list(self.rates)
        if any(r <= 0 for r in rates) or sorted(rates) != rates:
            raise ValueError("rates must be positive increasing")
        if self.normalization not in ("none", "john"):
            raise ValueError("normalization must be 'none' or 'john'")


def _inward_direction(body, target, seed, n_samples=16):
    """Average direction from the target toward seeded interior samples."""
    rng = np.random.default_rng(seed)
    x0 = body.interior_point()
    acc = np.zeros(body.dim)
    count = 0
    while count < n_samples:
        g = rng.standard_normal(body.dim)
        t = body.ray_exit(x0, g)
        cap = min(t, 1e3) if math.isfinite(t) else 1e3
        p = x0 + rng.uniform(0.0, 0.9) * cap * g
        if not body.contains(p):
            continue
        dv = p - target
        nv = np.linalg.norm(dv)
        if nv == 0:
            continue
        acc += dv / nv
        count += 1
    n = np.linalg.norm(acc)
    if n == 0:
        raise RuntimeError("degenerate inward direction estimate")
    return acc / n


def _check_target_on_boundary(body, target, tol=1e-9):
    if body.contains(target):
        raise ValueError("target is an interior point, not a boundary point")
    x0 = body.interior_point()
    v = target - x0
    dist = np.linalg.norm(v)
    t = body.ray_exit(x0, v / dist)
    if not math.isfinite(t) or abs(t - dist) > tol * max(1.0, dist):
        raise ValueError("target not on the boundary within tolerance")


def blowup_sequence(spec):
    """Affine rescalings lambda * (C - target), optionally john-normalized.

    Returns [(map, pointed body)] per rate; the basepoint is the image of
    target + (1/lambda) * (estimated inward direction).
    """
    body = spec.body
    _check_target_on_boundary(body, spec.target)
    w = _inward_direction(body, spec.target, spec.seed)
    out = []
    for lam in spec.rates:
        A0 = AffineMap(lam * np.eye(body.dim), -lam * spec.target)
        mapped = apply_affine(A0, body)
        bp = w.copy()  # A0(target + w/lam)
        if spec.normalization == "john":
            J = john_normalize(PointedBody(mapped, bp))
            mapped = apply_affine(J, mapped)
            bp = J(bp)
            A0 = J.compose(A0)
        out.append((A0, PointedBody(mapped, bp)))
    return out


@dataclass
class LimitNet:
    """Truncated support-function samples standing in for a limit body."""
    dirs: np.ndarray
    values: np.ndarray
    radius: float

    def reconstruct(self):
        finite = np.isfinite(self.values)
        return HPolytope(self.dirs[finite], self.values[finite])


@dataclass
class OrbitLimitResult:
    limit: LimitNet
    cauchy: bool
    consecutive: list = field(default_factory=list)


def orbit_limit(seq, R, tol, n_dirs=720):
    """Truncated support data per body; Cauchy when consecutive Hausdorff
    distances (sup of support differences) drop below tol."""
    if not seq:
        raise ValueError("empty sequence")
    dirs = direction_net(seq[0].body.dim, n=n_dirs)
    nets = []
    for pb in seq:
        nets.append(truncated_support_values(pb.body, R, dirs, x0=pb.basepoint))
    consecutive = [float(np.max(np.abs(nets[i] - nets[i - 1]))) for i in range(1, len(nets))]
    cauchy = bool(consecutive) and consecutive[-1] < tol
    return OrbitLimitResult(LimitNet(dirs, nets[-1], R), cauchy, consecutive)


@dataclass
class StrictnessVerdict:
    strict: bool
    witness: object = None  # SegmentWitness when not strict


def limit_strictness_verdict(limit, tol):
    """Strictness of the reconstructed truncated limit body."""
    body = limit.reconstruct()
    w = detect_boundary_segment(body, window=limit.radius, tol=tol)
    return StrictnessVerdict(strict=w is None, witness=w)
