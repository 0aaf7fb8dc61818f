"""Experiments on tube domains: exact box-tube distances, flat-fiber
embedding profiles, the asymptotic bidisk embedding, and the hypothesis
dashboard tying the Hilbert, hyperbolicity, and Kobayashi machinery together.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import TubeBody, direction_net, is_properly_convex
from .hyperbolicity import MetricSample, delta_scaling_profile, four_point_alpha
from .kobayashi import (ComplexConvexDomain, ModelDomain, disk_distance,
                        kobayashi_interval, model_distance, strip_distance)
from .rescaling import BlowupSpec, blowup_sequence, limit_strictness_verdict, orbit_limit


class TubeDomain:
    """Tube over a properly convex base: base + i R^d."""

    def __init__(self, base):
        if not is_properly_convex(base):
            raise ValueError("tube base must be properly convex")
        self.base = base
        self.dim_complex = base.dim

    def complex_domain(self):
        return ComplexConvexDomain(TubeBody(self.base), self.dim_complex,
                                   tube_base=self.base)


def cube_tube_exact(d, z, w):
    """Exact distance on the tube over the cube (-1,1)^d (a polystrip)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape != (d,) or w.shape != (d,):
        raise ValueError("points must have d complex coordinates")
    if np.any(np.abs(z.real) >= 1) or np.any(np.abs(w.real) >= 1):
        raise ValueError("coordinate outside the strip |Re| < 1")
    return max(strip_distance(-1.0, 1.0, z[j], w[j]) for j in range(d))


@dataclass
class FlatProfileRow:
    T: float
    lo: float
    hi: float
    lo_ratio: float
    hi_ratio: float


@dataclass
class FlatProfile:
    rows: list = field(default_factory=list)
    band: tuple = (0.0, math.inf)
    quasi_isometric: bool = False


def flat_embedding_profile(tube, c0, u, T_values, chain_steps=16, seed=0):
    """Kobayashi intervals along the imaginary fiber c0 + i T u.

    Emits ratios to T; the quasi-isometry certificate holds when all ratios
    stay inside a fixed positive band.
    """
    T_values = list(T_values)
    if any(t <= 0 for t in T_values) or sorted(T_values) != T_values:
        raise ValueError("T values must be positive increasing")
    om = tube.complex_domain()
    c0 = np.asarray(c0, dtype=float)
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    z = c0.astype(complex)
    prof = FlatProfile()
    for T in T_values:
        w = c0 + 1j * T * u
        iv = kobayashi_interval(om, z, w, chain_steps=chain_steps, seed=seed)
        prof.rows.append(FlatProfileRow(T, iv.lo, iv.hi, iv.lo / T, iv.hi / T))
    lo_band = min(r.lo_ratio for r in prof.rows)
    hi_band = max(r.hi_ratio for r in prof.rows)
    prof.band = (lo_band, hi_band)
    prof.quasi_isometric = lo_band > 0 and math.isfinite(hi_band)
    return prof


def fiber_grid_alpha(tube, c0, side, grid_n=4, chain_steps=4, seed=0):
    """Certified four-point alpha of the Kobayashi metric sampled on an
    imaginary 2D grid {c0 + i y} of the given side length."""
    om = tube.complex_domain()
    c0 = np.asarray(c0, dtype=float)
    d = tube.dim_complex
    if d < 2:
        raise ValueError("fiber grid needs complex dimension >= 2")
    ticks = np.linspace(0.0, side, grid_n)
    ys = [np.concatenate([[a, b], np.zeros(d - 2)]) for a in ticks for b in ticks]
    pts = [c0 + 1j * y for y in ys]
    n = len(pts)
    lo = np.zeros((n, n))
    hi = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            iv = kobayashi_interval(om, pts[i], pts[j], chain_steps=chain_steps, seed=seed)
            lo[i, j] = lo[j, i] = iv.lo
            hi[i, j] = hi[j, i] = iv.hi
    sample = MetricSample(pts, lo, dist_hi=hi)
    return four_point_alpha(sample, budget=None)


# ---------------------------------------------------------------------------
# asymptotic isometric embedding of the bidisk into the square tube


@dataclass
class EmbeddingExperiment:
    n_values: list
    grid: list  # bidisk points (complex pairs)

    def __post_init__(self):
        if not self.grid:
            raise ValueError("grid must be nonempty")
        if any(n < 2 for n in self.n_values):
            raise ValueError("n must be >= 2")
        for z in self.grid:
            if max(abs(z[0]), abs(z[1])) >= 1:
                raise ValueError("grid points must lie strictly inside the bidisk")


def default_bidisk_grid():
    """Fixture 5x5 grid: pairs over five fixed points of the disk."""
    vals = [0.0, 0.5, -0.5, 0.3j, -0.2 + 0.4j]
    return [(a, b) for a in vals for b in vals]


def _bidisk_into_square_tube(z, n):
    """f_n(z) = A_n^{-1} f(r_n z): coordinatewise Cayley onto the product of
    left half-planes at the blown-up vertex (1, 1), pulled back at rate n."""
    r = 1.0 - 1.0 / n
    out = []
    for zj in z:
        c = (r * zj - 1.0) / (r * zj + 1.0)  # disk -> {Re < 0}
        out.append(c / n + 1.0)
    return np.array(out, dtype=complex)


def asym_embedding_experiment(exp):
    """Sup-error e_n of the pulled-back bidisk distances on the square tube.

    Both distances are exact: the square tube via the strip product formula,
    the bidisk via the disk product formula.
    """
    grid = [np.asarray(z, dtype=complex) for z in exp.grid]
    bidisk = ModelDomain.product([ModelDomain.disk(), ModelDomain.disk()])
    rows = []
    for n in exp.n_values:
        imgs = [_bidisk_into_square_tube(z, n) for z in grid]
        for img in imgs:
            if np.any(np.abs(img.real) >= 1):
                raise RuntimeError("embedded point escaped the square tube")
        err = 0.0
        for i in range(len(grid)):
            for j in range(i + 1, len(grid)):
                k_tube = cube_tube_exact(2, imgs[i], imgs[j])
                k_bidisk = model_distance(bidisk, grid[i], grid[j])
                err = max(err, abs(k_tube - k_bidisk))
        rows.append((n, err))
    return rows


# ---------------------------------------------------------------------------
# hypothesis dashboard


@dataclass
class DashboardConfig:
    scales: tuple = (1, 2, 3, 4, 5, 6)
    profile_points: int = 32
    profile_quadruples: int = 4000
    hyperbolic_slope_max: float = 0.02
    flat_T: tuple = (1.0, 2.0, 4.0, 8.0)
    fiber_sides: tuple = (4.0, 8.0)
    blowup_rates: tuple = (2.0, 4.0, 8.0, 16.0)
    blowup_tol: float = 1e-3
    limit_radius: float = 2.0
    seed: int = 0


@dataclass
class DashboardReport:
    hilbert_slope: float
    hilbert_hyperbolic: bool          # hypothesis indicator, not a proof
    flat_band: tuple
    flat_quasi_isometric: bool
    fiber_alphas: list                # (side, certified alpha) rows
    tube_alpha_grows: bool
    limit_verdicts: list              # (rate-tag, strict, witness length) rows
    limits_all_strict: bool

    def hypotheses_met(self):
        return self.hilbert_hyperbolic and self.flat_quasi_isometric and self.limits_all_strict

    def to_dict(self):
        return {
            "hilbert_slope": self.hilbert_slope,
            "hilbert_hyperbolic": self.hilbert_hyperbolic,
            "flat_band": list(self.flat_band),
            "flat_quasi_isometric": self.flat_quasi_isometric,
            "fiber_alphas": [[s, a] for s, a in self.fiber_alphas],
            "tube_alpha_grows": self.tube_alpha_grows,
            "limit_verdicts": [
                {"target": t, "strict": s, "witness_length": wl}
                for t, s, wl in self.limit_verdicts
            ],
            "limits_all_strict": self.limits_all_strict,
            "hypotheses_met": self.hypotheses_met(),
        }


def _is_bounded(body, n_probe=64):
    dirs = direction_net(body.dim, n=n_probe)
    return all(math.isfinite(body.support(u)) for u in dirs)


def _boundary_targets(body, n=2):
    x0 = body.interior_point()
    dirs = direction_net(body.dim, n=max(n, 2))
    out = []
    for v in dirs[:n]:
        t = body.ray_exit(x0, v)
        out.append(x0 + t * v)
    return out


def theorem1_dashboard(base, config=None):
    """Numerical indicators for the tube-obstruction hypotheses on a bounded
    properly convex base.  Reports indicators only; it never claims the
    non-biholomorphy conclusion itself.
    """
    cfg = config or DashboardConfig()
    if not _is_bounded(base):
        raise ValueError("dashboard requires a bounded base")
    if not is_properly_convex(base):
        raise ValueError("dashboard requires a properly convex base")
    c0 = base.interior_point()
    # (a) Hilbert-metric hyperbolicity indicator on the base
    prof = delta_scaling_profile(base, c0, list(cfg.scales),
                                 n_points=cfg.profile_points,
                                 n_quadruples=cfg.profile_quadruples,
                                 seed=cfg.seed)
    hyperbolic = prof.slope <= cfg.hyperbolic_slope_max
    # (b) flat quasi-isometric embedding in the tube + alpha growth on fibers
    tube = TubeDomain(base)
    u = np.zeros(base.dim)
    u[0] = 1.0
    flat = flat_embedding_profile(tube, c0, u, list(cfg.flat_T), seed=cfg.seed)
    fiber_alphas = []
    for s in cfg.fiber_sides:
        rep = fiber_grid_alpha(tube, c0, s, seed=cfg.seed)
        fiber_alphas.append((s, rep.alpha))
    alpha_grows = all(b > a for (_, a), (_, b) in zip(fiber_alphas, fiber_alphas[1:]))
    # (c) blow-up strictness verdicts at seeded boundary targets
    verdicts = []
    for i, target in enumerate(_boundary_targets(base)):
        spec = BlowupSpec(base, target, list(cfg.blowup_rates),
                          normalization="john", seed=cfg.seed + i)
        seq = [pb for _, pb in blowup_sequence(spec)]
        lim = orbit_limit(seq, cfg.limit_radius, tol=cfg.blowup_tol)
        v = limit_strictness_verdict(lim.limit, cfg.blowup_tol)
        verdicts.append((f"target-{i}", v.strict, 0.0 if v.witness is None else v.witness.length))
    return DashboardReport(
        hilbert_slope=prof.slope,
        hilbert_hyperbolic=hyperbolic,
        flat_band=flat.band,
        flat_quasi_isometric=flat.quasi_isometric,
        fiber_alphas=fiber_alphas,
        tube_alpha_grows=alpha_grows,
        limit_verdicts=verdicts,
        limits_all_strict=all(s for _, s, _ in verdicts),
    )
