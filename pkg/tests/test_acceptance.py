"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Tolerances, seeds, and budgets are pinned; the frozen fixtures double as the
byte-identical reproducibility certificate for every sampled mode.
"""

import math
import time

import numpy as np

import conftest
from convextube.bodies import make_builtin
from convextube.hilbert import HilbertGeometry
from convextube.hyperbolicity import delta_scaling_profile
from convextube.kobayashi import (ComplexConvexDomain, ModelDomain,
                                  kobayashi_interval, model_distance)
from convextube.rescaling import (BlowupSpec, blowup_sequence,
                                  limit_strictness_verdict, orbit_limit)
from convextube.tubes import (EmbeddingExperiment, TubeDomain,
                              asym_embedding_experiment, cube_tube_exact,
                              default_bidisk_grid, fiber_grid_alpha)


def verdict(num, label, ok):
    line = f"criterion {num:02d} [{'PASS' if ok else 'FAIL'}] {label}"
    print(line, flush=True)
    conftest.acceptance_lines.append(line)
    assert ok, line


def test_criterion_01_hilbert_klein_equivalence():
    g = HilbertGeometry(make_builtin("disk"))
    rng = np.random.default_rng(1)
    t0 = time.monotonic()
    worst = 0.0
    n = 0
    while n < 1000:
        p, q = rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2)
        if p @ p >= 0.96 or q @ q >= 0.96:
            continue
        n += 1
        klein = math.acosh((1 - p @ q) / math.sqrt((1 - p @ p) * (1 - q @ q)))
        worst = max(worst, abs(g.distance(p, q) - klein))
    elapsed = time.monotonic() - t0
    verdict(1, f"Hilbert/Klein max err {worst:.2e} (<1e-9), {elapsed:.2f}s (<1s)",
            worst < 1e-9 and elapsed < 1.0)


def test_criterion_02_geodesic_additivity():
    rng = np.random.default_rng(2)
    worst = 0.0
    for name in ("disk", "square", "quadrant"):
        g = HilbertGeometry(make_builtin(name))
        x0 = g.body.interior_point()
        n = 0
        while n < 334:
            x = g.point_at_distance(x0, rng.standard_normal(2), rng.uniform(0.1, 3.0))
            z = g.point_at_distance(x0, rng.standard_normal(2), rng.uniform(0.1, 3.0))
            total = g.distance(x, z)
            if total < 1e-3:
                continue
            n += 1
            p = x + rng.uniform(0.05, 0.95) * (z - x)  # collinear interior point
            worst = max(worst, abs(g.distance(x, p) + g.distance(p, z) - total))
    verdict(2, f"geodesic additivity max err {worst:.2e} (<1e-8)", worst < 1e-8)


def test_criterion_03_scaling_separation():
    t0 = time.monotonic()
    scales = [1, 2, 3, 4, 5, 6]
    ell = delta_scaling_profile(make_builtin("ellipse"), np.zeros(2), scales,
                                n_points=48, n_quadruples=10000, seed=0)
    sq = delta_scaling_profile(make_builtin("square"), np.zeros(2), scales,
                               n_points=48, n_quadruples=10000, seed=0)
    elapsed = time.monotonic() - t0
    verdict(3, f"slopes ellipse {ell.slope:.4f} (<=0.02) square {sq.slope:.4f} "
               f"(>=0.1), {elapsed:.1f}s (<120s)",
            ell.slope <= 0.02 and sq.slope >= 0.1 and elapsed < 120.0)


def test_criterion_04_blowup_verdicts():
    sq = make_builtin("square")
    spec = BlowupSpec(sq, np.array([1.0, 1.0]), [2.0, 4.0, 8.0, 16.0], seed=0)
    seq = [pb for _, pb in blowup_sequence(spec)]
    v_sq = limit_strictness_verdict(orbit_limit(seq, 2.0, tol=1e-6).limit, 1e-6)
    sq_ok = v_sq.witness is not None and v_sq.witness.length >= 0.5

    ell = make_builtin("ellipse")
    spec = BlowupSpec(ell, np.array([1.0, 0.0]), [2.0 ** k for k in range(1, 9)],
                      normalization="john", seed=0)
    seq = [pb for _, pb in blowup_sequence(spec)]
    v_ell = limit_strictness_verdict(orbit_limit(seq, 2.0, tol=1e-3).limit, 1e-3)
    wl = 0.0 if v_sq.witness is None else v_sq.witness.length
    verdict(4, f"square vertex witness {wl:.3f} (>=0.5); ellipse strict "
               f"{v_ell.strict}", sq_ok and v_ell.strict)


def test_criterion_05_model_exactness():
    e1 = abs(model_distance(ModelDomain.disk(), 0.0, 0.5) - math.atanh(0.5))
    e2 = abs(model_distance(ModelDomain.upper_half_plane(), 1j,
                            1j * math.e ** 2) - 1.0)
    e3 = abs(model_distance(ModelDomain.strip(-1.0, 1.0), 0.0, 4.0j) - math.pi)
    worst = max(e1, e2, e3)
    verdict(5, f"model distances max err {worst:.2e} (<1e-12)", worst < 1e-12)


def test_criterion_06_tube_disk_sandwich():
    om = TubeDomain(make_builtin("disk")).complex_domain()
    ok = True
    worst_w, worst_m = 0.0, 0.0
    for T in (1.0, 2.0, 4.0, 8.0):
        iv = kobayashi_interval(om, np.zeros(2, dtype=complex),
                                np.array([1j * T, 0.0]), seed=0)
        worst_w = max(worst_w, iv.width)
        worst_m = max(worst_m, abs(iv.mid - math.pi * T / 4.0))
        ok = ok and iv.width < 1e-6 and abs(iv.mid - math.pi * T / 4.0) < 1e-6
    verdict(6, f"tube-over-disk width {worst_w:.2e} (<1e-6) midpoint err "
               f"{worst_m:.2e} (<1e-6)", ok)


def test_criterion_07_interval_certification():
    om = TubeDomain(make_builtin("square")).complex_domain()
    violations = 0
    prev = None
    monotone = True
    for steps in (4, 16, 64):
        rng = np.random.default_rng(7)
        his = []
        for _ in range(100):
            z = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
            w = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
            iv = kobayashi_interval(om, z, w, chain_steps=steps, seed=0)
            if steps == 4:
                exact = cube_tube_exact(2, z, w)
                if not (iv.lo <= exact <= iv.hi):
                    violations += 1
            his.append(iv.hi)
        if prev is not None and any(h > p for h, p in zip(his, prev)):
            monotone = False
        prev = his
    verdict(7, f"containment violations {violations} (=0), hi monotone "
               f"{monotone}", violations == 0 and monotone)


def test_criterion_08_asym_embedding():
    t0 = time.monotonic()
    rows = asym_embedding_experiment(
        EmbeddingExperiment([4, 16, 64, 256], default_bidisk_grid()))
    elapsed = time.monotonic() - t0
    es = [e for _, e in rows]
    mono = all(b <= a for a, b in zip(es, es[1:]))
    verdict(8, f"e_n={['%.4f' % e for e in es]} non-increasing {mono}, "
               f"e256<e4/5 {es[-1] < es[0] / 5}, {elapsed:.1f}s (<30s)",
            mono and es[-1] < es[0] / 5 and elapsed < 30.0)


def test_criterion_09_fiber_alpha_growth():
    tube = TubeDomain(make_builtin("disk"))
    ok = True
    vals = []
    for s in (4.0, 8.0, 16.0, 32.0):
        a = fiber_grid_alpha(tube, np.zeros(2), s).alpha
        vals.append(a / s)
        ok = ok and a >= 0.2 * s
    verdict(9, f"fiber alpha/s {['%.3f' % v for v in vals]} (>=0.2)", ok)


def test_criterion_10_polydisk_product_rule():
    om = ComplexConvexDomain.polydisk(2)
    ok = True
    for r in (0.9, 0.99, 0.999):
        iv = kobayashi_interval(om, np.array([r, 0.0]), np.array([r, 0.5]), seed=0)
        ok = ok and abs(iv.lo - math.atanh(0.5)) < 1e-12 and iv.width < 1e-12
    verdict(10, "polydisk K((r,0),(r,0.5)) = arctanh(0.5) for r in "
                "{0.9,0.99,0.999}", ok)


def test_criterion_11_reproducibility(frozen):
    # every sampled mode above, rerun and compared bitwise to frozen doubles
    ok = True
    om = TubeDomain(make_builtin("square")).complex_domain()
    rng = np.random.default_rng(7)
    for rec in frozen["square_tube_intervals"]:
        z = np.array([complex(a, b) for a, b in rec["z"]])
        w = np.array([complex(a, b) for a, b in rec["w"]])
        zz = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
        ww = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
        ok = ok and np.allclose(z, zz, atol=0) and np.allclose(w, ww, atol=0)
        iv = kobayashi_interval(om, z, w, chain_steps=16, seed=0)
        ok = ok and iv.lo == rec["lo"] and iv.hi == rec["hi"]
    for name in ("ellipse", "square"):
        prof = delta_scaling_profile(make_builtin(name), np.zeros(2),
                                     [1, 2, 3, 4, 5, 6], n_points=48,
                                     n_quadruples=10000, seed=0)
        ok = ok and [float(a) for a in prof.alphas()] == frozen[f"profile_{name}"]["alphas"]
        ok = ok and prof.slope == frozen[f"profile_{name}"]["slope"]
    td = TubeDomain(make_builtin("disk"))
    for s, val in frozen["fiber_alphas"].items():
        ok = ok and fiber_grid_alpha(td, np.zeros(2), float(s)).alpha == val
    rows = asym_embedding_experiment(
        EmbeddingExperiment([4, 16, 64, 256], default_bidisk_grid()))
    for n, e in rows:
        ok = ok and frozen["asym_embed"][str(n)] == e
    verdict(11, "seeded reruns bit-identical to frozen fixtures", ok)
