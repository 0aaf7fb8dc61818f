#!/usr/bin/env python3
"""Tube-domain experiments: flat-fiber embedding band, fiber four-point
growth, and the bidisk-into-square-tube error decay."""

import numpy as np

from convextube.bodies import make_builtin
from convextube.tubes import (EmbeddingExperiment, TubeDomain,
                              asym_embedding_experiment, default_bidisk_grid,
                              fiber_grid_alpha, flat_embedding_profile)

disk = make_builtin("disk")
tube = TubeDomain(disk)

prof = flat_embedding_profile(tube, np.zeros(2), np.array([1.0, 0.0]),
                              [1.0, 2.0, 4.0, 8.0], seed=0)
print("flat-fiber profile (tube over disk):")
for r in prof.rows:
    print(f"  T={r.T:4g}  [{r.lo:.9f}, {r.hi:.9f}]  ratio~{r.lo_ratio:.9f}")
print(f"  band={prof.band}  quasi_isometric={prof.quasi_isometric}")

print("fiber four-point alpha (certified lower bounds):")
for s in (4.0, 8.0, 16.0, 32.0):
    rep = fiber_grid_alpha(tube, np.zeros(2), s)
    print(f"  side={s:4g}  alpha={rep.alpha:.6f}  alpha/side={rep.alpha / s:.6f}")

print("bidisk into the square tube, sup distance error:")
rows = asym_embedding_experiment(
    EmbeddingExperiment([4, 16, 64, 256], default_bidisk_grid()))
for n, e in rows:
    print(f"  n={n:4d}  e_n={e:.8f}")
