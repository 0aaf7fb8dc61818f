#!/usr/bin/env python3
"""Regenerate the frozen numeric fixtures used by the test suite.

Values are written at full double precision (%.17g); the tests compare
exactly, so reruns certify byte-level reproducibility of the seeded modes.
"""

import json
import os

import numpy as np

from convextube import kobayashi_interval
from convextube.bodies import make_builtin
from convextube.hyperbolicity import delta_scaling_profile
from convextube.tubes import (EmbeddingExperiment, TubeDomain,
                              asym_embedding_experiment, default_bidisk_grid,
                              fiber_grid_alpha)

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures",
                   "frozen.json")


def f(x):
    return float("%.17g" % x)


def main():
    fx = {}

    # seeded Kobayashi intervals on the tube over the square
    sq = TubeDomain(make_builtin("square")).complex_domain()
    rng = np.random.default_rng(7)
    pairs = []
    for _ in range(5):
        z = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
        w = rng.uniform(-0.9, 0.9, 2) + 1j * rng.uniform(-3, 3, 2)
        iv = kobayashi_interval(sq, z, w, chain_steps=16, seed=0)
        pairs.append({"z": [[f(c.real), f(c.imag)] for c in z],
                      "w": [[f(c.real), f(c.imag)] for c in w],
                      "lo": f(iv.lo), "hi": f(iv.hi)})
    fx["square_tube_intervals"] = pairs

    # scaling-profile alphas and slopes, seed 0
    for name in ("ellipse", "square"):
        prof = delta_scaling_profile(make_builtin(name), np.zeros(2),
                                     [1, 2, 3, 4, 5, 6], n_points=48,
                                     n_quadruples=10000, seed=0)
        fx[f"profile_{name}"] = {"alphas": [f(a) for a in prof.alphas()],
                                 "slope": f(prof.slope)}

    # fiber-grid alphas on the tube over the disk
    td = TubeDomain(make_builtin("disk"))
    fx["fiber_alphas"] = {str(int(s)): f(fiber_grid_alpha(td, np.zeros(2), s).alpha)
                          for s in (4.0, 8.0, 16.0, 32.0)}

    # asymptotic embedding errors
    rows = asym_embedding_experiment(
        EmbeddingExperiment([4, 16, 64, 256], default_bidisk_grid()))
    fx["asym_embed"] = {str(n): f(e) for n, e in rows}

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as fh:
        json.dump(fx, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
