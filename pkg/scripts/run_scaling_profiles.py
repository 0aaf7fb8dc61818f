#!/usr/bin/env python3
"""Four-point scaling profiles for the builtin 2D bases.

Hyperbolic-like bases (ellipse, disk) should plateau; polytopes (square,
simplex) should keep growing linearly.
"""

import numpy as np

from convextube.bodies import make_builtin
from convextube.hyperbolicity import delta_scaling_profile

SCALES = [1, 2, 3, 4, 5, 6]

for name in ("disk", "ellipse", "square", "simplex"):
    body = make_builtin(name)
    prof = delta_scaling_profile(body, body.interior_point(), SCALES, seed=0)
    alphas = "  ".join(f"{r.alpha_lo:8.4f}" for r in prof.rows)
    print(f"{name:8s} slope={prof.slope:+.4f}  alphas: {alphas}")
