#!/usr/bin/env python3
"""Blow-up limits at boundary targets of the builtin 2D bodies, with
strictness verdicts: polytope targets leave boundary segments in the limit,
smooth strictly convex targets do not."""

import numpy as np

from convextube.bodies import make_builtin
from convextube.rescaling import (BlowupSpec, blowup_sequence,
                                  limit_strictness_verdict, orbit_limit)

CASES = [
    ("square vertex", "square", [1.0, 1.0], "none", 1e-6),
    ("square edge", "square", [1.0, 0.25], "none", 1e-6),
    ("disk boundary", "disk", [1.0, 0.0], "none", 1e-3),
    ("ellipse boundary", "ellipse", [1.0, 0.0], "john", 1e-3),
]

for label, name, target, normalization, tol in CASES:
    body = make_builtin(name)
    rates = [2.0 ** k for k in range(1, 9)]
    spec = BlowupSpec(body, np.asarray(target), rates,
                      normalization=normalization, seed=0)
    seq = [pb for _, pb in blowup_sequence(spec)]
    lim = orbit_limit(seq, 2.0, tol=tol)
    v = limit_strictness_verdict(lim.limit, tol)
    wl = 0.0 if v.witness is None else v.witness.length
    print(f"{label:18s} cauchy={str(lim.cauchy):5s} strict={str(v.strict):5s} "
          f"witness_len={wl:.4f}  last_step={lim.consecutive[-1]:.2e}")
