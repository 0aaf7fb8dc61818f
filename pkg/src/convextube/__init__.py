"""Hilbert metrics on convex bodies, certified Kobayashi bounds on tube
domains, Gromov hyperbolicity estimation, and affine rescaling experiments."""

__version__ = "0.1.0"

from .bodies import (AffineMap, ConvexBody, Ellipsoid, HPolytope, PointedBody,
                     SmoothOracle, TubeBody, VPolytope, apply_affine,
                     body_from_spec, contains, detect_boundary_segment,
                     is_properly_convex, local_hausdorff, make_builtin,
                     ray_exit, support)
from .hilbert import HilbertGeometry, gromov_product
from .hyperbolicity import (HyperbolicityReport, MetricSample,
                            delta_scaling_profile, four_point_alpha,
                            thin_triangle_delta)
from .kobayashi import (ComplexConvexDomain, DistInterval, ModelDomain,
                        kobayashi_interval, model_distance,
                        projection_lower_bound, slice_chain_upper_bound)
from .rescaling import (BlowupSpec, blowup_sequence, john_normalize,
                        limit_strictness_verdict, orbit_limit)
from .tubes import (DashboardConfig, EmbeddingExperiment, TubeDomain,
                    asym_embedding_experiment, cube_tube_exact,
                    flat_embedding_profile, theorem1_dashboard)
