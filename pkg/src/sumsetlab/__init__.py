"""sumsetlab: exact rational toolkit for sumset thresholds and stability.

Grid-exact Minkowski sums, 1D interval sumset bounds, exact convex hulls in
dimension <= 3, the affine positioning construction with verifiable
certificates, fiber-transport constructions, and threshold checkers with
sharp witness families.  Every quantity is a ``fractions.Fraction``; every
comparison is exact.
"""

from .grids import (GridSet, WorkspaceOverflowError, box, common_resolution,
                    is_subset, iterated_sum, minkowski_sum, minkowski_sum_auto,
                    minkowski_sum_fast, refine, same_continuous_set, scale,
                    scale_axis, scaled_sum, translate, unit_cube, volume)
from .hulls import Polytope, contains_point, grid_corners, hull_of, hull_ratio, hull_volume
from .intervals import (IntervalSet, TorusSet, check_cauchy_davenport,
                        check_lemma_distinct, check_lemma_iterated,
                        freiman_iterated_bound, grid_from_interval_set,
                        interval_set_from_grid, iterated_sum_1d, sum_1d,
                        torus_project)
from .positioning import (AffineMap, PositioningCertificate, equalize_lambdas,
                          position, verify_certificate)
from .theorems import (SharpFamily, check_long_fibre_claim, check_plunnecke,
                       check_thm_distinct, check_thm_iterated, delta_t,
                       explicit_width_constant, hull_ratio_constant,
                       sharp_family_exact, sweep)
from .transport import (FiberDecomposition, S1Construction, TransportPlan,
                        combine_fibers, decompose, fiber_at, optimal_transport,
                        rho_t_check, s1_construct)
from .verdicts import VerdictReport

__version__ = "0.1.0"
