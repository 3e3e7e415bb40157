"""dslab: exact-arithmetic laboratory for coprime approximation sets.

Builds the classical Duffin-Schaeffer approximation neighborhoods over
the circle, the p-adic integers, and formal Laurent series, computes
their measures and overlaps exactly in rational arithmetic, and checks
every finite unconditional inequality of the surrounding theory:
two-sided arc-measure bounds, pairwise overlap estimates, union scaling
comparisons, block statistics with second-moment lower bounds, weighted
Borel-Cantelli bounds with the block-convolution shift selection,
series rate transforms, dimension-function constructions, and the
polynomial-field Moebius/coprime-count machinery.
"""

__version__ = "0.1.0"

from .blocks import (BlockScheme, BlockStats, block_mass, block_stats_exact,
                     block_stats_mc, cap_block_mass, cauchy_schwarz_lower,
                     check_assumptions)
from .borel_cantelli import (ConvolutionPlan, EventSystem, bc_lower_bound,
                             best_bc_lower_bound, convolution_select,
                             divergence_criterion)
from .circle import (CircleSet, arc_measure_identity, arc_overlap, arc_union,
                     check_union_scaling, coprime_arcs, hit_count,
                     point_in_arcs, union_all)
from .enclosure import Enc
from .errors import (DslabError, FeasibilityError, UndecidedBoundaryError,
                     ZeroDenominatorError)
from .laurent import (LaurentCubeSet, Poly, PolyPsiSpec,
                      check_cube_union_scaling, coprime_cubes,
                      coprime_tuple_count, cube_mass_check, cube_overlap,
                      joint_coprime_cubes, mobius_poly,
                      shifted_cube_overlap_sum)
from .numtheory import (Factorization, PairParams, coprime_residues,
                        euler_phi, factorize, pair_params)
from .padic import (PadicSet, canonical_radius, check_ball_union_scaling,
                    coprime_balls, overlap_chain)
from .psi import (PsiSpec, block_target_psi, constant_psi, generate_psi,
                  indicator_psi, random_psi, reciprocal_psi, table_psi)
from .series_dimfn import (DimFn, StepFn, accelerate_convergent_transform,
                           check_dimfn_grid, dimfn_eval,
                           slow_divergent_transform)
