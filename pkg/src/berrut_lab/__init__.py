"""Berrut's barycentric rational interpolant on equispaced nodes.

Denominator asymptotics, error limit sets, uniform convergence studies and
a slow-convergence counterexample for Lipschitz functions.
"""

from .asymptotics import A, A_inverse, ASeriesConfig, residual, residual_bound
from .barycentric import (BERRUT, ENDPOINT_HALVED, SampledFunction, WeightScheme, denominator,
                          evaluate, interpolate, numerator)
from .counterexample import (SawtoothParams, f_m, hat_sums, main_term_identity,
                             shifted_harmonic_bound, support_disjointness, uk_positivity)
from .error_analysis import (ConvergenceRecord, bv_bound_check, decomposition_check, delta,
                             uniform_study)
from .grid import (NodeSingularity, Parity, PositionDecomposition, RationalPoint, UniformGrid,
                   decompose, is_node, nodes)
from .limits import (LimitKind, LimitSet, accumulation_scan, bias, denominator_limit_set,
                     error_limit_set)
from .models import LIBRARY, FunctionModel, get_model

__version__ = "0.1.0"
