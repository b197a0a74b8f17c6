"""Exact arithmetic for the Fibonacci staircase of ellipsoid embeddings.

The package computes, with no floating point anywhere in the core, the
combinatorial objects attached to symplectic ellipsoid embeddings:
staircase values and folding bounds, ECH capacities and gradings, the
ECH and J0 indices, positive-end partitions, the higher-dimensional
virtual index formulas, and exhaustive verifiers for the arithmetic
lemmas that tie them together.  "Sufficiently small eps > 0" is made
exact by a formal infinitesimal; see :mod:`staircap.exactnum`.
"""

from .exactnum import (EPS, ONE, ZERO, EpsRational, OrderInsufficientError,
                       eps_cmp, eps_div, eps_floor, eps_inv, eps_linear,
                       parse_eps)
from .fibonacci import (IdentityReport, StaircaseAnchor, anchors, odd_fib,
                        verify_identities)
from .staircase import (OutOfDomainError, StabilizedAnswer, StairValue,
                        below_tau4, c_B, folding_bound, stabilized_f)
from .ech_core import (CapacityComparison, CapacitySequence,
                       DegenerateEllipsoidError, Ellipsoid, OrbitSet, action,
                       capacities, capacity_compare, generator_of_grading,
                       grading_count, step_ellipsoids)
from .ech_index import (CurveClass, EndTopology, Partition, cz_elliptic,
                        cz_total, ech_index_I, i_j0_gap, j0_index,
                        j0_step_value, positive_partition, step_curve_class,
                        topology_solve)
from .cobordism_index import (ComponentDescriptor, CurveCover, EndSpecN,
                              ScanReport, floor_sum, hermite_gap,
                              index_cobordism, index_symp_bottom,
                              index_symp_top, keyest_bound, lambda_sup,
                              sample_descriptor, scan_bottomid, scan_topid)
from .verify import VerificationReport, run_verification, step2_count

__version__ = "0.1.0"
