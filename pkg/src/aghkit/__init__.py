"""Exact h*-vectors of lattice polytopes and posets, and numerical
almost-Gorenstein criteria for the rings they define."""

__version__ = "0.1.0"

from .errors import (AghkitError, ConsistencyError, DimensionError,  # noqa: F401
                     InconsistentProfileError, InputError)
from .geometry import (Halfspace, HalfspaceSystem, dd_convert,  # noqa: F401
                       is_redundant, project_bounds)
from .polytope import (LatticePolytope, count_points, make_cross_plus,  # noqa: F401
                       order_polytope)
from .ehrhart import HVector, h_star, socle_degree_geometric  # noqa: F401
from .poset import (Poset, descent_count, descent_set,  # noqa: F401
                    h_vector_from_descents, make_Pm, make_Qm,
                    order_preserving_permutations)
from .gorenstein import AGReport, RingProfile, Verdict, classify  # noqa: F401
from .hibi import make_vi, minimal_generators  # noqa: F401
from .xi import build_context, verify_bijection, xi  # noqa: F401
