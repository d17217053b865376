"""Exact shadow representations of tolerance graphs and dominating-set solvers.

>>> from tolshadow import ToleranceRepresentation, ToleranceVertex, tolerance_to_shadow
>>> from tolshadow import solve_min_dominating_set
>>> rep = tolerance_to_shadow(ToleranceRepresentation((
...     ToleranceVertex("u", 0, 4, 1), ToleranceVertex("v", 2, 8, "5/2"),
...     ToleranceVertex("w", "29/10", "59/10", 10))))
>>> rep.point_ids, rep.segment_ids
(['w'], ['u', 'v'])
>>> solve_min_dominating_set(rep).sorted_ids()
['u']
"""

from .bounded_ds import BDKey, BDTable, solve_bounded_ds
from .cli_io import dumps, loads, read_file, render_svg, write_file
from .dominating_ds import DKey, compute_p_star, d_solve, is_normalized, solve_min_dominating_set
from .generate import generate_connected_shadow, generate_multitolerance, generate_shadow, generate_tolerance
from .geometry import GeometryError, Point, Segment
from .hardness import (
    S3SCInstance,
    backmap_g,
    check_l_reduction,
    generate_s3sc,
    make_s3sc,
    reduce_f,
    validate_s3sc,
)
from .model import (
    MultitoleranceRepresentation,
    MultitoleranceVertex,
    ShadowRepresentation,
    ToleranceRepresentation,
    ToleranceVertex,
    ValidationError,
    canonicalize,
    multitolerance_to_shadow,
    neighbor_sets,
    shadow_adjacent,
    tolerance_to_shadow,
)
from .oracle import BudgetExceeded, brute_min_dominating_set
from .restricted_ds import RBDSInstance, solve_restricted
from .solution import DomSolution

__version__ = "0.1.0"
