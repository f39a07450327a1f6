"""Index functions, the table E and Betti bounds for intersections of random quadrics"""

from .arcs import PencilArcs, example_pencil, index_profile, pencil_arcs, positive_index
from .table import (
    TableE,
    betti_bound,
    euler_bound,
    small_betti_value,
    structural_identity_holds,
    table_E_k2,
    total_betti,
)
from .sphere import IndexExtremum, fibonacci_sphere, mu_max_sphere, sphere_grid
from .survey import PencilSurvey, expected_betti_mc, expected_mu_mc, mu_tail_threshold, survey_pencils

__all__ = [
    "PencilArcs",
    "example_pencil",
    "index_profile",
    "pencil_arcs",
    "positive_index",
    "TableE",
    "betti_bound",
    "euler_bound",
    "small_betti_value",
    "structural_identity_holds",
    "table_E_k2",
    "total_betti",
    "IndexExtremum",
    "fibonacci_sphere",
    "mu_max_sphere",
    "sphere_grid",
    "PencilSurvey",
    "expected_betti_mc",
    "expected_mu_mc",
    "mu_tail_threshold",
    "survey_pencils",
]
