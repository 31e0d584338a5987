"""
Polytop-Geometrie und numerische Löser.

H-Darstellung {x | Hx ≤ h}, Projektion, Hausdorff-Abstände, LP/QP und
Riccati-/Lyapunov-Gleichungen.
"""

from .polytop import (
    Box,
    HPolytope,
    affine_preimage,
    bounding_box,
    cartesian_power,
    cartesian_product,
    chebyshev_radius,
    containment_ratio,
    containment_ratio_projected,
    erode_rows,
    hausdorff_nested,
    intersect,
    is_subset,
    max_inscribed_ball_at,
    project,
    radius_from_origin,
    remove_redundancy,
    scale,
    set_equal,
    support,
    support_point,
    vertices,
)
from .solver import (
    LpProblem,
    LpSolution,
    LpStatus,
    QpSolution,
    cholesky,
    project_point,
    solve_dare,
    solve_lp,
    solve_lyapunov,
    solve_qp,
    spectral_radius,
    unsteuerbare_eigenwerte,
)

__all__ = [
    "Box",
    "HPolytope",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "QpSolution",
    "affine_preimage",
    "bounding_box",
    "cartesian_power",
    "cartesian_product",
    "chebyshev_radius",
    "cholesky",
    "containment_ratio",
    "containment_ratio_projected",
    "erode_rows",
    "hausdorff_nested",
    "intersect",
    "is_subset",
    "max_inscribed_ball_at",
    "project",
    "project_point",
    "radius_from_origin",
    "remove_redundancy",
    "scale",
    "set_equal",
    "solve_dare",
    "solve_lp",
    "solve_lyapunov",
    "solve_qp",
    "spectral_radius",
    "support",
    "support_point",
    "unsteuerbare_eigenwerte",
    "vertices",
]
