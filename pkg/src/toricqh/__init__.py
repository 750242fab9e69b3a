"""Quasi-harmonic toric Bezier patches over lattice polygons."""

from .basis import (
    BasisFunctionSet,
    Explicit,
    NormalizationNotApplicable,
    SelfExponent,
    TrapezoidTensor,
    Unit,
    convolve_arrays,
    depth_basis,
    toric_basis,
)
from .energy import (
    DIRICHLET,
    QUASI_HARMONIC,
    ConstraintTable,
    GramMatrix,
    SingularSystem,
    compare_functionals,
    energy,
    gradient_residual,
    gram,
    solve_inner,
)
from .lattice import (
    DegenerateHull,
    EdgeLine,
    InvalidDepth,
    LatticePolygon,
    classify,
    convex_hull,
    dilate,
    minkowski_sum,
)
from .patch import (
    DegenerateMetric,
    MassPoint,
    ToricPatch,
    ZeroWeight,
    area,
    evaluate,
    mean_curvature,
    patch_map,
    patch_second_derivatives_paper,
    tessellate,
)
from .poly import Poly2, integrate_over_polygon

__version__ = "0.1.0"

__all__ = [
    "BasisFunctionSet", "Explicit", "NormalizationNotApplicable", "SelfExponent", "TrapezoidTensor", "Unit",
    "convolve_arrays", "depth_basis", "toric_basis",
    "DIRICHLET", "QUASI_HARMONIC", "ConstraintTable", "GramMatrix", "SingularSystem", "compare_functionals",
    "energy", "gradient_residual", "gram", "solve_inner",
    "DegenerateHull", "EdgeLine", "InvalidDepth", "LatticePolygon", "classify", "convex_hull", "dilate",
    "minkowski_sum",
    "DegenerateMetric", "MassPoint", "ToricPatch", "ZeroWeight", "area", "evaluate", "mean_curvature",
    "patch_map", "patch_second_derivatives_paper", "tessellate",
    "Poly2", "integrate_over_polygon",
]
