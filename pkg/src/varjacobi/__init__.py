"""Numerics for Jacobi polynomials with degree-proportional parameters.

Covers the (A, B) parameter-plane classification, branch points and
trajectories of the associated quadratic differential, the scalar fields
entering the strong asymptotic formulas, multiprecision evaluation and
zero-finding, and validation of weak zero asymptotics.
"""

from .params import CaseClass, FiniteParams, ParamPair, classify
from .geometry import BranchPoints, Contour, GeometryBundle, branch_points, build_geometry
from .fields import FieldContext
from .engine import PolySpec, ZeroSet, build_poly, eval_poly, find_zeros

__all__ = [
    "ParamPair",
    "FiniteParams",
    "CaseClass",
    "classify",
    "BranchPoints",
    "Contour",
    "GeometryBundle",
    "branch_points",
    "build_geometry",
    "FieldContext",
    "PolySpec",
    "ZeroSet",
    "build_poly",
    "eval_poly",
    "find_zeros",
]
