"""Exact inscribability of polytopes and polyhedral fans."""
from .exact import EXACT, FLOAT, ScalarMode
from .kernels import BACKEND
from .polytope import Polytope, convex_hull, cube, crosspolytope, hypersimplex, is_inscribed, permutahedron, simplex
from .fan import Fan, normal_fan, normally_equivalent
from .inscribe import (
    based_inscribed_space, canonical_inscribable_coarsening, inscribable, is_normally_inscribable,
    lambda_inscribed_space, reconstruct,
)
from .typecone import LambdaWeights, lambda_of_polytope, typecone_dim
from .planar import Profile, inscribable_profile, virtually_inscribable_profile
from .nestohedra import BuildingSet, is_inscribed_nestohedron
from .trajectory import RoutingScheme, hom_group, trajectory_space
from .delaunay import LabelledConfig, delaunay_subdivision, visibility_complex

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "EXACT", "FLOAT", "ScalarMode",
    "Polytope", "convex_hull", "cube", "crosspolytope", "hypersimplex", "is_inscribed", "permutahedron", "simplex",
    "Fan", "normal_fan", "normally_equivalent",
    "based_inscribed_space", "canonical_inscribable_coarsening", "inscribable", "is_normally_inscribable",
    "lambda_inscribed_space", "reconstruct",
    "LambdaWeights", "lambda_of_polytope", "typecone_dim",
    "Profile", "inscribable_profile", "virtually_inscribable_profile",
    "BuildingSet", "is_inscribed_nestohedron",
    "RoutingScheme", "hom_group", "trajectory_space",
    "LabelledConfig", "delaunay_subdivision", "visibility_complex",
]
