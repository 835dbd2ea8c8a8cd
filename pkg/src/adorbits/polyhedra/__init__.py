"""Exact rational polyhedra: H/V forms, projection, vertices, lattice points."""

from .dd import extreme_rays, from_vrep, recession_cone, recession_hrep, vertices_and_rays
from .fm import cone_hrep, fm_eliminate, minkowski_sum_with_cone
from .hpoly import HPolyhedron, Membership, VPolyhedron, canonicalize, contains, same_set, subset

__all__ = [
    "HPolyhedron",
    "VPolyhedron",
    "Membership",
    "canonicalize",
    "contains",
    "cone_hrep",
    "extreme_rays",
    "fm_eliminate",
    "from_vrep",
    "minkowski_sum_with_cone",
    "recession_cone",
    "recession_hrep",
    "same_set",
    "subset",
    "vertices_and_rays",
]
