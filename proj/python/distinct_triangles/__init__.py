"""Distinct triangle counts in lattices and small planar configurations."""

from ._dtl import (
    DtlError,
    GroundSet,
    brute_force_census,
    census,
    constant_sum,
    count_pointset,
    count_rotatable_points,
    count_rotatable_triangles,
    file_ground,
    grid_census,
    grid_ground,
    is_rotatable_point,
    max_subset,
    ngon_distinct_triangles,
    ngon_ground,
    primitive_triples,
    rotatable_points_bound,
    subset_shapes,
    verify_subset,
)

__all__ = [
    "DtlError",
    "GroundSet",
    "brute_force_census",
    "census",
    "constant_sum",
    "count_pointset",
    "count_rotatable_points",
    "count_rotatable_triangles",
    "file_ground",
    "grid_census",
    "grid_ground",
    "is_rotatable_point",
    "max_subset",
    "ngon_distinct_triangles",
    "ngon_ground",
    "primitive_triples",
    "rotatable_points_bound",
    "subset_shapes",
    "verify_subset",
]
