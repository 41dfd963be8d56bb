"""Lattice triangulations of lecture hall simplices: model, construction, verification."""

from .construct import (
    StepPlan,
    admissible_split,
    base_triangulation,
    build_triangulation,
    chimney_triangulation,
    extension_heights,
    facet_cells,
    first_failing_index,
    one_point_extension,
    plus_one,
    pyramid_triangulation,
    replay,
    restrict_to_facet,
    reverse_transport,
)
from .model import LatticeTriangulation, canonical, dumps, from_json_dict, load, make_triangulation, save, to_json_dict
from .verify import (
    TriangulationReport,
    find_heights,
    non_face_cliques,
    nvols,
    pairwise_check,
    regularity_violation,
    verify_flag,
    verify_regular,
    verify_triangulation,
    verify_unimodular,
)

__all__ = [
    "LatticeTriangulation",
    "StepPlan",
    "TriangulationReport",
    "admissible_split",
    "base_triangulation",
    "build_triangulation",
    "canonical",
    "chimney_triangulation",
    "dumps",
    "extension_heights",
    "facet_cells",
    "find_heights",
    "first_failing_index",
    "from_json_dict",
    "load",
    "make_triangulation",
    "non_face_cliques",
    "nvols",
    "one_point_extension",
    "pairwise_check",
    "plus_one",
    "pyramid_triangulation",
    "regularity_violation",
    "replay",
    "restrict_to_facet",
    "reverse_transport",
    "save",
    "to_json_dict",
    "verify_flag",
    "verify_regular",
    "verify_triangulation",
    "verify_unimodular",
]
