"""Neighbourly polytopes built by sewing, with brute-force cross-checks."""

__version__ = "0.1.0"

from .core import (
    QuotientMap,
    SimplicialPolytope,
    VertexSet,
    are_isomorphic,
    is_face,
    make_polytope,
    quotient,
    ridges,
    validate,
    vset,
)
from .cyclic import cyclic_polytope, gale_even, neighbourly_facet_count
from .errors import *  # noqa: F401,F403
from .neighbourly import (
    MissingFace,
    is_neighbourly,
    is_universal_face,
    is_universal_via_quotient,
    missing_faces,
    universal_faces,
    universal_via_missing,
)
from .sewing import (
    SewingLevels,
    prepare_levels,
    run_levels,
    sew,
    sew_bbp_oracle,
    sew_levels,
    sewn_missing_faces,
    verify_main_theorem,
    verify_tower_leftovers,
)
from .tower import (
    Side,
    UniversalTower,
    classify_all,
    classify_facet,
    find_towers,
    partition_counts,
    quotient_tower,
    tower_from_labels,
    validate_tower,
)
from .tracking import UniversalCatalog, sew_with_tracking, survives, universal_catalog
