"""Cyclic polytopes C(n, d) from Gale's evenness condition."""
from itertools import combinations
from math import comb

from .core import SimplicialPolytope, VertexSet, canonical, make_polytope
from .errors import BadParameters


def gale_even(S, n: int) -> bool:
    """Gale's evenness condition for S on the ordered vertices 0..n-1.

    For every two non-members u < v, the number of members of S strictly
    between them must be even.  Order is linear (no wraparound).
    """
    members = set(S)
    run = 0
    seen_gap = False
    for v in range(n):
        if v in members:
            run += 1
            continue
        # members between two consecutive non-members form a block; a block
        # before the first non-member or after the last one is unconstrained
        if seen_gap and run % 2:
            return False
        seen_gap = True
        run = 0
    return True


def neighbourly_facet_count(n: int, d: int) -> int:
    """Facet count of a neighbourly d-polytope with n vertices, d = 2m even."""
    if d % 2:
        raise BadParameters("facet formula is for even dimension")
    m = d // 2
    return comb(n - m, m) + comb(n - m - 1, m - 1)


def cyclic_polytope(n: int, d: int) -> SimplicialPolytope:
    if d < 2 or n < d + 1:
        raise BadParameters(f"cyclic polytope C({n},{d}) needs d >= 2 and n >= d+1")
    facets = [VertexSet(c) for c in combinations(range(n), d) if gale_even(c, n)]
    return make_polytope(d, n, canonical(facets))
