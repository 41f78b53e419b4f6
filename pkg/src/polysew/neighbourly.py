"""
Neighbourliness, universal faces and missing faces.

All tests here are brute force over vertex subsets; they are the reference
against which the fast sewing and tracking code is checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import EMPTY, SimplicialPolytope, VertexSet, _check_ids, quotient
from .errors import BadDimension, FaceTooLarge, NotAFace, PolytopeError


@dataclass(frozen=True)
class MissingFace:
    """A minimal non-face, possibly relative to a background face."""

    members: VertexSet
    relative_to: VertexSet = EMPTY

    def sort_key(self):
        return (self.relative_to.members, self.members.members)


def is_neighbourly(P: SimplicialPolytope) -> bool:
    """True iff every floor(d/2) vertices span a face."""
    k = P.dim // 2
    return all(P.has_face(VertexSet(c).bits) for c in combinations(range(P.n), k))


def _require_face(P, U):
    _check_ids(P, U)
    if not P.has_face(U.bits):
        raise NotAFace(f"{P.labels_of(U)} is not a face")


def is_universal_face(P: SimplicialPolytope, U: VertexSet) -> bool:
    """Universality by definition: U is a facet, or adding any small vertex
    set S to U still gives a face.

    For a k-face of a 2m-polytope the sets S have at most
    floor((2m - k - 1) / 2) vertices.  Since faces are closed under
    subsets only sets S of exactly that size, disjoint from U, are tried.
    """
    _require_face(P, U)
    if P.dim % 2:
        raise BadDimension("universal faces are defined for even-dimensional polytopes")
    if len(U) == P.dim:
        return True
    k = len(U) - 1
    bound = (P.dim - k - 1) // 2
    rest = [v for v in range(P.n) if v not in U]
    size = min(bound, len(rest))
    ub = U.bits
    for S in combinations(rest, size):
        bits = ub
        for v in S:
            bits |= 1 << v
        if not P.has_face(bits):
            return False
    return True


def is_universal_via_quotient(P: SimplicialPolytope, U: VertexSet) -> bool:
    """Universality through the quotient: P/U must be a neighbourly polytope
    on all n - |U| remaining vertices (facets short-circuit to True)."""
    _require_face(P, U)
    if P.dim % 2:
        raise BadDimension("universal faces are defined for even-dimensional polytopes")
    if len(U) == P.dim:
        return True
    if len(U) > P.dim - 2:
        raise FaceTooLarge(f"quotient by a {len(U) - 1}-face is not defined here")
    try:
        Q, _ = quotient(P, U)
    except PolytopeError:
        return False
    return Q.n == P.n - len(U) and is_neighbourly(Q)


def universal_faces(P: SimplicialPolytope, k: int) -> list:
    """All universal k-faces of P, lexicographically sorted (k odd)."""
    if P.dim % 2 or P.dim < 4:
        raise BadDimension(f"need an even dimension >= 4, got {P.dim}")
    if k % 2 == 0 or not 1 <= k <= P.dim - 1:
        raise BadDimension(f"k must be odd in 1..{P.dim - 1}, got {k}")
    return [U for U in P.faces_of_size(k + 1) if is_universal_face(P, U)]


def missing_faces(P: SimplicialPolytope, G: VertexSet = EMPTY) -> list:
    """Missing faces of P relative to the face G.

    These are the sets M disjoint from G such that M + G is not a face while
    M' + G is a face for every proper subset M' of M.  The search is
    level-wise: a set of size s+1 is a candidate only if all its s-subsets
    extend G to faces.
    """
    _require_face(P, G)
    gb = G.bits
    verts = [v for v in range(P.n) if not gb >> v & 1]
    found = []
    current = {0}
    while current:
        nxt = set()
        for c in current:
            top = c.bit_length()
            for v in verts:
                if v < top:
                    continue
                cand = c | 1 << v
                # every subset dropping one member must be in the current level
                rest = c
                ok = True
                while rest:
                    low = rest & -rest
                    if cand & ~low not in current:
                        ok = False
                        break
                    rest ^= low
                if not ok:
                    continue
                if P.has_face(cand | gb):
                    nxt.add(cand)
                else:
                    found.append(VertexSet.from_bits(cand))
        current = nxt
    return sorted((MissingFace(M, G) for M in set(found)), key=MissingFace.sort_key)


def universal_via_missing(P: SimplicialPolytope, U: VertexSet, missing=None) -> bool:
    """Universality of a (2k-1)-face U through missing faces: no missing
    face of P meets U in more than k vertices.

    ``missing`` may carry a precomputed ``missing_faces(P)``.
    """
    _require_face(P, U)
    if len(U) % 2:
        raise BadDimension("only odd-dimensional faces (an even number of vertices)")
    k = len(U) // 2
    if missing is None:
        missing = missing_faces(P)
    return all(len(M.members & U) <= k for M in missing)
