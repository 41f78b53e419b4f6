"""
Universal towers and the beyond/beneath classification of facets.

A tower is a sequence of vertex pairs (x_1, y_1), ..., (x_m, y_m) on a
neighbourly 2m-polytope whose prefixes Phi_j = {x_1, y_1, ..., x_j, y_j} are
universal (2j-1)-faces.  A facet F is classified by the largest j with
Phi_j contained in F: the sewn vertex lies beyond F exactly when that j is
odd.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import SimplicialPolytope, VertexSet, identity_map, quotient
from .errors import (
    BadDimension,
    DuplicateVertex,
    NotAFacet,
    NotNeighbourly,
    NotUniversalAtLevel,
    UnknownVertex,
    WrongLength,
)
from .neighbourly import is_neighbourly, is_universal_face


class Side(enum.Enum):
    BENEATH = "beneath"
    BEYOND = "beyond"


@dataclass(frozen=True)
class FacetClass:
    facet_index: int
    largest_j: int
    side: Side


@dataclass(frozen=True)
class UniversalTower:
    """A validated tower on ``polytope``.  Obtain one from
    :func:`validate_tower`, :func:`find_towers` or :func:`quotient_tower`."""

    polytope: SimplicialPolytope
    pairs: tuple

    @property
    def m(self) -> int:
        return len(self.pairs)

    def phi(self, j: int) -> VertexSet:
        """Phi_j, with Phi_0 the empty set."""
        bits = 0
        for x, y in self.pairs[:j]:
            bits |= 1 << x | 1 << y
        return VertexSet.from_bits(bits)

    def x(self, j: int) -> int:
        return self.pairs[j - 1][0]

    def y(self, j: int) -> int:
        return self.pairs[j - 1][1]

    def label_pairs(self) -> list:
        lab = self.polytope.labels
        return [(lab[x], lab[y]) for x, y in self.pairs]

    def swapped(self, j: int) -> "UniversalTower":
        """The same tower with x_j and y_j exchanged."""
        pairs = list(self.pairs)
        x, y = pairs[j - 1]
        pairs[j - 1] = (y, x)
        return UniversalTower(self.polytope, tuple(pairs))


def _check_shape(P: SimplicialPolytope, pairs) -> tuple:
    if P.dim % 2:
        raise BadDimension("towers live on even-dimensional polytopes")
    m = P.dim // 2
    pairs = tuple((int(x), int(y)) for x, y in pairs)
    if len(pairs) != m:
        raise WrongLength(f"a {P.dim}-polytope needs {m} tower pairs, got {len(pairs)}")
    flat = [v for p in pairs for v in p]
    for v in flat:
        if not 0 <= v < P.n:
            raise UnknownVertex(f"tower vertex {v} not in 0..{P.n - 1}")
    if len(set(flat)) != len(flat):
        raise DuplicateVertex("tower vertices must be distinct")
    return pairs


def validate_tower(P: SimplicialPolytope, pairs: Sequence) -> UniversalTower:
    """Check that every prefix of ``pairs`` is a universal face of P.

    ``pairs`` holds vertex ids; use :meth:`SimplicialPolytope.ids_of` to
    translate labels first.
    """
    pairs = _check_shape(P, pairs)
    if not is_neighbourly(P):
        raise NotNeighbourly("towers are only defined on neighbourly polytopes")
    T = UniversalTower(P, pairs)
    for j in range(1, T.m + 1):
        phi = T.phi(j)
        if not P.has_face(phi.bits) or not is_universal_face(P, phi):
            raise NotUniversalAtLevel(j)
    return T


def tower_from_labels(P: SimplicialPolytope, label_pairs: Sequence) -> UniversalTower:
    ids = []
    for a, b in label_pairs:
        try:
            ids.append((P.label_index[a], P.label_index[b]))
        except KeyError as e:
            raise UnknownVertex(f"unknown tower label {e.args[0]!r}") from None
    return validate_tower(P, ids)


def largest_level(T: UniversalTower, F: VertexSet) -> int:
    fb = F.bits
    for j in range(T.m, 0, -1):
        if T.phi(j).bits & ~fb == 0:
            return j
    return 0


def classify_facet(T: UniversalTower, F: VertexSet) -> FacetClass:
    """Beneath/beyond class of a facet of the tower's polytope."""
    P = T.polytope
    idx = P.facet_index.get(F)
    if idx is None:
        raise NotAFacet(f"{P.labels_of(F)} is not a facet")
    j = largest_level(T, F)
    return FacetClass(idx, j, Side.BEYOND if j % 2 else Side.BENEATH)


def classify_all(T: UniversalTower) -> list:
    return [classify_facet(T, F) for F in T.polytope.facets]


def partition_counts(classes: Sequence[FacetClass]) -> tuple:
    """(beneath, beyond) counts."""
    beyond = sum(1 for c in classes if c.side is Side.BEYOND)
    return len(classes) - beyond, beyond


def quotient_tower(T: UniversalTower, i: int, qmap=None):
    """The tower induced on P/Phi_i: pairs i+1..m re-indexed into the quotient.

    Returns ``(tower, quotient_map)``.  ``i = 0`` gives back T unchanged.
    """
    if not 0 <= i < T.m:
        raise ValueError(f"quotient level must be in 0..{T.m - 1}")
    P = T.polytope
    if i == 0:
        return T, identity_map(P)
    Q, qmap = quotient(P, T.phi(i), validate_result=False)
    inv = qmap.inverse
    pairs = tuple((inv[x], inv[y]) for x, y in T.pairs[i:])
    return UniversalTower(Q, pairs), qmap


def find_towers(P: SimplicialPolytope, limit: Optional[int] = None) -> list:
    """Depth-first search for universal towers, in lexicographic order.

    Within each pair x < y.  The search stops after ``limit`` towers.
    """
    if P.dim % 2:
        raise BadDimension("towers live on even-dimensional polytopes")
    if not is_neighbourly(P):
        raise NotNeighbourly("towers are only defined on neighbourly polytopes")
    m = P.dim // 2
    out = []
    universal_cache = {}

    def universal(bits):
        hit = universal_cache.get(bits)
        if hit is None:
            hit = P.has_face(bits) and is_universal_face(P, VertexSet.from_bits(bits))
            universal_cache[bits] = hit
        return hit

    def extend(pairs, bits):
        if limit is not None and len(out) >= limit:
            return
        if len(pairs) == m:
            out.append(UniversalTower(P, tuple(pairs)))
            return
        free = [v for v in range(P.n) if not bits >> v & 1]
        for a in range(len(free)):
            for b in range(a + 1, len(free)):
                x, y = free[a], free[b]
                nb = bits | 1 << x | 1 << y
                if universal(nb):
                    pairs.append((x, y))
                    extend(pairs, nb)
                    pairs.pop()
                    if limit is not None and len(out) >= limit:
                        return

    extend([], 0)
    return out
