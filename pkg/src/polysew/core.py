"""
Facet-list representation of simplicial polytopes.

A simplicial polytope is stored purely combinatorially: a dimension, a list
of vertex labels and the list of its facets.  Every face is a subset of some
facet, so the facet list carries the whole face lattice.  Vertex sets are
bitmasks over at most 64 vertex ids.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    BadParameters,
    BadRidge,
    Disconnected,
    DuplicateFacet,
    FaceTooLarge,
    NonSimplicial,
    NotAFace,
    PolytopeError,
    QuotientNotPolytopal,
    SearchTooLarge,
    TooManyVertices,
    UnknownVertex,
    UnusedVertex,
)

MAX_VERTICES = 64
# face lookup tables hold every subset of every facet; beyond this dimension
# the per-facet 2**d blowup is not worth it and is_face scans instead
_FACE_TABLE_MAX_DIM = 12
SEARCH_LIMIT = 12


class VertexSet:
    """An immutable set of vertex ids stored as a bitmask.

    Iteration yields members in ascending order.  Sets compare equal by
    membership and ``<`` is lexicographic order on the sorted member lists;
    use :meth:`issubset` for inclusion.
    """

    __slots__ = ("bits", "_members")

    def __init__(self, members: Iterable[int] = ()):
        bits = 0
        for v in members:
            if not 0 <= v < MAX_VERTICES:
                raise TooManyVertices(f"vertex id {v} outside 0..{MAX_VERTICES - 1}")
            bits |= 1 << v
        self.bits = bits
        self._members = None

    @classmethod
    def from_bits(cls, bits: int) -> "VertexSet":
        vs = cls.__new__(cls)
        vs.bits = bits
        vs._members = None
        return vs

    @property
    def members(self) -> tuple:
        if self._members is None:
            bits, out = self.bits, []
            while bits:
                low = bits & -bits
                out.append(low.bit_length() - 1)
                bits ^= low
            self._members = tuple(out)
        return self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, v) -> bool:
        return v >= 0 and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __hash__(self) -> int:
        return hash(self.bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSet):
            return self.bits == other.bits
        return NotImplemented

    def __lt__(self, other: "VertexSet") -> bool:
        return self.members < other.members

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_bits(self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_bits(self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet.from_bits(self.bits & ~other.bits)

    def add(self, *vs: int) -> "VertexSet":
        bits = self.bits
        for v in vs:
            bits |= 1 << v
        return VertexSet.from_bits(bits)

    def remove(self, v: int) -> "VertexSet":
        return VertexSet.from_bits(self.bits & ~(1 << v))

    def max(self) -> int:
        return self.bits.bit_length() - 1

    def sort_key(self) -> tuple:
        return self.members

    def __repr__(self) -> str:
        return "VertexSet({%s})" % ", ".join(map(str, self.members))


EMPTY = VertexSet()


def vset(*members: int) -> VertexSet:
    """Shorthand: ``vset(0, 2, 4)``."""
    return VertexSet(members)


def canonical(sets: Iterable[VertexSet]) -> tuple:
    """Sorted, duplicate-free tuple of vertex sets."""
    return tuple(sorted(set(sets), key=VertexSet.sort_key))


@dataclass(frozen=True)
class SimplicialPolytope:
    """Boundary complex of a simplicial polytope given by its facets.

    Build instances with :func:`make_polytope`, which validates them.
    """

    dim: int
    labels: tuple
    facets: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.from_bits((1 << self.n) - 1)

    @cached_property
    def label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def facet_index(self) -> dict:
        return {F: i for i, F in enumerate(self.facets)}

    @cached_property
    def _face_table(self) -> Optional[frozenset]:
        if self.dim > _FACE_TABLE_MAX_DIM:
            return None
        table = set()
        for F in self.facets:
            # enumerate submasks of F
            b = F.bits
            s = b
            while True:
                table.add(s)
                if s == 0:
                    break
                s = (s - 1) & b
        return frozenset(table)

    def has_face(self, bits: int) -> bool:
        """Face test on a raw bitmask, no argument checking."""
        table = self._face_table
        if table is not None:
            return bits in table
        return any(bits & ~F.bits == 0 for F in self.facets)

    def vertex_degrees(self) -> list:
        deg = [0] * self.n
        for F in self.facets:
            for v in F:
                deg[v] += 1
        return deg

    def facets_containing(self, S: VertexSet) -> list:
        b = S.bits
        return [F for F in self.facets if b & ~F.bits == 0]

    def faces_of_size(self, size: int) -> list:
        """All faces with ``size`` vertices, lexicographically sorted."""
        if size == 0:
            return [EMPTY]
        out = set()
        for F in self.facets:
            for c in combinations(F.members, size):
                out.add(VertexSet(c))
        return sorted(out, key=VertexSet.sort_key)

    def labels_of(self, S: Iterable[int]) -> list:
        return [self.labels[v] for v in S]

    def ids_of(self, labels: Iterable[str]) -> VertexSet:
        try:
            return VertexSet(self.label_index[lab] for lab in labels)
        except KeyError as e:
            raise UnknownVertex(f"unknown vertex label {e.args[0]!r}") from None

    def __str__(self) -> str:
        return f"SimplicialPolytope(dim={self.dim}, n={self.n}, facets={len(self.facets)})"


def _resolve(entry, labels: Sequence[str], index: Mapping[str, int]) -> int:
    if isinstance(entry, str):
        if entry not in index:
            raise UnknownVertex(f"facet references undeclared label {entry!r}")
        return index[entry]
    if isinstance(entry, int) and 0 <= entry < len(labels):
        return entry
    raise UnknownVertex(f"facet references unknown vertex {entry!r}")


def make_polytope(dim: int, labels: Sequence, facets: Iterable[Iterable]) -> SimplicialPolytope:
    """Validate a facet list and return the polytope.

    ``labels`` may also be an integer ``n``, meaning labels ``"0".."n-1"``.
    Facet entries are labels (``str``) or vertex ids (``int``).

    Raises NonSimplicial, DuplicateFacet, BadRidge, Disconnected,
    UnusedVertex, UnknownVertex or TooManyVertices when the input is not the
    boundary complex of a simplicial ``dim``-polytope (up to the pseudomanifold
    conditions that can be checked combinatorially).
    """
    if dim < 1:
        raise BadParameters(f"dimension must be >= 1, got {dim}")
    if isinstance(labels, int):
        labels = [str(i) for i in range(labels)]
    labels = tuple(str(lab) for lab in labels)
    if len(labels) > MAX_VERTICES:
        raise TooManyVertices(f"{len(labels)} vertices exceeds the cap of {MAX_VERTICES}")
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise BadParameters("vertex labels must be distinct")

    sets = []
    for raw in facets:
        raw = list(raw)
        ids = [_resolve(e, labels, index) for e in raw]
        F = VertexSet(ids)
        if len(F) != len(ids) or len(ids) != dim:
            raise NonSimplicial(f"facet {raw} does not have exactly {dim} distinct vertices")
        sets.append(F)
    if len(set(sets)) != len(sets):
        dup = next(F for F in sets if sets.count(F) > 1)
        raise DuplicateFacet(f"facet {list(dup)} listed more than once")
    P = SimplicialPolytope(dim, labels, canonical(sets))
    validate(P)
    return P


def _trusted(dim: int, labels: Sequence[str], facets: Iterable[VertexSet]) -> SimplicialPolytope:
    # internal constructor for outputs that are correct by construction
    return SimplicialPolytope(dim, tuple(labels), canonical(facets))


def _ridge_table(P: SimplicialPolytope) -> dict:
    table = defaultdict(list)
    for idx, F in enumerate(P.facets):
        for v in F:
            table[F.bits & ~(1 << v)].append(idx)
    return table


def validate(P: SimplicialPolytope) -> None:
    """Check the structural invariants of an already-built polytope."""
    if not P.facets:
        raise BadRidge("empty facet list")
    used = 0
    for F in P.facets:
        if len(F) != P.dim:
            raise NonSimplicial(f"facet {list(F)} has {len(F)} vertices, expected {P.dim}")
        used |= F.bits
    if used != (1 << P.n) - 1:
        missing = [v for v in range(P.n) if not used >> v & 1]
        raise UnusedVertex(f"vertices {P.labels_of(missing)} lie on no facet")
    table = _ridge_table(P)
    for bits, owners in table.items():
        if len(owners) != 2:
            R = VertexSet.from_bits(bits)
            raise BadRidge(f"ridge {P.labels_of(R)} lies in {len(owners)} facets")
    # connectivity of the facet adjacency graph
    adj = defaultdict(list)
    for a, b in table.values():
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(P.facets):
        raise Disconnected(f"facet graph has a component of {len(seen)} of {len(P.facets)} facets")


def _check_ids(P: SimplicialPolytope, S: VertexSet) -> None:
    if S.bits >> P.n:
        raise UnknownVertex(f"{S} references vertices outside 0..{P.n - 1}")


def is_face(P: SimplicialPolytope, S: VertexSet) -> bool:
    """True iff S is contained in some facet (the empty set always is)."""
    _check_ids(P, S)
    return P.has_face(S.bits)


def ridges(P: SimplicialPolytope) -> list:
    """Every ridge with the indices of its two facets, sorted by ridge."""
    out = [(VertexSet.from_bits(bits), a, b) for bits, (a, b) in _ridge_table(P).items()]
    out.sort(key=lambda r: r[0].members)
    return out


@dataclass(frozen=True)
class QuotientMap:
    """Re-indexing between a quotient polytope and its base.

    ``vertex_map[q]`` is the base id of quotient vertex ``q``.
    """

    base: SimplicialPolytope
    face: VertexSet
    vertex_map: tuple

    @cached_property
    def inverse(self) -> dict:
        return {b: q for q, b in enumerate(self.vertex_map)}

    def to_base(self, S: VertexSet) -> VertexSet:
        vm = self.vertex_map
        return VertexSet(vm[q] for q in S)

    def from_base(self, S: VertexSet) -> VertexSet:
        inv = self.inverse
        return VertexSet(inv[b] for b in S)


def identity_map(P: SimplicialPolytope) -> QuotientMap:
    return QuotientMap(P, EMPTY, tuple(range(P.n)))


def quotient(P: SimplicialPolytope, G: VertexSet, validate_result: bool = True):
    """Quotient polytope P/G and the map back to P.

    The facets of P/G are the sets F - G over facets F containing G,
    re-indexed onto the vertices that occur in them.
    """
    _check_ids(P, G)
    gb = G.bits
    star = [F.bits & ~gb for F in P.facets if gb & ~F.bits == 0]
    if not star:
        raise NotAFace(f"{P.labels_of(G)} is not a face")
    if len(G) > P.dim - 2:
        raise FaceTooLarge(f"quotient by a face with {len(G)} vertices of a {P.dim}-polytope")
    if not G:
        return P, identity_map(P)
    used = 0
    for bits in star:
        used |= bits
    vmap = VertexSet.from_bits(used).members
    shift = [0] * (vmap[-1] + 1)
    for q, b in enumerate(vmap):
        shift[b] = 1 << q
    facets = []
    for bits in star:
        out = 0
        while bits:
            low = bits & -bits
            out |= shift[low.bit_length() - 1]
            bits ^= low
        facets.append(VertexSet.from_bits(out))
    labels = tuple(P.labels[b] for b in vmap)
    qmap = QuotientMap(P, G, vmap)
    # dropping the common face G and relabelling monotonically keeps the
    # lexicographic order of P's facets, so no re-sort is needed
    Q = SimplicialPolytope(P.dim - len(G), labels, tuple(facets))
    if validate_result:
        try:
            validate(Q)
        except PolytopeError as e:
            raise QuotientNotPolytopal(f"P/{P.labels_of(G)} is not a polytope: {e}") from e
    return Q, qmap


def _mapped_facets(P: SimplicialPolytope, mapping: Sequence[int]) -> set:
    out = set()
    for F in P.facets:
        bits = 0
        for v in F:
            bits |= 1 << mapping[v]
        out.add(bits)
    return out


def are_isomorphic(P: SimplicialPolytope, Q: SimplicialPolytope, mapping=None):
    """Return a vertex bijection P -> Q carrying facets onto facets, or None.

    With ``mapping`` (a sequence or dict from P ids to Q ids) only that
    bijection is checked.  Without it an exhaustive backtracking search is
    run, pruned by vertex degrees; it is refused above 12 vertices.
    """
    if P.dim != Q.dim or P.n != Q.n or len(P.facets) != len(Q.facets):
        return None
    target = {F.bits for F in Q.facets}
    if mapping is not None:
        if isinstance(mapping, Mapping):
            mapping = [mapping[v] for v in range(P.n)]
        mapping = tuple(mapping)
        if len(mapping) != P.n or sorted(mapping) != list(range(Q.n)):
            return None
        return mapping if _mapped_facets(P, mapping) == target else None

    if P.n > SEARCH_LIMIT:
        raise SearchTooLarge(f"isomorphism search limited to {SEARCH_LIMIT} vertices, got {P.n}")
    dp, dq = P.vertex_degrees(), Q.vertex_degrees()
    if sorted(dp) != sorted(dq):
        return None
    # map high-degree (most constrained) vertices first
    order = sorted(range(P.n), key=lambda v: (-dp[v], v))
    position = {v: k for k, v in enumerate(order)}
    # facets of P become checkable once their last vertex (in order) is mapped
    closing = defaultdict(list)
    for F in P.facets:
        closing[max(position[v] for v in F)].append(F)

    image = [-1] * P.n
    taken = [False] * Q.n

    def extend(k):
        if k == P.n:
            return True
        v = order[k]
        for w in range(Q.n):
            if taken[w] or dq[w] != dp[v]:
                continue
            image[v] = w
            taken[w] = True
            ok = True
            for F in closing[k]:
                bits = 0
                for u in F:
                    bits |= 1 << image[u]
                if bits not in target:
                    ok = False
                    break
            if ok and extend(k + 1):
                return True
            taken[w] = False
        image[v] = -1
        return False

    return tuple(image) if extend(0) else None
