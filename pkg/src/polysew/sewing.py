"""
Sewing a new vertex onto a neighbourly 2m-polytope through a universal tower.

Two independent routes produce the facets of the sewn polytope P+:

* :func:`sew_bbp_oracle` classifies every facet of P and joins the new
  vertex to every ridge whose two facets lie on opposite sides.
* :func:`sew` never looks at ridges.  It quotients P by the tower prefixes
  down to a polygon, sews there (trivially), and lifts the result back one
  level at a time.  Each lift touches every facet of the current level a
  constant number of times, so the whole run is linear in the facet count
  for fixed dimension.

A lift from level i+1 to level i, with Q = P/Phi_i, R = P/Phi_{i+1} and
(x, y) = (x_{i+1}, y_{i+1}), collects

  (a) facets of Q that the new vertex z_i is beneath,
  (b) G + {x, z_i} for every facet G of R+, reading z_{i+1} as y,
  (c) F + {y, z_i} for every facet F of R that z_{i+1} is beneath.

Levels are kept in the vertex ids of P: level i holds the masks F - Phi_i
for the facets F containing Phi_i.  Every level's new vertex takes the id
n = P.n, which no level vertex uses; pulling a facet back one level then
amounts to replacing bit n by bit y.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    SimplicialPolytope,
    VertexSet,
    _trusted,
    are_isomorphic,
    quotient,
    ridges,
    validate,
)
from .errors import BadDimension, BadParameters, InvalidTower, NotAFace, TooFewVertices
from .neighbourly import MissingFace, is_universal_face, missing_faces
from .tower import Side, UniversalTower, classify_all, quotient_tower


def _beyond(suffix: list, bits: int) -> bool:
    # suffix[t-1] is Phi_{i+t} - Phi_i; beyond iff the largest such t
    # contained in the facet is odd
    for t in range(len(suffix), 0, -1):
        if suffix[t - 1] & ~bits == 0:
            return t % 2 == 1
    return False


@dataclass
class Level:
    """P/Phi_i in the vertex ids of P."""

    index: int
    facets: list  # masks F - Phi_i, lexicographic order
    pairs: tuple  # (x_j, y_j) for j > i
    suffix: list  # Phi_{i+t} - Phi_i for t = 1..m-i
    sewn: Optional[list] = None  # masks of (P/Phi_i)+ once built


@dataclass
class SewingLevels:
    polytope: SimplicialPolytope
    tower: UniversalTower
    new_label: str
    levels: list
    facets_touched: int = 0
    per_level_touched: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.levels)

    @property
    def new_vertex(self) -> int:
        return self.polytope.n

    def quotient_polytope(self, i: int):
        """P/Phi_i as a polytope in its own ids, with the map back to P."""
        return quotient(self.polytope, self.tower.phi(i), validate_result=False)

    def sewn_polytope(self, i: int) -> SimplicialPolytope:
        """(P/Phi_i)+ in its own ids; the new vertex is the last one."""
        Q, qmap = self.quotient_polytope(i)
        n = self.new_vertex
        index = {b: q for q, b in enumerate(qmap.vertex_map)}
        index[n] = Q.n
        facets = [VertexSet(index[v] for v in VertexSet.from_bits(G)) for G in self.levels[i].sewn]
        return _trusted(Q.dim, Q.labels + (self.new_label,), facets)


def _check_preconditions(P: SimplicialPolytope, T: UniversalTower, new_label) -> None:
    if T.polytope is not P and T.polytope != P:
        raise InvalidTower("tower belongs to a different polytope")
    if P.dim % 2 or T.m != P.dim // 2:
        raise InvalidTower(f"a {P.dim}-polytope needs a tower of {P.dim // 2} pairs")
    m = T.m
    if P.n < 2 * m + 3:
        raise TooFewVertices(f"sewing a {P.dim}-polytope needs at least {2 * m + 3} vertices, got {P.n}")
    if new_label is not None and new_label in P.label_index:
        raise BadParameters(f"label {new_label!r} already used")


def prepare_levels(P: SimplicialPolytope, T: UniversalTower, new_label: str = "s1") -> SewingLevels:
    """Quotient P successively by the tower prefixes Phi_0, ..., Phi_{m-1}."""
    _check_preconditions(P, T, new_label)
    pair_bits = [1 << x | 1 << y for x, y in T.pairs]
    m = T.m

    def suffix(i):
        out, acc = [], 0
        for b in pair_bits[i:]:
            acc |= b
            out.append(acc)
        return out

    facets = [F.bits for F in P.facets]
    levels = [Level(0, facets, T.pairs, suffix(0))]
    touched = 0
    for i in range(1, m):
        pb = pair_bits[i - 1]
        touched += len(facets)
        facets = [F & ~pb for F in facets if pb & ~F == 0]
        levels.append(Level(i, facets, T.pairs[i:], suffix(i)))
    return SewingLevels(P, T, new_label, levels, facets_touched=touched)


def _sew_polygon(level: Level, zbit: int) -> list:
    x, y = level.pairs[0]
    edge = 1 << x | 1 << y
    out = [F for F in level.facets if F != edge]
    out.append(1 << x | zbit)
    out.append(1 << y | zbit)
    return out


def _lift(upper: Level, lower: Level, zbit: int) -> tuple:
    """Facets of upper+ from the already sewn lower level, and the number of
    facet records read."""
    x, y = upper.pairs[0]
    xbit, ybit = 1 << x, 1 << y

    suffix = upper.suffix
    out = [F for F in upper.facets if not _beyond(suffix, F)]

    head = xbit | zbit
    for G in lower.sewn:
        if G & zbit:
            G = G ^ zbit | ybit
        out.append(G | head)

    head = ybit | zbit
    suffix = lower.suffix
    for F in lower.facets:
        if not _beyond(suffix, F):
            out.append(F | head)

    touched = len(upper.facets) + len(lower.sewn) + len(lower.facets)
    return out, touched


def run_levels(levels: SewingLevels) -> SewingLevels:
    """Build the sewn facet list of every level, deepest first."""
    lv = levels.levels
    zbit = 1 << levels.new_vertex
    base = lv[-1]
    base.sewn = _sew_polygon(base, zbit)
    per = [len(base.facets)]
    for i in range(len(lv) - 2, -1, -1):
        lv[i].sewn, touched = _lift(lv[i], lv[i + 1], zbit)
        per.append(touched)
    levels.facets_touched += sum(per)
    levels.per_level_touched = per
    return levels


def sew_levels(P: SimplicialPolytope, T: UniversalTower, new_label: str = "s1") -> SewingLevels:
    return run_levels(prepare_levels(P, T, new_label))


def _lex_key(bits: int) -> tuple:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


def _polytope_from_masks(dim: int, labels: tuple, masks: list) -> SimplicialPolytope:
    facets = []
    for key in sorted(map(_lex_key, masks)):
        F = VertexSet.from_bits(sum(1 << v for v in key))
        F._members = key
        facets.append(F)
    return SimplicialPolytope(dim, labels, tuple(facets))


def sew(P: SimplicialPolytope, T: UniversalTower, new_label: str = "s1") -> SimplicialPolytope:
    """Sew a new vertex (id ``P.n``, label ``new_label``) onto P through T."""
    levels = sew_levels(P, T, new_label)
    return _polytope_from_masks(P.dim, P.labels + (new_label,), levels.levels[0].sewn)


def sew_bbp_oracle(P: SimplicialPolytope, T: UniversalTower, new_label: str = "s1") -> SimplicialPolytope:
    """Sewn polytope from the beyond/beneath classification of all facets:
    the beneath facets survive, and every ridge between a beneath and a
    beyond facet is coned to the new vertex."""
    _check_preconditions(P, T, new_label)
    classes = classify_all(T)
    beneath = [c.side is Side.BENEATH for c in classes]
    xbar = P.n
    facets = [P.facets[c.facet_index] for c in classes if beneath[c.facet_index]]
    for G, a, b in ridges(P):
        if beneath[a] != beneath[b]:
            facets.append(G.add(xbar))
    Pplus = _trusted(P.dim, P.labels + (new_label,), facets)
    validate(Pplus)
    return Pplus


def _require_m2(T: UniversalTower) -> None:
    if T.m < 2:
        raise BadDimension("this statement concerns towers with m > 1")


def sewn_missing_faces(P: SimplicialPolytope, T: UniversalTower) -> list:
    """Missing faces of P+ assembled from relative missing faces of P.

    Two families, with Phi_{m+1} standing for P itself (whose only relative
    missing face is the empty set):

    * the odd pairs {x_1, y_1, x_3, y_3, ..., x_{2j-1}, y_{2j-1}} joined
      with a missing face of P relative to Phi_{2j}, for 0 <= 2j <= m+1;
    * the even pairs {x_2, y_2, ..., x_{2j}, y_{2j}} joined with the new
      vertex and a missing face relative to Phi_{2j+1}, for 0 <= 2j+1 <= m+1.
    """
    _require_m2(T)
    _check_preconditions(P, T, None)
    m = T.m
    xbar = 1 << P.n

    def relative(level):
        if level == m + 1:
            return [0]
        return [M.members.bits for M in missing_faces(P, T.phi(level))]

    found = set()
    for j in range(0, (m + 1) // 2 + 1):
        if 2 * j > m + 1:
            break
        head = 0
        for i in range(1, j + 1):
            head |= 1 << T.x(2 * i - 1) | 1 << T.y(2 * i - 1)
        found.update(head | a for a in relative(2 * j))
    for j in range(0, m // 2 + 1):
        if 2 * j + 1 > m + 1:
            break
        head = xbar
        for i in range(1, j + 1):
            head |= 1 << T.x(2 * i) | 1 << T.y(2 * i)
        found.update(head | a for a in relative(2 * j + 1))
    faces = (MissingFace(VertexSet.from_bits(b)) for b in found)
    return sorted(faces, key=MissingFace.sort_key)


def verify_main_theorem(P: SimplicialPolytope, T: UniversalTower, i: int, plus: Optional[SimplicialPolytope] = None) -> bool:
    """Check (P/Phi_i)+ against P+/[Phi_{i-1}, x_i, new vertex].

    The two are compared under the explicit vertex map: quotient vertices go
    to the vertices with the same origin in P, and the new vertex of the left
    side goes to y_i.  For i = m the left side would be a sewing in dimension
    0; there the universality of [Phi_{m-1}, x_m, new vertex] in P+ is
    checked instead.
    """
    m = T.m
    if not 1 <= i <= m:
        raise ValueError(f"i must be in 1..{m}")
    if plus is None:
        plus = sew(P, T)
    xbar = P.n
    head = T.phi(i - 1).add(T.x(i), xbar)
    if i == m:
        return plus.has_face(head.bits) and is_universal_face(plus, head)

    Tq, qmap = quotient_tower(T, i)
    left = sew(Tq.polytope, Tq, "ybar")
    right, rmap = quotient(plus, head)
    inv = rmap.inverse
    try:
        mapping = [inv[b] for b in qmap.vertex_map]
        mapping.append(inv[T.y(i)])
    except KeyError:
        return False
    return are_isomorphic(left, right, mapping) is not None


@dataclass
class LeftoverReport:
    """Per-clause results; each entry is (j, passed)."""

    even_stay_universal: list
    odd_lose_universality: list
    odd_stay_faces: list
    new_faces_universal: list

    @property
    def passed(self) -> bool:
        return all(ok for clause in self.clauses().values() for _, ok in clause)

    def clauses(self) -> dict:
        return {
            "even_stay_universal": self.even_stay_universal,
            "odd_lose_universality": self.odd_lose_universality,
            "odd_stay_faces": self.odd_stay_faces,
            "new_faces_universal": self.new_faces_universal,
        }


def _universal_in(Q, U) -> bool:
    try:
        return is_universal_face(Q, U)
    except NotAFace:
        return False


def verify_tower_leftovers(P: SimplicialPolytope, T: UniversalTower, plus: Optional[SimplicialPolytope] = None) -> LeftoverReport:
    """What becomes of the tower in P+:

    * Phi_j stays universal for even j;
    * Phi_j is not universal for odd j, yet is still a face when j < m
      (nothing is claimed about the face status of Phi_m for odd m);
    * [Phi_{j-1}, x_j, new vertex] is universal for every j.
    """
    _require_m2(T)
    if plus is None:
        plus = sew(P, T)
    xbar = P.n
    m = T.m
    report = LeftoverReport([], [], [], [])
    for j in range(1, m + 1):
        phi = T.phi(j)
        if j % 2 == 0:
            report.even_stay_universal.append((j, _universal_in(plus, phi)))
        else:
            report.odd_lose_universality.append((j, not _universal_in(plus, phi)))
            if j < m:
                report.odd_stay_faces.append((j, plus.has_face(phi.bits)))
        report.new_faces_universal.append((j, _universal_in(plus, T.phi(j - 1).add(T.x(j), xbar))))
    return report
