"""
Carry the odd-dimensional universal faces through a sewing.

The sewing levels are walked deepest first, as in :mod:`polysew.sewing`.
On each level, for dimensions 2j-1 from the top down, the universal faces of
the sewn level come from three places:

  (a) universal faces U of the unsewn level that survive: with t the largest
      index such that Phi_t lies in U, U survives iff t is even and
      U + {z, x_{t+1}} is universal one dimension up (already computed);
  (b) every universal (2j-3)-face of the deeper sewn level, pulled back and
      joined with {x, z}, reading the deeper new vertex as y;
  (c) the same faces that avoid the deeper new vertex, joined with {y, z}.

The top dimension is the facet list itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import SimplicialPolytope, VertexSet
from .errors import CatalogOrderViolation, OracleMismatch
from .neighbourly import universal_faces
from .sewing import Level, _polytope_from_masks, prepare_levels, run_levels
from .tower import UniversalTower


@dataclass(frozen=True)
class UniversalCatalog:
    """Universal faces of a polytope keyed by odd dimension 1, 3, ..., d-1."""

    dim: int
    faces: Mapping

    def __getitem__(self, k: int) -> tuple:
        return self.faces[k]

    def dims(self) -> list:
        return sorted(self.faces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniversalCatalog):
            return NotImplemented
        return self.dim == other.dim and {k: tuple(v) for k, v in self.faces.items()} == {
            k: tuple(v) for k, v in other.faces.items()
        }

    def sizes(self) -> dict:
        return {k: len(v) for k, v in sorted(self.faces.items())}


def _sorted(sets) -> tuple:
    return tuple(sorted(sets, key=VertexSet.sort_key))


def universal_catalog(P: SimplicialPolytope) -> UniversalCatalog:
    """Brute-force catalog of every odd-dimensional universal face."""
    faces = {k: tuple(universal_faces(P, k)) for k in range(1, P.dim, 2)}
    return UniversalCatalog(P.dim, faces)


def _witness(pairs: tuple, suffix: list, u: int) -> tuple:
    # largest t with the tower prefix inside u, and the member of the next
    # pair missing from u (x preferred, y when u already holds x)
    t = 0
    for k in range(len(suffix), 0, -1):
        if suffix[k - 1] & ~u == 0:
            t = k
            break
    if t == len(pairs):
        raise ValueError("facets are handled by the facet list")
    x, y = pairs[t]
    return t, (y if u >> x & 1 else x)


def survives(plus_faces: Mapping, tower: UniversalTower, U: VertexSet, new_vertex: int) -> bool:
    """Whether a universal face U of the tower's polytope stays universal
    after sewing ``new_vertex`` through ``tower``.

    With t the largest index such that Phi_t lies in U and v the member of
    the pair (x_{t+1}, y_{t+1}) missing from U, U survives iff t is even and
    U + {new vertex, v} is universal one dimension up.  ``plus_faces`` maps
    odd dimensions of the sewn polytope to collections of universal faces;
    the entry one dimension above U must already exist.
    """
    suffix = [tower.phi(j).bits for j in range(1, tower.m + 1)]
    t, v = _witness(tower.pairs, suffix, U.bits)
    up = len(U) + 1  # dimension of U + {new vertex, v}
    if up not in plus_faces:
        raise CatalogOrderViolation(f"universal {up}-faces of the sewn polytope not computed yet")
    if t % 2:
        return False
    return U.add(new_vertex, v) in plus_faces[up]


def _descend(faces: dict, pair_bits: int) -> dict:
    """Masks of the universal faces of Q/{x, y} from those of Q."""
    out = {}
    for k, lst in faces.items():
        if k < 3:
            continue
        out[k - 2] = [u & ~pair_bits for u in lst if pair_bits & ~u == 0]
    return out


def _lift_catalog(upper: Level, lower: Level, upper_faces: dict, lower_plus: dict, zbit: int) -> dict:
    x, y = upper.pairs[0]
    xz = 1 << x | zbit
    yz = 1 << y | zbit
    ybit = 1 << y
    pairs, suffix = upper.pairs, upper.suffix

    top = 2 * len(upper.pairs) - 1
    plus = {top: set(upper.sewn)}
    for k in range(top - 2, 0, -2):
        found = set()
        above = plus[k + 2]
        for u in upper_faces[k]:
            t, v = _witness(pairs, suffix, u)
            if t % 2 == 0 and (u | zbit | 1 << v) in above:
                found.add(u)
        deeper = [0] if k == 1 else lower_plus[k - 2]
        for u in deeper:
            if u & zbit:
                found.add(u ^ zbit | ybit | xz)
            else:
                found.add(u | xz)
                found.add(u | yz)
        plus[k] = found
    return plus


def _sorted_masks(masks) -> tuple:
    return _sorted(VertexSet.from_bits(b) for b in masks)


def sew_with_tracking(P: SimplicialPolytope, T: UniversalTower, catalog: UniversalCatalog, new_label: str = "s1"):
    """Sew as :func:`polysew.sewing.sew` and return ``(P+, catalog of P+)``.

    ``catalog`` must be the universal catalog of P (see
    :func:`universal_catalog`).
    """
    if catalog.dim != P.dim or catalog.dims() != list(range(1, P.dim, 2)):
        raise ValueError("catalog does not match the polytope's dimension")
    levels = run_levels(prepare_levels(P, T, new_label))
    lv = levels.levels
    zbit = 1 << P.n

    cats = [{k: [U.bits for U in lst] for k, lst in catalog.faces.items()}]
    for i in range(1, len(lv)):
        x, y = lv[i - 1].pairs[0]
        cats.append(_descend(cats[-1], 1 << x | 1 << y))

    # in a polygon the only odd dimension is 1 and every edge is a facet
    plus = {1: set(lv[-1].sewn)}
    for i in range(len(lv) - 2, -1, -1):
        plus = _lift_catalog(lv[i], lv[i + 1], cats[i], plus, zbit)

    Pplus = _polytope_from_masks(P.dim, P.labels + (new_label,), lv[0].sewn)
    result = UniversalCatalog(P.dim, {k: _sorted_masks(v) for k, v in sorted(plus.items())})
    _check_new_faces(T, result, P.n)
    return Pplus, result


def _check_new_faces(T: UniversalTower, plus: UniversalCatalog, xbar: int) -> None:
    # every universal face through the new vertex meets the sewing edge
    edge = T.phi(1).bits
    for lst in plus.faces.values():
        for U in lst:
            if xbar in U and not U.bits & edge:
                raise OracleMismatch(f"tracked face {U} contains the new vertex but misses the sewing edge")
