"""Monodromy data of a pointed sphere: marked points with admissible permutations.

The permutations ``g_1, ..., g_N`` attached to the marked points are
admissible when their ordered product is the identity::

    g_1 * g_2 * ... * g_N == id        (left action, see :mod:`permorb.perm`)

For three points this reads ``g_1 * g_2 == g_3^-1``: a ``g_1``-twisted and a
``g_2``-twisted module fuse into a ``g_1 g_2``-twisted one, whose contragredient
sits at the third point. Points must be listed in an order compatible with this
convention. The relation is invariant under cyclic rotation of the list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, NamedTuple, Optional, Sequence

from .errors import BadMarkedChoice, EmptyData, GroundMismatch, NotAdmissible
from .perm import IndexSet, Permutation, eval_word, orbits, product


class MarkedPoint(NamedTuple):
    id: str
    position_hint: Optional[str] = None


class OrbitRef(NamedTuple):
    """A ``<g_j>``-orbit, named by point index and the orbit's minimum element."""

    point: int
    rep: int


@dataclass(frozen=True)
class MonodromyData:
    ground: IndexSet
    points: tuple[MarkedPoint, ...]
    gens: tuple[Permutation, ...]
    marked_choice: Mapping[OrbitRef, int] = field(hash=False)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @cached_property
    def point_orbits(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """For each point j, the ``<g_j>``-orbits as sorted tuples, sorted by minimum."""
        return tuple(
            tuple(tuple(o) for o in orbits([g], self.ground)) for g in self.gens
        )

    def orbit_refs(self) -> list[OrbitRef]:
        return [OrbitRef(j, o[0]) for j, orbs in enumerate(self.point_orbits) for o in orbs]

    def orbit_of(self, j: int, e: int) -> tuple[int, ...]:
        for o in self.point_orbits[j]:
            if e in o:
                return o
        raise ValueError(f"element {e} not in ground set")

    def point_index(self, point_id: str) -> int:
        for j, p in enumerate(self.points):
            if p.id == point_id:
                return j
        raise KeyError(point_id)


def _as_pairs(points_gens) -> tuple[tuple[MarkedPoint, ...], tuple[Permutation, ...]]:
    points, gens = [], []
    for p, g in points_gens:
        points.append(p if isinstance(p, MarkedPoint) else MarkedPoint(str(p)))
        gens.append(g)
    return tuple(points), tuple(gens)


def check_admissible(points_gens: Sequence[tuple[MarkedPoint, Permutation]]) -> tuple[bool, Permutation]:
    """Return ``(ok, product)``; ``product`` is the witness when ``ok`` is false."""
    _, gens = _as_pairs(points_gens)
    if not gens:
        raise EmptyData("monodromy data needs at least one marked point")
    if len({len(g) for g in gens}) > 1:
        raise GroundMismatch("monodromy permutations act on sets of different sizes")
    prod = product(gens)
    return prod.is_identity(), prod


def build_monodromy(
    points_gens: Sequence[tuple[MarkedPoint, Permutation]],
    marked_override: Optional[Mapping[tuple[int, int], int]] = None,
    ground: Optional[IndexSet] = None,
) -> MonodromyData:
    """Validate admissibility and choose a marked element in every ``<g_j>``-orbit.

    The default marked element is the orbit minimum. ``marked_override`` maps
    ``(j, e)``, where ``e`` is any element of the orbit, to the chosen element.
    """
    points, gens = _as_pairs(points_gens)
    ok, prod = check_admissible(list(zip(points, gens)))
    if not ok:
        raise NotAdmissible(prod)
    ids = [p.id for p in points]
    if len(set(ids)) != len(ids):
        raise ValueError(f"marked point ids must be distinct, got {ids}")
    if ground is None:
        ground = IndexSet(len(gens[0]))
    elif ground.size != len(gens[0]):
        raise GroundMismatch(f"ground of size {ground.size} but permutations of size {len(gens[0])}")

    marked = {}
    for j, g in enumerate(gens):
        for o in orbits([g], ground):
            marked[OrbitRef(j, o[0])] = o[0]
    for (j, e), chosen in (marked_override or {}).items():
        if not 0 <= j < len(gens):
            raise BadMarkedChoice(f"no marked point with index {j}")
        orbit = _orbit_containing(gens[j], e)
        if chosen not in orbit:
            raise BadMarkedChoice(
                f"element {chosen + 1} is not in the <g_{j + 1}>-orbit of {e + 1} "
                f"({{{', '.join(str(x + 1) for x in orbit)}}})"
            )
        marked[OrbitRef(j, min(orbit))] = chosen
    return MonodromyData(ground, points, gens, dict(sorted(marked.items())))


def _orbit_containing(g: Permutation, e: int) -> list[int]:
    if not 0 <= e < len(g):
        raise BadMarkedChoice(f"element {e + 1} is outside the ground set")
    orbit = [e]
    x = g(e)
    while x != e:
        orbit.append(x)
        x = g(x)
    return sorted(orbit)


def conjugate(data: MonodromyData, s: Permutation) -> MonodromyData:
    """Replace every ``g_j`` by ``s^-1 g_j s``; marked elements revert to the default."""
    gens = [g.conjugate(s) for g in data.gens]
    return build_monodromy(list(zip(data.points, gens)), ground=data.ground)


def rebase(data: MonodromyData, sigma) -> MonodromyData:
    """Change of base point along a word ``sigma`` in the generators."""
    s = eval_word(sigma, data.gens, data.ground.size)
    return conjugate(data, s)


def rotate(data: MonodromyData, k: int = 1) -> MonodromyData:
    """Move the first ``k`` points to the end, keeping the relation intact.

    Each moved generator is replaced by its conjugate by the product of the
    others (for admissible data this is the generator itself).
    """
    points, gens = list(data.points), list(data.gens)
    n = len(gens)
    for _ in range(k % n):
        rest = product(gens[1:], data.ground.size)
        first = gens[0].conjugate(rest)
        points = points[1:] + points[:1]
        gens = gens[1:] + [first]
    return build_monodromy(list(zip(points, gens)), ground=data.ground)
