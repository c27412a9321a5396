"""Sewing two pointed spheres along a pair of points with inverse monodromy.

Left data ``(x_0, ..., x_N; g_0, ..., g_N)`` and right data
``(y_0, ..., y_K; h_0, ..., h_K)`` with ``g_0 h_0 = 1`` sew to
``(x_1, ..., x_N, y_1, ..., y_K; g_1, ..., g_N, h_1, ..., h_K)``. Sewing at
another position first rotates that side cyclically so the sewn point is first.

On coverings, each ``<g_0>``-orbit contributes one tube joining the left
component and the right component that contain it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .covering import build_covering
from .errors import (
    CombinatorialBlowup,
    GroundMismatch,
    InternalConsistencyError,
    NoRemainingPoints,
    SewPairNotInverse,
)
from .fusion import FusionRing
from .monodromy import MarkedPoint, MonodromyData, OrbitRef, build_monodromy, check_admissible
from .perm import UnionFind, compose
from .twisted import DEFAULT_CAP, ModuleAssignment, component_factors


@dataclass(frozen=True)
class SewSpec:
    left: MonodromyData
    right: MonodromyData
    sew_left: int = 0
    sew_right: int = 0

    def validate(self):
        a, b = self.left, self.right
        if a.ground.size != b.ground.size or (a.ground.names and b.ground.names and a.ground.names != b.ground.names):
            raise GroundMismatch("the two sides of a sewing must share the ground set")
        for data, k, side in ((a, self.sew_left, "left"), (b, self.sew_right, "right")):
            if not 0 <= k < data.n_points:
                raise IndexError(f"{side} sewing index {k} out of range")
            if data.n_points < 2:
                raise NoRemainingPoints(f"{side} side has no marked point left after sewing")
        prod = compose(a.gens[self.sew_left], b.gens[self.sew_right])
        if not prod.is_identity():
            raise SewPairNotInverse(prod)

    @property
    def g0(self):
        return self.left.gens[self.sew_left]

    def swapped(self) -> "SewSpec":
        return SewSpec(self.right, self.left, self.sew_right, self.sew_left)


@dataclass(frozen=True)
class SewLayout:
    """Where each surviving point of each side lands in the sewn data."""

    left_map: Mapping[int, int]
    right_map: Mapping[int, int]
    left_rotation: int
    right_rotation: int
    renamed: bool


def _surviving(n: int, k: int) -> list[int]:
    # cyclic order starting right after the sewn point
    return [(k + i) % n for i in range(1, n)]


def sew_layout(spec: SewSpec) -> SewLayout:
    left_idx = _surviving(spec.left.n_points, spec.sew_left)
    right_idx = _surviving(spec.right.n_points, spec.sew_right)
    left_map = {j: i for i, j in enumerate(left_idx)}
    right_map = {l: len(left_idx) + i for i, l in enumerate(right_idx)}
    ids = [spec.left.points[j].id for j in left_idx] + [spec.right.points[l].id for l in right_idx]
    return SewLayout(left_map, right_map, spec.sew_left, spec.sew_right, len(set(ids)) != len(ids))


def sew(spec: SewSpec) -> MonodromyData:
    spec.validate()
    lay = sew_layout(spec)
    pairs, marked = [], {}
    for data, mapping, prefix in ((spec.left, lay.left_map, "a."), (spec.right, lay.right_map, "b.")):
        for j, new_j in mapping.items():
            p = data.points[j]
            pid = prefix + p.id if lay.renamed else p.id
            pairs.append((new_j, MarkedPoint(pid, p.position_hint), data.gens[j]))
            for ref, chosen in data.marked_choice.items():
                if ref.point == j:
                    marked[new_j, ref.rep] = chosen
    pairs.sort(key=lambda t: t[0])
    points_gens = [(p, g) for _, p, g in pairs]
    ok, prod = check_admissible(points_gens)
    if not ok:
        raise InternalConsistencyError(f"sewn data is not admissible (product {prod})")
    return build_monodromy(points_gens, marked, ground=spec.left.ground)


@dataclass(frozen=True)
class SurgeryLedger:
    glued: tuple[tuple[int, int, int], ...]
    """``(orbit rep, left component, right component)`` per ``<g_0>``-orbit."""
    merged: Mapping[tuple[str, int], int]
    tubes: tuple[int, ...]


@dataclass(frozen=True)
class CommuteReport:
    direct: tuple
    predicted: tuple
    ledger: SurgeryLedger

    @property
    def equal(self) -> bool:
        return self.direct == self.predicted


def _signature(components) -> tuple:
    return tuple(sorted(components))


def covering_commutes(spec: SewSpec, strict: bool = True) -> CommuteReport:
    """Compare the covering of the sewn data with surgery on the two coverings.

    Each entry of the report's signatures is ``(orbit, genus, branches)`` with
    branches ``(sewn point index, orbit rep, index)`` sorted.
    """
    sewn = sew(spec)
    lay = sew_layout(spec)
    direct = build_covering(sewn)
    direct_sig = _signature(
        (c.orbit, c.genus, tuple(sorted((b.point, b.orbit.rep, b.index) for b in c.branches)))
        for c in direct.components
    )

    cov_a, cov_b = build_covering(spec.left), build_covering(spec.right)
    na, nb = len(cov_a.components), len(cov_b.components)
    g0_orbits = spec.left.point_orbits[spec.sew_left]
    if g0_orbits != spec.right.point_orbits[spec.sew_right]:
        raise InternalConsistencyError("<g_0>- and <h_0>-orbits differ")

    uf = UnionFind(na + nb)
    glued = []
    for orbit in g0_orbits:
        ia, ib = cov_a.component_of(orbit[0]), cov_b.component_of(orbit[0])
        glued.append((orbit[0], ia, ib))
        uf.union(ia, na + ib)
    classes = uf.groups()
    merged = {}
    for m, cls in enumerate(classes):
        for node in cls:
            merged[("a", node) if node < na else ("b", node - na)] = m
    tubes = [0] * len(classes)
    for _, ia, _ in glued:
        tubes[merged["a", ia]] += 1

    predicted = []
    for m, cls in enumerate(classes):
        left_parts = [cov_a.components[i] for i in cls if i < na]
        right_parts = [cov_b.components[i - na] for i in cls if i >= na]
        left_elems = sorted(e for c in left_parts for e in c.orbit)
        right_elems = sorted(e for c in right_parts for e in c.orbit)
        if left_elems != right_elems:
            raise InternalConsistencyError(f"merged component {m} covers different fibres on the two sides")
        chi = sum(c.euler_characteristic for c in left_parts + right_parts) - 2 * tubes[m]
        if chi % 2 or chi > 2:
            raise InternalConsistencyError(f"merged component {m} has Euler characteristic {chi}")
        branches = []
        for parts, mapping, skip in ((left_parts, lay.left_map, spec.sew_left),
                                     (right_parts, lay.right_map, spec.sew_right)):
            for c in parts:
                for b in c.branches:
                    if b.point != skip:
                        branches.append((mapping[b.point], b.orbit.rep, b.index))
        predicted.append((tuple(left_elems), (2 - chi) // 2, tuple(sorted(branches))))

    report = CommuteReport(direct_sig, _signature(predicted),
                           SurgeryLedger(tuple(glued), merged, tuple(tubes)))
    if strict and not report.equal:
        raise InternalConsistencyError(
            f"covering of sewn data {report.direct} differs from surgery prediction {report.predicted}"
        )
    return report


@dataclass(frozen=True)
class FactorizationReport:
    lhs: int
    rhs: int
    terms: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def sewn_assignment(spec: SewSpec, assign_left: ModuleAssignment, assign_right: ModuleAssignment) -> dict[OrbitRef, int]:
    """Carry labels of surviving orbits to the sewn data; sewn-point labels are dropped."""
    lay = sew_layout(spec)
    out = {}
    for assign, mapping in ((assign_left, lay.left_map), (assign_right, lay.right_map)):
        for ref, lab in assign.items():
            if ref.point in mapping:
                out[OrbitRef(mapping[ref.point], ref.rep)] = lab
    return out


def factorization_check(spec: SewSpec, ring: FusionRing, assign_left_rest: ModuleAssignment,
                        assign_right_rest: ModuleAssignment, cap: int = DEFAULT_CAP,
                        strict: bool = True) -> FactorizationReport:
    """Dimension of the sewn block space against the sum over intermediate modules.

    The sum runs over every label assignment ``X`` on the ``<g_0>``-orbits, with
    ``X`` at the left sewn point and its contragredient at the right one.
    """
    ring.require_valid()
    sewn = sew(spec)
    lhs = 1
    for f in component_factors(sewn, ring, sewn_assignment(spec, assign_left_rest, assign_right_rest)):
        lhs *= f.factor

    reps = [o[0] for o in spec.left.point_orbits[spec.sew_left]]
    terms = ring.rank ** len(reps)
    if terms > cap:
        raise CombinatorialBlowup(terms, cap)
    left_rest = {r: l for r, l in assign_left_rest.items() if r.point != spec.sew_left}
    right_rest = {r: l for r, l in assign_right_rest.items() if r.point != spec.sew_right}
    cov_a, cov_b = build_covering(spec.left), build_covering(spec.right)
    rhs = 0
    for labs in itertools.product(range(ring.rank), repeat=len(reps)):
        la = dict(left_rest)
        la.update({OrbitRef(spec.sew_left, r): l for r, l in zip(reps, labs)})
        a = 1
        for f in component_factors(spec.left, ring, la, cov_a):
            a *= f.factor
        if not a:
            continue
        lb = dict(right_rest)
        lb.update({OrbitRef(spec.sew_right, r): ring.dual[l] for r, l in zip(reps, labs)})
        b = 1
        for f in component_factors(spec.right, ring, lb, cov_b):
            b *= f.factor
        rhs += a * b

    report = FactorizationReport(lhs, rhs, terms)
    if strict and not report.equal:
        raise InternalConsistencyError(f"factorization fails: sewn dimension {lhs} != sum {rhs}")
    return report

