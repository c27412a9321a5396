"""Permutation-twisted conformal blocks, at the level of labels and dimensions.

A ``g_j``-twisted module of the tensor-power algebra is described by one
fusion-ring label per ``<g_j>``-orbit (rationality assumed: these exhaust the
irreducibles). The dimension of the twisted block space on the sphere equals
the product, over components of the permutation covering, of untwisted block
dimensions at the component's genus with the labels of the orbits it contains.
Marked elements of orbits never enter a dimension.
"""

from __future__ import annotations

import csv
import io
import math
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .covering import CoveringReport, build_covering
from .errors import (
    BadWeightDenominator,
    CombinatorialBlowup,
    IncompleteAssignment,
    InsufficientTruncation,
)
from .fusion import FusionRing, block_dim
from .monodromy import MarkedPoint, MonodromyData, OrbitRef, build_monodromy
from .perm import IndexSet, Permutation, compose

ModuleAssignment = Mapping[OrbitRef, int]

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class ComponentFactor:
    orbit: tuple[int, ...]
    genus: int
    labels: tuple[int, ...]
    factor: int


def check_assignment(data: MonodromyData, ring: FusionRing, assign: ModuleAssignment) -> dict[OrbitRef, int]:
    """Return the assignment restricted to ``data``'s orbits, with labels as indices."""
    refs = data.orbit_refs()
    missing = [r for r in refs if r not in assign]
    if missing:
        raise IncompleteAssignment(missing)
    return {r: ring.index(assign[r]) for r in refs}


def component_factors(data: MonodromyData, ring: FusionRing, assign: ModuleAssignment,
                      report: Optional[CoveringReport] = None) -> list[ComponentFactor]:
    ring.require_valid()
    labels = check_assignment(data, ring, assign)
    if report is None:
        report = build_covering(data)
    out = []
    for comp in report.components:
        ins = tuple(labels[b.orbit] for b in comp.branches)
        out.append(ComponentFactor(comp.orbit, comp.genus, ins, block_dim(ring, comp.genus, ins)))
    return out


def twisted_block_dim(data: MonodromyData, ring: FusionRing, assign: ModuleAssignment) -> int:
    total = 1
    for f in component_factors(data, ring, assign):
        total *= f.factor
        if not total:
            break
    return total


def contragredient_assignment(assign: ModuleAssignment, ring: FusionRing) -> dict[OrbitRef, int]:
    return {ref: ring.dual[ring.index(lab)] for ref, lab in assign.items()}


def enumerate_assignments(data: MonodromyData, j: int, ring: FusionRing):
    """All total label assignments on the ``<g_j>``-orbits, lexicographic in (rep, label)."""
    reps = [o[0] for o in data.point_orbits[j]]
    for labs in itertools.product(range(ring.rank), repeat=len(reps)):
        yield dict(zip(reps, labs))


@dataclass(frozen=True)
class TwistedFusionTable:
    ring: FusionRing
    data: MonodromyData
    rows: tuple[tuple[dict, dict, dict, int], ...]
    """``(in1, in2, out, value)``; each module is ``{orbit rep: label index}``."""

    def module_name(self, module: Mapping[int, int]) -> str:
        name = self.data.ground.name
        return "(" + ", ".join(f"{name(r)}: {self.ring.labels[l]}" for r, l in module.items()) + ")"

    def render_text(self) -> str:
        cols = [(self.module_name(a), self.module_name(b), self.module_name(c), str(v)) for a, b, c, v in self.rows]
        head = ("in1", "in2", "out", "dim")
        widths = [max(len(head[i]), *(len(r[i]) for r in cols)) if cols else len(head[i]) for i in range(4)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
        for r in cols:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["in1", "in2", "out", "dim"])
        for a, b, c, v in self.rows:
            w.writerow([self.module_name(a), self.module_name(b), self.module_name(c), v])
        return buf.getvalue()


def three_point_data(g1: Permutation, g2: Permutation, ground: Optional[IndexSet] = None) -> MonodromyData:
    """Admissible data ``(g1, g2, (g1 g2)^-1)`` on points ``x1, x2, x3``."""
    g3 = compose(g1, g2).inverse()
    points = [MarkedPoint("x1"), MarkedPoint("x2"), MarkedPoint("x3")]
    return build_monodromy(list(zip(points, [g1, g2, g3])), ground=ground)


def twisted_fusion_table(ring: FusionRing, E_size: int, g1: Permutation, g2: Permutation,
                         cap: int = DEFAULT_CAP, ground: Optional[IndexSet] = None) -> TwistedFusionTable:
    """Dimensions for every irreducible ``g1``-, ``g2``- and ``g1 g2``-twisted triple.

    The ``out`` module is ``g1 g2``-twisted; its contragredient (dual labels on
    the same orbits) is what sits at the third point, so that for ``E_size = 1``
    the table is the ordinary fusion rules ``N_ab^c``.
    """
    ring.require_valid()
    if len(g1) != E_size or len(g2) != E_size:
        raise ValueError(f"permutations must act on {E_size} elements")
    data = three_point_data(g1, g2, ground)
    counts = [ring.rank ** len(orbs) for orbs in data.point_orbits]
    total = counts[0] * counts[1] * counts[2]
    if total > cap:
        raise CombinatorialBlowup(total, cap)
    report = build_covering(data)
    rows = []
    for a in enumerate_assignments(data, 0, ring):
        for b in enumerate_assignments(data, 1, ring):
            for c in enumerate_assignments(data, 2, ring):
                assign = {OrbitRef(0, r): l for r, l in a.items()}
                assign.update({OrbitRef(1, r): l for r, l in b.items()})
                assign.update({OrbitRef(2, r): ring.dual[l] for r, l in c.items()})
                value = 1
                for f in component_factors(data, ring, assign, report):
                    value *= f.factor
                rows.append((a, b, c, value))
    return TwistedFusionTable(ring, data, tuple(rows))


def twisted_graded_dims(data: MonodromyData, j: int, dims_per_orbit: Mapping, max_weight) -> dict[Fraction, int]:
    """Graded dimensions of a ``g_j``-twisted module from those of its orbit factors.

    An orbit of size ``k`` whose factor has ``dims[n]`` states at weight ``n``
    contributes them at weight ``n / k``; the twisted module is the tensor
    product, so the result is the convolution. ``dims_per_orbit`` is keyed by
    :class:`OrbitRef` or by orbit representative. Returns every weight in
    ``(1/|g_j|) N`` up to ``max_weight``, zeros included.
    """
    order = data.gens[j].order()
    max_weight = Fraction(max_weight)
    if max_weight < 0:
        raise BadWeightDenominator(f"max_weight {max_weight} is negative")
    if (max_weight * order).denominator != 1:
        raise BadWeightDenominator(f"max_weight {max_weight} is not a multiple of 1/{order}")
    top = int(max_weight * order)

    poly = [0] * (top + 1)
    poly[0] = 1
    for orbit in data.point_orbits[j]:
        rep = orbit[0]
        dims = dims_per_orbit.get(OrbitRef(j, rep), dims_per_orbit.get(rep))
        if dims is None:
            raise IncompleteAssignment([OrbitRef(j, rep)])
        k = len(orbit)
        need = math.floor(max_weight * k)
        if len(dims) - 1 < need:
            raise InsufficientTruncation(
                f"orbit of {rep} (size {k}) has dims up to level {len(dims) - 1}, needs {need}"
            )
        if any((not isinstance(d, int)) or d < 0 for d in dims):
            raise ValueError(f"graded dimensions must be nonnegative integers: {list(dims)}")
        step = order // k
        factor = [0] * (top + 1)
        for n, d in enumerate(dims):
            if n * step > top:
                break
            factor[n * step] = d
        poly = _truncated_product(poly, factor, top)
    return {Fraction(m, order): c for m, c in enumerate(poly)}


def _truncated_product(p: Sequence[int], q: Sequence[int], top: int) -> list[int]:
    out = [0] * (top + 1)
    for i, a in enumerate(p):
        if a:
            for k, b in enumerate(q[: top + 1 - i]):
                if b:
                    out[i + k] += a * b
    return out
