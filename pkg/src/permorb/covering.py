"""The permutation covering of a pointed sphere, reduced to orbit data.

Connected components correspond to orbits of the group generated by all
monodromy permutations. Over the j-th marked point, a component has one
preimage per ``<g_j>``-orbit it contains, ramified with index equal to the
orbit size. Genera follow from Riemann-Hurwitz and are computed twice, by two
rearrangements of the formula, in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError
from .monodromy import MonodromyData, OrbitRef
from .perm import Permutation, eval_word, format_cycles, orbits


@dataclass(frozen=True)
class BranchRecord:
    point: int
    orbit: OrbitRef
    elements: tuple[int, ...]
    marked_element: int

    @property
    def index(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CoveringComponent:
    orbit: tuple[int, ...]
    branches: tuple[BranchRecord, ...]
    genus: int

    @property
    def degree(self) -> int:
        return len(self.orbit)

    def branches_at(self, j: int) -> list[BranchRecord]:
        return [b for b in self.branches if b.point == j]

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus


@dataclass(frozen=True)
class CoveringReport:
    source: MonodromyData
    components: tuple[CoveringComponent, ...]

    @property
    def total_degree(self) -> int:
        return self.source.ground.size

    def component_of(self, e: int) -> int:
        for i, c in enumerate(self.components):
            if e in c.orbit:
                return i
        raise ValueError(f"element {e} not in ground set")


def _half(twice: int, what: str) -> int:
    if twice % 2:
        raise InternalConsistencyError(f"{what}: odd value {twice} for twice the genus")
    return twice // 2


def genus_from_branching(degree: int, orbit_sizes: list[list[int]]) -> int:
    """Riemann-Hurwitz: ``g = 1 - d + 1/2 * sum_j sum_w (|w| - 1)``.

    ``orbit_sizes[j]`` lists the sizes of the ``<g_j>``-orbits in the component.
    """
    ramification = sum(k - 1 for sizes in orbit_sizes for k in sizes)
    return _half(2 - 2 * degree + ramification, "branching form")


def genus_from_orbit_counts(degree: int, orbit_counts: list[int]) -> int:
    """Same genus via orbit counts: ``g = 1 + (N/2 - 1) d - 1/2 * sum_j |Orb(g_j)|``."""
    n = len(orbit_counts)
    return _half(2 + (n - 2) * degree - sum(orbit_counts), "orbit-count form")


def build_covering(data: MonodromyData) -> CoveringReport:
    comps = orbits(data.gens, data.ground)
    comp_of = {}
    for i, c in enumerate(comps):
        for e in c:
            comp_of[e] = i
    branches: list[list[BranchRecord]] = [[] for _ in comps]
    for j, orbs in enumerate(data.point_orbits):
        for o in orbs:
            ref = OrbitRef(j, o[0])
            branches[comp_of[o[0]]].append(BranchRecord(j, ref, o, data.marked_choice[ref]))

    components = []
    n = data.n_points
    for orbit, recs in zip(comps, branches):
        degree = len(orbit)
        sizes = [[] for _ in range(n)]
        for b in recs:
            sizes[b.point].append(b.index)
        for j in range(n):
            if sum(sizes[j]) != degree:
                raise InternalConsistencyError(f"branch indices at point {j} do not sum to degree {degree}")
        g88 = genus_from_branching(degree, sizes)
        g89 = genus_from_orbit_counts(degree, [len(s) for s in sizes])
        if g88 != g89:
            raise InternalConsistencyError(f"genus formulas disagree: {g88} != {g89}")
        if g88 < 0:
            raise InternalConsistencyError(f"negative genus {g88} for component {orbit}")
        ramification = sum(b.index - 1 for b in recs)
        if 2 - 2 * g88 != 2 * degree - ramification:
            raise InternalConsistencyError("Euler characteristic identity fails")
        components.append(CoveringComponent(tuple(orbit), tuple(recs), g88))
    return CoveringReport(data, tuple(components))


def lift_word(report: CoveringReport, w) -> Permutation:
    """Permutation of fibre labels obtained by transporting along the word ``w``."""
    data = report.source
    return eval_word(w, data.gens, data.ground.size)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(report: CoveringReport) -> str:
    """Graphviz description: one cluster per component, one node per branch record."""
    data = report.source
    name = data.ground.name
    lines = [
        "graph covering {",
        f"  label={_dot_quote(f'permutation covering, |E| = {report.total_degree}')};",
        "  node [shape=box];",
    ]
    for i, comp in enumerate(report.components):
        orbit_txt = "{" + ", ".join(name(e) for e in comp.orbit) + "}"
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(
            f"    label={_dot_quote(f'component {orbit_txt} degree={comp.degree} genus={comp.genus}')};"
        )
        for b in comp.branches:
            pid = data.points[b.point].id
            node = f"c{i}_p{b.point}_e{b.orbit.rep}"
            label = f"{pid} / orbit {name(b.orbit.rep)} / index {b.index} / genus {comp.genus}"
            lines.append(f"    {node} [label={_dot_quote(label)}];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(report: CoveringReport) -> str:
    """Plain-text report used by the command line."""
    data = report.source
    name = data.ground.name
    out = [f"ground set: {report.total_degree} element(s)"]
    for p, g in zip(data.points, data.gens):
        out.append(f"  {p.id}: {format_cycles(g, data.ground)}")
    out.append(f"components: {len(report.components)}")
    for i, comp in enumerate(report.components, 1):
        out.append(f"component {i}: {{{', '.join(name(e) for e in comp.orbit)}}}")
        out.append(f"  degree: {comp.degree}")
        out.append(f"  genus: {comp.genus}")
        out.append("  branches:")
        for b in comp.branches:
            out.append(
                f"    {data.points[b.point].id}  orbit {{{', '.join(name(e) for e in b.elements)}}}"
                f"  index {b.index}  marked {name(b.marked_element)}"
            )
    return "\n".join(out) + "\n"
