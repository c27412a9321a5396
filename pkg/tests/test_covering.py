import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permorb.covering import (
    build_covering,
    describe,
    export_dot,
    genus_from_branching,
    genus_from_orbit_counts,
    lift_word,
)
from permorb.errors import InternalConsistencyError
from permorb.monodromy import conjugate, rotate
from permorb.perm import Permutation, word
from permorb.schema import bundled_problem

from helpers import P, make_data, random_data, random_perm
from oracles import orbits_bfs

FIGURE2_DOT = """\
graph covering {
  label="permutation covering, |E| = 2";
  node [shape=box];
  subgraph cluster_0 {
    label="component {1, 2} degree=2 genus=1";
    c0_p0_e0 [label="x1 / orbit 1 / index 2 / genus 1"];
    c0_p1_e0 [label="x2 / orbit 1 / index 2 / genus 1"];
    c0_p2_e0 [label="x3 / orbit 1 / index 2 / genus 1"];
    c0_p3_e0 [label="x4 / orbit 1 / index 2 / genus 1"];
  }
}
"""


def euler_genera(data):
    """Genus per component from chi = sum_j #cycles_j - d (N - 2), cycles counted by hand."""
    n = data.ground.size
    out = []
    for comp in orbits_bfs(data.gens, n):
        cycles = 0
        for g in data.gens:
            seen = set()
            for e in comp:
                if e not in seen:
                    cycles += 1
                    x = e
                    while x not in seen:
                        seen.add(x)
                        x = g.images[x]
        chi = cycles - len(comp) * (data.n_points - 2)
        assert chi % 2 == 0
        out.append((tuple(comp), (2 - chi) // 2))
    return out


def signature(report):
    return [(c.orbit, c.genus) for c in report.components]


class TestExamples:
    def test_figure2_torus(self):
        report = build_covering(bundled_problem("figure2").data)
        (comp,) = report.components
        assert (comp.degree, comp.genus, comp.euler_characteristic) == (2, 1, 0)
        assert [b.index for b in comp.branches] == [2, 2, 2, 2]

    def test_trivial_monodromy(self):
        data = make_data([Permutation.identity(3)] * 3)
        report = build_covering(data)
        assert signature(report) == [((0,), 0), ((1,), 0), ((2,), 0)]

    def test_transitive_three_cycle(self):
        g = P("(1 2 3)", 3)
        report = build_covering(make_data([g, g, g]))
        assert signature(report) == [((0, 1, 2), 1)]

    def test_cyclic3(self):
        report = build_covering(bundled_problem("cyclic3").data)
        assert signature(report) == [((0, 1, 2), 0)]
        assert [b.index for b in report.components[0].branches] == [3, 1, 1, 1, 3]

    def test_two_point_data_is_spheres(self):
        rng = random.Random(11)
        for _ in range(100):
            g = random_perm(rng, rng.randint(1, 8))
            report = build_covering(make_data([g, g.inverse()]))
            assert all(c.genus == 0 for c in report.components)

    def test_formulas(self):
        assert genus_from_branching(2, [[2], [2], [2], [2]]) == 1
        assert genus_from_orbit_counts(2, [1, 1, 1, 1]) == 1
        with pytest.raises(InternalConsistencyError):
            genus_from_branching(2, [[2], [2], [2]])

    def test_component_of_and_lift(self):
        data = make_data([P("(1 2)", 4), P("(1 2)", 4)])
        report = build_covering(data)
        assert report.component_of(1) == 0 and report.component_of(3) == 2
        assert lift_word(report, word((0, 1), (1, 1))).is_identity()
        assert lift_word(report, word((0, 1))) == P("(1 2)", 4)


class TestOutput:
    def test_dot_golden(self):
        assert export_dot(build_covering(bundled_problem("figure2").data)) == FIGURE2_DOT

    def test_dot_deterministic(self):
        rng = random.Random(5)
        data = random_data(rng)
        assert export_dot(build_covering(data)) == export_dot(build_covering(data))

    def test_describe(self):
        text = describe(build_covering(bundled_problem("figure2").data))
        assert "genus: 1" in text and "degree: 2" in text
        assert text.count("index 2") == 4


class TestProperties:
    @settings(max_examples=300)
    @given(st.randoms(use_true_random=False))
    def test_genus_matches_cycle_count(self, rnd):
        data = random_data(rnd)
        report = build_covering(data)
        assert signature(report) == euler_genera(data)
        assert report.total_degree == data.ground.size
        for comp in report.components:
            for j in range(data.n_points):
                assert sum(b.index for b in comp.branches_at(j)) == comp.degree

    @settings(max_examples=200)
    @given(st.randoms(use_true_random=False))
    def test_invariant_under_conjugation_and_rotation(self, rnd):
        data = random_data(rnd)
        genera = sorted(c.genus for c in build_covering(data).components)
        s = random_perm(rnd, data.ground.size)
        assert sorted(c.genus for c in build_covering(conjugate(data, s)).components) == genera
        k = rnd.randrange(data.n_points)
        assert sorted(c.genus for c in build_covering(rotate(data, k)).components) == genera

    @settings(max_examples=100)
    @given(st.randoms(use_true_random=False))
    def test_adding_identity_point_changes_nothing(self, rnd):
        data = random_data(rnd, max_points=5)
        more = make_data(list(data.gens) + [Permutation.identity(data.ground.size)])
        assert signature(build_covering(more)) == signature(build_covering(data))
