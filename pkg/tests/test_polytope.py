import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricslope.diagram import NewtonDiagram
from toricslope.polytope import (
    Face,
    dominance_region,
    dominance_regions,
    dominating_indices,
    face_members,
    lower_hull,
    region_contains,
)

from conftest import HIRZ_CASE1_SAMPLES, HIRZ_SINGLE_FACE, hirz_diagram, p2_diagram

F = Fraction


def rich_faces(polytope):
    return [f for f in polytope.faces if len(f.member_indices) >= 3]


def diagram_configs():
    out = [p2_diagram(q) for q in (0, F(1, 4), F(1, 2), 1, F(3, 2), 2)]
    out += [hirz_diagram(w) for w in HIRZ_CASE1_SAMPLES + (HIRZ_SINGLE_FACE,)]
    return out


weights = st.fractions(min_value=0, max_value=4, max_denominator=12)


@st.composite
def random_diagrams(draw):
    pairs = draw(st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=7, unique=True,
    ))
    qs = draw(st.lists(weights, min_size=len(pairs), max_size=len(pairs)))
    triples = [(p, r, q) for (p, r), q in zip(pairs, qs)]
    try:
        return NewtonDiagram.from_triples(triples)
    except ValueError:
        return None


class TestLowerHullExamples:
    @pytest.mark.parametrize("q", [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)])
    def test_p2_low_q_single_rich_face(self, q):
        poly = lower_hull(p2_diagram(q))
        [face] = rich_faces(poly)
        assert face.normal == (1, 1 - q)
        assert face.offset == 1
        assert len(face.member_indices) == 3

    @pytest.mark.parametrize("q", [F(3, 2), F(2), F(5)])
    def test_p2_high_q_edge_face(self, q):
        d = p2_diagram(q)
        poly = lower_hull(d)
        assert rich_faces(poly) == []
        [face] = poly.faces
        assert face.normal == (1, 0) and face.offset == 1
        assert {d.points[k].pair for k in face.member_indices} == {(0, 0), (1, 0)}

    def test_zero_weight_at_origin_is_trivial(self):
        d = NewtonDiagram.from_triples([(0, 0, 0), (1, 0, 1), (0, 1, 1)])
        assert lower_hull(d).faces == ()

    @pytest.mark.parametrize("w", HIRZ_CASE1_SAMPLES)
    def test_hirzebruch_case1_faces(self, w):
        q00, q10, _, q01, q11 = w
        d = hirz_diagram(w)
        got = {(f.normal, f.offset) for f in rich_faces(lower_hull(d))}
        expected = {
            ((q00 - q10, q10 - q11), q00),
            ((q01 - q11, q00 - q01), q00),
            ((q10, q10 - q11), 2 * q10),
        }
        assert got == expected

    def test_hirzebruch_single_face(self, hirz_single):
        poly = lower_hull(hirz_single)
        [face] = rich_faces(poly)
        assert face.member_indices == tuple(range(5))
        assert face.normal == (F(1, 2), F(1, 2)) and face.offset == 1
        # (1, 0) sits midway between (0,0,1) and (2,0,0)
        assert poly.vertex_flags[hirz_single.index_of((1, 0))] is False

    def test_p2_all_three_points_are_vertices(self, p2_half):
        assert lower_hull(p2_half).vertex_flags == (True, True, True)


class TestFaceMembers:
    def test_p2_half(self, p2_half):
        face = Face(F(1), F(1, 2), F(1), ())
        assert face_members(face, p2_half) == [0, 1, 2]

    def test_hirzebruch_single(self, hirz_single):
        face = Face(F(1, 2), F(1, 2), F(1), ())
        assert face_members(face, hirz_single) == [0, 1, 2, 3, 4]

    def test_p2_q2(self):
        d = p2_diagram(2)
        face = Face(F(1), F(0), F(1), ())
        assert [d.points[k].pair for k in face_members(face, d)] == [(0, 0), (1, 0)]


class TestDominanceRegions:
    def test_single_point_is_whole_quadrant(self):
        # diagrams need three points; a lone dominant point is modelled by
        # raising the others far above it
        d = NewtonDiagram.from_triples([(0, 0, 0), (1, 0, 100), (0, 1, 100)])
        reg = dominance_region(d, d.index_of((0, 0)))
        assert reg.full_dimensional
        assert set(reg.rays) == {(1, 0), (0, 1)}
        assert reg.corners == ((0, 0),)

    @pytest.mark.parametrize("q", [F(1, 4), F(1, 2), F(3, 4)])
    def test_p2_shared_corner(self, q):
        poly = lower_hull(p2_diagram(q))
        regions = dominance_regions(poly)
        assert len(regions) == 3
        shared = set.intersection(*(set(r.corners) for r in regions))
        assert (1, 1 - q) in shared

    def test_non_vertex_has_empty_interior(self, hirz_single):
        reg = dominance_region(hirz_single, hirz_single.index_of((1, 0)))
        assert not reg.full_dimensional

    @pytest.mark.parametrize("d", diagram_configs())
    def test_duality(self, d):
        poly = lower_hull(d)
        normals = {f.normal for f in poly.faces + poly.trivial_faces}
        corners = set()
        for reg in dominance_regions(poly):
            corners |= set(reg.corners)
        assert corners == normals | {(0, 0)}

    @pytest.mark.parametrize("d", diagram_configs())
    def test_tiling_random_points(self, d):
        rng = random.Random(1234)
        poly = lower_hull(d)
        vertices = poly.vertices
        for _ in range(100):
            a = F(rng.randint(0, 400), rng.randint(1, 100))
            b = F(rng.randint(0, 400), rng.randint(1, 100))
            containing = [v for v in vertices if region_contains(d, v, a, b)]
            winners = dominating_indices(d, a, b)
            assert containing, (a, b)
            # a unique winner means the point is interior to exactly one region
            if len(winners) == 1:
                assert containing == winners
            else:
                assert set(containing) <= set(winners)


class TestProperties:
    @pytest.mark.parametrize("d", diagram_configs())
    def test_separation_and_membership(self, d):
        for face in lower_hull(d).faces:
            assert face.offset > 0
            for k, pt in enumerate(d.points):
                if k in face.member_indices:
                    assert face.value(pt) == face.offset
                else:
                    assert face.value(pt) > face.offset

    @pytest.mark.parametrize("d", diagram_configs())
    def test_maximality(self, d):
        for face in lower_hull(d).faces:
            assert list(face.member_indices) == face_members(face, d)
            for drop in face.member_indices:
                reduced = Face(face.normal_a, face.normal_b, face.offset,
                               tuple(k for k in face.member_indices if k != drop))
                assert drop in face_members(reduced, d)

    @settings(max_examples=80, deadline=None)
    @given(random_diagrams())
    def test_random_diagrams(self, d):
        if d is None:
            return
        poly = lower_hull(d)
        normals = [f.normal for f in poly.faces]
        assert len(normals) == len(set(normals))
        for face in poly.faces:
            assert face.normal_a >= 0 and face.normal_b >= 0 and face.offset > 0
            assert list(face.member_indices) == face_members(face, d)
            assert len(face.member_indices) >= 2
        corners = set()
        for reg in dominance_regions(poly):
            corners |= set(reg.corners)
        assert corners == {f.normal for f in poly.faces + poly.trivial_faces} | {(0, 0)}
        for k, flag in enumerate(poly.vertex_flags):
            assert flag == dominance_region(d, k).full_dimensional
