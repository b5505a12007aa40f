"""Tests for regular mixed subdivisions, fiber vertices and defect cells."""

import itertools
import random
from fractions import Fraction

import pytest

from wallcross.epsfield import EPS, EpsRat
from wallcross.errors import (
    BadParameters,
    DimensionMismatch,
    NotFine,
    SizeGuard,
    WrongDimension,
)
from wallcross.linalg import bareiss_rank
from wallcross.mixedsub import (
    cayley_config,
    cell_vertices,
    cell_volume,
    dual_graph,
    fiber_vertex,
    qcartier_defect_cells,
    regular_mixed_subdivision,
)

e = EPS


def faces_of(subdivision):
    return sorted(
        tuple(tuple(sorted(f)) for f in cell.faces) for cell in subdivision.cells
    )


def rank_lifting(m, perm):
    """d = 1 lifting realizing the switch order perm: copy perm[j] is the
    (j+1)-st to move, because cheaper slope differences switch earlier."""
    pos = {copy: j + 1 for j, copy in enumerate(perm)}
    lift = []
    for copy in range(1, m + 1):
        lift += [Fraction(0), Fraction(pos[copy])]
    return lift


def permutohedron_vertex(m, perm):
    """Closed form for the fiber vertex of the switch order perm: the copy
    switching at step p spends m - p cells at 1 and half a cell moving."""
    pos = {copy: j + 1 for j, copy in enumerate(perm)}
    return tuple((Fraction(2 * (m - pos[i]) + 1, 2),) for i in range(1, m + 1))


def facet_scan(subdivision):
    """Brute-force facet matching: enumerate each cell's geometric facets
    and pair up identical ones."""
    facets = {}
    for idx, cell in enumerate(subdivision.cells):
        vs = cell_vertices(cell)
        if subdivision.d == 1:
            items = [(vs[0],), (vs[-1],)]
        else:
            k = len(vs)
            items = [tuple(sorted((vs[i], vs[(i + 1) % k]))) for i in range(k)]
        for facet in items:
            facets.setdefault(facet, []).append(idx)
    assert all(len(cells) <= 2 for cells in facets.values())
    return {tuple(cells) for cells in facets.values() if len(cells) == 2}


def polytope_contains(vertices, point, d):
    if d == 1:
        return vertices[0][0] <= point[0] <= vertices[-1][0]
    k = len(vertices)
    for i in range(k):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % k]
        if (bx - ax) * (point[1] - ay) - (by - ay) * (point[0] - ax) < 0:
            return False
    return True


# -- construction ----------------------------------------------------------------


def test_interval_example():
    S = regular_mixed_subdivision(1, 2, [0, 0, 0, 1])
    assert faces_of(S) == [((0, 1), (0,)), ((1,), (0, 1))]
    # The cells are [0,1]+{0} and {1}+[0,1].
    polys = sorted(cell_vertices(c) for c in S.cells)
    assert polys == [
        ((Fraction(0),), (Fraction(1),)),
        ((Fraction(1),), (Fraction(2),)),
    ]
    assert S.is_fine


def test_zero_lifting_single_coarse_cell():
    S = regular_mixed_subdivision(1, 3, [0] * 6)
    assert len(S.cells) == 1
    assert not S.is_fine and S.non_generic
    with pytest.raises(NotFine):
        fiber_vertex(S)


def test_plane_fine_subdivision_shape():
    # A fine mixed subdivision of 2*Delta_2 consists of the two pure
    # triangles and a single unit parallelogram: three cells of total
    # area 2 (an inverted triangle is not a Minkowski cell, so four upright
    # triangles can never appear).
    rng = random.Random(51)
    for _ in range(10):
        lift = [Fraction(rng.randint(0, 100)) for _ in range(6)]
        S = regular_mixed_subdivision(2, 2, lift)
        assert sum(cell_volume(c) for c in S.cells) == 2
        if S.is_fine:
            sizes = sorted(sum(len(f) for f in c.faces) for c in S.cells)
            assert len(S.cells) == 3
            assert sizes == [4, 4, 4]  # 3+1, 1+3, 2+2


def test_volume_partition_random():
    rng = random.Random(52)
    for d, m in ((1, 4), (2, 2), (2, 3), (2, 4)):
        for _ in range(8):
            lift = [Fraction(rng.randint(0, 500)) for _ in range(m * (d + 1))]
            S = regular_mixed_subdivision(d, m, lift)
            total = sum(cell_volume(c) for c in S.cells)
            assert total == Fraction(m**d, 1 if d == 1 else 2)


def test_cells_have_disjoint_interiors_at_desk_scale():
    rng = random.Random(53)
    for _ in range(5):
        lift = [Fraction(rng.randint(0, 60)) for _ in range(9)]
        S = regular_mixed_subdivision(2, 3, lift)
        polys = [cell_vertices(c) for c in S.cells]
        for (i, p), (j, q) in itertools.combinations(enumerate(polys), 2):
            # Barycenter of one cell never sits inside another.
            bar = tuple(sum(v[k] for v in p) / len(p) for k in range(2))
            assert not polytope_contains(q, bar, 2)


def test_cayley_config_spans():
    for d, m in ((1, 3), (2, 3), (2, 5)):
        config = cayley_config(d, m)
        assert len(config.points) == m * (d + 1)
        base = config.points[0]
        diffs = [
            tuple(x - y for x, y in zip(p, base)) for p in config.points[1:]
        ]
        assert bareiss_rank(diffs) == d + m - 1


def test_parameter_validation():
    with pytest.raises(BadParameters):
        regular_mixed_subdivision(3, 2, [0] * 8)
    with pytest.raises(SizeGuard):
        regular_mixed_subdivision(1, 7, [0] * 14)
    with pytest.raises(DimensionMismatch):
        regular_mixed_subdivision(2, 2, [0] * 5)


# -- dual graph -------------------------------------------------------------------


def test_dual_graph_single_cell():
    S = regular_mixed_subdivision(1, 2, [0, 0, 0, 0])
    g = dual_graph(S)
    assert g.cell_count == 1 and g.edges == ()


def test_dual_graph_interval_path():
    S = regular_mixed_subdivision(1, 2, [0, 0, 0, 1])
    g = dual_graph(S)
    assert g.cell_count == 2
    assert len(g.edges) == 1
    assert g.edges[0].facet == ((Fraction(1),),)


def test_dual_graph_matches_facet_scan():
    rng = random.Random(54)
    for d, m in ((1, 4), (2, 2), (2, 3), (2, 4)):
        for _ in range(6):
            lift = [Fraction(rng.randint(0, 300)) for _ in range(m * (d + 1))]
            S = regular_mixed_subdivision(d, m, lift)
            got = {(edge.cell_a, edge.cell_b) for edge in dual_graph(S).edges}
            assert got == facet_scan(S)


def test_dual_graph_connected_generic():
    rng = random.Random(55)
    for _ in range(5):
        lift = [Fraction(rng.randint(0, 400)) for _ in range(9)]
        S = regular_mixed_subdivision(2, 3, lift)
        g = dual_graph(S)
        adjacency = {i: set() for i in range(g.cell_count)}
        for edge in g.edges:
            adjacency[edge.cell_a].add(edge.cell_b)
            adjacency[edge.cell_b].add(edge.cell_a)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert seen == set(range(g.cell_count))


# -- fiber vertices ------------------------------------------------------------------


def test_two_subdivisions_of_the_segment_pair():
    va = fiber_vertex(regular_mixed_subdivision(1, 2, [0, 0, 0, 1])).blocks
    vb = fiber_vertex(regular_mixed_subdivision(1, 2, [0, 1, 0, 0])).blocks
    assert va != vb
    assert va == (vb[1], vb[0])  # swapping the copies swaps the blocks


def test_permutohedron_vertices_exhaustive():
    for m in (2, 3, 4, 5):
        got = set()
        expected = set()
        for perm in itertools.permutations(range(1, m + 1)):
            S = regular_mixed_subdivision(1, m, rank_lifting(m, perm))
            assert S.is_fine
            got.add(fiber_vertex(S).blocks)
            expected.add(permutohedron_vertex(m, perm))
        assert len(got) == len(expected)
        assert got == expected
        # Every vertex is a permutation pattern of the half-integer ladder.
        ladder = {Fraction(2 * k + 1, 2) for k in range(m)}
        for vertex in got:
            assert {block[0] for block in vertex} == ladder


def test_random_liftings_stay_inside_the_vertex_set():
    rng = random.Random(56)
    m = 3
    allowed = {
        permutohedron_vertex(m, perm)
        for perm in itertools.permutations(range(1, m + 1))
    }
    for _ in range(25):
        lift = [Fraction(rng.randint(0, 1000)) for _ in range(2 * m)]
        S = regular_mixed_subdivision(1, m, lift)
        if S.is_fine:
            assert fiber_vertex(S).blocks in allowed


# -- epsilon refinement -----------------------------------------------------------------


def test_infinitesimal_refinement_is_fine_and_refines():
    rng = random.Random(57)
    cases = [
        (1, 3, [Fraction(0)] * 6),
        (2, 2, [Fraction(0)] * 6),
        (2, 3, [Fraction(x) for x in (0, 0, 1, 0, 0, 1, 2, 2, 2)]),
    ]
    for d, m, base in cases:
        coarse = regular_mixed_subdivision(d, m, base)
        lift = [
            EpsRat.from_rat(h) + e * rng.randint(1, 10**6) for h in base
        ]
        refined = regular_mixed_subdivision(d, m, lift)
        assert refined.is_fine
        for cell in refined.cells:
            assert any(
                all(f <= g for f, g in zip(cell.faces, other.faces))
                for other in coarse.cells
            )


# -- defect cells --------------------------------------------------------------------


def test_defect_cell_constructed():
    # Lower-hull derivation: heights (0,0,1 | 0,1,0) support the square
    # [0,1]^2 = {0,e1} + {0,e2} plus the two pure triangles; the square's
    # only boundary contact off its two full edges is the corner (1,1).
    S = regular_mixed_subdivision(2, 2, [0, 0, 1, 0, 1, 0])
    defects = qcartier_defect_cells(S)
    assert len(defects) == 1
    defect = defects[0]
    assert sorted(tuple(sorted(f)) for f in defect.cell.faces) == [(0, 1), (0, 2)]
    assert defect.boundary == "x+y=m"
    assert defect.vertex == (Fraction(1), Fraction(1))


def test_no_defects_when_parallelograms_share_boundary_edges():
    # Frozen from a seeded scan: three parallelogram cells, none with an
    # isolated boundary contact.
    lift = [Fraction(x) for x in (24, 26, 2, 16, 32, 31, 25, 19, 30)]
    S = regular_mixed_subdivision(2, 3, lift)
    paras = [
        c for c in S.cells if sorted(len(f) for f in c.faces) == [1, 2, 2]
    ]
    assert len(paras) == 3
    assert qcartier_defect_cells(S) == []


def test_defect_contacts_are_unique_over_random_liftings():
    rng = random.Random(58)
    for m in (2, 3, 4):
        for _ in range(25):
            lift = [Fraction(rng.randint(0, 200)) for _ in range(3 * m)]
            S = regular_mixed_subdivision(2, m, lift)
            for defect in qcartier_defect_cells(S):  # raises on a double contact
                verts = cell_vertices(defect.cell)
                assert defect.vertex in verts
                on_boundary = [
                    p
                    for p in verts
                    if p[0] == 0 or p[1] == 0 or p[0] + p[1] == m
                ]
                # The isolated contact is a vertex of the cell on the boundary.
                assert defect.vertex in on_boundary


def test_defect_requires_dimension_two():
    S = regular_mixed_subdivision(1, 2, [0, 0, 0, 1])
    with pytest.raises(WrongDimension):
        qcartier_defect_cells(S)
