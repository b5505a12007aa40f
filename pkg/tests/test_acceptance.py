"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  Every expected value here is exact; there are no
tolerances anywhere.
"""

import itertools
import random
import time
from fractions import Fraction

from wallcross.arrangement import (
    Arrangement,
    e_configuration,
    is_e_type,
    is_stable,
)
from wallcross.blowup import (
    TestCurve,
    canonical_class,
    degeneration_log_divisor,
    modification_checks,
    pair,
    ruled_fiber_degree,
    y1_log_divisor,
)
from wallcross.epsfield import EPS, EpsPoly, EpsRat, eps_cmp, positivity_radius
from wallcross.jets import JetFamily, JetPoly, separated_sections, separation_depth
from wallcross.mixedsub import (
    cell_vertices,
    cell_volume,
    dual_graph,
    fiber_vertex,
    qcartier_defect_cells,
    regular_mixed_subdivision,
)
from wallcross.weights import (
    Wall,
    WeightVector,
    in_chamber_closure,
    nt_weights,
    same_chamber,
    segment_walls,
    t_weights,
    walls_containing,
)

e = EPS

WALL_CASES = [(1, 5), (1, 6), (2, 6), (2, 7), (3, 8)]


def finish(name, started, bound=None):
    elapsed = time.monotonic() - started
    if bound is not None:
        assert elapsed < bound, "%s exceeded its %.0fs budget (%.1fs)" % (
            name,
            bound,
            elapsed,
        )
    print("PASS %s (%.2fs)" % (name, elapsed))


def test_criterion_1_wall_lemma_replay():
    started = time.monotonic()
    for d, n in WALL_CASES:
        t = t_weights(d, n)
        nt = nt_weights(d, n)
        expected_t = sorted(
            (
                Wall(frozenset(I), len(I))
                for size in range(2, d + 2)
                for I in itertools.combinations(range(1, d + 2), size)
            ),
            key=Wall.sort_key,
        )
        assert walls_containing(t) == expected_t
        tail = frozenset(range(d + 2, n + 1))
        expected_nt = sorted(
            (Wall(tail | {i}, 2) for i in range(1, d + 2)), key=Wall.sort_key
        )
        assert walls_containing(nt) == expected_nt
        crossings = segment_walls(t, nt)
        assert len(crossings) == 1
        crossing = crossings[0]
        assert crossing.wall == Wall(tail, 1)
        assert crossing.u0 == (1 + e * (d + 1 - n)) / (1 + e * (d + 2 - n))
        heavy = 1 - e + e**2 / (1 + e * (d + 2 - n))
        light = EpsRat.from_rat(Fraction(1, n - d - 1))
        assert crossing.point.entries == (heavy,) * (d + 1) + (light,) * (n - d - 1)
    finish("criterion 1: wall lemma replay", started, bound=5.0)


def test_criterion_2_stability_dichotomy():
    started = time.monotonic()
    for d, n in WALL_CASES:
        config = e_configuration(d, n)
        assert is_stable(config, t_weights(d, n)).is_stable
        verdict = is_stable(config, nt_weights(d, n))
        assert verdict.status == "not-lc"
        assert verdict.witness.support == frozenset(range(d + 2, n + 1))
    rng = random.Random(20260809)
    produced = 0
    sizes = (6, 7, 8, 9)
    while produced < 1000:
        n = sizes[produced % len(sizes)]
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(n)]
        if any(all(x == 0 for x in row) for row in rows):
            continue
        arr = Arrangement(2, n, rows)
        if not is_stable(arr, t_weights(2, n)).is_stable or is_e_type(arr):
            continue
        produced += 1
        assert is_stable(arr, nt_weights(2, n)).is_stable
    finish("criterion 2: stability dichotomy, 1000 samples", started, bound=60.0)


def test_criterion_3_intersection_number_replay():
    started = time.monotonic()
    for d in (2, 3, 4):
        divisor = degeneration_log_divisor(d, d + 3)
        assert pair(divisor, TestCurve.E_LINE) == 1 - e * (1 + d)
        assert pair(divisor, TestCurve.LINE_THROUGH_P) == e
        assert pair(divisor, TestCurve.LINE_MISSING_P) == 1 - e * d
        assert y1_log_divisor(d) == 1 - (d + 1) * e
        assert ruled_fiber_degree(d).is_zero
        assert pair(canonical_class(d), TestCurve.LINE_THROUGH_P) == -2
    for n in range(6, 11):
        checks = modification_checks(n)
        assert checks.on_exceptional == e
        assert checks.on_ruling_lower == (1 + e * (1 - 2 * (n - 3))) / (n - 3)
    finish("criterion 3: intersection-number replay", started)


def _random_family_with_depth(rng, d, members, depth, order):
    """Members share a profile below the target depth, split at the target
    depth (with the normalization slot pinned to zero), carry noise above,
    and are wrapped in random unit rescalings."""
    vecs = set()
    while len(vecs) < 2:
        vecs = {
            tuple(
                Fraction(0) if j == 1 else Fraction(rng.randint(-3, 3))
                for j in range(d + 1)
            )
            for _ in range(members)
        }
    vecs = list(vecs)
    normalized = []
    for i in range(members):
        member = []
        for j in range(d + 1):
            coeffs = [Fraction(0)] * order
            if j == 1:
                coeffs[0] = Fraction(1)
            for k in range(1, order):
                if k < depth:
                    coeffs[k] = Fraction((j * 7 + k * 3) % 5, 3)
                elif k == depth:
                    coeffs[k] = vecs[i % len(vecs)][j]
                else:
                    coeffs[k] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            member.append(JetPoly(coeffs, order))
        normalized.append(tuple(member))
    packed = []
    for member in normalized:
        unit = JetPoly(
            [Fraction(rng.choice((1, 2, -1)))]
            + [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(order - 1)],
            order,
        )
        packed.append(tuple(p * unit for p in member))
    return JetFamily(d, packed), normalized


def test_criterion_4_limit_section_properties():
    started = time.monotonic()
    rng = random.Random(44041)
    order = 6
    for _ in range(500):
        d = rng.choice((2, 3))
        members = rng.randint(3, 6)
        depth = rng.randint(1, order - 2)
        family, normalized = _random_family_with_depth(rng, d, members, depth, order)
        # Depth against the direct jet-comparison oracle on the known
        # normalized representatives.
        oracle_depth = None
        for k in range(1, order):
            if any(
                p.coeffs[k] != q.coeffs[k]
                for other in normalized[1:]
                for p, q in zip(normalized[0], other)
            ):
                oracle_depth = k
                break
        assert oracle_depth == depth
        assert separation_depth(family) == depth
        base = separated_sections(family)
        # Invariance under additive perturbations strictly above the depth.
        noisy = []
        for member in family.members:
            polys = []
            for p in member:
                coeffs = list(p.coeffs)
                for k in range(depth + 1, order):
                    coeffs[k] += Fraction(rng.randint(-5, 5), rng.randint(1, 2))
                polys.append(JetPoly(coeffs, order))
            noisy.append(tuple(polys))
        assert separated_sections(JetFamily(d, noisy)) == base
        # Invariance under fresh unit rescalings.
        rescaled = []
        for member in family.members:
            unit = JetPoly(
                [Fraction(rng.choice((1, 3, -2)))]
                + [Fraction(rng.randint(-2, 2)) for _ in range(order - 1)],
                order,
            )
            rescaled.append(tuple(p * unit for p in member))
        assert separated_sections(JetFamily(d, rescaled)) == base
    finish("criterion 4: limit-section properties, 500 families", started, bound=30.0)


def test_criterion_5_eps_field_axioms():
    started = time.monotonic()
    rng = random.Random(55055)

    def rand_poly():
        return EpsPoly(
            [Fraction(rng.randint(-5, 5), rng.randint(1, 3))
             for _ in range(rng.randint(1, 3))]
        )

    def rand():
        den = rand_poly()
        while den.is_zero:
            den = rand_poly()
        return EpsRat(rand_poly(), den)

    for _ in range(10_000):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if b != 0:
            assert (a / b) * b == a
        if a > b:
            assert a + c > b + c
            if c > 0:
                assert a * c > b * c
        diff = a - b
        radius = positivity_radius(diff)
        k = 1
        while Fraction(1, 2**k) >= radius:
            k += 1
        value = diff.eval_at(Fraction(1, 2**k))
        assert ((value > 0) - (value < 0)) == eps_cmp(a, b)
    finish("criterion 5: Q(e) axioms and evaluation oracle, 10^4 triples", started)


def test_criterion_6_permutohedron_identity():
    started = time.monotonic()
    for m in (2, 3, 4):
        vertices = set()
        for perm in itertools.permutations(range(1, m + 1)):
            position = {copy: j + 1 for j, copy in enumerate(perm)}
            lifting = []
            for copy in range(1, m + 1):
                lifting += [Fraction(0), Fraction(position[copy])]
            subdivision = regular_mixed_subdivision(1, m, lifting)
            assert subdivision.is_fine
            vertices.add(fiber_vertex(subdivision).blocks)
        # Brute-force ordering enumeration: the copy switching at step p
        # contributes m - p full cells plus half of its moving cell.
        expected = set()
        for perm in itertools.permutations(range(1, m + 1)):
            position = {copy: j + 1 for j, copy in enumerate(perm)}
            expected.add(
                tuple(
                    (Fraction(2 * (m - position[i]) + 1, 2),)
                    for i in range(1, m + 1)
                )
            )
        assert len(expected) == len(list(itertools.permutations(range(m))))
        assert vertices == expected
    finish("criterion 6: permutohedron identity, m in {2,3,4}", started, bound=60.0)


def test_criterion_7_mixed_subdivision_soundness():
    started = time.monotonic()
    rng = random.Random(77077)
    for m in (2, 3, 4):
        for _ in range(200):
            lifting = [Fraction(rng.randint(0, 10**4)) for _ in range(3 * m)]
            subdivision = regular_mixed_subdivision(2, m, lifting)
            assert sum(cell_volume(c) for c in subdivision.cells) == Fraction(m * m, 2)
            got = {(edge.cell_a, edge.cell_b) for edge in dual_graph(subdivision).edges}
            facets = {}
            for idx, cell in enumerate(subdivision.cells):
                vs = cell_vertices(cell)
                k = len(vs)
                for i in range(k):
                    key = tuple(sorted((vs[i], vs[(i + 1) % k])))
                    facets.setdefault(key, []).append(idx)
            assert all(len(cells) <= 2 for cells in facets.values())
            assert got == {
                tuple(cells) for cells in facets.values() if len(cells) == 2
            }
            for defect in qcartier_defect_cells(subdivision):
                verts = cell_vertices(defect.cell)
                isolated = []
                for name, on_line in (
                    ("x=0", lambda p: p[0] == 0),
                    ("y=0", lambda p: p[1] == 0),
                    ("x+y=m", lambda p: p[0] + p[1] == m),
                ):
                    contact = [p for p in verts if on_line(p)]
                    if len(contact) == 1:
                        isolated.append((name, contact[0]))
                assert isolated == [(defect.boundary, defect.vertex)]
    finish("criterion 7: mixed-subdivision soundness, 600 liftings", started)


def test_criterion_8_chamber_predicates_vs_oracle():
    started = time.monotonic()
    rng = random.Random(88088)
    for d, n in ((1, 6), (2, 6)):
        for _ in range(500):
            raws = []
            for _ in range(2):
                while True:
                    entries = [
                        Fraction(rng.randint(1, 24), 24) for _ in range(n)
                    ]
                    if sum(entries) > d + 1:
                        raws.append(entries)
                        break
            first, second = raws
            b = WeightVector(d, n, first)
            b2 = WeightVector(d, n, second)
            pairs = []
            for k in range(1, d + 1):
                for size in range(2, n - 1):
                    for I in itertools.combinations(range(1, n + 1), size):
                        s1 = sum(first[i - 1] for i in I)
                        s2 = sum(second[i - 1] for i in I)
                        pairs.append(
                            ((s1 > k) - (s1 < k), (s2 > k) - (s2 < k))
                        )
            oracle_same = all(x == y and x != 0 for x, y in pairs)
            oracle_fwd = all(y != 0 and x in (0, y) for x, y in pairs)
            oracle_bwd = all(x != 0 and y in (0, x) for x, y in pairs)
            assert same_chamber(b, b2) == oracle_same
            assert in_chamber_closure(b, b2) == oracle_fwd
            assert in_chamber_closure(b2, b) == oracle_bwd
    finish("criterion 8: chamber predicates vs oracle, 1000 pairs", started)
