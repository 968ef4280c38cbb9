from fractions import Fraction

import pytest

from conftest import cep_pair, complete, cycle, empty, path, random_graph, star, two_k3
from qgiso.equitable import (
    NotAPartitionError,
    build_ds_witness,
    color_refinement,
    common_equitable_partition,
    format_ds_witness,
    fractional_iso,
    parse_ds_witness,
    verify_ds_witness,
    verify_equitable,
)
from qgiso.graphs import find_isomorphism, from_edges


class TestColorRefinement:
    def test_k3_single_cell(self):
        p = color_refinement(complete(3))
        assert p.k == 1 and p.c == ((2,),)

    def test_p3_ends_and_middle(self):
        p = color_refinement(path(3))
        cells = set(p.cells)
        assert cells == {(0, 2), (1,)}
        # ends have 1 neighbor in the middle cell, the middle has 2 in the ends
        by_cell = {cell: i for i, cell in enumerate(p.cells)}
        ends, mid = by_cell[(0, 2)], by_cell[(1,)]
        assert p.c[ends][mid] == 1 and p.c[mid][ends] == 2
        assert p.c[ends][ends] == 0 and p.c[mid][mid] == 0

    def test_c6_regular(self):
        p = color_refinement(cycle(6))
        assert p.k == 1 and p.c == ((2,),)

    def test_idempotent(self, rng):
        for _ in range(10):
            g = random_graph(8, 0.4, rng)
            p = color_refinement(g)
            q, violation = verify_equitable(g, p.cells)
            assert violation is None and q.cells == p.cells and q.c == p.c


class TestVerifyEquitable:
    def test_c6_single_cell(self):
        p, violation = verify_equitable(cycle(6), [range(6)])
        assert violation is None and p.c == ((2,),)

    def test_p3_single_cell_violation(self):
        p, violation = verify_equitable(path(3), [range(3)])
        assert p is None and violation is not None

    def test_p3_two_cells_ok(self):
        p, violation = verify_equitable(path(3), [(0, 2), (1,)])
        assert violation is None

    def test_not_a_partition(self):
        with pytest.raises(NotAPartitionError):
            verify_equitable(path(3), [(0, 1), (1, 2)])


class TestCommonEquitablePartition:
    def test_c6_and_2k3(self):
        cep = common_equitable_partition(cycle(6), two_k3())
        assert cep is not None
        assert cep.k == 1 and cep.sizes() == (6,) and cep.c == ((2,),)

    def test_star_vs_path_none(self):
        assert common_equitable_partition(star(3), path(4)) is None

    def test_self_pair(self, rng):
        g = random_graph(7, 0.5, rng)
        cep = common_equitable_partition(g, g)
        assert cep is not None
        assert cep.cells_g == cep.cells_h == color_refinement(g).cells

    def test_symmetry(self, rng):
        for _ in range(10):
            g = random_graph(6, 0.5, rng)
            h = random_graph(6, 0.5, rng)
            a = common_equitable_partition(g, h)
            b = common_equitable_partition(h, g)
            assert (a is None) == (b is None)

    def test_cbar(self):
        cep = common_equitable_partition(cycle(6), two_k3())
        assert cep.cbar() == ((3,),)


class TestFractionalIso:
    def test_c6_and_2k3_uniform_witness(self):
        cep, D = fractional_iso(cycle(6), two_k3())
        assert all(x == Fraction(1, 6) for row in D for x in row)

    def test_star_vs_path_no(self):
        assert fractional_iso(star(3), path(4)) is None

    def test_self_yes(self, rng):
        g = random_graph(7, 0.5, rng)
        assert fractional_iso(g, g) is not None

    def test_different_order_no(self):
        assert fractional_iso(cycle(4), cycle(5)) is None

    def test_regular_pairs_always_yes(self, rng):
        import networkx as nx

        for seed in range(6):
            a = nx.random_regular_graph(3, 8, seed=seed)
            b = nx.random_regular_graph(3, 8, seed=seed + 100)
            g = from_edges([f"a{v}" for v in range(8)], [(f"a{u}", f"a{v}") for u, v in a.edges()])
            h = from_edges([f"b{v}" for v in range(8)], [(f"b{u}", f"b{v}") for u, v in b.edges()])
            assert fractional_iso(g, h) is not None

    def test_generated_cep_pairs(self, rng):
        for _ in range(8):
            g, h, _ = cep_pair(rng)
            assert fractional_iso(g, h) is not None


class TestDsWitness:
    def test_permutation_matrix_ok(self, rng):
        g = random_graph(6, 0.5, rng)
        from conftest import permuted_copy

        h = permuted_copy(g, rng)
        phi = find_isomorphism(g, h)
        D = [[Fraction(1 if phi(i) == j else 0) for j in range(g.n)] for i in range(g.n)]
        ok, violation = verify_ds_witness(g, h, D)
        assert ok, violation

    def test_uniform_ok_for_c6_2k3(self):
        D = [[Fraction(1, 6)] * 6 for _ in range(6)]
        ok, _ = verify_ds_witness(cycle(6), two_k3(), D)
        assert ok

    def test_uniform_fails_for_irregular_pair(self):
        h = from_edges(
            ["c", "l0", "l1", "l2", "i0", "i1"], [("c", "l0"), ("c", "l1"), ("c", "l2")]
        )
        D = [[Fraction(1, 6)] * 6 for _ in range(6)]
        ok, violation = verify_ds_witness(cycle(6), h, D)
        assert not ok and "A_G D" in violation

    def test_row_sum_violation_reported(self):
        D = [[Fraction(0)] * 6 for _ in range(6)]
        ok, violation = verify_ds_witness(cycle(6), two_k3(), D)
        assert not ok and "row 0" in violation

    def test_round_trip(self):
        _, D = fractional_iso(cycle(6), two_k3())
        assert parse_ds_witness(format_ds_witness(D)) == D

    def test_built_witness_always_verifies(self, rng):
        for _ in range(5):
            g, h, cep = cep_pair(rng)
            D = build_ds_witness(cep)
            ok, violation = verify_ds_witness(g, h, D)
            assert ok, violation
