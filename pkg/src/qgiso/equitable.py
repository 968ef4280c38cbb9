"""Equitable partitions, color refinement, and fractional isomorphism.

All arithmetic here is exact (naturals and ``fractions.Fraction``); the
fractional-isomorphism decision certifies its YES answers with a verified
doubly stochastic matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, GraphError, disjoint_union


@dataclass(frozen=True)
class EquitablePartition:
    """Disjoint cells covering V plus the partition-number matrix.

    Every vertex of cell i has exactly c[i][j] neighbors in cell j.
    """

    cells: tuple  # tuple of sorted vertex-index tuples
    c: tuple  # k x k tuple of tuples of ints

    @property
    def k(self):
        return len(self.cells)

    def sizes(self):
        return tuple(len(cell) for cell in self.cells)


class NotAPartitionError(GraphError):
    pass


def verify_equitable(g: Graph, cells):
    """Check equitability of a candidate partition.

    Returns (EquitablePartition, None) on success, or (None, (vertex, cell
    index)) for the first vertex whose neighbor count into some cell differs
    from its cellmates'.
    """
    cells = tuple(tuple(sorted(cell)) for cell in cells)
    flat = [v for cell in cells for v in cell]
    if sorted(flat) != list(range(g.n)) or any(not cell for cell in cells):
        raise NotAPartitionError("cells do not partition the vertex set")
    k = len(cells)
    c = [[None] * k for _ in range(k)]
    cell_sets = [set(cell) for cell in cells]
    for i, cell in enumerate(cells):
        for v in cell:
            nbrs = set(int(u) for u in g.neighbors(v))
            for j in range(k):
                count = len(nbrs & cell_sets[j])
                if c[i][j] is None:
                    c[i][j] = count
                elif c[i][j] != count:
                    return None, (v, j)
    part = EquitablePartition(cells, tuple(tuple(row) for row in c))
    _check_counting_identity(part)
    return part, None


def _check_counting_identity(p: EquitablePartition):
    sizes = p.sizes()
    for i in range(p.k):
        for j in range(p.k):
            if p.c[i][j] * sizes[i] != p.c[j][i] * sizes[j]:
                raise AssertionError("partition-number counting identity violated")


def _stable_coloring(g: Graph, init=None):
    """Iterate (color, sorted neighbor-color multiset) signatures to a fixed
    point.  Cell numbering follows sorted signature order, so the result is
    deterministic."""
    n = g.n
    colors = list(init) if init is not None else [0] * n
    nbrs = [list(map(int, g.neighbors(v))) for v in range(n)]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(n)]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def color_refinement(g: Graph):
    """Coarsest equitable partition of g, by 1-dimensional refinement.

    The result is re-verified before returning.
    """
    colors = _stable_coloring(g)
    k = max(colors) + 1
    cells = [tuple(v for v in range(g.n) if colors[v] == i) for i in range(k)]
    part, violation = verify_equitable(g, cells)
    if violation is not None:
        raise AssertionError("refinement produced a non-equitable partition")
    return part


@dataclass(frozen=True)
class CommonEquitablePartition:
    """Aligned equitable partitions of two graphs with shared cell sizes and
    partition numbers."""

    cells_g: tuple
    cells_h: tuple
    c: tuple

    @property
    def k(self):
        return len(self.cells_g)

    def sizes(self):
        return tuple(len(cell) for cell in self.cells_g)

    def cbar(self):
        """Non-neighbor counts: cbar[i][j] = n_j - c[i][j] - delta_ij."""
        sizes = self.sizes()
        return tuple(
            tuple(sizes[j] - self.c[i][j] - (1 if i == j else 0) for j in range(self.k))
            for i in range(self.k)
        )


def verify_common_equitable(g: Graph, h: Graph, cep: CommonEquitablePartition):
    """Re-verify both sides of a common equitable partition with the same c."""
    pg, vio = verify_equitable(g, cep.cells_g)
    if vio is not None or pg.c != cep.c:
        return False
    ph, vio = verify_equitable(h, cep.cells_h)
    if vio is not None or ph.c != cep.c:
        return False
    return all(len(a) == len(b) for a, b in zip(cep.cells_g, cep.cells_h))


def common_equitable_partition(g: Graph, h: Graph):
    """Coarsest common equitable partition of a graph pair, or None.

    Runs color refinement on the disjoint union and aligns color classes; a
    class wholly inside one graph, or splitting unevenly, means no common
    equitable partition exists.
    """
    union, off_g, off_h = disjoint_union(g, h)
    colors = _stable_coloring(union)
    k = max(colors) + 1
    cells_g, cells_h = [], []
    for i in range(k):
        cls = [v for v in range(union.n) if colors[v] == i]
        part_g = tuple(v for v in cls if v < off_h)
        part_h = tuple(v - off_h for v in cls if v >= off_h)
        if len(part_g) != len(part_h):
            return None
        cells_g.append(part_g)
        cells_h.append(part_h)
    pg, vio = verify_equitable(g, cells_g)
    if vio is not None:
        raise AssertionError("refinement cells not equitable on the first graph")
    cep = CommonEquitablePartition(tuple(cells_g), tuple(cells_h), pg.c)
    if not verify_common_equitable(g, h, cep):
        return None
    return cep


def fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def verify_ds_witness(g: Graph, h: Graph, D):
    """Check D is doubly stochastic and intertwines the adjacency matrices.

    D is a list-of-lists of Fractions, |V(G)| x |V(H)|.  Returns (True, None)
    or (False, description of the first violation).  All checks are exact.
    """
    if len(D) != g.n or any(len(row) != h.n for row in D):
        raise GraphError("witness dimensions do not match the graphs")
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if x < 0:
                return False, f"negative entry at ({i}, {j})"
    for i, row in enumerate(D):
        if sum(row) != 1:
            return False, f"row {i} sums to {sum(row)}"
    for j in range(h.n):
        s = sum(D[i][j] for i in range(g.n))
        if s != 1:
            return False, f"column {j} sums to {s}"
    # exact A_G D = D A_H
    for i in range(g.n):
        for j in range(h.n):
            lhs = sum(D[int(u)][j] for u in g.neighbors(i))
            rhs = sum(D[i][int(w)] for w in h.neighbors(j))
            if lhs != rhs:
                return False, f"A_G D != D A_H at ({i}, {j}): {lhs} vs {rhs}"
    return True, None


def build_ds_witness(cep: CommonEquitablePartition):
    """Blockwise doubly stochastic witness: 1/n_i on aligned cells, else 0."""
    n = sum(cep.sizes())
    D = [[Fraction(0)] * n for _ in range(n)]
    for cell_g, cell_h in zip(cep.cells_g, cep.cells_h):
        w = Fraction(1, len(cell_g))
        for v in cell_g:
            for u in cell_h:
                D[v][u] = w
    return D


def fractional_iso(g: Graph, h: Graph):
    """Decide fractional isomorphism.

    Returns None for NO; for YES returns (cep, D) where D is a doubly
    stochastic witness verified in exact rational arithmetic.
    """
    if g.n != h.n:
        return None
    cep = common_equitable_partition(g, h)
    if cep is None:
        return None
    D = build_ds_witness(cep)
    ok, violation = verify_ds_witness(g, h, D)
    if not ok:
        raise AssertionError(f"constructed witness failed verification: {violation}")
    return cep, D


def format_ds_witness(D):
    """Serialize: header 'ds <rows> <cols>' then row-major p/q entries."""
    rows, cols = len(D), len(D[0])
    lines = [f"ds {rows} {cols}"]
    for row in D:
        lines.append(" ".join(f"{x.numerator}/{x.denominator}" for x in row))
    return "\n".join(lines) + "\n"


def parse_ds_witness(text):
    tokens = text.split()
    if len(tokens) < 3 or tokens[0] != "ds":
        raise GraphError("witness file must start with 'ds <rows> <cols>'")
    rows, cols = int(tokens[1]), int(tokens[2])
    entries = tokens[3:]
    if len(entries) != rows * cols:
        raise GraphError(f"expected {rows * cols} entries, found {len(entries)}")
    D = []
    for i in range(rows):
        D.append([Fraction(entries[i * cols + j]) for j in range(cols)])
    return D
