"""Linear binary constraint systems over GF(2) and their graphs.

Includes the built-in magic-square system, Gaussian elimination over GF(2),
homogenization, the constraint/assignment graph construction, and the
three-way classical reduction check (satisfiable vs graphs isomorphic vs
independence number hitting the constraint count).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .graphs import Graph, GraphError, find_isomorphism, from_edges, independence_number, is_isomorphism

MAX_SUPPORT = 20


class BCSError(ValueError):
    pass


@dataclass(frozen=True)
class LinBCS:
    """Parity constraints sum(x_i for i in support) = b over GF(2)."""

    n: int  # variable count
    constraints: tuple  # tuple of (sorted index tuple, bit)

    def __post_init__(self):
        cons = tuple((tuple(sorted(s)), int(b)) for s, b in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if not cons:
            raise BCSError("a BCS needs at least one constraint")
        for s, b in cons:
            if not s:
                raise BCSError("empty constraint support")
            if b not in (0, 1):
                raise BCSError(f"right-hand side {b} not a bit")
            if any(i < 0 or i >= self.n for i in s):
                raise BCSError("variable index out of range")

    @property
    def m(self):
        return len(self.constraints)

    def satisfies(self, assignment):
        """Check a full assignment (length-n bit sequence) against every
        constraint."""
        return all(sum(assignment[i] for i in s) % 2 == b for s, b in self.constraints)


def parse_bcs(text):
    """Parse 'x<i> + x<j> + ... = <0|1>' lines ('#' comments allowed).

    Variables are numbered by their suffix: x1 is index 0.
    """
    constraints = []
    max_var = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BCSError(f"line {lineno}: missing '='")
        lhs, _, rhs = line.partition("=")
        rhs = rhs.strip()
        if rhs not in ("0", "1"):
            raise BCSError(f"line {lineno}: right-hand side must be 0 or 1")
        support = []
        for term in lhs.split("+"):
            term = term.strip()
            if not term.startswith("x") or not term[1:].isdigit() or int(term[1:]) < 1:
                raise BCSError(f"line {lineno}: malformed variable {term!r}")
            support.append(int(term[1:]) - 1)
        if not support:
            raise BCSError(f"line {lineno}: empty support")
        if len(set(support)) != len(support):
            raise BCSError(f"line {lineno}: repeated variable")
        max_var = max(max_var, max(support) + 1)
        constraints.append((tuple(support), int(rhs)))
    if not constraints:
        raise BCSError("no constraints found")
    return LinBCS(max_var, tuple(constraints))


def format_bcs(bcs: LinBCS):
    lines = []
    for s, b in bcs.constraints:
        lines.append(" + ".join(f"x{i + 1}" for i in s) + f" = {b}")
    return "\n".join(lines) + "\n"


def magic_square():
    """The 9-variable, 6-constraint system: three rows summing to 0, three
    columns summing to 0, 0, 1.  Unsatisfiable (every variable appears twice,
    so all equations sum to 0 = 1)."""
    rows = [((0, 1, 2), 0), ((3, 4, 5), 0), ((6, 7, 8), 0)]
    cols = [((0, 3, 6), 0), ((1, 4, 7), 0), ((2, 5, 8), 1)]
    return LinBCS(9, tuple(rows + cols))


def solve_gf2(bcs: LinBCS):
    """Gaussian elimination over GF(2); returns a verified satisfying
    assignment (tuple of bits) or None."""
    m, n = bcs.m, bcs.n
    A = np.zeros((m, n + 1), dtype=np.uint8)
    for r, (s, b) in enumerate(bcs.constraints):
        A[r, list(s)] = 1
        A[r, n] = b
    row = 0
    pivots = []
    for col in range(n):
        pivot = next((r for r in range(row, m) if A[r, col]), None)
        if pivot is None:
            continue
        A[[row, pivot]] = A[[pivot, row]]
        for r in range(m):
            if r != row and A[r, col]:
                A[r] ^= A[row]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if A[r, n]:
            return None
    x = [0] * n
    for r, col in enumerate(pivots):
        x[col] = int(A[r, n])
    assignment = tuple(x)
    if not bcs.satisfies(assignment):
        raise AssertionError("elimination produced a non-satisfying assignment")
    return assignment


def homogenize(bcs: LinBCS):
    """Same supports, all right-hand sides zero."""
    return LinBCS(bcs.n, tuple((s, 0) for s, _ in bcs.constraints))


def satisfying_assignments(support, b):
    """All f: support -> bits with parity b, in lexicographic bit order."""
    if len(support) > MAX_SUPPORT:
        raise BCSError(f"support of size {len(support)} exceeds cap {MAX_SUPPORT}")
    out = []
    for bits in product((0, 1), repeat=len(support)):
        if sum(bits) % 2 == b:
            out.append(dict(zip(support, bits)))
    return out


def vertex_label(l, support, f):
    return f"c{l}:" + "".join(str(f[i]) for i in support)


@dataclass(frozen=True)
class BCSGraph:
    """Graph with one vertex per (constraint, satisfying assignment), edges
    between inconsistent pairs.  Vertices of one constraint form a clique."""

    graph: Graph
    vertex_meta: tuple  # per vertex: (constraint index, assignment dict)


def bcs_graph(bcs: LinBCS):
    meta = []
    labels = []
    for l, (s, b) in enumerate(bcs.constraints):
        for f in satisfying_assignments(s, b):
            meta.append((l, f))
            labels.append(vertex_label(l, s, f))
    edges = []
    for a in range(len(meta)):
        la, fa = meta[a]
        for b_ in range(a + 1, len(meta)):
            lb, fb = meta[b_]
            if any(fa[i] != fb[i] for i in fa.keys() & fb.keys()):
                edges.append((labels[a], labels[b_]))
    return BCSGraph(from_edges(labels, edges), tuple(meta))


def classical_reduction_report(bcs: LinBCS):
    """Independently compute the three equivalent facets of the classical
    reduction and assert they agree.

    Returns a dict with the verdicts, alpha values, witnesses, and (when
    satisfiable) the explicit verified isomorphism (l, f) -> (l, f xor F|_S).
    """
    assignment = solve_gf2(bcs)
    bg = bcs_graph(bcs)
    bg0 = bcs_graph(homogenize(bcs))
    phi = find_isomorphism(bg.graph, bg0.graph)
    alpha = independence_number(bg.graph)
    alpha0 = independence_number(bg0.graph)
    report = {
        "satisfiable": assignment is not None,
        "assignment": assignment,
        "graphs_isomorphic": phi is not None,
        "isomorphism": phi,
        "alpha": alpha["alpha"],
        "alpha_witness": alpha["witness"],
        "alpha_homogenized": alpha0["alpha"],
        "alpha_equals_m": alpha["alpha"] == bcs.m,
        "m": bcs.m,
        "num_vertices": bg.graph.n,
    }
    facets = {report["satisfiable"], report["graphs_isomorphic"], report["alpha_equals_m"]}
    if len(facets) != 1:
        raise AssertionError(f"classical reduction facets disagree: {report}")
    if assignment is not None:
        # explicit isomorphism from the satisfying assignment
        index = {bg0.graph.labels[i]: i for i in range(bg0.graph.n)}
        image = []
        for l, f in bg.vertex_meta:
            s = bcs.constraints[l][0]
            shifted = {i: f[i] ^ assignment[i] for i in s}
            image.append(index[vertex_label(l, s, shifted)])
        from .graphs import VertexMap

        explicit = VertexMap(tuple(image))
        if not is_isomorphism(bg.graph, bg0.graph, explicit):
            raise AssertionError("explicit shift map is not an isomorphism")
        report["explicit_isomorphism"] = explicit
    return report
