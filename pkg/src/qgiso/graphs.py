"""Graph values, exact combinatorial oracles, and integer characteristic polynomials.

Everything in this module is exact: adjacency is boolean, characteristic
polynomials use arbitrary-precision integers, and the isomorphism /
independence oracles are complete searches (with pruning), not heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_ORACLE_VERTICES = 128


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(GraphError):
    """Raised when an exponential oracle is asked for an oversized graph."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected loopless graph with distinct string labels."""

    labels: tuple
    adj: np.ndarray  # n x n bool, symmetric, zero diagonal

    def __post_init__(self):
        n = len(self.labels)
        a = np.asarray(self.adj, dtype=bool)
        if a.shape != (n, n):
            raise GraphError(f"adjacency shape {a.shape} does not match {n} labels")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency matrix is not symmetric")
        if a.diagonal().any():
            raise GraphError("self-loop on the diagonal")
        if len(set(self.labels)) != n:
            raise GraphError("labels are not pairwise distinct")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self):
        return len(self.labels)

    def num_edges(self):
        return int(np.count_nonzero(self.adj)) // 2

    def degree(self, v):
        return int(np.count_nonzero(self.adj[v]))

    def neighbors(self, v):
        return np.flatnonzero(self.adj[v])

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def bitmasks(self):
        """Adjacency rows as Python int bitmasks, for the search oracles."""
        masks = []
        for i in range(self.n):
            m = 0
            for j in np.flatnonzero(self.adj[i]):
                m |= 1 << int(j)
            masks.append(m)
        return masks


def from_edges(labels, edges):
    """Build a Graph from a label list and (label, label) edge pairs."""
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    adj = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        i, j = idx[a], idx[b]
        if i == j:
            raise GraphError(f"self-loop at {a!r}")
        adj[i, j] = adj[j, i] = True
    return Graph(tuple(labels), adj)


def parse_graph(text):
    """Parse the line-oriented graph format.

    ``#`` starts a comment, ``v <label>`` declares a vertex, ``e <a> <b>``
    an undirected edge between declared vertices.  Vertex order follows the
    ``v`` lines.
    """
    labels = []
    seen = set()
    edges = []
    edge_set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise ParseError("'v' line needs exactly one label", lineno)
            if parts[1] in seen:
                raise ParseError(f"duplicate vertex {parts[1]!r}", lineno)
            seen.add(parts[1])
            labels.append(parts[1])
        elif parts[0] == "e":
            if len(parts) != 3:
                raise ParseError("'e' line needs exactly two labels", lineno)
            a, b = parts[1], parts[2]
            if a == b:
                raise ParseError(f"self-loop at {a!r}", lineno)
            if a not in seen or b not in seen:
                raise ParseError("edge references undeclared vertex", lineno)
            key = (min(a, b), max(a, b))
            if key in edge_set:
                raise ParseError(f"duplicate edge {a!r} {b!r}", lineno)
            edge_set.add(key)
            edges.append((a, b))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    if not labels:
        raise ParseError("empty vertex set")
    return from_edges(labels, edges)


def format_graph(g: Graph):
    """Serialize in the same format: sorted 'v' lines, then sorted 'e' lines."""
    lines = [f"v {lab}" for lab in sorted(g.labels)]
    edges = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if g.adj[i, j]:
                a, b = g.labels[i], g.labels[j]
                edges.append((min(a, b), max(a, b)))
    lines.extend(f"e {a} {b}" for a, b in sorted(edges))
    return "\n".join(lines) + "\n"


def complement(g: Graph):
    adj = ~g.adj
    np.fill_diagonal(adj, False)
    return Graph(g.labels, adj)


def disjoint_union(g: Graph, h: Graph, tags=("G:", "H:")):
    """Disjoint union; labels are prefixed with the part tags to stay distinct.

    Returns (graph, offset_g, offset_h).
    """
    n = g.n + h.n
    adj = np.zeros((n, n), dtype=bool)
    adj[: g.n, : g.n] = g.adj
    adj[g.n :, g.n :] = h.adj
    labels = tuple(tags[0] + l for l in g.labels) + tuple(tags[1] + l for l in h.labels)
    return Graph(labels, adj), 0, g.n


@dataclass(frozen=True)
class CharPoly:
    """Monic integer characteristic polynomial, coeffs[k] multiplies x**k."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.coeffs[-1] != 1:
            raise GraphError("characteristic polynomial must be monic")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c:+d}")
            else:
                xs = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    terms.append(f"+{xs}")
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{c:+d}{xs}")
        s = "".join(terms)
        return s.lstrip("+") or "0"


def char_poly(g: Graph):
    """Exact det(xI - A) via the Faddeev-LeVerrier recurrence over Python ints.

    All divisions in the recurrence are exact, so the result carries no
    floating-point error at any size.
    """
    n = g.n
    A = np.array(g.adj, dtype=object) * 1  # object array of Python ints
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = np.zeros((n, n), dtype=object)
    c = 1
    for k in range(1, n + 1):
        M = A @ M + c * np.eye(n, dtype=object)
        AM = A @ M
        t = int(np.trace(AM))
        assert t % k == 0
        c = -t // k
        coeffs[n - k] = c
    return CharPoly(coeffs)


def cospectral_mates(g: Graph, h: Graph):
    """Exact cospectrality report for the pair and for their complements."""
    pg, ph = char_poly(g), char_poly(h)
    pgc, phc = char_poly(complement(g)), char_poly(complement(h))
    return {
        "cospectral": pg == ph,
        "complements_cospectral": pgc == phc,
        "char_poly_g": pg,
        "char_poly_h": ph,
        "char_poly_g_complement": pgc,
        "char_poly_h_complement": phc,
    }


@dataclass(frozen=True)
class VertexMap:
    """A vertex bijection from one graph to another, stored as an index list."""

    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(i) for i in self.image))

    def __call__(self, v):
        return self.image[v]


def is_isomorphism(g: Graph, h: Graph, phi: VertexMap):
    """Check rel-preservation of phi exhaustively (the map validator)."""
    if g.n != h.n or sorted(phi.image) != list(range(g.n)):
        return False
    img = np.array(phi.image)
    return np.array_equal(g.adj, h.adj[np.ix_(img, img)])


def _check_oracle_size(g: Graph):
    if g.n > MAX_ORACLE_VERTICES:
        raise SizeLimitError(
            f"graph has {g.n} vertices; exact oracles are capped at {MAX_ORACLE_VERTICES}"
        )


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_isomorphism(g: Graph, h: Graph):
    """Exhaustive isomorphism search with color-refinement pruning.

    Returns a verified VertexMap or None; a None answer means the
    individualization-refinement backtracking exhausted all candidates.
    """
    _check_oracle_size(g)
    _check_oracle_size(h)
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    n = g.n
    gm, hm = g.bitmasks(), h.bitmasks()

    def stable(colors_g, colors_h):
        # joint refinement: run both sides against a shared signature order
        nbrs_g = [list(_bits(m)) for m in gm]
        nbrs_h = [list(_bits(m)) for m in hm]
        cg, ch = colors_g, colors_h
        while True:
            sg = [(cg[v], tuple(sorted(cg[u] for u in nbrs_g[v]))) for v in range(n)]
            sh = [(ch[v], tuple(sorted(ch[u] for u in nbrs_h[v]))) for v in range(n)]
            order = {s: i for i, s in enumerate(sorted(set(sg) | set(sh)))}
            ng_, nh_ = [order[s] for s in sg], [order[s] for s in sh]
            if ng_ == cg and nh_ == ch:
                return cg, ch
            cg, ch = ng_, nh_

    def search(colors_g, colors_h, mapping):
        cg, ch = stable(colors_g, colors_h)
        if sorted(cg) != sorted(ch):
            return None
        if len(set(cg)) == n:
            # discrete coloring: the color matching is the only candidate map
            pos = {c: i for i, c in enumerate(ch)}
            phi = VertexMap(tuple(pos[c] for c in cg))
            return phi if is_isomorphism(g, h, phi) else None
        # pick an unmapped vertex in a smallest non-singleton color class
        counts = {}
        for c in cg:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c in counts if counts[c] > 1), key=lambda c: counts[c])
        v = cg.index(target)
        fresh = n + len(mapping) + 1  # unused color id
        for w in range(n):
            if ch[w] != target:
                continue
            ng_ = list(cg)
            nh_ = list(ch)
            ng_[v] = fresh
            nh_[w] = fresh
            result = search(ng_, nh_, mapping + [(v, w)])
            if result is not None:
                return result
        return None

    # deterministic initial coloring by degree (label-sort tie break is
    # implicit: vertices keep index order inside a color class)
    init_g = [g.degree(v) for v in range(n)]
    init_h = [h.degree(v) for v in range(n)]
    return search(init_g, init_h, [])


def independence_number(g: Graph):
    """Exact maximum independent set by branch and bound.

    The bound is a greedy clique cover: an independent set takes at most one
    vertex per clique.  Returns {"alpha": int, "witness": sorted vertex list}
    with the witness re-verified before returning.
    """
    _check_oracle_size(g)
    n = g.n
    masks = g.bitmasks()
    full = (1 << n) - 1

    best = {"size": 0, "set": 0}

    def clique_cover_bound(cand):
        # greedy: repeatedly start a clique at the lowest remaining vertex
        bound = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            common = masks[v] & rest
            rest ^= 1 << v
            while common:
                u = (common & -common).bit_length() - 1
                clique |= 1 << u
                common &= masks[u]
            rest &= ~clique
            bound += 1
        return bound

    def expand(chosen, size, cand):
        if size > best["size"]:
            best["size"], best["set"] = size, chosen
        if not cand:
            return
        if size + clique_cover_bound(cand) <= best["size"]:
            return
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest ^= 1 << v
            if size + bin(rest).count("1") + 1 <= best["size"]:
                return
            expand(chosen | (1 << v), size + 1, rest & ~masks[v])

    expand(0, 0, full)
    witness = sorted(_bits(best["set"]))
    for i in witness:
        for j in witness:
            if i < j and g.adj[i, j]:
                raise AssertionError("branch and bound returned a non-independent set")
    return {"alpha": best["size"], "witness": witness}
