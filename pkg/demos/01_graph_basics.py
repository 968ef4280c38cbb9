"""Graph parsing, spectra, independence numbers, and isomorphism search.

Walks the core graph toolkit on the classic C6 / 2K3 pair: both are
2-regular on six vertices, but one is connected and the other is not, so
they are not isomorphic and not even cospectral.
"""

from qgiso import (
    char_poly,
    cospectral_mates,
    find_isomorphism,
    format_graph,
    from_edges,
    independence_number,
    parse_graph,
)

c6 = from_edges(
    [f"v{i}" for i in range(6)],
    [(f"v{i}", f"v{(i + 1) % 6}") for i in range(6)],
)
two_k3 = from_edges(
    ["a0", "a1", "a2", "b0", "b1", "b2"],
    [("a0", "a1"), ("a0", "a2"), ("a1", "a2"), ("b0", "b1"), ("b0", "b2"), ("b1", "b2")],
)

print("C6 in the text format:")
print(format_graph(c6))
assert parse_graph(format_graph(c6)).labels == c6.labels

print("char poly C6: ", char_poly(c6))
print("char poly 2K3:", char_poly(two_k3))
report = cospectral_mates(c6, two_k3)
print("cospectral:", report["cospectral"])

print("alpha(C6)  =", independence_number(c6)["alpha"])
print("alpha(2K3) =", independence_number(two_k3)["alpha"])

phi = find_isomorphism(c6, two_k3)
print("isomorphism C6 -> 2K3:", phi)

psi = find_isomorphism(c6, parse_graph(format_graph(c6)))
print("isomorphism C6 -> C6: ", list(psi.image))
