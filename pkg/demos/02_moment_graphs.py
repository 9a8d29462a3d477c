"""Moment graphs: building, validating, exporting, and the Palais-Smale test.

The moment graph of the full flag variety has one vertex per Weyl element
and one out-edge per inversion, labeled by the corresponding root; every
Schubert variety induces the subgraph on a lower Bruhat interval.  A
hexagonal toric example shows a graph that satisfies the moment-graph
axioms but admits no flow-induced Palais-Smale orientation.
"""

from gkmcalc import (
    build_flag_moment_graph,
    build_schubert_moment_graph,
    graph_to_dot,
    graph_to_json,
    is_palais_smale,
    toric_hexagon_graph,
    type_a,
    validate_axioms,
)

rs = type_a(3)
g = build_flag_moment_graph(rs)
print(f"flag graph for S_3: {len(g.vertices)} vertices, {len(g.edges)} edges")
rep = validate_axioms(g)
print(f"axioms pass: {rep.ok}")

print("\nout-edges by vertex (label = inversion root):")
for v in g.vertices:
    outs = [f"{g.vertex_str(e.head)}[{e.label}]" for e in g.out_edges(v)]
    print(f"  {g.vertex_str(v)} ({v.cycle_str():>5}) -> {', '.join(outs) or '-'}")

w = rs.parse_element("231")
xg = build_schubert_moment_graph(rs, w)
print(f"\nSchubert graph below 231: {len(xg.vertices)} vertices, {len(xg.edges)} edges")
print(f"Palais-Smale with the stored orientation: {is_palais_smale(xg).holds}")

print("\nDOT export of the flag graph:")
print(graph_to_dot(g))

hexagon = toric_hexagon_graph()
print(f"hexagon axioms pass: {validate_axioms(hexagon).ok}")
res = is_palais_smale(hexagon, mode="search")
print(f"hexagon Palais-Smale via flow orientations: {res.holds} ({res.detail})")
res_flag = is_palais_smale(g, mode="search")
print(
    f"flag graph search mode finds a covector: {res_flag.holds}, "
    f"xi = {[str(x) for x in res_flag.covector]}"
)

print("\ngraph JSON round-trips through load_external_graph:")
print(sorted(graph_to_json(hexagon)["vertices"]))
