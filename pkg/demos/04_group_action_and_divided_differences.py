"""The Weyl group action on equivariant classes and divided differences.

A simple transposition either fixes a basis class or adds -alpha_i times
the class one Bruhat step down; arbitrary elements act through reduced
words with coefficient twisting.  The left divided difference (p - s_i p)
/ alpha_i lowers basis classes by one step; the right operator uses right
multiplication and a vertex-dependent denominator.
"""

from gkmcalc import (
    act,
    act_word,
    build_flag_moment_graph,
    build_schubert_moment_graph,
    divided_difference_closure,
    divided_difference_expansion,
    expand_in_basis,
    flag_basis,
    left_divided_difference,
    right_divided_difference,
    to_string,
    type_a,
    Polynomial,
)

rs = type_a(3)
g = build_flag_moment_graph(rs)
basis = flag_basis(rs)
s1, s2 = rs.parse_element("213"), rs.parse_element("132")


def show(c, title):
    row = ", ".join(f"{g.vertex_str(u)}: {to_string(p)}" for u, p in c.items())
    print(f"{title}:  {row}")


c12 = basis.cls(s1)
show(c12, "class of (12)")
acted = act(s1, c12)
show(acted, "s1 . class of (12)")
exp = expand_in_basis(acted, basis)
print(
    "expansion:",
    {g.vertex_str(u): to_string(p) for u, p in exp.items()},
)
print(f"s2 fixes the class: {act(s2, c12) == c12}")

print("\n== acting by a product through its reduced word ==")
from gkmcalc import expansions_equal

u = rs.parse_element("231")  # s1 s2
direct = expand_in_basis(act(u, c12), basis)
via_word = act_word(u, {s1: Polynomial.one(3)}, g)
print("act_word agrees with the pointwise action:", expansions_equal(via_word, direct))

print("\n== left divided differences lower the basis ==")
for name in ("321", "231", "213"):
    v = rs.parse_element(name)
    for i in (1, 2):
        dd = left_divided_difference(i, basis.cls(v), basis)
        got = expand_in_basis(dd, basis) if not dd.is_zero() else {}
        print(
            f"D_{i} [class of {name}] =",
            {g.vertex_str(k): to_string(p) for k, p in got.items()} or 0,
        )

print("\n== the right divided difference ==")
r = right_divided_difference(1, c12)
show(r, "right operator applied to class of (12)")

print("\n== closure under divided differences on a singular variety ==")
xg = build_schubert_moment_graph(rs, rs.parse_element("231"))
reached = divided_difference_closure(xg)
for expn in reached:
    shown = {xg.vertex_str(k): to_string(p) for k, p in expn.items() if p}
    print("  reached:", shown or "0")
print("(one of the two length-one classes is never reached)")
