"""The Weyl group action on equivariant cohomology and its consequences.

The group acts on classes over the full flag graph pointwise: the value of
u . p at a vertex x is the coadjoint image under u of p at u^{-1} x.  On a
Schubert graph the vertex set is not closed under left multiplication, so
the action is defined through the Knutson-Tao basis instead: a simple
reflection s_i fixes the class of v when s_i v is longer and otherwise adds
-alpha_i times the class of s_i v; coefficients are twisted by the
coadjoint substitution.

Left divided differences (p - s_i . p) / alpha_i act class-by-class, with a
matching coefficient-level expansion formula.  The right divided difference
uses right multiplication of the vertex labels and a vertex-dependent
denominator.  Group averaging produces the invariant classes whose graded
span exhibits the equivariant cohomology of any Schubert variety as a sum
of trivial representations, one per fixed point, in degrees given by
length; :func:`decompose` assembles that ledger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .gkm import (
    EquivariantClass,
    KnutsonTaoBasis,
    apply_group_element,
    expansions_equal,
    expand_in_basis,
)
from .moment_graph import MomentGraph
from .polyring import ExactDivisionError, Polynomial, exact_divide

__all__ = [
    "act",
    "act_pointwise",
    "act_on_schubert_basis",
    "act_word",
    "left_divided_difference",
    "right_divided_difference",
    "divided_difference_expansion",
    "AveragedClass",
    "average_class",
    "DecompositionReport",
    "decompose",
    "divided_difference_closure",
]


def act_pointwise(u, c: EquivariantClass) -> EquivariantClass:
    """Pointwise action; only valid on left-multiplication-closed graphs."""
    return apply_group_element(u, c)


def act(
    u, c: EquivariantClass, basis: KnutsonTaoBasis | None = None
) -> EquivariantClass:
    """Group action on a class, routed by the kind of graph it lives on."""
    g = c.graph
    if g.variety == "flag":
        return act_pointwise(u, c)
    if g.variety == "schubert":
        basis = basis if basis is not None else KnutsonTaoBasis(g)
        exp = expand_in_basis(c, basis)
        return basis.reconstruct(act_word(u, exp, g))
    raise ValueError("no group action on external graphs")


def _minus_alpha(g: MomentGraph, i: int) -> Polynomial:
    return -g.rs.simple_root_form(i)


def act_on_schubert_basis(i: int, v, g: MomentGraph) -> dict:
    """Expansion of s_i applied to the Knutson-Tao class of v.

    The class is fixed when s_i v is longer; when s_i v is shorter the
    class of s_i v enters with coefficient -alpha_i.
    """
    rs = g.rs
    if rs is None:
        raise ValueError("need a root-system graph")
    if v not in g._vstr:
        raise ValueError(f"vertex {v!r} not in graph")
    siv = rs.mul(rs.simple_reflection(i), v)
    one = Polynomial.one(g.n)
    if rs.length(siv) > rs.length(v):
        return {v: one}
    return {v: one, siv: _minus_alpha(g, i)}


def _act_simple_on_expansion(i: int, expansion: Mapping, g: MomentGraph) -> dict:
    rs = g.rs
    sub = rs.coadjoint_substitution(rs.simple_reflection(i))
    out: dict = {}

    def accumulate(v, p):
        if not p:
            return
        s = out.get(v)
        s = p if s is None else s + p
        if s:
            out[v] = s
        else:
            out.pop(v, None)

    for v, cv in expansion.items():
        if isinstance(cv, (int, Fraction)):
            cv = Polynomial.constant(g.n, cv)
        tw = cv.substitute(sub)
        for u, factor in act_on_schubert_basis(i, v, g).items():
            accumulate(u, tw * factor)
    return out


def act_word(u, expansion: Mapping, g: MomentGraph) -> dict:
    """Apply a group element to a basis expansion, letter by letter.

    Factors u by its reduced word and applies the simple-reflection rule
    right-to-left, twisting coefficients as it goes; the result does not
    depend on the chosen word.
    """
    rs = g.rs
    out = {
        v: (Polynomial.constant(g.n, p) if isinstance(p, (int, Fraction)) else p)
        for v, p in expansion.items()
        if p
    }
    for i in reversed(rs.reduced_word(u)):
        out = _act_simple_on_expansion(i, out, g)
    return out


def left_divided_difference(
    i: int, c: EquivariantClass, basis: KnutsonTaoBasis | None = None
) -> EquivariantClass:
    """(c - s_i . c) / alpha_i, divided exactly vertex by vertex."""
    g = c.graph
    num = c - act(g.rs.simple_reflection(i), c, basis)
    alpha = g.rs.simple_root_form(i)
    out = {}
    for v, p in num._loc.items():
        try:
            out[v] = exact_divide(p, alpha)
        except ExactDivisionError as exc:  # the theory says this cannot happen
            raise ExactDivisionError(
                f"left divided difference failed at {g.vertex_str(v)}: {exc}"
            ) from exc
    return EquivariantClass(g, out)


def right_divided_difference(i: int, c: EquivariantClass) -> EquivariantClass:
    """Vertexwise operator (p(v) - p(v s_i)) / (-(v . alpha_i)).

    Needs the full flag graph, whose vertex set is closed under right
    multiplication by s_i.
    """
    g = c.graph
    rs = g.rs
    if rs is None or g.variety != "flag":
        raise ValueError("the right divided difference needs the full flag graph")
    s = rs.simple_reflection(i)
    alpha = rs.simple_root_form(i)
    out = {}
    for v in g.vertices:
        num = c[v] - c[rs.mul(v, s)]
        if not num:
            continue
        den = -(alpha.substitute(rs.coadjoint_substitution(v)))
        try:
            out[v] = exact_divide(num, den)
        except ExactDivisionError as exc:
            raise ExactDivisionError(
                f"right divided difference failed at {g.vertex_str(v)}: {exc}"
            ) from exc
    return EquivariantClass(g, out)


def divided_difference_expansion(i: int, expansion: Mapping, g: MomentGraph) -> dict:
    """Coefficient-level left divided difference.

    Applies the coadjoint divided difference to every coefficient and, for
    each base vertex with s_i v shorter, moves the twisted coefficient down
    to s_i v.  Matches left_divided_difference after expansion.
    """
    rs = g.rs
    s = rs.simple_reflection(i)
    sub = rs.coadjoint_substitution(s)
    out: dict = {}

    def accumulate(v, p):
        if not p:
            return
        cur = out.get(v)
        cur = p if cur is None else cur + p
        if cur:
            out[v] = cur
        else:
            out.pop(v, None)

    for v, cv in expansion.items():
        if isinstance(cv, (int, Fraction)):
            cv = Polynomial.constant(g.n, cv)
        accumulate(v, rs.divided_difference(cv, i))
        siv = rs.mul(s, v)
        if rs.length(siv) < rs.length(v):
            accumulate(siv, cv.substitute(sub))
    return out


@dataclass
class AveragedClass:
    """Group average of a Knutson-Tao class, as a basis expansion."""

    base: object
    expansion: dict


def average_class(v, g: MomentGraph) -> AveragedClass:
    """Average the class of v over the whole Weyl group (exact rationals)."""
    rs = g.rs
    if rs is None:
        raise ValueError("need a root-system graph")
    total: dict = {}
    for u in rs.elements():
        contrib = act_word(u, {v: Polynomial.one(g.n)}, g)
        for x, p in contrib.items():
            cur = total.get(x)
            s = p if cur is None else cur + p
            if s:
                total[x] = s
            else:
                total.pop(x, None)
    scale = Fraction(1, len(rs.elements()))
    return AveragedClass(v, {x: p * scale for x, p in total.items()})


@dataclass
class DecompositionReport:
    """Per-variety ledger for the trivial-summand decomposition.

    One row per fixed point v: degree, invariance of the averaged class
    under every generator, and unitriangularity of its expansion.  The
    graded multiplicity of the trivial summand in degree d must equal the
    number of fixed points of length d, and the induced action modulo the
    variable ideal must fix every basis class.
    """

    type_label: str
    w_label: str
    rows: list[dict] = field(default_factory=list)
    multiplicities: dict[int, int] = field(default_factory=dict)
    poincare: list[int] = field(default_factory=list)
    generator_invariance: dict[int, bool] = field(default_factory=dict)
    mod_t_identity: bool = True
    unitriangular: bool = True

    @property
    def ok(self) -> bool:
        return (
            all(self.generator_invariance.values())
            and self.mod_t_identity
            and self.unitriangular
            and all(r["invariant"] and r["unitriangular"] for r in self.rows)
        )

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "w": self.w_label,
            "ok": self.ok,
            "rows": self.rows,
            "multiplicities": {str(d): m for d, m in sorted(self.multiplicities.items())},
            "poincare": list(self.poincare),
            "generator_invariance": {
                str(i): v for i, v in sorted(self.generator_invariance.items())
            },
            "mod_t_identity": self.mod_t_identity,
            "unitriangular": self.unitriangular,
        }

    def table(self) -> str:
        lines = [
            f"decomposition of X_{self.w_label} ({self.type_label})",
            f"poincare coefficients: {self.poincare}",
            "degree  multiplicity",
        ]
        for d, m in sorted(self.multiplicities.items()):
            lines.append(f"{d:>6}  {m}")
        lines.append("vertex  degree  invariant  unitriangular")
        for r in self.rows:
            lines.append(
                f"{r['v']:>6}  {r['degree']:>6}  {str(r['invariant']):>9}  "
                f"{str(r['unitriangular']):>13}"
            )
        lines.append(f"mod-t action is identity: {self.mod_t_identity}")
        lines.append(f"all checks pass: {self.ok}")
        return "\n".join(lines) + "\n"


def decompose(g: MomentGraph) -> DecompositionReport:
    """Compute every averaged class and report the decomposition facts."""
    rs = g.rs
    if rs is None:
        raise ValueError("need a root-system graph")
    report = DecompositionReport(
        type_label=g.metadata.get("type", rs.label),
        w_label=g.metadata.get("w", ""),
    )
    gen_ok = {i: True for i in range(1, rs.rank + 1)}
    mod_t_ok = True

    for v in g.vertices:
        deg = rs.length(v)
        avg = average_class(v, g)
        invariant = True
        for i in range(1, rs.rank + 1):
            if not expansions_equal(
                _act_simple_on_expansion(i, avg.expansion, g), avg.expansion
            ):
                invariant = False
                gen_ok[i] = False
        one = Polynomial.one(g.n)
        unitri = avg.expansion.get(v) == one and all(
            rs.bruhat_leq(u, v) for u in avg.expansion
        )
        if not unitri:
            report.unitriangular = False
        # the induced action modulo the variable ideal fixes every class
        for i in range(1, rs.rank + 1):
            image = _act_simple_on_expansion(i, {v: one}, g)
            consts = {
                u: p.constant_term() for u, p in image.items() if p.constant_term()
            }
            if consts != {v: Fraction(1)}:
                mod_t_ok = False
        report.rows.append(
            {
                "v": g.vertex_str(v),
                "degree": deg,
                "invariant": invariant,
                "unitriangular": unitri,
                "support": sorted(g.vertex_str(u) for u in avg.expansion),
            }
        )
        report.multiplicities[deg] = report.multiplicities.get(deg, 0) + 1

    top = max(report.multiplicities) if report.multiplicities else 0
    report.poincare = [report.multiplicities.get(d, 0) for d in range(top + 1)]
    report.generator_invariance = gen_ok
    report.mod_t_identity = mod_t_ok
    return report


def _expansion_key(expansion: Mapping, g: MomentGraph) -> frozenset:
    return frozenset((g.vertex_str(v), p) for v, p in expansion.items() if p)


def divided_difference_closure(g: MomentGraph) -> list[dict]:
    """Breadth-first closure of the top class under all left D_i.

    Works at the expansion level starting from the coefficient-1 expansion
    at the unique top vertex; returns every distinct expansion reached,
    including the zero expansion when it occurs.
    """
    rs = g.rs
    start = {g.top_vertex(): Polynomial.one(g.n)}
    seen = {_expansion_key(start, g): start}
    frontier = [start]
    while frontier:
        new = []
        for exp in frontier:
            for i in range(1, rs.rank + 1):
                img = divided_difference_expansion(i, exp, g)
                key = _expansion_key(img, g)
                if key not in seen:
                    seen[key] = img
                    new.append(img)
        frontier = new
    return list(seen.values())
