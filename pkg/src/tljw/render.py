"""Text and LaTeX rendering of morphisms.

Square diagrams are named by a shortest word in the cup-cap generators
(computed once per strand count by breadth-first search from the identity,
ties broken lexicographically, so output is deterministic); non-square
diagrams fall back to an indexed name with the raw pairing attached.
"""

from __future__ import annotations

from functools import lru_cache

from . import diagram as dg
from .ring import FieldElement, RationalFunction, format_poly


@lru_cache(maxsize=None)
def _word_table(n):
    """diagram -> shortest lexicographically-least generator word, for TL_n."""
    start = dg.identity_diagram(n)
    table = {start: ()}
    frontier = [start]
    gens = [(i, dg.generator_u(n, i)) for i in range(1, n)]
    while frontier:
        nxt = []
        for d in frontier:
            w = table[d]
            for i, u in gens:
                d2, _ = dg.compose_diagrams(d, u)
                if d2 not in table:
                    table[d2] = w + (i,)
                    nxt.append(d2)
        frontier = nxt
    return table


def diagram_name(d):
    if d.source == d.target:
        if d.source <= 12:
            w = _word_table(d.source).get(d)
            if w is not None:
                return "id" if not w else " ".join(f"u{i}" for i in w)
        return f"d{list(d.pairing)}"
    return f"d{list(d.pairing)}"


def coeff_text(c):
    return str(c)


def coeff_latex(c):
    if isinstance(c, RationalFunction):
        num = format_poly(c.num.coeffs, var="\\delta ")
        if c.is_polynomial():
            return num
        den = format_poly(c.den.coeffs, var="\\delta ")
        return f"\\frac{{{num}}}{{{den}}}"
    if isinstance(c, FieldElement):
        return format_poly(c.rep, var="\\bar\\delta ")
    return str(c)


def morphism_text(m):
    if not m.terms:
        return "0"
    lines = []
    for d in sorted(m.terms):
        lines.append(f"{diagram_name(d)}: {coeff_text(m.terms[d])}")
    return "\n".join(lines)


def _diagram_name_latex(d):
    if d.source == d.target and d.source <= 12:
        w = _word_table(d.source).get(d)
        if w is not None:
            return "\\mathrm{id}" if not w else " ".join(f"u_{{{i}}}" for i in w)
    return f"d_{{{list(d.pairing)}}}"


def morphism_latex(m):
    rows = []
    for d in sorted(m.terms):
        rows.append(f"{_diagram_name_latex(d)} & {coeff_latex(m.terms[d])} \\\\")
    body = "\n".join(rows)
    return ("\\begin{tabular}{ll}\n\\hline\ndiagram & coefficient \\\\\n\\hline\n"
            + body + "\n\\hline\n\\end{tabular}")
