"""Symbolic rendering of the criteria attached to a labeled tree.

Column i of L^alpha holds l_ii and, for the edge to i's parent j, l_ji.  It
becomes the quadrature combination sum_j l_ji alpha_j on the left-hand side,
and on the right-hand side its products l^x_ji l^p_ji are grouped by the side
of the split that row j falls on, one absolute value per group.
"""

from __future__ import annotations

from .trees import Bipartition, LabeledTree, bipartitions, resolve_tree

FORMATS = ("text", "latex")


def _sub(j: int, i: int) -> str:
    return f"{j}{i}" if j < 10 and i < 10 else f"{j},{i}"


def _column_rows(tree: LabeledTree) -> list[list[int]]:
    rows = [[i] for i in range(1, tree.order + 1)]
    for j, i in tree.edges:
        rows[i - 1].append(j)
    return [sorted(r) for r in rows]


class _Style:
    def __init__(self, fmt: str):
        if fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, not {fmt!r}")
        self.latex = fmt == "latex"

    def ell(self, q, j, i):
        return rf"\ell^{q}_{{{_sub(j, i)}}}" if self.latex else f"l^{q}_{_sub(j, i)}"

    def quad(self, q, j):
        return f"{q}_{{{j}}}" if self.latex else f"{q}_{j}"

    def var(self, inner):
        return rf"\langle[\Delta({inner})]^2\rangle" if self.latex else f"<[Δ({inner})]^2>"

    def var1(self, coeff, quad):
        if self.latex:
            return rf"({coeff})^2\langle(\Delta {quad})^2\rangle"
        return f"({coeff})^2 <(Δ{quad})^2>"

    def abs(self, inner):
        return f"|{inner}|"

    def times(self):
        return "" if self.latex else " "

    def k(self, split):
        return rf"\mathcal{{K}}^{{({split})}}" if self.latex else f"K^({split})"


def lhs_terms(tree, quadrature: str, fmt: str = "text") -> list[str]:
    """One variance per column of L: an edge term for each non-root vertex, then the root."""
    tree = resolve_tree(tree)
    st = _Style(fmt)
    out = []
    for i, rows in enumerate(_column_rows(tree), start=1):
        if len(rows) == 1:
            out.append(st.var1(st.ell(quadrature, i, i), st.quad(quadrature, i)))
        else:
            inner = " + ".join(
                f"{st.ell(quadrature, j, i)}{st.times()}{st.quad(quadrature, j)}" for j in rows
            )
            out.append(st.var(inner))
    return out


def k_expression(tree, split: Bipartition, fmt: str = "text") -> str:
    tree = resolve_tree(tree)
    st = _Style(fmt)
    side = set(split.side_I)
    groups = []
    for i, rows in enumerate(_column_rows(tree), start=1):
        for part in ([j for j in rows if j in side], [j for j in rows if j not in side]):
            if part:
                terms = [f"{st.ell('x', j, i)}{st.times()}{st.ell('p', j, i)}" for j in part]
                groups.append((part[0], i, st.abs(" + ".join(terms))))
    # columns in order; within a column the group holding the diagonal first
    groups.sort(key=lambda g: (g[1], g[0] != g[1], g[0]))
    return " + ".join(g[2] for g in groups)


def render_criterion(tree, fmt: str = "text") -> str:
    tree = resolve_tree(tree)
    st = _Style(fmt)
    splits = bipartitions(tree.order)
    edges = ", ".join(f"{j}-{i}" for j, i in tree.edges)
    lines = []
    if st.latex:
        lines.append(rf"% labeled tree, edges {edges}, root {tree.order}")
        for q in ("x", "p"):
            lines.append(rf"U^{q} = " + " + ".join(lhs_terms(tree, q, fmt)))
        ks = ", ".join(st.k(s) for s in splits)
        lines.append(rf"U^x U^p \geq \frac{{1}}{{4}}\left(\mathcal{{L}} + \min_k \mathcal{{L}}^{{(k)}}\right)")
        lines.append(rf"U^x + U^p \geq \min\left[{ks}\right]")
    else:
        lines.append(f"labeled tree: edges {edges}; root {tree.order}")
        for q in ("x", "p"):
            lines.append(f"U^{q} = " + " + ".join(lhs_terms(tree, q, fmt)))
        lines.append("product: U^x U^p >= (L + min_k L^(k)) / 4")
        lines.append("sum:     U^x + U^p >= min[" + ", ".join(st.k(s) for s in splits) + "]")
    for s in splits:
        lines.append(f"{st.k(s)} = {k_expression(tree, s, fmt)}")
    return "\n".join(lines)
