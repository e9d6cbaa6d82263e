import re

import numpy as np
import pytest

from cvgme.criteria import CholeskyParams, build_L, script_K_k
from cvgme.render import k_expression, lhs_terms, render_criterion
from cvgme.trees import bipartitions, published_tree

FIG3 = {
    "1|23": r"|\ell^x_{11}\ell^p_{11}| + |\ell^x_{21}\ell^p_{21}| + |\ell^x_{22}\ell^p_{22} + \ell^x_{32}\ell^p_{32}| + |\ell^x_{33}\ell^p_{33}|",
    "13|2": r"|\ell^x_{11}\ell^p_{11}| + |\ell^x_{21}\ell^p_{21}| + |\ell^x_{22}\ell^p_{22}| + |\ell^x_{32}\ell^p_{32}| + |\ell^x_{33}\ell^p_{33}|",
    "12|3": r"|\ell^x_{11}\ell^p_{11} + \ell^x_{21}\ell^p_{21}| + |\ell^x_{22}\ell^p_{22}| + |\ell^x_{32}\ell^p_{32}| + |\ell^x_{33}\ell^p_{33}|",
}


def strip_spaces(s):
    return s.replace(" ", "")


@pytest.mark.parametrize("split", bipartitions(3), ids=str)
def test_three_mode_K_expressions(split):
    got = k_expression(published_tree("3"), split, "latex")
    assert strip_spaces(got) == strip_spaces(FIG3[str(split)])


def test_star_lhs_pairs_each_leaf_with_the_centre():
    terms = lhs_terms(published_tree("4b"), "x")
    assert terms[:3] == [f"<[Δ(l^x_{i}{i} x_{i} + l^x_4{i} x_4)]^2>" for i in (1, 2, 3)]
    assert terms[3] == "(l^x_44)^2 <(Δx_4)^2>"


def test_lhs_has_one_term_per_mode():
    for key in ("5c", "6d"):
        tree = published_tree(key)
        assert len(lhs_terms(tree, "p", "latex")) == tree.order


def _evaluate_text(expr, params):
    lx, lp = build_L(params, "x"), build_L(params, "p")
    py = re.sub(r"l\^([xp])_(\d)(\d)", lambda m: f"l{m[1]}[{int(m[2]) - 1},{int(m[3]) - 1}]", expr)
    py = py.replace(" l", "*l").replace("+*", "+ ").replace("|*", "|")
    py = re.sub(r"\|([^|]*)\|", r"abs(\1)", py)
    return eval(py, {"abs": abs, "lx": lx, "lp": lp})


@pytest.mark.parametrize("key", ["3", "4a", "4b", "5b", "5c", "6c", "6d", "6f"])
def test_text_expressions_evaluate_to_K(key):
    rng = np.random.default_rng(4)
    tree = published_tree(key)
    p = CholeskyParams.from_vector(tree, rng.normal(size=CholeskyParams.size(tree)))
    for split in bipartitions(tree.order):
        assert _evaluate_text(k_expression(tree, split), p) == pytest.approx(script_K_k(p, split), rel=1e-12)


def test_full_rendering_lists_every_split():
    text = render_criterion("4a")
    assert text.splitlines()[0].startswith("labeled tree: edges 2-1, 3-2, 4-3")
    assert sum(line.startswith("K^(") for line in text.splitlines()) == 7
    latex = render_criterion("3", "latex")
    assert r"\mathcal{K}^{(12|3)}" in latex and "U^x + U^p" in latex


def test_unknown_format():
    with pytest.raises(ValueError):
        render_criterion("3", "html")
