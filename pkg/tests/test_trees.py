import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvgme.errors import (
    InvalidRootError,
    InvalidTreeError,
    SizeLimitError,
    StructuralError,
    UnknownFixtureError,
    UnsupportedOrderError,
)
from cvgme.trees import (
    PUBLISHED_TREE_KEYS,
    Bipartition,
    LabeledTree,
    Tree,
    bipartitions,
    canonical_code,
    enumerate_trees,
    find_center,
    published_tree,
    reverse_level_order_label,
    standard_linear_label,
    validate_labeling,
)

# Three rows of the rooting example table, vertex ids of our own choosing.
ROW1 = Tree(7, [(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (5, 7)])
ROW2 = Tree(7, [(1, 2), (2, 3), (2, 4), (2, 5), (5, 6), (5, 7)])
ROW3 = Tree(8, [(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (6, 7), (6, 8)])


def label_edges(lt):
    return {tuple(sorted(e, reverse=True)) for e in lt.edges}


def test_tree_construction_checks():
    with pytest.raises(InvalidTreeError):
        Tree(3, [(1, 2)])
    with pytest.raises(InvalidTreeError):
        Tree(4, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(InvalidTreeError):
        Tree(3, [(1, 2), (2, 4)])


def test_tree_text_round_trip():
    text = "# spider\n1 2\n2 3\n\n2 4\n"
    t = Tree.from_text(text)
    assert t.order == 4
    assert Tree.from_text(t.to_text()).edges == t.edges
    with pytest.raises(InvalidTreeError):
        Tree.from_text("1 2 3\n")


def test_adjacency_is_zero_one_with_degree_rows():
    a = ROW1.adjacency()
    assert set(np.unique(a)) <= {0, 1}
    assert np.all(np.diag(a) == 0)
    assert np.array_equal(a, a.T)
    assert [int(s) for s in a.sum(axis=1)] == [ROW1.degree(v) for v in range(1, 8)]


@pytest.mark.parametrize("n,count", [(2, 1), (3, 1), (4, 2), (5, 3), (6, 6)])
def test_enumerate_published_counts(n, count):
    assert len(enumerate_trees(n)) == count


def test_enumerate_against_pruefer_oracle(oracles):
    for n, count in oracles["tree_counts"].items():
        assert len(enumerate_trees(int(n))) == count


def test_enumerate_order_nine_against_networkx():
    assert len(enumerate_trees(9)) == sum(1 for _ in nx.nonisomorphic_trees(9)) == 47


@pytest.mark.parametrize("n", [5, 7, 8])
def test_enumerated_trees_pairwise_non_isomorphic(n):
    graphs = [nx.Graph(t.edges) for t in enumerate_trees(n)]
    for i in range(len(graphs)):
        for j in range(i):
            assert not nx.is_isomorphic(graphs[i], graphs[j])


def test_enumeration_is_sorted_and_deterministic():
    trees = enumerate_trees(7)
    codes = [canonical_code(t) for t in trees]
    assert codes == sorted(codes)
    assert [t.edges for t in enumerate_trees(7)] == [t.edges for t in trees]


@pytest.mark.parametrize("n", [0, 1, 13])
def test_enumerate_rejects_orders(n):
    with pytest.raises(UnsupportedOrderError):
        enumerate_trees(n)


def test_centers():
    assert find_center(ROW1).is_vertex and find_center(ROW1).vertices == (4,)
    assert not find_center(ROW2).is_vertex and set(find_center(ROW2).vertices) == {2, 5}
    assert find_center(Tree(3, [(1, 2), (2, 3)])).vertices == (2,)


@pytest.mark.parametrize("n", range(4, 10))
def test_center_invariant_under_relabeling(n):
    rng = np.random.default_rng(n)
    for tree in enumerate_trees(n):
        center = set(find_center(tree).vertices)
        for _ in range(50):
            perm = rng.permutation(n) + 1
            mapping = {v: int(perm[v - 1]) for v in range(1, n + 1)}
            moved = tree.relabel(mapping)
            assert set(find_center(moved).vertices) == {mapping[v] for v in center}


@pytest.mark.parametrize(
    "tree,expected",
    [
        (ROW1, {(7, 6), (7, 5), (6, 4), (6, 3), (5, 2), (5, 1)}),
        (ROW2, {(7, 6), (7, 5), (7, 4), (6, 3), (6, 2), (6, 1)}),
        (ROW3, {(8, 7), (8, 6), (7, 5), (5, 2), (5, 1), (6, 4), (6, 3)}),
    ],
)
def test_rooting_table_rows(tree, expected):
    assert label_edges(reverse_level_order_label(tree)) == expected


def test_star_labels_center_last():
    lt = reverse_level_order_label(Tree(4, [(1, 2), (1, 3), (1, 4)]))
    assert lt.labeling[0] == 4
    assert label_edges(lt) == {(4, 3), (4, 2), (4, 1)}


def test_root_choice_must_be_central():
    assert reverse_level_order_label(ROW2, 2).labeling[1] == 7
    assert reverse_level_order_label(ROW2, 5).labeling[4] == 7
    with pytest.raises(InvalidRootError):
        reverse_level_order_label(ROW2, 1)


def test_standard_linear_label():
    assert standard_linear_label(3).edges == ((2, 1), (3, 2))
    a = standard_linear_label(6).adjacency()
    assert np.array_equal(a, np.eye(6, k=1) + np.eye(6, k=-1))
    assert validate_labeling(standard_linear_label(4))


def test_validate_counterexample_and_alternatives():
    bad = LabeledTree.from_edges([(1, 2), (1, 3), (1, 4)])
    check = validate_labeling(bad)
    assert not check and check.column == 1
    assert validate_labeling(LabeledTree.from_edges([(1, 3), (3, 2)]))
    assert validate_labeling(LabeledTree.from_edges([(3, 4), (4, 2), (2, 1)]))
    assert validate_labeling(LabeledTree.from_edges([(7, 6), (7, 2), (7, 1), (6, 5), (6, 4), (6, 3)]))


def test_parents_raise_on_bad_labeling():
    with pytest.raises(StructuralError):
        LabeledTree.from_edges([(1, 2), (1, 3), (1, 4)]).parents()


def test_every_labeling_up_to_order_ten_validates():
    count = 0
    for n in range(2, 11):
        for tree in enumerate_trees(n):
            for root in find_center(tree).vertices:
                lt = reverse_level_order_label(tree, root)
                assert validate_labeling(lt).ok
                assert lt.root == root
                count += 1
    assert count > 200


def test_catalogue_trees():
    assert set(PUBLISHED_TREE_KEYS) == {"3", "4a", "4b", "5a", "5b", "5c", "6a", "6b", "6c", "6d", "6e", "6f"}
    assert published_tree("4b").edges == ((4, 1), (4, 2), (4, 3))
    assert label_edges(published_tree("6c")) == {(5, 2), (6, 5), (6, 3), (3, 1), (6, 4)}
    assert label_edges(published_tree("6d")) == {(5, 3), (6, 5), (6, 4), (4, 1), (4, 2)}
    for key in PUBLISHED_TREE_KEYS:
        lt = published_tree(key)
        assert validate_labeling(lt)
        assert lt.root == lt.labeling.index(lt.order) + 1
    with pytest.raises(UnknownFixtureError):
        published_tree("7a")


def test_catalogue_covers_every_class():
    for n in (3, 4, 5, 6):
        codes = {canonical_code(published_tree(k).tree) for k in PUBLISHED_TREE_KEYS if k.startswith(str(n))}
        assert codes == {canonical_code(t) for t in enumerate_trees(n)}


def test_bipartitions_three_modes():
    assert [(b.side_I, b.side_J) for b in bipartitions(3)] == [((1,), (2, 3)), ((1, 2), (3,)), ((1, 3), (2,))]
    assert [str(b) for b in bipartitions(3)] == ["1|23", "12|3", "13|2"]
    assert len(bipartitions(2)) == 1


@given(st.integers(2, 10))
def test_bipartitions_complete_and_canonical(n):
    splits = bipartitions(n)
    assert len(splits) == 2 ** (n - 1) - 1
    assert len({b.side_I for b in splits}) == len(splits)
    for b in splits:
        assert 1 in b.side_I and b.side_J
        assert set(b.side_I) | set(b.side_J) == set(range(1, n + 1))


def test_bipartition_canonical_form():
    assert Bipartition.of(4, [2, 3]).side_I == (1, 4)
    with pytest.raises(ValueError):
        Bipartition(4, (2, 3))
    with pytest.raises(SizeLimitError):
        bipartitions(23)
