import pytest

from symorder.trees import (BLACK, WHITE_LEAF, OrderedTree, PlanarTree, TreeError, closed_form_s,
                            contributing_filter, count_ordered, count_table, enumerate_ordered,
                            enumerate_trees, parse_tree)


def test_smallest_classes():
    assert enumerate_trees(0, 1) == [BLACK]
    assert enumerate_trees(1, 0) == [WHITE_LEAF]
    assert [t.canonical() for t in enumerate_trees(1, 4)] == ["w(b,b,b,b)"]
    assert enumerate_trees(0, 2) == []


@pytest.mark.parametrize("w, s", [(1, 1), (2, 1), (3, 3), (4, 15), (5, 105), (6, 945), (7, 10395)])
def test_white_counts_three_ways(w, s):
    assert count_ordered(w, 0) == s
    assert closed_form_s(w) == s
    if w <= 6:
        assert len(enumerate_ordered(w, 0)) == s


def test_bigraded_counts_agree_with_enumeration():
    for total in range(1, 9):
        for w in range(total + 1):
            b = total - w
            assert count_ordered(w, b) == len(enumerate_ordered(w, b)), (w, b)


def test_one_white_node():
    assert all(count_ordered(1, b) == 1 for b in range(6))


def test_contributing_census():
    assert sum(1 for t in enumerate_trees(4, 1) if contributing_filter(t)) == 8
    assert contributing_filter(WHITE_LEAF)
    assert not contributing_filter(parse_tree("w(w(),b)"))
    assert contributing_filter(parse_tree("w(b,w())"))
    assert not contributing_filter(parse_tree("w(b,w(w(),b))"))


def _parent_child_labels(t, labels):
    nodes = t.white_nodes()
    label_of = {id(v): lab for v, lab in zip(nodes, labels)}
    for v in nodes:
        for c in v.children:
            if c.white:
                yield label_of[id(v)], label_of[id(c)]


def test_numerations_are_descending():
    t = parse_tree("w(w(b),w(w()))")
    labs = t.numerations()
    assert len(labs) == t.numeration_count() == 3
    for lab in labs:
        assert lab[0] == 1
        assert all(p < c for p, c in _parent_child_labels(t, lab))
    with pytest.raises(TreeError):
        OrderedTree(t, (2, 1, 3))


def test_canonical_round_trip():
    for t in enumerate_trees(3, 2):
        assert parse_tree(t.canonical()) == t
    with pytest.raises(TreeError):
        parse_tree("w(b")
    with pytest.raises(TreeError):
        PlanarTree(False, (BLACK,))


def test_ascii():
    t = parse_tree("w(b,w(b))")
    assert t.ascii((1, 2)) == "o1\n+-- *\n\\-- o2\n    \\-- *"


def test_table_rows():
    rows = {(w, b): rest for w, b, *rest in count_table(4)}
    assert rows[(3, 0)] == [2, 3, 0]
    assert rows[(3, 1)] == [10, 15, 4]
    with pytest.raises(TreeError):
        enumerate_trees(6, 4)
