from __future__ import annotations

import itertools

from hypothesis import given, settings, strategies as hst

from builders import complete, cycle, k33
from equilist.coloring import Instance, check_SE, class_sizes
from equilist.graph import Graph
from equilist.oracle import oracle_se_color


def unpruned_exists(inst):
    return any(check_SE(inst, list(c)).valid for c in itertools.product(*inst.lists))


def test_c4_three_colors():
    inst = Instance.plain_lists(cycle(4), range(3))
    res = oracle_se_color(inst)
    assert res.found and check_SE(inst, res.coloring).valid
    assert sorted(class_sizes(inst, res.coloring).values()) == [1, 1, 2]


def test_k33_three_colors_has_none():
    inst = Instance.plain_lists(k33(), range(3))
    res = oracle_se_color(inst)
    assert res.outcome == "NoneExists" and res.coloring is None
    assert not unpruned_exists(inst)


def test_single_vertex_and_empty_graph():
    res = oracle_se_color(Instance.plain_lists(Graph(1, [[]]), range(9)))
    assert res.found and len(res.coloring) == 1
    assert oracle_se_color(Instance.plain_lists(Graph(0, []), range(9))).coloring == []


def test_budget_exceeded():
    # K5 with four colors has no proper coloring at all; the search must
    # visit many nodes before giving up
    inst = Instance.plain_lists(complete(5), range(4))
    assert oracle_se_color(inst).outcome == "NoneExists"
    res = oracle_se_color(inst, budget=3)
    assert res.outcome == "BudgetExceeded" and res.nodes > 3
    assert res.to_json() == {"outcome": "BudgetExceeded", "nodes": res.nodes}


def test_node_counts_are_reproducible():
    inst = Instance.plain_lists(k33(), range(3))
    assert oracle_se_color(inst).nodes == oracle_se_color(inst).nodes


@hst.composite
def small_instances(draw):
    n = draw(hst.integers(1, 6))
    r = draw(hst.integers(1, 3))
    pal = draw(hst.integers(r, r + 2))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(hst.lists(hst.sampled_from(pairs), unique=True)) if pairs else []
    lists = [draw(hst.lists(hst.integers(0, pal - 1), min_size=r, max_size=r, unique=True)) for _ in range(n)]
    return Instance(Graph.from_edges(n, edges), r, lists)


@settings(max_examples=200, deadline=None)
@given(small_instances())
def test_oracle_matches_full_enumeration(inst):
    res = oracle_se_color(inst)
    assert res.outcome in ("Found", "NoneExists")
    if res.found:
        assert check_SE(inst, res.coloring).valid
    assert res.found == unpruned_exists(inst)
