from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as hst

from builders import brute_potential, layered_state, single_edge_instance
from equilist.coloring import Instance
from equilist.digraph import PartialState
from equilist.engine import (
    Potential,
    Tracer,
    improve,
    insert_vertex,
    move_vertex,
    potential,
    read_trace,
    replay,
    shift_witnesses,
    solo_neighbors,
    solo_vertices,
    useful_neighbors,
)
from equilist.errors import IllegalMove, InvalidInstance
from equilist.graph import Graph
from equilist.generators import gen_lists, gen_stacked_planar
from equilist.solver import solve, solve_from


def edge_state():
    return PartialState(single_edge_instance(), [0, 1])


def test_move_vertex_examples():
    st = edge_state()
    tr = Tracer()
    ev = move_vertex(st, 0, 2, tr)
    assert st.color == [2, 1]
    assert ev.kind == "MoveVertex" and ev.payload == {"v": 0, "from": 0, "to": 2}
    with pytest.raises(IllegalMove):
        move_vertex(st, 0, 1)  # neighbor sits in class 1
    with pytest.raises(IllegalMove):
        move_vertex(PartialState(single_edge_instance(), [0, None]), 1, 2)


def test_insert_vertex_examples():
    st = PartialState(single_edge_instance(), [0, None])
    with pytest.raises(IllegalMove):
        insert_vertex(st, 1, 0)
    with pytest.raises(IllegalMove):
        insert_vertex(st, 0, 2)
    insert_vertex(st, 1, 2)
    assert st.color == [0, 2]


def test_shift_examples():
    st = edge_state()
    shift_witnesses(st, [0, 2], [0])
    assert {c: st.size(c) for c in range(3)} == {0: 0, 1: 1, 2: 1}
    # a trivial path changes nothing and emits nothing
    tr = Tracer()
    assert shift_witnesses(st, [1], [], tr) is None and st.color == [2, 1]
    with pytest.raises(IllegalMove):
        shift_witnesses(st, [0, 2], [0])  # stale witness
    with pytest.raises(IllegalMove):
        shift_witnesses(st, [1, 0], [])


def test_shift_keeps_interior_sizes():
    # path 0 -> 1 -> 2 through an edgeless graph
    inst = Instance.plain_lists(Graph(4, [[]] * 4), range(3))
    st = PartialState(inst, [0, 0, 1, 2], s=3)
    before = [st.size(c) for c in range(3)]
    shift_witnesses(st, [0, 1, 2], [0, 2])
    after = [st.size(c) for c in range(3)]
    assert after == [before[0] - 1, before[1], before[2] + 1]
    assert st.color == [1, 0, 2, 2]


def test_potential_examples():
    assert potential(edge_state()).key[:2] == (2, 2)
    # two full classes with no arcs into the empty class 2
    g = Graph.from_edges(3, [(0, 1)])
    inst = Instance(g, 2, [[0, 1], [0, 1], [1, 2]])
    st = PartialState(inst, [0, 1, None])
    assert st.lam == {2}
    assert potential(st).key == (0, 0, 0)
    assert Potential(3, 1) > Potential(2, 5)
    assert Potential(3, 2, 1) < Potential(3, 2, 0)


def test_free_i_moves_into_empty_class():
    inst = Instance(Graph(4, [[]] * 4), 3, [[0, 1, 3], [0, 1, 2], [1, 2, 3], [0, 2, 3]])
    st = PartialState(inst, [0, 0, 1, 2])
    assert st.is_se()
    before = potential(st)
    ev = improve(st, Tracer())
    assert ev.payload["rule"] == "free-i"
    assert (ev.payload["v"], ev.payload["to"]) == (0, 3)
    assert potential(st) > before
    assert st.is_se()


def test_improve_none_without_candidates():
    st = edge_state()
    assert solo_vertices(st) == []  # two full accessible classes
    assert improve(st, Tracer()) is None
    assert st.color == [0, 1]


def test_solo_structure_on_layered_state():
    inst, colors, p = layered_state(2)
    st = PartialState(inst, colors)
    solos = solo_vertices(st)
    assert solos
    for z in solos:
        for y in solo_neighbors(st, z):
            assert y in st.B and y in inst.g.nbrs[z]
            assert [u for u in inst.g.nbrs[y] if st.color[u] == st.color[z]] == [z]
        S = solo_neighbors(st, z)
        for y in useful_neighbors(st, S):
            assert any(y2 != y and not inst.g.has_edge(y, y2) for y2 in S)


@pytest.mark.parametrize("seed,rule", [(2, "solo-to-A"), (14, "solo-to-A"), (33, "useful"), (83, "useful")])
def test_swap_rules_raise_potential(seed, rule):
    inst, colors, p = layered_state(seed)
    st = PartialState(inst, colors)
    before = brute_potential(st)
    ev = improve(st, Tracer())
    assert ev.kind == "SwapSolo" and ev.payload["rule"] == rule
    after = brute_potential(st)
    assert after > before
    assert tuple(ev.payload["potential_after"][:2]) == after[:2]
    assert st.is_se() and st.is_proper_at(ev.payload["z"]) and st.is_proper_at(ev.payload["y"])


def test_replay_reproduces_solution():
    g, _ = gen_stacked_planar(30, seed=5, max_degree=10)
    inst = Instance(g, 10, gen_lists(30, 10, 14, seed=5))
    res = solve(inst)
    assert replay(inst, res.trace) == res.colors
    events = read_trace(Tracer(events=list(res.trace)).to_jsonl())
    assert [e.to_json() for e in events] == [e.to_json() for e in res.trace]
    assert replay(inst, events) == res.colors


def test_replay_detects_tampering():
    g, _ = gen_stacked_planar(12, seed=2)
    inst = Instance.plain_lists(g, range(9))
    res = solve(inst)
    events = list(res.trace)
    bad = events[-1]
    events[-1] = type(bad)(bad.step, bad.kind, bad.payload, "0" * 16)
    with pytest.raises(InvalidInstance):
        replay(inst, events)
    events[-1] = type(bad)(bad.step, "Teleport", bad.payload, bad.snapshot_hash)
    with pytest.raises(InvalidInstance):
        replay(inst, events)


def test_tracer_jsonl_round_trip():
    inst, colors, p = layered_state(33)
    out, stats, trace = solve_from(inst, colors, p)
    tr = Tracer(events=list(trace))
    again = read_trace(tr.to_jsonl())
    assert [e.to_json() for e in again] == [e.to_json() for e in trace]
    assert any(e.kind == "SwapSolo" for e in again)


@settings(max_examples=40, deadline=None)
@given(hst.integers(0, 10_000))
def test_improve_strictly_raises_potential(seed):
    res = layered_state(seed)
    if res is None:
        return
    inst, colors, p = res
    st = PartialState(inst, colors)
    steps = 0
    while True:
        before = brute_potential(st)
        ev = improve(st)
        if ev is None:
            break
        assert brute_potential(st) > before
        assert st.is_se()
        steps += 1
        assert steps <= inst.n * 9
