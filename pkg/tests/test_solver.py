from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as hst

from builders import (
    EXTREME_COLORS,
    EXTREME_P,
    extreme_instance,
    layered_states,
    star,
)
from equilist.coloring import Instance, check_SE, class_sizes
from equilist.digraph import PartialState
from equilist.engine import replay
from equilist.errors import (
    HypothesisViolated,
    InternalInvariantViolation,
    InvalidInstance,
    UnsupportedParameter,
)
from equilist.generators import gen_lists, gen_stacked_planar
from equilist.graph import Graph
from equilist.solver import (
    ExtremeWitness,
    SolveContext,
    elimination_order,
    extreme_extend,
    finisher_cases,
    find_solo,
    se_color,
    solve,
    solve_from,
    total_weight,
    weight,
)


def extreme_state(rotation=False):
    return PartialState(extreme_instance(rotation), EXTREME_COLORS)


def test_trivial_graphs():
    assert se_color(Instance.plain_lists(Graph(0, []), range(9))) == []
    one = Instance.plain_lists(Graph(1, [[]]), range(9))
    assert se_color(one) in [[c] for c in range(9)]


def test_star_gets_distinct_colors():
    inst = Instance.plain_lists(star(6), range(9))
    colors = se_color(inst)
    assert check_SE(inst, colors).valid
    assert max(class_sizes(inst, colors).values()) == 1


def test_random_lists_on_planar_graph():
    g, _ = gen_stacked_planar(40, seed=11, max_degree=10)
    inst = Instance(g, 10, gen_lists(40, 10, 20, seed=11))
    res = solve(inst)
    assert check_SE(inst, res.colors).valid
    assert sorted(res.order) == list(range(40))
    assert res.stats.insertions == 40
    assert replay(inst, res.trace) == res.colors


def test_parameter_checks():
    g, _ = gen_stacked_planar(10, seed=0)
    with pytest.raises(UnsupportedParameter):
        se_color(Instance.plain_lists(g, range(8)))
    with pytest.raises(HypothesisViolated):
        se_color(Instance.plain_lists(star(10), range(9)))


def test_elimination_order_takes_minimum_degree():
    g, _ = gen_stacked_planar(25, seed=4)
    order = elimination_order(Instance.plain_lists(g, range(9)))
    assert sorted(order) == list(range(25))
    alive = set(range(25))
    for v in order:
        deg = {u: sum(1 for w in g.nbrs[u] if w in alive) for u in alive}
        assert deg[v] == min(deg.values())
        assert v == min(u for u in alive if deg[u] == deg[v])
        alive.remove(v)


def test_weights_on_extreme_fixture():
    st = extreme_state()
    assert st.lam == {0, 1} and st.phi == set(range(2, 9))
    ones = {c: Fraction(1) for c in st.phi}
    assert weight(st, ones, 0, 3) == 1  # z0 alone blocks 3 from class 0
    assert weight(st, ones, 0, 11) == Fraction(1, 2)  # 11 also sees a1
    assert weight(st, ones, 0, 13) == 0  # not adjacent
    assert total_weight(st, ones, 0) == Fraction(15, 2)
    assert total_weight(st, ones, 1) == Fraction(13, 2)
    halves = {c: Fraction(1, 2) for c in st.phi}
    assert total_weight(st, halves, 0) == Fraction(15, 4)


def test_find_solo_on_extreme_fixture():
    st = extreme_state()
    ones = {c: Fraction(1) for c in st.phi}
    sa = find_solo(st, ones, Fraction(0), SolveContext())
    assert sa.z == 0
    assert sa.S == [3, 4, 5, 6, 7, 8, 9]
    assert sa.S_star == [3, 4, 5, 6, 7, 8]
    assert sa.Psi == [7, 8] and sa.Theta == {7, 8}


def test_extreme_fixture_extension():
    st = extreme_state()
    ctx = SolveContext()
    ew = finisher_cases(st, EXTREME_P, ctx)
    assert isinstance(ew, ExtremeWitness)
    assert ew.z0 == 0 and ew.Theta0 == {7, 8}
    assert ew.Upsilon == {2, 3, 4} and ew.UpsilonPrime == {5, 6}
    assert extreme_extend(st, ew, EXTREME_P, ctx) is True
    assert all(c is not None for c in st.color)
    assert check_SE(st.inst, st.color).valid
    kinds = [e.kind for e in ctx.tracer.events]
    assert kinds[0] == "InsertVertex" and "SwapSolo" in kinds


def test_extreme_fixture_rotation():
    st = extreme_state(rotation=True)
    ctx = SolveContext()
    ew = finisher_cases(st, EXTREME_P, ctx)
    before = st.copy()
    ev = extreme_extend(st, ew, EXTREME_P, ctx)
    assert ev.payload["rule"] == "extreme-rotate"
    assert ev.payload["potential_after"] > ev.payload["potential_before"]
    assert st.color[EXTREME_P] is None and st.is_se()
    moved = [v for v in range(st.g.n) if st.color[v] != before.color[v]]
    assert sorted(moved) == sorted(m[0] for m in ev.payload["moves"])


def test_finisher_rejects_bad_entry():
    inst = Instance.plain_lists(Graph.from_edges(3, [(0, 1)]), range(3))
    st = PartialState(inst, [0, 1, None])
    with pytest.raises(InternalInvariantViolation) as info:
        finisher_cases(st, 2, SolveContext())
    assert info.value.check == "p-movable"
    assert info.value.state.color == [0, 1, None]


@pytest.mark.parametrize("seed,inst,colors,p", layered_states(12))
def test_insertion_into_layered_states(seed, inst, colors, p):
    out, stats, trace = solve_from(inst, colors, p)
    assert check_SE(inst, out).valid
    assert stats.improvements >= 1
    assert set(stats.rules) <= {"solo-to-A", "useful", "sstar-reach", "free-i", "free-ii"}


def test_solve_from_rejects_colored_vertex():
    inst, colors, p = layered_states(1)[0][1:]
    with pytest.raises(InvalidInstance):
        solve_from(inst, colors, 0)


@settings(max_examples=30, deadline=None)
@given(hst.integers(1, 45), hst.integers(9, 12), hst.integers(0, 8), hst.integers(0, 10_000))
def test_solver_output_is_se(n, r, extra, seed):
    if n < 3:
        g = Graph(n, [[]] * n)
    else:
        try:
            g, _ = gen_stacked_planar(n, seed=seed, max_degree=r)
        except InvalidInstance:
            assume(False)  # the degree cap closed every face
    inst = Instance(g, r, gen_lists(n, r, r + extra, seed=seed))
    colors = se_color(inst)
    assert check_SE(inst, colors).valid
