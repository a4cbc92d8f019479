"""Hand-built graphs and partial colorings shared by the test modules."""

from __future__ import annotations

import collections
import random

from equilist.coloring import Instance
from equilist.graph import Graph


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k33() -> Graph:
    return Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def single_edge_instance() -> Instance:
    """Edge uv with lists {0,1,2}; colored u=0, v=1 in the tests."""
    return Instance.plain_lists(Graph.from_edges(2, [(0, 1)]), [0, 1, 2])


# Extreme configuration with r = 9 plain lists and s = 2 (17 colored vertices).
#   class 0: z0=0, a1=1 (full, accessible)   class 1: a2=2 (light)
#   useful classes 2, 3, 4: {3,4}, {5,6}, {7,8}, all solo neighbors of z0
#   class 5: y7=9 (solo, adjacent to every useful one), x5=10
#   class 6: u6=11 (adjacent to z0 and a1), x6=12
#   sink classes 7, 8: {13,14}, {15,16}, z0 has no neighbor there
#   p=17 is adjacent to a1 and a2
# The light class forces every B-vertex to see a2, so the degree bound is
# not respected; the fixture exercises the extension mechanics only.
EXTREME_COLORS = [0, 0, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, None]
EXTREME_P = 17


def extreme_edges(rotation: bool = False) -> list[tuple[int, int]]:
    z0, a1, a2 = 0, 1, 2
    useful = [3, 4, 5, 6, 7, 8]
    e = [(z0, y) for y in useful + [9, 11]] + [(z0, a2)]
    e += [(a2, y) for y in range(3, 17)]
    e += [(9, y) for y in useful]
    e += [(a1, y) for y in (10, 11, 12, 13, 14, 15, 16)]
    for t in (13, 14, 15, 16):
        e += [(t, y) for y in (3, 5, 7, 10, 12)]
    if rotation:
        # x6 cannot enter a useful class and p only fits class 6
        e += [(12, y) for y in (4, 6, 8)]
        e += [(EXTREME_P, y) for y in (a1, a2, 3, 5, 7, 10)]
    else:
        e += [(EXTREME_P, a1), (EXTREME_P, a2)]
    return sorted({(min(u, v), max(u, v)) for u, v in e})


def extreme_instance(rotation: bool = False) -> Instance:
    return Instance.plain_lists(Graph.from_edges(18, extreme_edges(rotation)), range(9))


def layered_state(seed: int, solo_free: bool = False):
    """Planar two-layer configuration with r = 9 plain lists.

    A-vertices alpha_i (class 0, full) and l_j (class 1, light) alternate on
    a path; every B-vertex subdivides one alpha-l pair, so no B-vertex can
    enter classes 0 or 1 and the seven other classes are inaccessible. The
    new vertex p sees alpha_0 and l_0. Returns ``(instance, colors, p)`` or
    ``None`` when the degree budget does not fit.
    """
    rng = random.Random(seed)
    s = rng.randint(9, 12)
    alphas = list(range(s))
    ls = list(range(s, 2 * s - 1))
    nxt = 2 * s - 1
    pairs = []
    for i in range(s - 1):
        pairs.append((alphas[i], ls[i]))
        pairs.append((ls[i], alphas[i + 1]))
    colors = {v: 0 for v in alphas}
    colors.update({v: 1 for v in ls})
    edges = []
    deg = collections.Counter()
    bcol = [c for c in range(2, 9) for _ in range(s)]
    if rng.random() < 0.5:
        rng.shuffle(bcol)
    else:
        chunks = [bcol[i:i + 2] for i in range(0, len(bcol), 2)]
        rng.shuffle(chunks)
        bcol = [c for ch in chunks for c in ch]
    for i, a in enumerate(alphas):
        pr = (a, ls[i]) if i < s - 1 else (ls[s - 2], a)
        if solo_free or rng.random() < 0.9:
            edges.append(pr)
            deg[pr[0]] += 1
            deg[pr[1]] += 1
    deg[alphas[0]] += 1
    deg[ls[0]] += 1
    groups = collections.defaultdict(list)
    total = 7 * s
    k = 0
    order = pairs[:]
    rng.shuffle(order)
    for pr in order:
        take = min(9 - deg[pr[0]], 9 - deg[pr[1]], total - k)
        take = max(0, take - (1 if rng.random() < 0.3 else 0))
        for _ in range(take):
            y = nxt
            nxt += 1
            colors[y] = bcol[k]
            k += 1
            edges += [(pr[0], y), (pr[1], y)]
            deg[pr[0]] += 1
            deg[pr[1]] += 1
            groups[pr].append(y)
    if k < total:
        return None
    for ys in groups.values():
        for y1, y2 in zip(ys, ys[1:]):
            if rng.random() < 0.3 and colors[y1] != colors[y2]:
                edges.append((y1, y2))
    p = nxt
    edges += [(alphas[0], p), (ls[0], p)]
    g = Graph.from_edges(p + 1, edges)
    if g.max_degree() > 9:
        return None
    return Instance.plain_lists(g, range(9)), [colors.get(v) for v in range(g.n)], p


def layered_states(count: int, start: int = 0):
    out = []
    seed = start
    while len(out) < count:
        res = layered_state(seed)
        if res is not None:
            out.append((seed,) + res)
        seed += 1
    return out


def brute_potential(st) -> tuple[int, int, int]:
    """Potential key recomputed straight from the arc definition."""

    def movable(x, b):
        return b in st.inst.list_sets[x] and b != st.color[x] and not any(st.color[u] == b for u in st.g.nbrs[x])

    sizes = {c: sum(1 for v in range(st.g.n) if st.color[v] == c) for c in st.palette}
    lam = {c for c in st.palette if sizes[c] < st.s}
    grew = True
    while grew:
        grew = False
        for v in range(st.g.n):
            a = st.color[v]
            if a is not None and a not in lam and any(movable(v, b) for b in lam):
                lam.add(a)
                grew = True
    a_size = sum(1 for v in range(st.g.n) if st.color[v] in lam)
    return (a_size, sum(1 for c in lam if sizes[c]), -sum(1 for c in lam if sizes[c] == st.s))


# acceptance lines collected during the run, echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}
