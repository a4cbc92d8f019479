"""Simple undirected graphs, cut counting and class-B membership.

Class B is the family of graphs in which every pair of disjoint vertex
sets X, Y with |X ∪ Y| >= 3 spans at most 2|X ∪ Y| - 4 edges between
them. Every planar graph belongs to it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInstance

DEFAULT_B_BUDGET = 16


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is a frozenset, ``nbrs[v]`` the same neighbors as a sorted
    tuple so that every iteration order is deterministic.
    """

    __slots__ = ("n", "adj", "nbrs", "_m")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        if n < 0:
            raise InvalidInstance(f"negative vertex count {n}")
        if len(adj) != n:
            raise InvalidInstance(f"adjacency has {len(adj)} rows for n={n}")
        frozen = tuple(frozenset(a) for a in adj)
        for v, a in enumerate(frozen):
            if v in a:
                raise InvalidInstance(f"self-loop at {v}")
            for u in a:
                if not 0 <= u < n:
                    raise InvalidInstance(f"neighbor {u} of {v} out of range")
                if v not in frozen[u]:
                    raise InvalidInstance(f"asymmetric adjacency {v}-{u}")
        self.n = n
        self.adj = frozen
        self.nbrs = tuple(tuple(sorted(a)) for a in frozen)
        self._m = sum(len(a) for a in frozen) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidInstance(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstance(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @property
    def m(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            n = int(data["n"])
            edges = data["edges"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInstance(f"bad graph JSON: {exc}") from exc
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise InvalidInstance(f"edge {e!r} is not a pair")
            key = (min(e), max(e))
            if key in seen:
                raise InvalidInstance(f"duplicate edge {key}")
            seen.add(key)
        return cls.from_edges(n, edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def min_degree_vertex(g: Graph) -> int:
    """Smallest-id vertex of minimum degree."""
    if g.n == 0:
        raise InvalidInstance("empty graph has no minimum-degree vertex")
    return min(range(g.n), key=lambda v: (len(g.adj[v]), v))


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``V - v``.

    Returns the new graph and ``mapping`` with ``mapping[old] = new`` (``-1``
    for the deleted vertex). Remaining ids keep their relative order.
    """
    if not 0 <= v < g.n:
        raise InvalidInstance(f"vertex {v} out of range for n={g.n}")
    mapping = [i if i < v else i - 1 for i in range(g.n)]
    mapping[v] = -1
    adj = [
        [mapping[u] for u in g.nbrs[x] if u != v]
        for x in range(g.n)
        if x != v
    ]
    return Graph(g.n - 1, adj), mapping


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices``; returns it with the sorted old ids."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    adj = [[index[u] for u in g.nbrs[v] if u in index] for v in keep]
    return Graph(len(keep), adj), keep


def cut_edges(g: Graph, X: Iterable[int], Y: Iterable[int]) -> int:
    """Number of edges with one end in X and the other in Y."""
    xs, ys = set(X), set(Y)
    if xs & ys:
        raise InvalidInstance(f"X and Y overlap on {sorted(xs & ys)}")
    if len(xs) > len(ys):
        xs, ys = ys, xs
    return sum(len(g.adj[x] & ys) for x in xs)


@dataclass(frozen=True)
class BMembership:
    """Outcome of a class-B check.

    ``verdict`` is ``"InB"``, ``"NotInB"`` or ``"Unknown"``. A NotInB verdict
    carries disjoint vertex sets ``X``, ``Y`` whose cut exceeds the bound.
    """

    verdict: str
    certificate: str | None = None
    X: tuple[int, ...] = ()
    Y: tuple[int, ...] = ()
    cut: int = 0
    bound: int = 0
    reason: str | None = None

    @property
    def in_b(self) -> bool:
        return self.verdict == "InB"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.verdict == "InB":
            out["certificate"] = self.certificate
        elif self.verdict == "NotInB":
            out.update(X=list(self.X), Y=list(self.Y), cut=self.cut, bound=self.bound)
        else:
            out["reason"] = self.reason
        return out


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def verify_class_B(g: Graph, budget: int = DEFAULT_B_BUDGET, certificate: str | None = None) -> BMembership:
    """Exact class-B check for graphs with at most ``budget`` vertices.

    For a fixed X the best Y is chosen greedily: with ``c(u) = |N(u) ∩ X|``
    the slack of the bound is ``sum_{u in Y} (c(u) - 2) - (2|X| - 4)``, so Y
    takes every u with ``c(u) > 2`` and, when ``|X ∪ Y| < 3``, the largest
    remaining values. Enumerating all X therefore covers all 3^n
    assignments in ``O(2^n n)`` work.

    A construction certificate short-circuits the enumeration.
    """
    if certificate is not None:
        return BMembership("InB", certificate=certificate)
    n = g.n
    if n > budget:
        return BMembership("Unknown", reason=f"n={n} exceeds budget {budget}")
    if n < 3 or g.m == 0:
        return BMembership("InB", certificate="exhaustive")

    masks = _masks(g)
    X = np.arange(1 << n, dtype=np.uint64)
    size_x = np.bitwise_count(X).astype(np.int64)
    neg = np.int64(-(1 << 20))
    vals = np.empty((X.size, n), dtype=np.int64)
    for u in range(n):
        c = np.bitwise_count(X & np.uint64(masks[u])).astype(np.int64) - 2
        in_x = (X >> np.uint64(u)) & np.uint64(1)
        vals[:, u] = np.where(in_x == 1, neg, c)
    pos = np.where(vals > 0, vals, 0)
    gain = pos.sum(axis=1)
    npos = (vals > 0).sum(axis=1)
    deficit = np.clip(3 - size_x - npos, 0, None)
    if deficit.any():
        srt = -np.sort(-np.where(vals > 0, neg, vals), axis=1)
        for k in (1, 2, 3):
            rows = deficit >= k
            col = srt[:, k - 1]
            gain = np.where(rows, gain + np.where(col == neg, neg, col), gain)
    bound = 2 * size_x - 4
    bad = (gain > bound) & (size_x > 0) & (gain > neg // 2)
    if not bad.any():
        return BMembership("InB", certificate="exhaustive")

    xmask = int(np.flatnonzero(bad)[0])
    xs = [v for v in range(n) if xmask >> v & 1]
    row = vals[xmask]
    ys = [u for u in range(n) if row[u] > 0]
    need = 3 - len(xs) - len(ys)
    if need > 0:
        rest = sorted((u for u in range(n) if row[u] != neg and row[u] <= 0), key=lambda u: (-row[u], u))
        ys.extend(rest[:need])
    ys.sort()
    cut = cut_edges(g, xs, ys)
    return BMembership(
        "NotInB", X=tuple(xs), Y=tuple(ys), cut=cut, bound=2 * (len(xs) + len(ys)) - 4
    )


def contains_K33(g: Graph) -> tuple[tuple[int, int, int], tuple[int, int, int]] | None:
    """Find a (not necessarily induced) K_{3,3} subgraph.

    Scans triples a < b < c and returns the first whose common
    neighborhood has at least three vertices.
    """
    masks = _masks(g)
    for a in range(g.n):
        if len(g.adj[a]) < 3:
            continue
        # b, c must share >= 3 neighbors with a, so they sit at distance 2
        second = sorted({w for u in g.adj[a] for w in g.adj[u] if w > a})
        for i, b in enumerate(second):
            ab = masks[a] & masks[b]
            if ab.bit_count() < 3:
                continue
            for c in second[i + 1:]:
                abc = ab & masks[c]
                if abc.bit_count() >= 3:
                    side = [v for v in range(g.n) if abc >> v & 1][:3]
                    return (a, b, c), tuple(side)
    return None


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in g.nbrs[v]:
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        return Graph.from_json(json.load(fh))
