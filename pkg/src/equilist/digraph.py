"""Partial colorings and the auxiliary digraph H(f) on colors.

An arc ``alpha -> beta`` exists when some vertex of class ``alpha`` has
``beta`` in its list and no neighbor colored ``beta``; every such vertex is
a witness for the arc. A color is accessible when a light color (class
smaller than the threshold ``s``) is reachable from it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coloring import Instance, ceil_div, mod_star
from .errors import InvalidInstance, NotAccessible


class PartialState:
    """A proper list coloring of the induced subgraph on the colored vertices.

    ``color[v]`` is ``None`` for vertices outside the current subgraph. The
    threshold ``s`` defaults to ``ceil(count / r)``; the solver pins it while
    a new vertex is being inserted. Derived sets (H, light, accessible, ...)
    are cached and dropped on every reassignment.
    """

    def __init__(self, inst: Instance, colors: Sequence[int | None], s: int | None = None):
        if len(colors) != inst.n:
            raise InvalidInstance(f"coloring has {len(colors)} entries for {inst.n} vertices")
        self.inst = inst
        self.g = inst.g
        self.r = inst.r
        self.color: list[int | None] = list(colors)
        self.classes: dict[int, set[int]] = {c: set() for c in inst.palette}
        for v, c in enumerate(self.color):
            if c is None:
                continue
            if c not in self.classes:
                raise InvalidInstance(f"color {c} of vertex {v} is not in the palette")
            self.classes[c].add(v)
        self.count = sum(1 for c in self.color if c is not None)
        self._s = s
        self._cache: dict = {}

    # -- basic access -------------------------------------------------

    @property
    def s(self) -> int:
        return self._s if self._s is not None else ceil_div(self.count, self.r)

    def pin_threshold(self, s: int | None) -> None:
        self._s = s
        self._cache.clear()

    @property
    def palette(self) -> tuple[int, ...]:
        return self.inst.palette

    def size(self, c: int) -> int:
        return len(self.classes[c])

    def colored(self) -> list[int]:
        return [v for v, c in enumerate(self.color) if c is not None]

    def assign(self, v: int, c: int | None) -> None:
        """Raw reassignment; no legality check."""
        old = self.color[v]
        if old is not None:
            self.classes[old].discard(v)
            self.count -= 1
        if c is not None:
            self.classes[c].add(v)
            self.count += 1
        self.color[v] = c
        self._cache.clear()

    def copy(self) -> PartialState:
        other = PartialState.__new__(PartialState)
        other.inst = self.inst
        other.g = self.g
        other.r = self.r
        other.color = list(self.color)
        other.classes = {c: set(vs) for c, vs in self.classes.items()}
        other.count = self.count
        other._s = self._s
        other._cache = {}
        return other

    def load(self, other: PartialState) -> None:
        """Take over the coloring of ``other`` (same instance)."""
        self.color = list(other.color)
        self.classes = {c: set(vs) for c, vs in other.classes.items()}
        self.count = other.count
        self._s = other._s
        self._cache.clear()

    def nbrs_in(self, x: int, c: int) -> list[int]:
        """Neighbors of ``x`` currently colored ``c``."""
        return [u for u in self.g.nbrs[x] if self.color[u] == c]

    def count_in(self, x: int, vertices: Iterable[int]) -> int:
        vs = vertices if isinstance(vertices, (set, frozenset)) else set(vertices)
        return len(self.g.adj[x] & vs)

    def is_proper_at(self, v: int) -> bool:
        c = self.color[v]
        return c is None or (c in self.inst.list_sets[v] and all(self.color[u] != c for u in self.g.nbrs[v]))

    def sizes(self) -> dict[int, int]:
        return {c: len(vs) for c, vs in self.classes.items()}

    def is_se(self) -> bool:
        """SE condition for the colored subgraph with the current threshold."""
        if self.count == 0:
            return True
        cap = ceil_div(self.count, self.r)
        full = 0
        for vs in self.classes.values():
            k = len(vs)
            if k > cap:
                return False
            full += k == cap
        return full <= mod_star(self.count, self.r)

    # -- derived structure --------------------------------------------

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def H(self) -> AuxDigraph:
        return self._cached("H", lambda: build_H(self))

    @property
    def lambda0(self) -> frozenset[int]:
        s = self.s
        return self._cached("l0", lambda: frozenset(c for c, vs in self.classes.items() if len(vs) < s))

    @property
    def lam(self) -> frozenset[int]:
        return self._cached("lam", lambda: accessible_colors(self, self.H))

    @property
    def phi(self) -> frozenset[int]:
        return self._cached("phi", lambda: frozenset(self.palette) - self.lam)

    @property
    def b(self) -> int:
        return len(self.phi)

    @property
    def a(self) -> int:
        return self.r - self.b

    @property
    def A(self) -> frozenset[int]:
        return self._cached("A", lambda: frozenset(v for c in self.lam for v in self.classes[c]))

    @property
    def B(self) -> frozenset[int]:
        return self._cached("B", lambda: frozenset(v for c in self.phi for v in self.classes[c]))

    def full_accessible(self) -> list[int]:
        s = self.s
        return sorted(c for c in self.lam if len(self.classes[c]) == s)

    def __repr__(self) -> str:
        return f"PartialState(count={self.count}, s={self.s}, sizes={self.sizes()})"


@dataclass(frozen=True)
class AuxDigraph:
    nodes: tuple[int, ...]
    witnesses: dict  # (alpha, beta) -> tuple of vertices, sorted
    succ: dict  # alpha -> sorted tuple of beta
    pred: dict  # beta -> sorted tuple of alpha

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self.witnesses)

    def has_arc(self, a: int, b: int) -> bool:
        return (a, b) in self.witnesses


def is_movable(st: PartialState, x: int, beta: int) -> bool:
    """``beta`` is in L(x), differs from f(x), and x has no neighbor colored ``beta``."""
    if beta not in st.inst.list_sets[x] or st.color[x] == beta:
        return False
    color = st.color
    return all(color[u] != beta for u in st.g.nbrs[x])


def build_H(st: PartialState) -> AuxDigraph:
    wit: dict[tuple[int, int], list[int]] = {}
    color = st.color
    nbrs = st.g.nbrs
    lists = st.inst.lists
    for x, fx in enumerate(color):
        if fx is None:
            continue
        blocked = {color[u] for u in nbrs[x]}
        for beta in lists[x]:
            if beta != fx and beta not in blocked:
                wit.setdefault((fx, beta), []).append(x)
    witnesses = {k: tuple(v) for k, v in sorted(wit.items())}
    succ: dict[int, list[int]] = {c: [] for c in st.palette}
    pred: dict[int, list[int]] = {c: [] for c in st.palette}
    for a, b in witnesses:
        succ[a].append(b)
        pred[b].append(a)
    return AuxDigraph(
        tuple(st.palette),
        witnesses,
        {c: tuple(v) for c, v in succ.items()},
        {c: tuple(sorted(v)) for c, v in pred.items()},
    )


def accessible_colors(st: PartialState, H: AuxDigraph) -> frozenset[int]:
    """Colors with a (possibly trivial) directed path to a light color."""
    seen = set(st.lambda0)
    queue = deque(sorted(seen))
    while queue:
        b = queue.popleft()
        for a in H.pred[b]:
            if a not in seen:
                seen.add(a)
                queue.append(a)
    return frozenset(seen)


def forward_closure(H: AuxDigraph, theta: Iterable[int]) -> frozenset[int]:
    """All colors reachable from ``theta``, ``theta`` included."""
    seen = set(theta)
    stack = sorted(seen)
    while stack:
        a = stack.pop()
        for b in H.succ.get(a, ()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return frozenset(seen)


def shortest_path(
    H: AuxDigraph,
    sources: Iterable[int],
    targets: Iterable[int],
    allowed: Iterable[int] | None = None,
) -> list[int] | None:
    """BFS from the sorted sources; first target reached in BFS order.

    Returns the color sequence or ``None``. ``allowed`` restricts the
    intermediate and final nodes.
    """
    tgt = set(targets)
    ok = None if allowed is None else set(allowed)
    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for c in sorted(set(sources)):
        if ok is not None and c not in ok:
            continue
        parent[c] = None
        queue.append(c)
    while queue:
        a = queue.popleft()
        if a in tgt:
            path = [a]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for b in H.succ.get(a, ()):
            if b not in parent and (ok is None or b in ok):
                parent[b] = a
                queue.append(b)
    return None


def first_witnesses(H: AuxDigraph, path: Sequence[int]) -> list[int]:
    return [H.witnesses[(path[i], path[i + 1])][0] for i in range(len(path) - 1)]


def path_to_light(st: PartialState, H: AuxDigraph, gamma: int) -> tuple[list[int], list[int]]:
    """Shortest path from ``gamma`` to a light color, with its first-listed witnesses."""
    path = shortest_path(H, [gamma], st.lambda0)
    if path is None:
        raise NotAccessible(f"color {gamma} is not accessible")
    return path, first_witnesses(H, path)


def to_dot(st: PartialState, H: AuxDigraph | None = None) -> str:
    """Graphviz rendering of H; node labels are ``color (size/s)``."""
    H = H if H is not None else st.H
    s = st.s
    light = st.lambda0
    lines = ["digraph H {", "  node [shape=circle];"]
    for c in H.nodes:
        attrs = f'label="{c} ({st.size(c)}/{s})"'
        if c in light:
            attrs += ', style=filled, fillcolor="lightyellow", peripheries=2'
        lines.append(f"  {c} [{attrs}];")
    for (a, b), ws in H.witnesses.items():
        label = ",".join(str(w) for w in ws)
        lines.append(f'  {a} -> {b} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
