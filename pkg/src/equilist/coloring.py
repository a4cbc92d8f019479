"""List assignments, colorings and strongly-equitable verification."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidInstance
from .graph import Graph


def mod_star(n: int, r: int) -> int:
    """The unique ``i`` in ``1..r`` with ``n - i`` divisible by ``r``."""
    if r < 1:
        raise InvalidInstance(f"r must be positive, got {r}")
    return (n - 1) % r + 1


def ceil_div(n: int, r: int) -> int:
    return -(-n // r)


class Instance:
    """Graph, color budget ``r`` and one list of exactly ``r`` colors per vertex."""

    __slots__ = ("g", "r", "lists", "list_sets", "palette", "plain")

    def __init__(self, g: Graph, r: int, lists: Sequence[Sequence[int]]):
        if r < 1:
            raise InvalidInstance(f"r must be positive, got {r}")
        if len(lists) != g.n:
            raise InvalidInstance(f"{len(lists)} lists for {g.n} vertices")
        norm = []
        for v, lst in enumerate(lists):
            s = sorted(set(int(c) for c in lst))
            if len(s) != len(lst) or len(s) != r:
                raise InvalidInstance(f"list of vertex {v} must hold {r} distinct colors, got {list(lst)}")
            if s and s[0] < 0:
                raise InvalidInstance(f"negative color in list of vertex {v}")
            norm.append(tuple(s))
        self.g = g
        self.r = r
        self.lists = tuple(norm)
        self.list_sets = tuple(frozenset(s) for s in norm)
        self.palette = tuple(sorted(set().union(*self.list_sets))) if norm else ()
        self.plain = len(set(self.lists)) <= 1

    @classmethod
    def plain_lists(cls, g: Graph, palette: Sequence[int]) -> Instance:
        pal = sorted(palette)
        return cls(g, len(pal), [pal] * g.n)

    @property
    def n(self) -> int:
        return self.g.n

    def to_json(self) -> dict:
        out = self.g.to_json()
        out["r"] = self.r
        if self.plain and self.n > 0:
            out["lists"] = "plain"
            out["palette"] = list(self.lists[0])
        else:
            out["lists"] = [list(lst) for lst in self.lists]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Instance:
        g = Graph.from_json(data)
        try:
            r = int(data["r"])
            lists = data["lists"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInstance(f"bad instance JSON: {exc}") from exc
        if lists == "plain":
            palette = data.get("palette")
            if palette is None or len(palette) != r:
                raise InvalidInstance("plain lists need a palette of exactly r colors")
            lists = [palette] * g.n
        return cls(g, r, lists)


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        return Instance.from_json(json.load(fh))


def load_coloring(path: str) -> list:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "colors" not in data:
        raise InvalidInstance("coloring JSON must be an object with a 'colors' array")
    return list(data["colors"])


def _require_total(n: int, colors: Sequence) -> None:
    if len(colors) != n:
        raise InvalidInstance(f"coloring has {len(colors)} entries for {n} vertices")
    for v, c in enumerate(colors):
        if c is None:
            raise InvalidInstance(f"vertex {v} is uncolored")


def check_proper(g: Graph, colors: Sequence[int]) -> tuple[bool, tuple[int, int] | None]:
    """Return ``(True, None)`` or ``(False, smallest monochromatic edge)``."""
    _require_total(g.n, colors)
    for u in range(g.n):
        cu = colors[u]
        for v in g.nbrs[u]:
            if u < v and colors[v] == cu:
                return False, (u, v)
    return True, None


def check_lists(inst: Instance, colors: Sequence[int]) -> tuple[bool, int | None]:
    _require_total(inst.n, colors)
    for v, c in enumerate(colors):
        if c not in inst.list_sets[v]:
            return False, v
    return True, None


def class_sizes(inst: Instance, colors: Sequence[int]) -> dict[int, int]:
    """Size of every class over the palette, empty classes included."""
    sizes = dict.fromkeys(inst.palette, 0)
    sizes.update(Counter(c for c in colors if c is not None))
    return sizes


@dataclass
class SEReport:
    valid: bool
    kind: str  # "ok", "improper", "list", "overfull", "too_many_full"
    overfull: list[int] = field(default_factory=list)
    full_count: int = 0
    allowed_full: int = 0
    cap: int = 0
    edge: tuple[int, int] | None = None
    vertex: int | None = None

    def to_json(self) -> dict:
        out = {
            "valid": self.valid,
            "kind": self.kind,
            "overfull": self.overfull,
            "full_count": self.full_count,
            "allowed_full": self.allowed_full,
            "cap": self.cap,
        }
        if self.edge is not None:
            out["edge"] = list(self.edge)
        if self.vertex is not None:
            out["vertex"] = self.vertex
        return out


def check_SE(inst: Instance, colors: Sequence[int]) -> SEReport:
    """Check that ``colors`` is a strongly equitable L-coloring.

    Every class has at most ``ceil(n/r)`` vertices and at most
    ``n mod* r`` classes reach that size. Classes range over the whole
    palette.
    """
    n, r = inst.n, inst.r
    ok, edge = check_proper(inst.g, colors)
    if not ok:
        return SEReport(False, "improper", edge=edge)
    ok, v = check_lists(inst, colors)
    if not ok:
        return SEReport(False, "list", vertex=v)
    if n == 0:
        return SEReport(True, "ok")
    cap = ceil_div(n, r)
    allowed = mod_star(n, r)
    sizes = class_sizes(inst, colors)
    overfull = sorted(c for c, k in sizes.items() if k > cap)
    full = sum(1 for k in sizes.values() if k == cap)
    rep = SEReport(True, "ok", overfull=overfull, full_count=full, allowed_full=allowed, cap=cap)
    if overfull:
        rep.valid, rep.kind = False, "overfull"
    elif full > allowed:
        rep.valid, rep.kind = False, "too_many_full"
    return rep


def is_equitable_partition(inst: Instance, colors: Sequence[int]) -> bool:
    """Every class over the palette has size floor(n/r) or ceil(n/r).

    Only meaningful for plain lists, where SE implies it.
    """
    lo, hi = inst.n // inst.r, ceil_div(inst.n, inst.r)
    return all(lo <= k <= hi for k in class_sizes(inst, colors).values())
