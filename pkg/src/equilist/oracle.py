"""Exhaustive SE list-coloring search for small instances."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Instance, ceil_div, mod_star

DEFAULT_BUDGET = 2_000_000


@dataclass
class OracleResult:
    outcome: str  # "Found", "NoneExists", "BudgetExceeded"
    coloring: list[int] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome == "Found"

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome, "nodes": self.nodes}
        if self.coloring is not None:
            out["colors"] = self.coloring
        return out


def oracle_se_color(inst: Instance, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Backtracking over vertices in degree-descending order (ties by id).

    A vertex may only join a class below ``ceil(n/r)``, and a class may only
    reach that size while fewer than ``n mod* r`` classes have. Unused
    colors contained in exactly the same lists are interchangeable, so only
    the smallest of each such group is tried.
    """
    g, n, r = inst.g, inst.n, inst.r
    if n == 0:
        return OracleResult("Found", [], 0)
    cap = ceil_div(n, r)
    allowed = mod_star(n, r)
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    pattern = {c: frozenset(v for v in range(n) if c in inst.list_sets[v]) for c in inst.palette}
    size = dict.fromkeys(inst.palette, 0)
    color: list[int | None] = [None] * n
    full = 0
    nodes = 0

    def rec(i: int) -> bool | None:
        nonlocal full, nodes
        if i == n:
            return True
        v = order[i]
        used_patterns = set()
        for c in inst.lists[v]:
            k = size[c]
            if k >= cap or (k == cap - 1 and full >= allowed):
                continue
            if k == 0:
                if pattern[c] in used_patterns:
                    continue
                used_patterns.add(pattern[c])
            if any(color[u] == c for u in g.nbrs[v]):
                continue
            nodes += 1
            if nodes > budget:
                return None
            color[v] = c
            size[c] = k + 1
            full += k + 1 == cap
            res = rec(i + 1)
            if res is not False:
                return res
            full -= k + 1 == cap
            size[c] = k
            color[v] = None
        return False

    res = rec(0)
    if res is None:
        return OracleResult("BudgetExceeded", None, nodes)
    if res:
        return OracleResult("Found", [int(c) for c in color], nodes)
    return OracleResult("NoneExists", None, nodes)
