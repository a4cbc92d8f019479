"""Inductive strongly-equitable list coloring for graphs of class B.

Vertices are removed in minimum-degree order and re-inserted one at a time.
Each insertion either places the new vertex directly (moving it into an
accessible class and shifting witnesses toward a light class), or improves
the current coloring of the smaller graph with a cataloged move, or, when
no move applies, runs the solo-vertex analysis which ends in an explicit
extension or one more improvement.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coloring import Instance, check_SE
from .digraph import (
    PartialState,
    first_witnesses,
    forward_closure,
    is_movable,
    path_to_light,
    shortest_path,
)
from .engine import (
    Tracer,
    TraceEvent,
    attempt,
    improve,
    insert_vertex,
    shift_witnesses,
    solo_neighbors,
    useful_neighbors,
)
from .errors import (
    HypothesisViolated,
    InternalInvariantViolation,
    InvalidInstance,
    NotAccessible,
    UnsupportedParameter,
)

log = logging.getLogger(__name__)

MIN_COLORS = 9
HALF = Fraction(1, 2)


@dataclass
class SolveStats:
    insertions: int = 0
    direct: int = 0
    divisible: int = 0
    improvements: int = 0
    finisher_calls: int = 0
    extreme_extensions: int = 0
    improvements_per_insertion: list[int] = field(default_factory=list)
    rules: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "insertions": self.insertions,
            "direct": self.direct,
            "divisible": self.divisible,
            "improvements": self.improvements,
            "finisher_calls": self.finisher_calls,
            "extreme_extensions": self.extreme_extensions,
            "max_improvements_per_insertion": max(self.improvements_per_insertion, default=0),
            "rules": dict(sorted(self.rules.items())),
        }


@dataclass
class SolveResult:
    colors: list[int]
    order: list[int]  # insertion order
    stats: SolveStats
    trace: list[TraceEvent]


@dataclass
class SoloAnalysis:
    z: int
    S: list[int]
    S_star: list[int]
    mu: dict
    w_z: Fraction
    Psi: list[int]
    Theta: frozenset[int]


@dataclass
class ExtremeWitness:
    z0: int
    Theta0: frozenset[int]
    Upsilon: frozenset[int]
    UpsilonPrime: frozenset[int]
    S_star: list[int]


class SolveContext:
    """Per-solve bookkeeping shared by the extension steps."""

    def __init__(self, tracer: Tracer | None = None, stats: SolveStats | None = None):
        self.tracer = tracer if tracer is not None else Tracer()
        self.stats = stats if stats is not None else SolveStats()

    def fail(self, st: PartialState, check: str, message: str) -> InternalInvariantViolation:
        return InternalInvariantViolation(
            f"[{check}] {message}", state=st.copy(), trace=self.tracer.events, check=check
        )


def elimination_order(inst: Instance) -> list[int]:
    """Vertices in removal order: always a minimum-degree vertex of what is
    left, smallest id on ties."""
    g = inst.g
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        alive[v] = False
        order.append(v)
        for u in g.nbrs[v]:
            if alive[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def check_hypotheses(inst: Instance) -> None:
    if inst.r < MIN_COLORS:
        raise UnsupportedParameter(f"r={inst.r} is below {MIN_COLORS}; use the exhaustive oracle")
    delta = inst.g.max_degree()
    if delta > inst.r:
        raise HypothesisViolated(f"maximum degree {delta} exceeds r={inst.r}")


def solve(inst: Instance, record_trace: bool = True) -> SolveResult:
    """SE L-coloring of ``inst`` with statistics and (optionally) the full trace."""
    check_hypotheses(inst)
    tracer = Tracer(record=record_trace)
    stats = SolveStats()
    ctx = SolveContext(tracer, stats)
    st = PartialState(inst, [None] * inst.n)
    order = elimination_order(inst)[::-1]
    for p in order:
        extend(st, p, ctx)
    colors = list(st.color)
    rep = check_SE(inst, colors)
    if not rep.valid:
        raise ctx.fail(st, "final-se", f"final coloring is not SE ({rep.kind})")
    return SolveResult(colors, order, stats, tracer.events)


def se_color(inst: Instance) -> list[int]:
    """Strongly equitable L-coloring; requires r >= max(9, max degree)."""
    return solve(inst, record_trace=False).colors


# -- one insertion ------------------------------------------------------


def extend(st: PartialState, p: int, ctx: SolveContext) -> None:
    """Color ``p`` given an SE coloring ``st`` of the colored subgraph."""
    inst = st.inst
    stats = ctx.stats
    stats.insertions += 1
    if st.count % inst.r == 0:
        # every class of the smaller graph is full or empty: any free color works
        free = [c for c in inst.lists[p] if not st.nbrs_in(p, c)]
        if not free:
            raise ctx.fail(st, "free-color", f"vertex {p} sees every color of its list")
        insert_vertex(st, p, free[0], ctx.tracer)
        stats.divisible += 1
        stats.improvements_per_insertion.append(0)
        return

    limit = inst.n * inst.r
    steps = 0
    while True:
        if _direct_insert(st, p, ctx):
            break
        ev = improve(st, ctx.tracer)
        if ev is None:
            stats.finisher_calls += 1
            ev = _finish(st, p, ctx)
            if ev is True:
                break
        steps += 1
        stats.improvements += 1
        rule = ev.payload.get("rule", "?") if isinstance(ev, TraceEvent) else "?"
        stats.rules[rule] = stats.rules.get(rule, 0) + 1
        if steps > limit:
            raise ctx.fail(st, "step-cap", f"more than {limit} improvements while inserting {p}")
    stats.improvements_per_insertion.append(steps)
    if not st.is_se():
        raise ctx.fail(st, "extend-se", f"coloring after inserting {p} is not SE")


def _direct_insert(st: PartialState, p: int, ctx: SolveContext) -> bool:
    lists = st.inst.lists[p]
    s = st.s
    # cheap case: a light class p can join
    for c in lists:
        if st.size(c) < s and not st.nbrs_in(p, c):
            insert_vertex(st, p, c, ctx.tracer)
            ctx.stats.direct += 1
            return True
    lam = st.lam
    for c in lists:
        if c in lam and not st.nbrs_in(p, c):
            path, wits = path_to_light(st, st.H, c)
            shift_witnesses(st, path, wits, ctx.tracer)
            insert_vertex(st, p, c, ctx.tracer)
            ctx.stats.direct += 1
            return True
    return False


def _finish(st: PartialState, p: int, ctx: SolveContext):
    res = finisher_cases(st, p, ctx)
    if isinstance(res, ExtremeWitness):
        ctx.stats.extreme_extensions += 1
        return extreme_extend(st, res, p, ctx)
    return res


# -- weights and solo vertices -----------------------------------------


def weight(st: PartialState, mu: dict, x: int, y: int) -> Fraction:
    """``mu(f(y)) / |N(y) ∩ class of x|`` when x blocks y, else 0."""
    fx = st.color[x]
    if fx not in st.inst.list_sets[y] or y not in st.g.adj[x]:
        return Fraction(0)
    k = len(st.nbrs_in(y, fx))
    return Fraction(mu[st.color[y]]) / k


def total_weight(st: PartialState, mu: dict, x: int) -> Fraction:
    B = st.B
    return sum((weight(st, mu, x, y) for y in st.g.nbrs[x] if y in B), Fraction(0))


def _check_solo_facts(st: PartialState, z: int, ctx: SolveContext) -> None:
    """A solo vertex cannot move into an accessible class and its neighbor
    counts into A and B are bounded by its list."""
    L = st.inst.list_sets[z]
    lam, phi = st.lam, st.phi
    for c in lam:
        if is_movable(st, z, c):
            raise ctx.fail(st, "solo-movable", f"solo vertex {z} is movable to accessible class {c}")
    zA = st.count_in(z, st.A)
    zB = st.count_in(z, st.B)
    if zA < len(L & lam) - 1:
        raise ctx.fail(st, "solo-A", f"solo vertex {z} has only {zA} neighbors in A")
    if zB > len(L & phi) + 1:
        raise ctx.fail(st, "solo-B", f"solo vertex {z} has {zB} neighbors in B")


def find_solo(st: PartialState, mu: dict, g: Fraction, ctx: SolveContext) -> SoloAnalysis:
    """Maximum-weight vertex of A (inside the full accessible class if there
    is one) together with its solo neighbors and reachable B-colors."""
    b = st.b
    mu_total = sum((Fraction(v) for v in mu.values()), Fraction(0))
    if mu_total < b - g:
        raise ctx.fail(st, "mu-total", f"weights sum to {mu_total} < {b - g}")
    full = st.full_accessible()
    if len(full) > 1:
        raise ctx.fail(st, "one-full", f"{len(full)} full accessible classes")
    pool = sorted(st.classes[full[0]]) if full else sorted(st.A)
    if not pool:
        raise ctx.fail(st, "empty-A", "no accessible vertex")
    best = max(pool, key=lambda x: (total_weight(st, mu, x), -x))
    w = total_weight(st, mu, best)
    if w <= mu_total:
        raise ctx.fail(st, "weight", f"max weight {w} does not exceed {mu_total}")
    z = best
    S = solo_neighbors(st, z)
    if not S:
        raise ctx.fail(st, "solo", f"vertex {z} has no solo neighbor")
    _check_solo_facts(st, z, ctx)
    phi = st.phi
    zB = st.count_in(z, st.B)
    L = st.inst.list_sets[z]
    if g == 0:
        if len(S) < b:
            raise ctx.fail(st, "solo-count", f"|S_z|={len(S)} < b={b}")
        if zB != b + 1:
            raise ctx.fail(st, "solo-degree", f"|N(z) ∩ B|={zB} != b+1={b + 1}")
        if not phi <= L:
            raise ctx.fail(st, "solo-list", f"B-colors {sorted(phi - L)} missing from L({z})")
    else:
        theta = {c for c, v in mu.items() if Fraction(v) == 1}
        k = sum(1 for y in S if st.color[y] in theta)
        if k + zB < 2 * b or not (b - 1 <= k <= zB <= b + 1):
            raise ctx.fail(st, "solo-half", f"k={k}, |N(z) ∩ B|={zB}, b={b}")
    S_star = useful_neighbors(st, S)
    if len(S) >= 5 and len(S_star) < len(S) - 1:
        raise ctx.fail(st, "useful", f"|S*|={len(S_star)} < |S|-1={len(S) - 1}")
    psi = [c for c in sorted(phi) if is_movable(st, z, c)]
    theta_set = forward_closure(st.H, psi)
    return SoloAnalysis(z, S, S_star, dict(mu), w, psi, theta_set)


# -- analysis when p cannot be placed directly -------------------------


def _check_entry(st: PartialState, p: int, ctx: SolveContext) -> None:
    r, s = st.r, st.s
    lam, phi = st.lam, st.phi
    a, b = st.a, st.b
    for c in lam:
        if is_movable(st, p, c):
            raise ctx.fail(st, "p-movable", f"vertex {p} is movable to accessible class {c}")
    if a > 2 or b < r - 2:
        raise ctx.fail(st, "sink-size", f"a={a}, b={b} for r={r}")
    if a > st.g.degree(p):
        raise ctx.fail(st, "a-degree", f"a={a} exceeds the degree of {p}")
    for c in phi:
        if st.size(c) != s:
            raise ctx.fail(st, "b-full", f"B-class {c} has size {st.size(c)} != {s}")
    nA = len(st.A)
    if not (a - 1) * s <= nA <= a * s - 1:
        raise ctx.fail(st, "a-size", f"|A|={nA} for a={a}, s={s}")
    for y in list(st.B) + [p]:
        if len(st.inst.list_sets[y] & lam) < a:
            raise ctx.fail(st, "list-lambda", f"list of {y} meets the accessible colors in fewer than {a}")


def finisher_cases(st: PartialState, p: int, ctx: SolveContext):
    """Return an :class:`ExtremeWitness`, or the event of an improving move."""
    _check_entry(st, p, ctx)
    r, b = st.r, st.b
    phi = st.phi
    ones = {c: Fraction(1) for c in phi}
    sa = find_solo(st, ones, Fraction(0), ctx)
    theta = sa.Theta
    if len(theta) <= 2:
        z0, theta0 = sa.z, theta
    elif len(theta) >= r - 2:
        if any(st.color[y] in theta for y in sa.S_star):
            raise ctx.fail(st, "useful-reach", "a useful solo neighbor lies in a class reachable from z")
        if len(theta) != r - 2 or b != r - 1 or st.a != 1:
            raise ctx.fail(st, "large-sink", f"|Theta|={len(theta)}, b={b}, a={st.a}")
        (gamma0,) = sorted(phi - theta)
        mu = {c: (Fraction(1) if c in theta else HALF) for c in phi}
        sb = find_solo(st, mu, HALF, ctx)
        if gamma0 in sb.Psi:
            return _large_sink_move(st, sa, sb, gamma0, ctx)
        z1 = sb.z
        L1 = st.inst.list_sets[z1]
        nb = [y for y in st.g.nbrs[z1] if y in st.B]
        if gamma0 not in L1:
            if any(st.color[y] not in theta for y in nb) or (L1 & phi) != theta:
                raise ctx.fail(st, "list-cover", f"vertex {z1} violates the restricted list condition")
        elif len(nb) != b + 1 or not phi <= L1:
            raise ctx.fail(st, "list-cover", f"vertex {z1} violates the full list condition")
        z0, theta0 = z1, sb.Theta
    else:
        raise ctx.fail(st, "sink-size", f"closure of size {len(theta)} for r={r}")
    return _extreme_witness(st, z0, theta0, ctx)


def _extreme_witness(st: PartialState, z0: int, theta0: frozenset[int], ctx: SolveContext) -> ExtremeWitness:
    phi, B = st.phi, st.B
    color = st.color
    L0 = st.inst.list_sets[z0]
    S = solo_neighbors(st, z0)
    S_star = useful_neighbors(st, S)
    if len(theta0) > 2:
        raise ctx.fail(st, "theta0", f"|Theta0|={len(theta0)}")
    if len(S) < 7:
        raise ctx.fail(st, "solo-seven", f"|S_z0|={len(S)} < 7")
    for c in phi:
        if is_movable(st, z0, c) and c not in theta0:
            raise ctx.fail(st, "theta0-moves", f"{z0} is movable to {c} outside Theta0")
    nb = [y for y in st.g.nbrs[z0] if y in B]
    ups = frozenset(color[y] for y in S_star)
    ups_p = frozenset(color[y] for y in nb) - ups
    if ups & theta0:
        raise ctx.fail(st, "ups-theta", "a useful class lies in Theta0")
    if any(color[y] not in L0 for y in nb):
        raise ctx.fail(st, "E0", f"a B-neighbor of {z0} has a color outside L({z0})")
    if len(theta0) != 2 or len(ups) != 3 or len(S) != 7:
        raise ctx.fail(st, "equality", f"|Theta0|={len(theta0)}, |Upsilon|={len(ups)}, |S_z0|={len(S)}")
    for u in ups:
        if sum(1 for y in S_star if color[y] == u) != 2:
            raise ctx.fail(st, "E2", f"class {u} does not hold exactly two useful neighbors")
    for y in nb:
        if y not in S_star and color[y] not in theta0 and color[y] not in ups_p:
            raise ctx.fail(st, "E3", f"neighbor {y} is outside the allowed classes")
    for c in ups_p:
        if len(st.nbrs_in(z0, c)) > 1:
            raise ctx.fail(st, "E3", f"{z0} has several neighbors in class {c}")
    allowed = phi - theta0
    for c in sorted(allowed):
        if shortest_path(st.H, [c], ups, allowed=allowed) is None:
            raise ctx.fail(st, "E1", f"no useful class reachable from {c}")
    return ExtremeWitness(z0, theta0, ups, ups_p, S_star)


def _large_sink_move(st: PartialState, sa: SoloAnalysis, sb: SoloAnalysis, gamma0: int, ctx: SolveContext):
    """z' joins the last B-class, a useful neighbor y' of z' takes its place,
    z moves into the sink along a path to the class of y', and a useful
    neighbor of z takes z's place."""
    adj = st.g.adj
    z, z1 = sa.z, sb.z
    theta = sa.Theta
    cands = [y for y in sb.S_star if st.color[y] in theta]
    for y1 in cands:
        free = [y for y in sa.S_star if y not in adj[y1]]
        if len(free) < 2:
            continue
        for ya in free:

            def build(rec, y1=y1, ya=ya):
                s2 = rec.st
                fz1 = s2.color[z1]
                target = s2.color[y1]
                rec.put(z1, gamma0)
                rec.put(y1, fz1)
                if s2.color[z] is None or z == z1:
                    raise _Reject()
                psi = [c for c in sorted(s2.phi) if is_movable(s2, z, c)]
                path = shortest_path(s2.H, psi, [target])
                if path is None:
                    raise _Reject()
                fz = s2.color[z]
                rec.shift(path, first_witnesses(s2.H, path))
                rec.put(z, path[0])
                rec.put(ya, fz)

            try:
                ev = attempt(st, "large-sink", build, ctx.tracer, z=z1, y=y1)
            except _Reject:
                continue
            if ev is not None:
                return ev
    raise ctx.fail(st, "large-sink-move", f"no improving rearrangement around {z1}")


class _Reject(Exception):
    pass


# -- explicit extension from an extreme coloring -----------------------


def extreme_extend(st: PartialState, ew: ExtremeWitness, p: int, ctx: SolveContext):
    """Either color ``p`` (returns ``True``) or apply an improving rotation
    (returns its event)."""
    z0 = ew.z0
    adj = st.g.adj
    color = st.color
    allowed = st.phi - ew.Theta0
    H = st.H
    options = []
    for c in sorted(allowed):
        if not is_movable(st, p, c):
            continue
        path = shortest_path(H, [c], ew.Upsilon, allowed=allowed)
        if path is None:
            continue
        wits = first_witnesses(H, path)
        if wits:
            last = H.witnesses[(path[-2], path[-1])]
            outside = [w for w in last if w not in adj[z0]]
            wits[-1] = outside[0] if outside else last[0]
            far = wits[-1] in adj[z0]
        else:
            far = p in adj[z0]
        if not far:
            options.append((0, c, path, wits))
        elif wits:
            options.append((1, c, path, wits))
    if not options:
        raise ctx.fail(st, "extreme-start", f"no usable starting class for {p}")
    kind, c1, path, wits = min(options, key=lambda o: (o[0], o[1]))
    ups = path[-1]
    y, y2 = sorted(v for v in ew.S_star if color[v] == ups)
    alpha = color[z0]

    if kind == 1:
        prev = path[-2]
        w = wits[-1]

        def build(rec):
            rec.put(z0, prev)
            rec.put(w, ups)
            rec.put(y, alpha)

        ev = attempt(st, "extreme-rotate", build, ctx.tracer, z=z0, y=y)
        if ev is None:
            raise ctx.fail(st, "extreme-rotate", "rotation around the useful class did not improve")
        return ev

    s = st.s
    st.pin_threshold(s)
    tr = ctx.tracer
    insert_vertex(st, p, c1, tr)
    if len(path) > 1:
        shift_witnesses(st, path, wits, tr)
    moves = [[z0, alpha, ups], [y, ups, alpha], [y2, ups, alpha]]
    for v, _frm, to in moves:
        st.assign(v, to)
    tr.emit(st, "SwapSolo", {"rule": "extreme-extend", "z": z0, "y": y, "moves": moves})
    if st.size(alpha) > s:
        try:
            tail, tw = path_to_light(st, st.H, alpha)
        except NotAccessible:
            st.pin_threshold(None)
            raise ctx.fail(st, "extreme-settle", f"class {alpha} cannot shed a vertex")
        shift_witnesses(st, tail, tw, tr)
    st.pin_threshold(None)
    bad = [v for v in st.colored() if not st.is_proper_at(v)]
    if bad or not st.is_se():
        raise ctx.fail(st, "extreme-result", f"extension is not an SE coloring (bad={bad[:5]})")
    return True


def solve_from(inst: Instance, colors: Sequence[int | None], p: int, record_trace: bool = True):
    """Insert ``p`` into a given SE coloring of the other vertices.

    Used to exercise the extension on hand-built or adversarial colorings.
    Returns ``(colors, stats, trace)``.
    """
    check_hypotheses(inst)
    tracer = Tracer(record=record_trace)
    stats = SolveStats()
    ctx = SolveContext(tracer, stats)
    st = PartialState(inst, colors)
    if st.color[p] is not None:
        raise InvalidInstance(f"vertex {p} is already colored")
    extend(st, p, ctx)
    return list(st.color), stats, tracer.events
