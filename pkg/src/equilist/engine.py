"""Recoloring moves, the lexicographic potential and the improvement catalog.

Every mutation of a :class:`PartialState` made by the solver goes through
this module so it can be traced and replayed.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .coloring import Instance
from .digraph import PartialState, is_movable, shortest_path, first_witnesses
from .errors import IllegalMove, InvalidInstance

log = logging.getLogger(__name__)


# -- tracing ------------------------------------------------------------


def sizes_digest(st: PartialState) -> str:
    body = ";".join(f"{c}:{len(vs)}" for c, vs in sorted(st.classes.items()))
    return hashlib.sha256(body.encode()).hexdigest()[:16]


def coloring_digest(colors: Sequence[int | None]) -> str:
    body = json.dumps(list(colors), separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


@dataclass
class TraceEvent:
    step: int
    kind: str  # InsertVertex, MoveVertex, ShiftPath, SwapSolo
    payload: dict
    snapshot_hash: str

    def to_json(self) -> dict:
        return {"step": self.step, "kind": self.kind, "payload": self.payload, "snapshot_hash": self.snapshot_hash}

    @classmethod
    def from_json(cls, data: dict) -> TraceEvent:
        return cls(int(data["step"]), data["kind"], data["payload"], data["snapshot_hash"])


@dataclass
class Tracer:
    """Collects events; with ``record=False`` only the step counter advances."""

    record: bool = True
    events: list[TraceEvent] = field(default_factory=list)
    step: int = 0

    def emit(self, st: PartialState, kind: str, payload: dict) -> TraceEvent:
        ev = TraceEvent(self.step, kind, payload, sizes_digest(st) if self.record else "")
        self.step += 1
        if self.record:
            self.events.append(ev)
        return ev

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self.events)


def read_trace(text: str) -> list[TraceEvent]:
    return [TraceEvent.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


def apply_event(st: PartialState, ev: TraceEvent) -> None:
    """Re-apply one recorded event to ``st``."""
    p = ev.payload
    if ev.kind == "InsertVertex":
        st.assign(p["p"], p["to"])
    elif ev.kind == "MoveVertex":
        st.assign(p["v"], p["to"])
    elif ev.kind == "ShiftPath":
        colors, wits = p["colors"], p["witnesses"]
        for i in reversed(range(len(wits))):
            st.assign(wits[i], colors[i + 1])
    elif ev.kind == "SwapSolo":
        for v, _frm, to in p["moves"]:
            st.assign(v, to)
    else:
        raise InvalidInstance(f"unknown trace event kind {ev.kind!r}")


def replay(
    inst: Instance,
    events: Sequence[TraceEvent],
    check_hashes: bool = True,
    start: Sequence[int | None] | None = None,
) -> list[int | None]:
    """Re-apply ``events`` to ``start`` (default: the empty coloring) and
    return the final colors.

    With ``check_hashes`` every event's class-size digest is compared.
    """
    st = PartialState(inst, list(start) if start is not None else [None] * inst.n)
    for ev in events:
        apply_event(st, ev)
        if check_hashes and ev.snapshot_hash and sizes_digest(st) != ev.snapshot_hash:
            raise InvalidInstance(f"snapshot mismatch at step {ev.step}")
    return st.color


# -- potential ----------------------------------------------------------


@dataclass(frozen=True)
class Potential:
    """(|A|, nonempty accessible classes), then fewer full accessible classes.

    The third component only separates moves that empty a full accessible
    class without changing the first two.
    """

    a_size: int
    nonempty: int
    full_accessible: int = 0

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a_size, self.nonempty, -self.full_accessible)

    def __gt__(self, other: Potential) -> bool:
        return self.key > other.key

    def __lt__(self, other: Potential) -> bool:
        return self.key < other.key

    def to_json(self) -> list[int]:
        return [self.a_size, self.nonempty, self.full_accessible]


def potential(st: PartialState) -> Potential:
    lam = st.lam
    return Potential(
        a_size=len(st.A),
        nonempty=sum(1 for c in lam if st.classes[c]),
        full_accessible=len(st.full_accessible()),
    )


# -- primitive moves ----------------------------------------------------


def move_vertex(st: PartialState, v: int, beta: int, tracer: Tracer | None = None, **extra) -> TraceEvent | None:
    """Move colored vertex ``v`` into class ``beta``."""
    if st.color[v] is None:
        raise IllegalMove(f"vertex {v} is not colored")
    if not is_movable(st, v, beta):
        raise IllegalMove(f"vertex {v} is not movable to class {beta}")
    frm = st.color[v]
    st.assign(v, beta)
    if tracer is not None:
        return tracer.emit(st, "MoveVertex", {"v": v, "from": frm, "to": beta, **extra})
    return None


def insert_vertex(st: PartialState, p: int, beta: int, tracer: Tracer | None = None) -> TraceEvent | None:
    if st.color[p] is not None:
        raise IllegalMove(f"vertex {p} is already colored")
    if beta not in st.inst.list_sets[p] or st.nbrs_in(p, beta):
        raise IllegalMove(f"vertex {p} cannot be placed in class {beta}")
    st.assign(p, beta)
    if tracer is not None:
        return tracer.emit(st, "InsertVertex", {"p": p, "to": beta})
    return None


def _shift(st: PartialState, colors: Sequence[int], witnesses: Sequence[int]) -> None:
    if len(witnesses) != len(colors) - 1:
        raise IllegalMove(f"{len(witnesses)} witnesses for a path of {len(colors)} colors")
    # far end first: each target class has only lost vertices when its witness moves in
    for i in reversed(range(len(witnesses))):
        v, a, b = witnesses[i], colors[i], colors[i + 1]
        if st.color[v] != a or not is_movable(st, v, b):
            raise IllegalMove(f"stale witness {v} for arc {a}->{b}")
        st.assign(v, b)


def shift_witnesses(
    st: PartialState, colors: Sequence[int], witnesses: Sequence[int], tracer: Tracer | None = None
) -> TraceEvent | None:
    """Move each witness one step along the color path.

    The first class loses a vertex, the last gains one, all others keep
    their size. A trivial path changes nothing.
    """
    _shift(st, colors, witnesses)
    if tracer is not None and len(colors) > 1:
        return tracer.emit(st, "ShiftPath", {"colors": list(colors), "witnesses": list(witnesses)})
    return None


# -- solo structure -----------------------------------------------------


def solo_neighbors(st: PartialState, z: int) -> list[int]:
    """Vertices y of B blocked by z alone: f(z) in L(y) and N(y) meets z's class only in z."""
    fz = st.color[z]
    B = st.B
    color = st.color
    out = []
    for y in st.g.nbrs[z]:
        if y in B and fz in st.inst.list_sets[y]:
            if sum(1 for u in st.g.nbrs[y] if color[u] == fz) == 1:
                out.append(y)
    return out


def useful_neighbors(st: PartialState, S: Sequence[int]) -> list[int]:
    adj = st.g.adj
    return [y for y in S if any(y2 != y and y2 not in adj[y] for y2 in S)]


def solo_vertices(st: PartialState) -> list[int]:
    full = st.full_accessible()
    if len(full) > 1:
        return []
    pool = sorted(st.classes[full[0]]) if full else sorted(st.A)
    return [z for z in pool if solo_neighbors(st, z)]


# -- verified composite moves ------------------------------------------

Build = Callable[[PartialState, list], None]


class _Recorder:
    """Applies raw reassignments to a scratch state and logs them."""

    def __init__(self, st: PartialState):
        self.st = st
        self.moves: list[list[int]] = []

    def put(self, v: int, c: int) -> None:
        self.moves.append([v, self.st.color[v], c])
        self.st.assign(v, c)

    def shift(self, colors: Sequence[int], witnesses: Sequence[int]) -> None:
        for i in reversed(range(len(witnesses))):
            v, a, b = witnesses[i], colors[i], colors[i + 1]
            if self.st.color[v] != a or not is_movable(self.st, v, b):
                raise IllegalMove(f"stale witness {v} for arc {a}->{b}")
            self.put(v, b)


def valid_after(st: PartialState, moved: Sequence[int]) -> bool:
    """Proper and list-respecting at every moved vertex, and SE overall."""
    return all(st.is_proper_at(v) for v in moved) and st.is_se()


def attempt(
    st: PartialState,
    rule: str,
    build: Callable[[_Recorder], None],
    tracer: Tracer | None,
    z: int | None = None,
    y: int | None = None,
    require_gain: bool = True,
) -> TraceEvent | None | bool:
    """Run ``build`` on a copy; commit only if the result is a valid SE
    coloring whose potential strictly exceeds the current one.

    Returns the trace event (or ``True`` without a tracer) on success and
    ``None`` when the candidate is rejected.
    """
    scratch = st.copy()
    rec = _Recorder(scratch)
    try:
        build(rec)
    except IllegalMove as exc:
        log.debug("%s candidate rejected: %s", rule, exc)
        return None
    moved = sorted({m[0] for m in rec.moves})
    if not valid_after(scratch, moved):
        log.debug("%s candidate rejected: invalid coloring", rule)
        return None
    before = potential(st)
    after = potential(scratch)
    if require_gain and not after > before:
        log.debug("%s candidate rejected: potential %s -> %s", rule, before.key, after.key)
        return None
    st.load(scratch)
    payload = {
        "rule": rule,
        "potential_before": before.to_json(),
        "potential_after": after.to_json(),
    }
    if tracer is None:
        return True
    if len(rec.moves) == 1:
        v, frm, to = rec.moves[0]
        return tracer.emit(st, "MoveVertex", {"v": v, "from": frm, "to": to, **payload})
    payload.update(z=z, y=y, moves=rec.moves)
    return tracer.emit(st, "SwapSolo", payload)


def _candidates(st: PartialState) -> Iterator[tuple[str, int | None, int | None, Callable[[_Recorder], None]]]:
    s = st.s
    lam = sorted(st.lam)
    A = sorted(st.A)
    lists = st.inst.list_sets
    color = st.color

    # an empty accessible class takes a vertex from a class of size >= 2
    for l in lam:
        if st.size(l):
            continue
        for v in A:
            if l in lists[v] and st.size(color[v]) >= 2:
                yield "free-i", v, None, (lambda rec, v=v, l=l: rec.put(v, l))

    # with more accessible colors than a, a full accessible class sheds a vertex
    full = st.full_accessible()
    if len(lam) > st.a and full:
        for l1 in full:
            for v in sorted(st.classes[l1]):
                for d in lam:
                    if d != l1 and st.size(d) <= s - 2 and is_movable(st, v, d):
                        yield "free-ii", v, None, (lambda rec, v=v, d=d: rec.put(v, d))

    solos = solo_vertices(st)
    info = []
    for z in solos:
        S = solo_neighbors(st, z)
        info.append((z, S, useful_neighbors(st, S)))

    # a solo vertex movable into an accessible class swaps in a solo neighbor
    for z, S, _ in info:
        fz = color[z]
        for l in lam:
            if l != fz and is_movable(st, z, l):
                for y in S:
                    def build(rec, z=z, y=y, l=l, fz=fz):
                        rec.put(z, l)
                        rec.put(y, fz)
                    yield "solo-to-A", z, y, build

    # a useful solo neighbor y with N(z) meeting its class only in y swaps with z
    for z, _, Sstar in info:
        fz = color[z]
        for y in Sstar:
            fy = color[y]
            if fy in lists[z] and len(st.nbrs_in(z, fy)) == 1:
                def build(rec, z=z, y=y, fz=fz, fy=fy):
                    rec.put(z, fy)
                    rec.put(y, fz)
                yield "useful", z, y, build

    # z movable into a B-class from which f(y) is reachable, y useful
    phi = sorted(st.phi)
    for z, _, Sstar in info:
        fz = color[z]
        psi = [b for b in phi if is_movable(st, z, b)]
        if not psi:
            continue
        for y in Sstar:
            path = shortest_path(st.H, psi, [color[y]])
            if path is None:
                continue
            wits = first_witnesses(st.H, path)

            def build(rec, z=z, y=y, fz=fz, path=path, wits=wits):
                rec.shift(path, wits)
                if not is_movable(rec.st, z, path[0]):
                    raise IllegalMove(f"{z} no longer movable to {path[0]}")
                rec.put(z, path[0])
                rec.put(y, fz)
            yield "sstar-reach", z, y, build


def improve(st: PartialState, tracer: Tracer | None = None) -> TraceEvent | bool | None:
    """Apply the first cataloged move that strictly raises the potential.

    Rules are tried in the order free-i, free-ii, solo-to-A, useful,
    sstar-reach; within a rule, smallest ids first. Returns ``None`` when no
    cataloged move improves the coloring.
    """
    for rule, z, y, build in _candidates(st):
        ev = attempt(st, rule, build, tracer, z=z, y=y)
        if ev is not None:
            return ev
    return None
