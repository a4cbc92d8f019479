"""Instance generators whose class-B membership holds by construction.

Stacked triangulations are planar, hence in class B. Subdividing every
edge of an arbitrary graph once also lands in class B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coloring import Instance
from .errors import InvalidInstance
from .graph import Graph


@dataclass
class Certificate:
    kind: str  # "StackedTriangulation", "Subdivision" or "None"
    log: list = field(default_factory=list)  # [v, a, b, c]: v joined the face abc
    deleted: list = field(default_factory=list)
    base: dict | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "StackedTriangulation":
            out["log"] = self.log
            out["deleted"] = self.deleted
        elif self.kind == "Subdivision":
            out["base"] = self.base
        return out

    @classmethod
    def from_json(cls, data: dict | None) -> Certificate:
        if not data:
            return cls("None")
        kind = data.get("kind", "None")
        if kind not in ("StackedTriangulation", "Subdivision", "None"):
            raise InvalidInstance(f"unknown certificate kind {kind!r}")
        return cls(kind, data.get("log", []), data.get("deleted", []), data.get("base"))


def gen_stacked_planar(
    n: int, seed: int = 0, delete_fraction: float = 0.0, max_degree: int | None = None
) -> tuple[Graph, Certificate]:
    """Random planar 3-tree on ``n`` vertices, then independent edge deletion.

    Starting from a triangle (two faces), each new vertex is joined to the
    corners of a uniformly chosen face, which splits into three. With
    ``max_degree`` only faces whose corners all have room are drawn.
    """
    if n < 3:
        raise InvalidInstance(f"stacked triangulations need n >= 3, got {n}")
    if not 0.0 <= delete_fraction < 1.0:
        raise InvalidInstance(f"delete_fraction must lie in [0, 1), got {delete_fraction}")
    if max_degree is not None and max_degree < 3 and n > 3:
        raise InvalidInstance(f"max_degree {max_degree} is too small for n={n}")
    rng = random.Random(seed)
    edges = {(0, 1), (0, 2), (1, 2)}
    deg = [2, 2, 2] + [0] * (n - 3)
    faces = [(0, 1, 2), (0, 1, 2)]
    log = []
    for v in range(3, n):
        if max_degree is None:
            i = rng.randrange(len(faces))
        else:
            # redrawing until the corners have room is the same as drawing
            # uniformly from the faces that have room
            open_faces = [k for k, f in enumerate(faces) if max(deg[u] for u in f) < max_degree]
            if not open_faces:
                raise InvalidInstance(f"could not respect max_degree={max_degree} at vertex {v}")
            i = open_faces[rng.randrange(len(open_faces))]
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces.extend([(b, c, v), (a, c, v)])
        for u in (a, b, c):
            edges.add((u, v))
            deg[u] += 1
        deg[v] = 3
        log.append([v, a, b, c])
    kept, deleted = [], []
    for e in sorted(edges):
        if delete_fraction and rng.random() < delete_fraction:
            deleted.append(list(e))
        else:
            kept.append(e)
    return Graph.from_edges(n, kept), Certificate("StackedTriangulation", log, deleted)


def gen_subdivision(h: Graph) -> tuple[Graph, Certificate]:
    """Replace every edge uv of ``h`` (in sorted order) by a path u-w-v."""
    edges = []
    w = h.n
    for u, v in h.edges():
        edges.append((u, w))
        edges.append((w, v))
        w += 1
    return Graph.from_edges(w, edges), Certificate("Subdivision", base=h.to_json())


def certificate_graph(cert: Certificate, n: int | None = None) -> Graph:
    """Rebuild the graph a certificate describes."""
    if cert.kind == "Subdivision":
        return gen_subdivision(Graph.from_json(cert.base))[0]
    if cert.kind == "StackedTriangulation":
        size = 3 + len(cert.log) if n is None else n
        edges = {(0, 1), (0, 2), (1, 2)}
        for v, a, b, c in cert.log:
            edges.update((min(u, v), max(u, v)) for u in (a, b, c))
        edges -= {tuple(e) for e in cert.deleted}
        return Graph.from_edges(size, sorted(edges))
    raise InvalidInstance("certificate of kind None describes no graph")


def gen_lists(n: int, r: int, palette_size: int, seed: int = 0) -> list[list[int]]:
    """A uniform random ``r``-subset of ``range(palette_size)`` per vertex."""
    if r < 1:
        raise InvalidInstance(f"r must be positive, got {r}")
    if palette_size < r:
        raise InvalidInstance(f"palette_size {palette_size} is smaller than r={r}")
    if palette_size == r:
        return [list(range(r)) for _ in range(n)]
    rng = random.Random(seed)
    return [sorted(rng.sample(range(palette_size), r)) for _ in range(n)]


def instance_json(inst: Instance, cert: Certificate | None = None) -> dict:
    out = inst.to_json()
    if cert is not None:
        out["certificate"] = cert.to_json()
    return out
