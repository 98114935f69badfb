"""The piece graph of a surface in a sutured manifold.

Vertices are the pieces left after cutting along the surface components,
edges are the components themselves (directed from the negative to the
positive side).  A vertex or edge is green when it touches R_-, black
otherwise.  Everything here is a combinatorial model: nothing checks that a
graph actually arises from an embedded surface.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InvalidColoring, InvalidGraph, NonSeparatingBlackEdge, UnknownEdge
from .laurent import LaurentPoly
from . import polymatrix
from .smith import solve_integral

GREEN = "green"
BLACK = "black"
COLORS = (GREEN, BLACK)


@dataclass(frozen=True)
class Edge:
    id: str
    tail: Hashable
    head: Hashable
    color: str
    weight: int = 1


def _sort_key(x):
    return (type(x).__name__, x)


class SuturedGraph:
    """Directed multigraph with green/black colouring and integer edge weights.

    ``edges`` may hold :class:`Edge` objects or ``(tail, head, color[, weight])``
    tuples, which get ids ``e0, e1, ...`` by position.
    """

    def __init__(self, vertices: Mapping[Hashable, str], edges: Iterable, validate: bool = True):
        self.vertices: dict[Hashable, str] = dict(vertices)
        self.edges: dict[str, Edge] = {}
        for k, e in enumerate(edges):
            if not isinstance(e, Edge):
                e = tuple(e)
                if len(e) not in (3, 4):
                    raise InvalidGraph(f"edge {e!r} should be (tail, head, color[, weight])")
                e = Edge(f"e{k}", *e)
            if e.id in self.edges:
                raise InvalidGraph(f"duplicate edge id {e.id!r}")
            self.edges[e.id] = e
        if validate:
            self.validate()

    def validate(self) -> None:
        for v, c in self.vertices.items():
            if c not in COLORS:
                raise InvalidGraph(f"vertex {v!r} has colour {c!r}; expected green or black")
        for e in self.edges.values():
            if e.color not in COLORS:
                raise InvalidGraph(f"edge {e.id!r} has colour {e.color!r}")
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise InvalidGraph(f"edge {e.id!r} has an endpoint that is not a vertex")
            if not isinstance(e.weight, int) or e.weight == 0:
                raise InvalidGraph(f"edge {e.id!r} needs a nonzero integer weight")
            for v in (e.tail, e.head):
                if self.vertices[v] == BLACK and e.color != BLACK:
                    raise InvalidColoring(f"edge {e.id!r} is green but meets black vertex {v!r}")
        if not any(c == GREEN for c in self.vertices.values()):
            raise InvalidGraph("at least one vertex must be green (R_- is nonempty)")
        if len(self._component(next(iter(self.vertices)), set(self.edges))) != len(self.vertices):
            raise InvalidGraph("the graph must be connected")

    def is_green(self, x: Hashable) -> bool:
        if x in self.edges:
            return self.edges[x].color == GREEN
        return self.vertices[x] == GREEN

    def edge(self, e: str) -> Edge:
        try:
            return self.edges[e]
        except KeyError:
            raise UnknownEdge(f"no edge {e!r}") from None

    def _adjacency(self, active: Iterable[str]) -> dict[Hashable, list[tuple[str, Hashable]]]:
        adj: dict[Hashable, list] = {v: [] for v in self.vertices}
        for eid in active:
            e = self.edges[eid]
            adj[e.tail].append((eid, e.head))
            adj[e.head].append((eid, e.tail))
        return adj

    def _component(self, start: Hashable, active: Iterable[str], skip: str | None = None) -> set:
        adj = self._adjacency(a for a in active if a != skip)
        seen = {start}
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    def subgraph_vertices(self, active: Iterable[str]) -> set:
        out = set()
        for eid in active:
            e = self.edges[eid]
            out.update((e.tail, e.head))
        return out


def bridge_test(G: SuturedGraph, e: str, active: Iterable[str] | None = None) -> bool:
    """True iff deleting ``e`` disconnects its endpoints in the undirected multigraph."""
    edge = G.edge(e)
    active = set(G.edges) if active is None else set(active)
    if e not in active:
        raise UnknownEdge(f"edge {e!r} is not present")
    if edge.tail == edge.head:
        return False
    return edge.head not in G._component(edge.tail, active, skip=e)


@dataclass(frozen=True)
class PruneStep:
    edge: str
    black_side: frozenset
    side_edges: frozenset


@dataclass
class PruneCertificate:
    steps: list[PruneStep] = field(default_factory=list)
    final_edges: frozenset = frozenset()
    witness: dict | None = None

    @property
    def removed_edges(self) -> frozenset:
        out = set()
        for s in self.steps:
            out.add(s.edge)
            out.update(s.side_edges)
        return frozenset(out)


def _qualifying(G: SuturedGraph, active: set) -> list[str]:
    out = []
    for eid in active:
        e = G.edges[eid]
        if e.color == BLACK and (G.vertices[e.tail] == GREEN or G.vertices[e.head] == GREEN):
            out.append(eid)
    return sorted(out, key=_sort_key)


def prune_non_touching(G: SuturedGraph, rng: random.Random | None = None
                       ) -> tuple[frozenset, PruneCertificate]:
    """Discard the surface components that do not touch R_- without changing the class.

    Repeatedly picks a black edge with a green endpoint (the smallest id, or a
    random one when ``rng`` is given), checks that it separates, and deletes
    it together with the all-black part of the graph it cuts off.  The
    cut-off part must be a tree: any cycle there would, after absorbing the
    bridge, leave a non-separating black edge next to a green piece.
    """
    active = set(G.edges)
    alive = set(G.vertices)
    cert = PruneCertificate()
    while True:
        cands = _qualifying(G, active)
        if not cands:
            break
        f = rng.choice(cands) if rng is not None else cands[0]
        if not bridge_test(G, f, active):
            raise NonSeparatingBlackEdge(f)
        edge = G.edges[f]
        side_t = G._component(edge.tail, active, skip=f)
        side_h = G._component(edge.head, active, skip=f)
        green_t = any(G.vertices[v] == GREEN for v in side_t)
        green_h = any(G.vertices[v] == GREEN for v in side_h)
        if green_t and green_h:
            raise InvalidColoring(
                f"black bridge {f!r} has green pieces on both sides; it cannot be a surface "
                f"component that avoids R_-")
        side = side_h if green_t else side_t
        side_edges = {eid for eid in active
                      if G.edges[eid].tail in side and G.edges[eid].head in side}
        if len(side_edges) != len(side) - 1:
            bad = next(eid for eid in sorted(side_edges, key=_sort_key)
                       if not bridge_test(G, eid, active))
            raise NonSeparatingBlackEdge(
                bad, f"black edge {bad!r} lies on a cycle of pieces cut off by {f!r}; "
                     f"it is not separating once {f!r} is absorbed")
        active -= side_edges | {f}
        alive -= side
        cert.steps.append(PruneStep(f, frozenset(side), frozenset(side_edges)))
    final = frozenset(active)
    cert.final_edges = final
    cert.witness = class_witness(G, set(G.edges), final)
    return final, cert


def _edge_vector(G: SuturedGraph, E: Iterable[str], order: Sequence[str]) -> list[int]:
    E = set(E)
    for e in E:
        G.edge(e)
    return [G.edges[e].weight if e in E else 0 for e in order]


def cut_matrix(G: SuturedGraph) -> tuple[list[list[int]], list[str], list[Hashable]]:
    """Columns are the vertex boundaries: +w(e) where the vertex is the tail, -w(e) at the head."""
    eorder = sorted(G.edges, key=_sort_key)
    vorder = sorted(G.vertices, key=_sort_key)
    vidx = {v: k for k, v in enumerate(vorder)}
    mat = [[0] * len(vorder) for _ in eorder]
    for i, eid in enumerate(eorder):
        e = G.edges[eid]
        mat[i][vidx[e.tail]] += e.weight
        mat[i][vidx[e.head]] -= e.weight
    return mat, eorder, vorder


def class_witness(G: SuturedGraph, E1: Iterable[str], E2: Iterable[str]) -> dict | None:
    """Integer vertex coefficients whose boundaries sum to ``[E1] - [E2]``, or None."""
    mat, eorder, vorder = cut_matrix(G)
    a = _edge_vector(G, E1, eorder)
    b = _edge_vector(G, E2, eorder)
    diff = [x - y for x, y in zip(a, b)]
    sol = solve_integral(mat, diff, len(eorder), len(vorder))
    if sol is None:
        return None
    return dict(zip(vorder, sol))


def class_equal(G: SuturedGraph, E1: Iterable[str], E2: Iterable[str]) -> bool:
    """Whether two unions of surface components are homologous in the graph model."""
    return class_witness(G, E1, E2) is not None


@dataclass
class MVCertificate:
    verdict: str
    matrix: list[list[LaurentPoly]]
    rows: list[Hashable]
    cols: list[str]
    determinant: LaurentPoly | None

    @property
    def invertible(self) -> bool:
        return self.verdict == "INVERTIBLE"


def mv_certificate(G: SuturedGraph) -> MVCertificate:
    """Black part of the map sum_e (i_e - t_e) over Q(x).

    Column ``e`` has ``+1`` in the row of its tail and ``-x^w(e)`` in the row
    of its head, both restricted to black vertices.  Green pieces and green
    components contribute zero modules, so only black rows and columns remain.
    """
    x = LaurentPoly.variable(0, 1)
    rows = sorted((v for v, c in G.vertices.items() if c == BLACK), key=_sort_key)
    cols = sorted((e for e, d in G.edges.items() if d.color == BLACK), key=_sort_key)
    ridx = {v: k for k, v in enumerate(rows)}
    mat = [[LaurentPoly.zero(1) for _ in cols] for _ in rows]
    for j, eid in enumerate(cols):
        e = G.edges[eid]
        if e.tail in ridx:
            mat[ridx[e.tail]][j] = mat[ridx[e.tail]][j] + 1
        if e.head in ridx:
            mat[ridx[e.head]][j] = mat[ridx[e.head]][j] - x ** e.weight
    if len(rows) != len(cols):
        return MVCertificate("NOT_INVERTIBLE", mat, rows, cols, None)
    d = polymatrix.det(mat, 1)
    return MVCertificate("INVERTIBLE" if not d.is_zero else "NOT_INVERTIBLE", mat, rows, cols, d)
