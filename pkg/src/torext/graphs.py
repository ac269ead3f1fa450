"""Dual-graph invariants of nodal special fibers.

A dual graph is a multigraph: vertices are fiber components, edges are
nodes, so loops (a component meeting itself) and parallel edges (two
components meeting in several points) are both meaningful. Cycles are
vertex-distinct closed walks identified by their edge sets: a loop is a
cycle of length 1 and a pair of parallel edges is a cycle of length 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import CapExceeded, DisconnectedGraph, InputError
from .fiber import FiniteAbelianGroup, IntersectionData
from .linalg import IntMatrix

DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True)
class DualGraph:
    """Multigraph with labelled vertices; loops encode self-intersections."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple((u, v) for u, v in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if len(set(vertices)) != len(vertices):
            raise InputError("vertex labels must be distinct")
        known = set(vertices)
        for u, v in edges:
            if u not in known or v not in known:
                raise InputError(f"edge ({u!r}, {v!r}) names an unknown vertex")

    @classmethod
    def from_dict(cls, doc: dict) -> DualGraph:
        try:
            return cls(tuple(doc["vertices"]), tuple(tuple(e) for e in doc["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph document: {exc}") from exc

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def vertex_index(self, label: str) -> int:
        return self.vertices.index(label)

    def edge_indices(self) -> list[tuple[int, int]]:
        index = {v: i for i, v in enumerate(self.vertices)}
        return [(index[u], index[v]) for u, v in self.edges]


@dataclass(frozen=True)
class Cycle:
    """A cycle, identified by the set of edge positions it uses."""

    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def __len__(self):
        return len(self.edges)


def _component_count(g: DualGraph) -> int:
    nv = len(g.vertices)
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edge_indices():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(i) for i in range(nv)})


def betti1(g: DualGraph) -> int:
    """First Betti number: edges - vertices + connected components.

    >>> betti1(DualGraph(("a", "b"), (("a", "b"), ("a", "b"), ("a", "b"))))
    2
    """
    return len(g.edges) - len(g.vertices) + _component_count(g)


def is_connected(g: DualGraph) -> bool:
    return _component_count(g) == 1


def enumerate_cycles(g: DualGraph, cap: int = DEFAULT_CYCLE_CAP) -> list[Cycle]:
    """All cycles of the multigraph, each edge set reported once.

    Loops give length-1 cycles; every unordered pair of parallel edges
    gives a length-2 cycle; longer cycles traverse three or more
    distinct vertices, with every choice among parallel edges counted as
    its own cycle. Output is sorted lexicographically by sorted edge
    indices. Raises CapExceeded when more than ``cap`` cycles exist.
    """
    edges = g.edge_indices()
    found: list[tuple[int, ...]] = []

    def emit(edge_tuple):
        found.append(edge_tuple)
        if len(found) > cap:
            raise CapExceeded(f"cycle enumeration exceeded cap {cap}")

    # length 1: loops
    for e, (u, v) in enumerate(edges):
        if u == v:
            emit((e,))

    # group parallel (non-loop) edges by endpoint pair
    parallel: dict[tuple[int, int], list[int]] = {}
    for e, (u, v) in enumerate(edges):
        if u != v:
            parallel.setdefault((min(u, v), max(u, v)), []).append(e)

    # length 2: unordered pairs of parallel edges
    for bundle in parallel.values():
        for e1, e2 in itertools.combinations(bundle, 2):
            emit((e1, e2))

    # length >= 3: vertex-simple cycles in the underlying simple graph,
    # expanded over every choice of parallel edge per step
    nv = len(g.vertices)
    neighbors: dict[int, list[int]] = {i: [] for i in range(nv)}
    for (a, b) in parallel:
        neighbors[a].append(b)
        neighbors[b].append(a)
    for adj in neighbors.values():
        adj.sort()

    def expand(vertex_path):
        steps = [
            parallel[(min(a, b), max(a, b))]
            for a, b in zip(vertex_path, vertex_path[1:] + vertex_path[:1])
        ]
        for choice in itertools.product(*steps):
            emit(tuple(sorted(choice)))

    def search(start, path, on_path):
        current = path[-1]
        for nxt in neighbors[current]:
            if nxt == start and len(path) >= 3:
                # canonical direction: second vertex below last vertex
                if path[1] < path[-1]:
                    expand(path)
            elif nxt > start and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                search(start, path, on_path)
                on_path.remove(nxt)
                path.pop()

    for start in range(nv):
        search(start, [start], {start})

    return [Cycle(t) for t in sorted(found)]


def c2(g: DualGraph, cap: int = DEFAULT_CYCLE_CAP) -> int:
    """gcd of common edge counts over all pairs of cycles, self-pairs included.

    Zero when the graph has no cycle at all.

    >>> polygon = DualGraph(tuple("abcdef"), tuple((x, y) for x, y in zip("abcdef", "bcdefa")))
    >>> c2(polygon)
    6
    """
    cycles = enumerate_cycles(g, cap=cap)
    sets = [frozenset(c.edges) for c in cycles]
    value = 0
    for i, s in enumerate(sets):
        for t in sets[i:]:
            value = gcd(value, len(s & t))
    return value


def chiodo_check(g: DualGraph, r: int, cap: int = DEFAULT_CYCLE_CAP):
    """Divisibility criterion for the r-torsion of the component group.

    Returns ``(holds, predicted)``: ``holds`` is true when r divides the
    cycle-pair invariant c2 (vacuously when the graph has no cycles, in
    which case the first Betti number vanishes), and ``predicted`` is
    then the elementary group (Z/r)^b1, else None.
    """
    if r < 2:
        raise InputError("criterion requires r >= 2")
    value = c2(g, cap=cap)
    b1 = betti1(g)
    if value == 0:
        holds = b1 == 0
    else:
        holds = value % r == 0
    predicted = FiniteAbelianGroup.elementary(r, b1) if holds else None
    return holds, predicted


def graph_to_fiber(g: DualGraph) -> IntersectionData:
    """Intersection data of the reduced nodal fiber with this dual graph.

    Components all have multiplicity one; off-diagonal entries count
    edges, diagonal entries balance rows to zero. Loops contribute to
    neither (a node of a component with itself moves its self-intersection
    and its arithmetic genus, not its incidence with other components).
    """
    if not is_connected(g):
        raise DisconnectedGraph("fiber graphs must be connected")
    nv = len(g.vertices)
    m = [[0] * nv for _ in range(nv)]
    for u, v in g.edge_indices():
        if u != v:
            m[u][v] += 1
            m[v][u] += 1
    for i in range(nv):
        m[i][i] = -sum(m[i][j] for j in range(nv) if j != i)
    return IntersectionData(
        labels=g.vertices,
        multiplicities=(1,) * nv,
        matrix=IntMatrix(m),
    )
