"""Mixed-graph data model, file I/O, and order/reachability primitives.

A mixed graph has undirected edges and directed arcs over vertices 1..n.
Every graph handled here is simple (no loops, no parallel or opposite
relations) and its arc set is acyclic; both properties are enforced when a
``MixedGraph`` is constructed. Instances are immutable and safe to share.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import (
    DirectedCycleError,
    DuplicateRelation,
    IncompleteColoring,
    LoopError,
    ParseError,
)

Edge = tuple[int, int]  # normalized: u < v
Arc = tuple[int, int]  # ordered: (tail, head)


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MixedGraph:
    """An immutable simple mixed graph on vertices 1..n without directed cycles."""

    n: int
    edges: frozenset[Edge]
    arcs: frozenset[Arc]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        edge_pairs: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise LoopError(f"edge ({u},{v}) is a loop")
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u},{v}) not normalized or out of range")
            edge_pairs.add((u, v))
        for u, v in self.arcs:
            if u == v:
                raise LoopError(f"arc ({u},{v}) is a loop")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc ({u},{v}) out of range")
            if normalize_edge(u, v) in edge_pairs:
                raise DuplicateRelation(f"pair {{{u},{v}}} carries an edge and an arc")
        # opposite arcs are a directed 2-cycle and reported as such
        _check_acyclic(self.n, self.arcs)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def in_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u for (u, w) in self.arcs if w == v)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(w for (u, w) in self.arcs if u == v)

    def undirected_neighbors(self, v: int) -> frozenset[int]:
        return frozenset((a if b == v else b) for (a, b) in self.edges if v in (a, b))

    def induced(self, vertices: Iterable[int]) -> tuple["MixedGraph", dict[int, int]]:
        """Induced subgraph with vertices renumbered 1..m; returns (graph, old->new map)."""
        keep = sorted(set(vertices))
        remap = {v: i + 1 for i, v in enumerate(keep)}
        keepset = set(keep)
        edges = frozenset(
            (remap[u], remap[v]) for (u, v) in self.edges if u in keepset and v in keepset
        )
        arcs = frozenset(
            (remap[u], remap[v]) for (u, v) in self.arcs if u in keepset and v in keepset
        )
        return MixedGraph(len(keep), edges, arcs), remap


def mixed_graph(n: int, edges: Iterable[tuple[int, int]] = (), arcs: Iterable[tuple[int, int]] = ()) -> MixedGraph:
    """Build a validated MixedGraph, normalizing edge orientation."""
    return MixedGraph(n, frozenset(normalize_edge(u, v) for u, v in edges), frozenset(tuple(a) for a in arcs))


def _check_acyclic(n: int, arcs: Iterable[Arc]) -> None:
    indeg = [0] * (n + 1)
    out: list[list[int]] = [[] for _ in range(n + 1)]
    count = 0
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
        count += 1
    queue = [v for v in range(1, n + 1) if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if removed != n:
        raise DirectedCycleError("arc set induces a directed cycle")


@dataclass(frozen=True)
class Coloring:
    """A total assignment of positive colors to the vertices of some graph."""

    colors: dict[int, int]

    def __post_init__(self) -> None:
        for v, c in self.colors.items():
            if c < 1:
                raise ValueError(f"vertex {v} has non-positive color {c}")

    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def max_color(self) -> int:
        return max(self.colors.values(), default=0)


@dataclass(frozen=True)
class Layering:
    """Partition of the vertices by inrank; arcs always point to higher layers."""

    layers: tuple[frozenset[int], ...]
    inrank: dict[int, int]


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def load_graph(stream: TextIO) -> MixedGraph:
    """Parse the extended-DIMACS mixed graph format.

    Header ``p mixed <n> <edges> <arcs>``, relation lines ``e u v`` (u < v)
    and ``a u v``; ``#`` starts a comment.
    """
    n = -1
    expected_edges = expected_arcs = 0
    edges: set[Edge] = set()
    arcs: set[Arc] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 5 or parts[1] != "mixed":
                raise ParseError(f"line {lineno}: bad header {line!r}")
            try:
                n, expected_edges, expected_arcs = int(parts[2]), int(parts[3]), int(parts[4])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad header numbers") from exc
            if n < 0 or expected_edges < 0 or expected_arcs < 0:
                raise ParseError(f"line {lineno}: negative counts")
        elif parts[0] in ("e", "a"):
            if n < 0:
                raise ParseError(f"line {lineno}: relation before header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: bad relation line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad vertex id") from exc
            if u == v:
                raise LoopError(f"line {lineno}: loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
            pair = normalize_edge(u, v)
            if parts[0] == "e":
                if u >= v:
                    raise ParseError(f"line {lineno}: edge must satisfy u < v")
                if pair in edges or (u, v) in arcs or (v, u) in arcs:
                    raise DuplicateRelation(f"line {lineno}: pair {{{u},{v}}} already related")
                edges.add(pair)
            else:
                if pair in edges or (u, v) in arcs:
                    raise DuplicateRelation(f"line {lineno}: pair {{{u},{v}}} already related")
                # an opposite arc is a directed 2-cycle; graph validation reports it
                arcs.add((u, v))
        else:
            raise ParseError(f"line {lineno}: unknown line kind {parts[0]!r}")
    if n < 0:
        raise ParseError("missing header line")
    if len(edges) != expected_edges or len(arcs) != expected_arcs:
        raise ParseError(
            f"header announced {expected_edges} edges / {expected_arcs} arcs, "
            f"found {len(edges)} / {len(arcs)}"
        )
    return MixedGraph(n, frozenset(edges), frozenset(arcs))


def save_graph(g: MixedGraph, stream: TextIO) -> None:
    stream.write(f"p mixed {g.n} {len(g.edges)} {len(g.arcs)}\n")
    for u, v in sorted(g.edges):
        stream.write(f"e {u} {v}\n")
    for u, v in sorted(g.arcs):
        stream.write(f"a {u} {v}\n")


def load_coloring(stream: TextIO) -> Coloring:
    """Parse a coloring certificate: one ``<vertex> <color>`` line per vertex."""
    colors: dict[int, int] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<vertex> <color>'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad integer") from exc
        if v in colors:
            raise ParseError(f"line {lineno}: vertex {v} colored twice")
        if c < 1:
            raise ParseError(f"line {lineno}: color must be positive")
        colors[v] = c
    return Coloring(colors)


def save_coloring(c: Coloring, stream: TextIO) -> None:
    for v in sorted(c.colors):
        stream.write(f"{v} {c.colors[v]}\n")


def coloring_total_on(c: Coloring, g: MixedGraph) -> None:
    """Raise IncompleteColoring unless c colors exactly the vertices of g."""
    if set(c.colors) != set(g.vertices):
        missing = sorted(set(g.vertices) - set(c.colors))
        extra = sorted(set(c.colors) - set(g.vertices))
        raise IncompleteColoring(f"missing={missing} extra={extra}")


# ---------------------------------------------------------------------------
# structural primitives
# ---------------------------------------------------------------------------

def topological_order(g: MixedGraph) -> list[int]:
    """Arc-respecting vertex order, ties broken by smallest id first."""
    indeg = {v: 0 for v in g.vertices}
    out: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        out[u].append(v)
        indeg[v] += 1
    heap = [v for v in g.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order


def reachability(g: MixedGraph) -> dict[int, int]:
    """Bitmask of vertices reachable from each vertex along arcs (self excluded)."""
    reach = {v: 0 for v in g.vertices}
    out: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        out[u].append(v)
    for v in reversed(topological_order(g)):
        bits = 0
        for w in out[v]:
            bits |= (1 << w) | reach[w]
        reach[v] = bits
    return reach


def transitive_closure(g: MixedGraph) -> MixedGraph:
    """Add every transitive arc and drop edges now parallel to an arc."""
    reach = reachability(g)
    arcs = set()
    for u in g.vertices:
        bits = reach[u]
        while bits:
            low = bits & -bits
            arcs.add((u, low.bit_length() - 1))
            bits ^= low
    covered = {normalize_edge(u, v) for (u, v) in arcs}
    edges = frozenset(e for e in g.edges if e not in covered)
    return MixedGraph(g.n, edges, frozenset(arcs))


def layering(g: MixedGraph) -> Layering:
    """Partition by inrank (longest-path DP over a topological order)."""
    inrank = {v: 0 for v in g.vertices}
    inc: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        inc[v].append(u)
    for v in topological_order(g):
        if inc[v]:
            inrank[v] = max(inrank[u] + 1 for u in inc[v])
    top = max(inrank.values(), default=0)
    layers = tuple(
        frozenset(v for v in g.vertices if inrank[v] == i) for i in range(top + 1)
    )
    return Layering(layers, inrank)


def maxrank(g: MixedGraph) -> int:
    """Length of the longest directed path (0 for arc-free graphs)."""
    lay = layering(g)
    return len(lay.layers) - 1 if g.n else 0


def underlying_undirected(g: MixedGraph) -> MixedGraph:
    """Replace every arc with an edge."""
    edges = set(g.edges)
    edges.update(normalize_edge(u, v) for (u, v) in g.arcs)
    return MixedGraph(g.n, frozenset(edges), frozenset())


def corresponding_digraph(g: MixedGraph) -> frozenset[Arc]:
    """Arc set of the digraph with each edge replaced by two opposite arcs."""
    arcs = set(g.arcs)
    for u, v in g.edges:
        arcs.add((u, v))
        arcs.add((v, u))
    return frozenset(arcs)
