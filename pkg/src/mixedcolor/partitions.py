"""Structural parameters: neighborhood partitions, vertex cover, clique number.

The mixed type relation groups vertices with identical in-, out-, and
undirected neighborhoods (up to each other); the undirected variant works on
the underlying undirected graph. Vertex cover and clique number are exact,
budgeted branch-and-bound computations on the underlying graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .graphs import MixedGraph, underlying_undirected

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class NeighborhoodPartition:
    """Equivalence classes of the (mixed or undirected) type relation."""

    classes: tuple[frozenset[int], ...]
    kind: str  # "mixed" | "undirected"
    class_kinds: tuple[str, ...]  # per class: "clique" | "independent"

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise KeyError(v)


def _group_by_type(g: MixedGraph, same_type) -> list[list[int]]:
    # pairwise check with union-find; the relation is transitive, but the
    # explicit check keeps this faithful to the quadratic procedure.
    parent = {v: v for v in g.vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    vs = list(g.vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if find(u) != find(v) and same_type(u, v):
                parent[find(v)] = find(u)
    groups: dict[int, list[int]] = {}
    for v in vs:
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(members) for members in groups.values()), key=lambda m: m[0])


def _partition_from_groups(g: MixedGraph, groups: list[list[int]], kind: str) -> NeighborhoodPartition:
    kinds = []
    for members in groups:
        if len(members) >= 2 and (members[0], members[1]) in g.edges:
            kinds.append("clique")
        else:
            kinds.append("independent")
    return NeighborhoodPartition(
        tuple(frozenset(m) for m in groups), kind, tuple(kinds)
    )


def mixed_neighborhood_partition(g: MixedGraph) -> NeighborhoodPartition:
    """Coarsest partition under equal in-, out-, and undirected neighborhoods."""
    nin = {v: g.in_neighbors(v) for v in g.vertices}
    nout = {v: g.out_neighbors(v) for v in g.vertices}
    nund = {v: g.undirected_neighbors(v) for v in g.vertices}

    def same_type(u: int, v: int) -> bool:
        return (
            nin[u] == nin[v]
            and nout[u] == nout[v]
            and nund[u] - {v} == nund[v] - {u}
        )

    return _partition_from_groups(g, _group_by_type(g, same_type), "mixed")


def undirected_neighborhood_partition(g: MixedGraph) -> NeighborhoodPartition:
    """Type partition of the underlying undirected graph."""
    und = underlying_undirected(g)
    nbr = {v: und.undirected_neighbors(v) for v in und.vertices}

    def same_type(u: int, v: int) -> bool:
        return nbr[u] - {v} == nbr[v] - {u}

    return _partition_from_groups(und, _group_by_type(und, same_type), "undirected")


def ndm(g: MixedGraph) -> int:
    return len(mixed_neighborhood_partition(g))


def ndu(g: MixedGraph) -> int:
    return len(undirected_neighborhood_partition(g))


def _underlying_adjacency(g: MixedGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in underlying_undirected(g).edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def vertex_cover_number(g: MixedGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Exact minimum vertex cover of the underlying graph, with a witness.

    Branch on a maximum-degree vertex (take it, or take its whole
    neighborhood), after folding in the forced neighbor of every degree-one
    vertex; a greedy matching lower-bounds the remainder. Raises
    BudgetExceeded past the node budget.
    """
    base_adj = _underlying_adjacency(g)
    best: list = [None, frozenset()]
    nodes = [0]

    def matching_bound(adj: dict[int, set[int]]) -> int:
        used: set[int] = set()
        size = 0
        for u in sorted(adj):
            if u in used or not adj[u]:
                continue
            for v in sorted(adj[u]):
                if v not in used:
                    used.update((u, v))
                    size += 1
                    break
        return size

    def without(adj: dict[int, set[int]], drop: set[int]) -> dict[int, set[int]]:
        return {
            u: (nbrs - drop)
            for u, nbrs in adj.items()
            if u not in drop
        }

    def branch(adj: dict[int, set[int]], chosen: set[int]) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"vertex cover search exceeded {budget} nodes")
        # degree-one reduction: the neighbor is always at least as good
        while True:
            leaf = next((u for u in sorted(adj) if len(adj[u]) == 1), None)
            if leaf is None:
                break
            forced = min(adj[leaf])
            chosen = chosen | {forced}
            adj = without(adj, {forced, leaf})
        if best[0] is not None and len(chosen) >= best[0]:
            return
        if all(not nbrs for nbrs in adj.values()):
            best[0] = len(chosen)
            best[1] = frozenset(chosen)
            return
        if best[0] is not None and len(chosen) + matching_bound(adj) >= best[0]:
            return
        v = max(adj, key=lambda u: (len(adj[u]), -u))
        branch(without(adj, {v}), chosen | {v})
        nbrs = set(adj[v])
        branch(without(adj, nbrs | {v}), chosen | nbrs)

    branch(base_adj, set())
    return best[0], best[1]


def clique_number(g: MixedGraph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact maximum clique size of the underlying graph (nonempty g)."""
    if g.n == 0:
        raise ValueError("clique number of the empty graph is undefined")
    adj = _underlying_adjacency(g)
    bits = {v: 0 for v in g.vertices}
    for v in g.vertices:
        for w in adj[v]:
            bits[v] |= 1 << w
    best = [1]
    nodes = [0]

    def greedy_order(cand: list[int]) -> tuple[list[int], list[int]]:
        # vertices grouped by greedy color class; returned colors ascend
        color_classes: list[list[int]] = []
        class_masks: list[int] = []
        for v in cand:
            for i, mask in enumerate(class_masks):
                if not (mask & bits[v]):
                    class_masks[i] |= 1 << v
                    color_classes[i].append(v)
                    break
            else:
                class_masks.append(1 << v)
                color_classes.append([v])
        order: list[int] = []
        colors: list[int] = []
        for i, members in enumerate(color_classes):
            order.extend(members)
            colors.extend([i + 1] * len(members))
        return order, colors

    def expand(cand: list[int], size: int) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"clique search exceeded {budget} nodes")
        order, colors = greedy_order(cand)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= best[0]:
                return
            v = order[i]
            if size + 1 > best[0]:
                best[0] = size + 1
            nxt = [w for w in order[:i] if bits[v] >> w & 1]
            if nxt:
                expand(nxt, size + 1)

    expand(sorted(g.vertices), 0)
    return best[0]
