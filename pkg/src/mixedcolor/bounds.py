"""Chromatic-number bounds: properness checking, lower bounds, and the two
constructive upper-bound colorings (per-layer coloring and the vertex-cover
coloring with odd/even color slots).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, InvalidCover
from .graphs import (
    Coloring,
    MixedGraph,
    coloring_total_on,
    layering,
    maxrank,
    reachability,
    topological_order,
    underlying_undirected,
)
from .partitions import clique_number

Violation = tuple[str, int, int]  # ("edge"|"arc", u, v)

EXACT_LAYER_CAP = 20
CHI_U_BUDGET = 5_000_000


def check_proper(g: MixedGraph, c: Coloring) -> tuple[bool, Optional[Violation]]:
    """True iff c respects every edge (distinct) and arc (increasing).

    On failure, returns the lexicographically smallest violating relation.
    """
    coloring_total_on(c, g)
    violations: list[Violation] = []
    for u, v in g.edges:
        if c.colors[u] == c.colors[v]:
            violations.append(("edge", u, v))
    for u, v in g.arcs:
        if not c.colors[u] < c.colors[v]:
            violations.append(("arc", u, v))
    if not violations:
        return True, None
    return False, min(violations, key=lambda t: (t[1], t[2], t[0]))


def chi_u_exact(g: MixedGraph, budget: int = CHI_U_BUDGET) -> tuple[int, dict[int, int]]:
    """Exact chromatic number of the underlying undirected graph, with witness.

    Backtracking with the usual "at most one new color" symmetry breaking.
    """
    und = underlying_undirected(g)
    if und.n == 0:
        return 0, {}
    adj: dict[int, list[int]] = {v: [] for v in und.vertices}
    for u, v in und.edges:
        adj[u].append(v)
        adj[v].append(u)
    # highest degree first tends to fail fast
    order = sorted(und.vertices, key=lambda v: (-len(adj[v]), v))
    colors: dict[int, int] = {}
    nodes = [0]

    def extend(i: int, used: int, k: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"chi_u search exceeded {budget} nodes")
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[w] for w in adj[v] if w in colors}
        limit = min(k, used + 1)
        for color in range(1, limit + 1):
            if color in taken:
                continue
            colors[v] = color
            if extend(i + 1, max(used, color), k):
                return True
            del colors[v]
        return False

    lower = clique_number(g, budget=budget) if und.edges else 1
    k = lower
    while True:
        colors.clear()
        if extend(0, 0, k):
            return k, dict(colors)
        k += 1


@dataclass(frozen=True)
class LowerBounds:
    chi_u: int
    maxrank: int
    combined: int
    chi_u_exact: bool  # False when the budget forced a clique-number fallback


def lower_bounds(g: MixedGraph, budget: int = CHI_U_BUDGET) -> LowerBounds:
    """Chromatic lower bounds: underlying chromatic number and maxrank.

    The combined bound is max(chi_u, maxrank + 1) for nonempty graphs: the
    final vertex of a longest directed path needs a color above all its
    predecessors on the path.
    """
    rank = maxrank(g)
    if g.n == 0:
        return LowerBounds(0, 0, 0, True)
    try:
        chi_u, _ = chi_u_exact(g, budget=budget)
        exact = True
    except BudgetExceeded:
        chi_u = clique_number(g)
        exact = False
    return LowerBounds(chi_u, rank, max(chi_u, rank + 1), exact)


def _greedy_dsatur(und: MixedGraph) -> dict[int, int]:
    adj: dict[int, set[int]] = {v: set() for v in und.vertices}
    for u, v in und.edges:
        adj[u].add(v)
        adj[v].add(u)
    colors: dict[int, int] = {}
    uncolored = set(und.vertices)
    while uncolored:
        # highest saturation, then highest degree, then smallest id
        v = min(
            uncolored,
            key=lambda u: (-len({colors[w] for w in adj[u] if w in colors}), -len(adj[u]), u),
        )
        taken = {colors[w] for w in adj[v] if w in colors}
        color = 1
        while color in taken:
            color += 1
        colors[v] = color
        uncolored.remove(v)
    return colors


def layering_coloring(g: MixedGraph, exact_layer_cap: int = EXACT_LAYER_CAP) -> Coloring:
    """Proper coloring from the layering: each layer gets a fresh color block.

    Layers of at most ``exact_layer_cap`` vertices are colored optimally,
    larger ones greedily (DSATUR); either way the result is proper.
    """
    lay = layering(g)
    assignment: dict[int, int] = {}
    offset = 0
    for layer in lay.layers:
        sub, remap = g.induced(layer)
        und = underlying_undirected(sub)
        if und.n <= exact_layer_cap:
            _, local = chi_u_exact(und)
        else:
            local = _greedy_dsatur(und)
        back = {new: old for old, new in remap.items()}
        used = max(local.values(), default=0)
        for new_id, color in local.items():
            assignment[back[new_id]] = offset + color
        offset += used
    return Coloring(assignment)


def vc_coloring(g: MixedGraph, cover: frozenset[int] | set[int]) -> Coloring:
    """Proper coloring with at most 2|cover| + 1 colors from a vertex cover.

    Cover vertices take even colors 2, 4, ... in topological order of the
    transitive closure restricted to the cover; every other vertex v takes
    one more than the largest color among its in-neighbors (odd, and wedged
    strictly between its in- and out-neighbors).
    """
    und = underlying_undirected(g)
    for u, v in und.edges:
        if u not in cover and v not in cover:
            raise InvalidCover(f"edge {{{u},{v}}} has no endpoint in the cover")
    cover = frozenset(cover)
    reach = reachability(g)
    cover_sorted = sorted(cover)
    closure_arcs = [
        (u, v)
        for u in cover_sorted
        for v in cover_sorted
        if u != v and (reach[u] >> v) & 1
    ]
    sub_edges: frozenset = frozenset()
    remap = {v: i + 1 for i, v in enumerate(cover_sorted)}
    sub = MixedGraph(
        len(cover_sorted),
        sub_edges,
        frozenset((remap[u], remap[v]) for u, v in closure_arcs),
    )
    back = {i: v for v, i in remap.items()}
    order = [back[i] for i in topological_order(sub)]
    colors: dict[int, int] = {}
    for idx, v in enumerate(order, start=1):
        colors[v] = 2 * idx
    for v in g.vertices:
        if v in cover:
            continue
        preds = [colors[u] for u in g.in_neighbors(v)]
        colors[v] = (max(preds) if preds else 0) + 1
    return Coloring(colors)


@dataclass(frozen=True)
class ChromaticBounds:
    lower: int
    upper: int
    lower_witness: str  # "undirected_clique" | "maxrank"
    upper_witness: Coloring


def chromatic_bounds(g: MixedGraph) -> ChromaticBounds:
    """Combined lower bound and the layering upper bound with its coloring."""
    lb = lower_bounds(g)
    witness = layering_coloring(g)
    upper = witness.num_colors()
    if g.n == 0:
        return ChromaticBounds(0, 0, "undirected_clique", witness)
    source = "maxrank" if lb.maxrank + 1 > lb.chi_u else "undirected_clique"
    return ChromaticBounds(lb.combined, upper, source, witness)
