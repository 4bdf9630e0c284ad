"""Mixed cliquewidth expressions: evaluation, width, serialization, and the
constructive transformations (partition-based construction, acyclic
tournament 2-expression, arc-only conversion, transitive-closure expansion).

An expression is a tree over five operations: introduce a labeled vertex,
disjoint union, add all edges between two labels, add all arcs from one
label to another, and relabel. Evaluation is a bottom-up fold; vertices are
numbered by introduce order (left to right), which fixes the correspondence
used when comparing an evaluated expression against a target graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    ConflictingRelation,
    DirectedCycleError,
    ParseError,
    UnsupportedClosureExpression,
    WidthCapExceeded,
)
from .graphs import MixedGraph, normalize_edge, transitive_closure
from .partitions import mixed_neighborhood_partition


@dataclass(frozen=True, eq=False)
class Introduce:
    label: int


@dataclass(frozen=True, eq=False)
class Union:
    left: "MixedExpression"
    right: "MixedExpression"


@dataclass(frozen=True, eq=False)
class AddEdge:
    i: int
    j: int
    child: "MixedExpression"


@dataclass(frozen=True, eq=False)
class AddArc:
    i: int
    j: int
    child: "MixedExpression"


@dataclass(frozen=True, eq=False)
class Relabel:
    old: int
    new: int
    child: "MixedExpression"


MixedExpression = Introduce | Union | AddEdge | AddArc | Relabel


@dataclass(frozen=True)
class LabeledGraph:
    graph: MixedGraph
    labels: dict[int, int]


def _walk_postorder(e: MixedExpression) -> Iterator[MixedExpression]:
    stack: list[tuple[MixedExpression, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        if isinstance(node, Union):
            stack.append((node.right, False))
            stack.append((node.left, False))
        elif isinstance(node, (AddEdge, AddArc, Relabel)):
            stack.append((node.child, False))


def width(e: MixedExpression) -> int:
    """Number of distinct labels appearing anywhere in the expression."""
    labels: set[int] = set()
    for node in _walk_postorder(e):
        if isinstance(node, Introduce):
            labels.add(node.label)
        elif isinstance(node, (AddEdge, AddArc)):
            labels.update((node.i, node.j))
        elif isinstance(node, Relabel):
            labels.update((node.old, node.new))
    return len(labels)


def _validate_op_labels(i: int, j: int) -> None:
    if i == j:
        raise ConflictingRelation(f"operation needs distinct labels, got {i},{j}")


@dataclass
class _EvalState:
    labels: dict[int, int] = field(default_factory=dict)  # vertex -> label
    edges: set[tuple[int, int]] = field(default_factory=set)
    arcs: set[tuple[int, int]] = field(default_factory=set)


def _evaluate(e: MixedExpression, allow_opposite: bool) -> _EvalState:
    states: list[_EvalState] = []
    counter = 0
    for node in _walk_postorder(e):
        if isinstance(node, Introduce):
            counter += 1
            states.append(_EvalState({counter: node.label}))
        elif isinstance(node, Union):
            right = states.pop()
            left = states.pop()
            left.labels.update(right.labels)
            left.edges |= right.edges
            left.arcs |= right.arcs
            states.append(left)
        elif isinstance(node, Relabel):
            st = states[-1]
            for v, lab in st.labels.items():
                if lab == node.old:
                    st.labels[v] = node.new
        elif isinstance(node, AddEdge):
            _validate_op_labels(node.i, node.j)
            st = states[-1]
            if allow_opposite:
                raise ConflictingRelation("edge operations are not allowed in arc-only evaluation")
            side_i = [v for v, lab in st.labels.items() if lab == node.i]
            side_j = [v for v, lab in st.labels.items() if lab == node.j]
            for u in side_i:
                for w in side_j:
                    pair = normalize_edge(u, w)
                    if pair in st.edges:
                        continue
                    if (u, w) in st.arcs or (w, u) in st.arcs:
                        raise ConflictingRelation(
                            f"edge {{{u},{w}}} would parallel an existing arc"
                        )
                    st.edges.add(pair)
        else:  # AddArc
            _validate_op_labels(node.i, node.j)
            st = states[-1]
            side_i = [v for v, lab in st.labels.items() if lab == node.i]
            side_j = [v for v, lab in st.labels.items() if lab == node.j]
            for u in side_i:
                for w in side_j:
                    if (u, w) in st.arcs:
                        continue
                    if not allow_opposite:
                        if (w, u) in st.arcs:
                            raise ConflictingRelation(
                                f"arc ({u},{w}) would oppose an existing arc"
                            )
                        if normalize_edge(u, w) in st.edges:
                            raise ConflictingRelation(
                                f"arc ({u},{w}) would parallel an existing edge"
                            )
                    st.arcs.add((u, w))
            if not allow_opposite and side_i and side_j:
                _assert_acyclic(st.labels.keys(), st.arcs)
    return states.pop()


def _assert_acyclic(vertices, arcs: set[tuple[int, int]]) -> None:
    indeg = {v: 0 for v in vertices}
    out: dict[int, list[int]] = {v: [] for v in indeg}
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    queue = [v for v in indeg if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if removed != len(indeg):
        raise DirectedCycleError("arc operation created a directed cycle")


def evaluate(e: MixedExpression) -> LabeledGraph:
    """Bottom-up evaluation to a labeled mixed graph.

    Re-adding an identical relation is a no-op; adding a relation parallel or
    opposite to an existing one, or closing a directed cycle, is an error.
    """
    st = _evaluate(e, allow_opposite=False)
    n = len(st.labels)
    graph = MixedGraph(n, frozenset(st.edges), frozenset(st.arcs))
    return LabeledGraph(graph, dict(st.labels))


def evaluate_arcs(e: MixedExpression) -> tuple[int, frozenset[tuple[int, int]]]:
    """Relaxed evaluation for arc-only expressions; opposite arcs allowed.

    Used to check arc-only conversions, whose output may contain the two
    opposite arcs that encode an edge.
    """
    st = _evaluate(e, allow_opposite=True)
    return len(st.labels), frozenset(st.arcs)


# ---------------------------------------------------------------------------
# serialization: s-expressions
# ---------------------------------------------------------------------------

def format_expression(e: MixedExpression) -> str:
    out: list[str] = []
    # iterative pre-order with explicit close markers
    stack: list[object] = [e]
    while stack:
        node = stack.pop()
        if node is None:
            out.append(")")
            continue
        if isinstance(node, Introduce):
            out.append(f"(intro {node.label})")
            continue
        if isinstance(node, Union):
            out.append("(union")
            stack.extend([None, node.right, node.left])
        elif isinstance(node, AddEdge):
            out.append(f"(edge {node.i} {node.j}")
            stack.extend([None, node.child])
        elif isinstance(node, AddArc):
            out.append(f"(arc {node.i} {node.j}")
            stack.extend([None, node.child])
        else:
            out.append(f"(relabel {node.old} {node.new}")
            stack.extend([None, node.child])
    text = " ".join(out).replace("( ", "(").replace(" )", ")")
    return text


def parse_expression(text: str) -> MixedExpression:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def need(kind: str) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if kind == "int":
            try:
                int(tok)
            except ValueError as exc:
                raise ParseError(f"expected integer, got {tok!r}") from exc
        return tok

    # iterative shift-reduce over the s-expression
    work: list[list] = []
    result: MixedExpression | None = None

    def reduce_frame(frame: list) -> MixedExpression:
        head = frame[0]
        if head == "union":
            if len(frame) != 3:
                raise ParseError("union needs exactly two children")
            return Union(frame[1], frame[2])
        if head in ("edge", "arc", "relabel"):
            if len(frame) != 4:
                raise ParseError(f"{head} needs two labels and one child")
            i, j, child = int(frame[1]), int(frame[2]), frame[3]
            if head == "edge":
                return AddEdge(i, j, child)
            if head == "arc":
                return AddArc(i, j, child)
            return Relabel(i, j, child)
        raise ParseError(f"unknown operator {head!r}")

    while pos < len(tokens):
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            op = need("sym")
            if op == "intro":
                label = int(need("int"))
                if need("sym") != ")":
                    raise ParseError("intro takes one label")
                node: MixedExpression = Introduce(label)
                if work:
                    work[-1].append(node)
                else:
                    if result is not None:
                        raise ParseError("multiple top-level expressions")
                    result = node
            else:
                frame = [op]
                if op in ("edge", "arc", "relabel"):
                    frame.append(need("int"))
                    frame.append(need("int"))
                elif op != "union":
                    raise ParseError(f"unknown operator {op!r}")
                work.append(frame)
        elif tok == ")":
            if not work:
                raise ParseError("unbalanced ')'")
            node = reduce_frame(work.pop())
            if work:
                work[-1].append(node)
            else:
                if result is not None:
                    raise ParseError("multiple top-level expressions")
                result = node
        else:
            raise ParseError(f"unexpected token {tok!r}")
    if work or result is None:
        raise ParseError("unbalanced or empty expression")
    return result


# ---------------------------------------------------------------------------
# constructive expressions
# ---------------------------------------------------------------------------

def _union_fold(parts: list[MixedExpression]) -> MixedExpression:
    expr = parts[0]
    for nxt in parts[1:]:
        expr = Union(expr, nxt)
    return expr


def ndm_expression(g: MixedGraph) -> MixedExpression:
    """A (ndm+1)-label expression constructing g.

    Labels 1..w hold the classes of the mixed neighborhood partition; the
    auxiliary label w+1 threads each clique class together vertex by vertex.
    Introduce order follows ``ndm_introduce_order``.
    """
    if g.n == 0:
        raise ValueError("cannot express the empty graph")
    part = mixed_neighborhood_partition(g)
    w = len(part.classes)
    aux = w + 1
    class_exprs: list[MixedExpression] = []
    for idx, cls in enumerate(part.classes):
        label = idx + 1
        members = sorted(cls)
        if part.class_kinds[idx] == "independent":
            expr = _union_fold([Introduce(label) for _ in members])
        else:
            expr = None
            for _ in members:
                piece: MixedExpression = Introduce(aux)
                grown = piece if expr is None else Union(expr, piece)
                grown = AddEdge(label, aux, grown)
                expr = Relabel(aux, label, grown)
        class_exprs.append(expr)
    expr = _union_fold(class_exprs)
    reps = [sorted(cls)[0] for cls in part.classes]
    for i in range(w):
        for j in range(i + 1, w):
            u, v = reps[i], reps[j]
            if normalize_edge(u, v) in g.edges:
                expr = AddEdge(i + 1, j + 1, expr)
            elif (u, v) in g.arcs:
                expr = AddArc(i + 1, j + 1, expr)
            elif (v, u) in g.arcs:
                expr = AddArc(j + 1, i + 1, expr)
    return expr


def ndm_introduce_order(g: MixedGraph) -> list[int]:
    """Original vertex ids in the introduce order used by ndm_expression."""
    part = mixed_neighborhood_partition(g)
    order: list[int] = []
    for cls in part.classes:
        order.extend(sorted(cls))
    return order


def directed_path_expression(length: int) -> MixedExpression:
    """3-label expression for the directed path with ``length`` arcs.

    Repeats the extend-relabel round: shift the two frontier labels down,
    union a fresh label-3 vertex, and draw the arc into it.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return Introduce(1)
    expr: MixedExpression = AddArc(1, 2, Union(Introduce(1), Introduce(2)))
    for step in range(length - 1):
        if step > 0:
            expr = Relabel(3, 2, Relabel(2, 1, expr))
        expr = AddArc(2, 3, Union(expr, Introduce(3)))
    return expr


def tournament_expression(n: int) -> MixedExpression:
    """A 2-label expression for the acyclic tournament on n vertices.

    Each new vertex enters with the scratch label, receives arcs from all
    earlier vertices, and is folded into the main label.
    """
    if n < 1:
        raise ValueError("tournament needs at least one vertex")
    expr: MixedExpression = Introduce(1)
    for _ in range(n - 1):
        expr = Relabel(2, 1, AddArc(1, 2, Union(expr, Introduce(2))))
    return expr


def mixed_to_directed(e: MixedExpression) -> MixedExpression:
    """Replace every edge operation by the two opposite arc operations."""
    rebuilt: list[MixedExpression] = []
    for node in _walk_postorder(e):
        if isinstance(node, Introduce):
            rebuilt.append(Introduce(node.label))
        elif isinstance(node, Union):
            right = rebuilt.pop()
            left = rebuilt.pop()
            rebuilt.append(Union(left, right))
        elif isinstance(node, Relabel):
            rebuilt.append(Relabel(node.old, node.new, rebuilt.pop()))
        elif isinstance(node, AddArc):
            rebuilt.append(AddArc(node.i, node.j, rebuilt.pop()))
        else:
            rebuilt.append(AddArc(node.j, node.i, AddArc(node.i, node.j, rebuilt.pop())))
    return rebuilt.pop()


# ---------------------------------------------------------------------------
# transitive-closure expansion
# ---------------------------------------------------------------------------

TC_WIDTH_CAP = 3


class _TcBuilder:
    """Rewrites an expression so it constructs the transitive closure.

    Composite labels (base, I, O) track, per vertex, the base labels with a
    directed path to it (I) and reachable from it (O); arc operations then
    eagerly add every transitive arc between occupied label pairs. Label
    occupancy is simulated during the rewrite, so vacuous operations are
    elided and edges destined to be overridden by closure arcs are never
    added. If two vertices share a composite label but disagree on whether a
    relation survives in the closure, no label-uniform expression exists and
    UnsupportedClosureExpression is raised.
    """

    def __init__(self, e: MixedExpression, cap: int):
        self.expr = e
        ell = width(e)
        if ell > cap:
            raise WidthCapExceeded(f"expression width {ell} exceeds cap {cap}")
        self.base_labels = self._collect_labels(e)
        self.closure = transitive_closure(evaluate(e).graph)
        # simulation state
        self.vertex_label: dict[int, tuple[int, frozenset[int], frozenset[int]]] = {}
        self.arcs: set[tuple[int, int]] = set()
        self.edges: set[tuple[int, int]] = set()
        self.counter = 0
        self.encoding: dict[tuple[int, frozenset[int], frozenset[int]], int] = {}

    @staticmethod
    def _collect_labels(e: MixedExpression) -> list[int]:
        labels: set[int] = set()
        for node in _walk_postorder(e):
            if isinstance(node, Introduce):
                labels.add(node.label)
            elif isinstance(node, (AddEdge, AddArc)):
                labels.update((node.i, node.j))
            elif isinstance(node, Relabel):
                labels.update((node.old, node.new))
        return sorted(labels)

    def enc(self, label: tuple[int, frozenset[int], frozenset[int]]) -> int:
        if label not in self.encoding:
            base, iset, oset = label
            li = self.base_labels.index(base)
            bits = len(self.base_labels)
            imask = sum(1 << self.base_labels.index(x) for x in iset)
            omask = sum(1 << self.base_labels.index(x) for x in oset)
            self.encoding[label] = 1 + li * (1 << (2 * bits)) + (imask << bits) + omask
        return self.encoding[label]

    def occupied(self, scope: set[int]) -> dict[tuple[int, frozenset[int], frozenset[int]], list[int]]:
        groups: dict[tuple[int, frozenset[int], frozenset[int]], list[int]] = {}
        for v in sorted(scope):
            groups.setdefault(self.vertex_label[v], []).append(v)
        return groups

    def _relabel_groups(
        self,
        expr: MixedExpression,
        updates: list[tuple[tuple, tuple]],
        scope: set[int],
    ) -> MixedExpression:
        # updates are (source, target) with idempotent targets; identity skipped
        for src, dst in sorted(updates, key=lambda p: self.enc(p[0])):
            if src == dst:
                continue
            expr = Relabel(self.enc(src), self.enc(dst), expr)
            for v in scope:
                if self.vertex_label[v] == src:
                    self.vertex_label[v] = dst
        return expr

    def build(self) -> MixedExpression:
        # operations act on the vertices of their own subtree only, so the
        # rebuilt expressions carry their vertex scopes alongside
        rebuilt: list[MixedExpression] = []
        scopes: list[set[int]] = []
        for node in _walk_postorder(self.expr):
            if isinstance(node, Introduce):
                self.counter += 1
                lab = (node.label, frozenset((node.label,)), frozenset((node.label,)))
                self.vertex_label[self.counter] = lab
                rebuilt.append(Introduce(self.enc(lab)))
                scopes.append({self.counter})
            elif isinstance(node, Union):
                right = rebuilt.pop()
                left = rebuilt.pop()
                right_scope = scopes.pop()
                left_scope = scopes.pop()
                rebuilt.append(Union(left, right))
                scopes.append(left_scope | right_scope)
            elif isinstance(node, Relabel):
                rebuilt.append(self._rewrite_relabel(node, rebuilt.pop(), scopes[-1]))
            elif isinstance(node, AddEdge):
                rebuilt.append(self._rewrite_edge(node, rebuilt.pop(), scopes[-1]))
            else:
                rebuilt.append(self._rewrite_arc(node, rebuilt.pop(), scopes[-1]))
        return rebuilt.pop()

    def _rewrite_relabel(
        self, node: Relabel, expr: MixedExpression, scope: set[int]
    ) -> MixedExpression:
        i, j = node.old, node.new
        # pass 1: base component
        updates = [
            (lab, (j, lab[1], lab[2]))
            for lab in self.occupied(scope)
            if lab[0] == i
        ]
        expr = self._relabel_groups(expr, updates, scope)
        # pass 2: reaching sets
        updates = [
            (lab, (lab[0], lab[1] - {i} | {j}, lab[2]))
            for lab in self.occupied(scope)
            if i in lab[1]
        ]
        expr = self._relabel_groups(expr, updates, scope)
        # pass 3: reachable sets
        updates = [
            (lab, (lab[0], lab[1], lab[2] - {i} | {j}))
            for lab in self.occupied(scope)
            if i in lab[2]
        ]
        return self._relabel_groups(expr, updates, scope)

    def _rewrite_edge(
        self, node: AddEdge, expr: MixedExpression, scope: set[int]
    ) -> MixedExpression:
        groups = self.occupied(scope)
        pairs = [
            (a, b)
            for a in groups
            if a[0] == node.i
            for b in groups
            if b[0] == node.j
        ]
        for a, b in sorted(pairs, key=lambda p: (self.enc(p[0]), self.enc(p[1]))):
            keep = drop = fresh = 0
            for u in groups[a]:
                for w in groups[b]:
                    pair = normalize_edge(u, w)
                    if pair in self.closure.edges:
                        keep += 1
                        if pair not in self.edges:
                            fresh += 1
                    else:
                        drop += 1
            if keep and drop:
                raise UnsupportedClosureExpression(
                    f"labels {a} / {b} mix surviving and overridden edges"
                )
            if not fresh:
                continue  # nothing surviving, or all already added
            for u in groups[a]:
                for w in groups[b]:
                    self.edges.add(normalize_edge(u, w))
            expr = AddEdge(self.enc(a), self.enc(b), expr)
        return expr

    def _rewrite_arc(
        self, node: AddArc, expr: MixedExpression, scope: set[int]
    ) -> MixedExpression:
        i, j = node.i, node.j
        groups = self.occupied(scope)
        # arcs between every reaches-i group and every reached-from-j group
        sources = [a for a in groups if i in a[2]]
        targets = [b for b in groups if j in b[1]]
        ops: list[tuple[tuple, tuple]] = []
        for a in sources:
            for b in targets:
                if a == b:
                    raise DirectedCycleError("arc operation closes a directed cycle")
                fresh = [
                    (u, w)
                    for u in groups[a]
                    for w in groups[b]
                    if (u, w) not in self.arcs
                ]
                if not fresh:
                    continue  # redundant piece elided
                for u, w in fresh:
                    if normalize_edge(u, w) in self.edges:
                        raise UnsupportedClosureExpression(
                            f"transitive arc ({u},{w}) collides with an emitted edge"
                        )
                    self.arcs.add((u, w))
                ops.append((a, b))
        for a, b in sorted(ops, key=lambda p: (self.enc(p[0]), self.enc(p[1]))):
            expr = AddArc(self.enc(a), self.enc(b), expr)
        # label updates: reachability grew across the new arcs
        u_o = frozenset().union(*(b[2] for b in targets)) if targets else frozenset()
        u_i = frozenset().union(*(a[1] for a in sources)) if sources else frozenset()
        updates = [(a, (a[0], a[1], a[2] | u_o)) for a in sources]
        expr = self._relabel_groups(expr, updates, scope)
        updates = [
            (b, (b[0], b[1] | u_i, b[2]))
            for b in self.occupied(scope)
            if j in b[1]
        ]
        return self._relabel_groups(expr, updates, scope)


def tc_expression(e: MixedExpression, cap: int = TC_WIDTH_CAP) -> MixedExpression:
    """Expression constructing the transitive closure of evaluate(e).

    Uses composite labels (base, reaching set, reachable set), at most
    4^w * w of them for input width w. The result is verified against
    ``transitive_closure`` before being returned.
    """
    builder = _TcBuilder(e, cap)
    result = builder.build()
    built = evaluate(result).graph
    if built != builder.closure:
        raise AssertionError("closure construction produced a different graph")
    return result
