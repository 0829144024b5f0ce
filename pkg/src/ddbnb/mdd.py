"""Top-down compilation of exact, restricted and relaxed decision diagrams.

A diagram unrolls the transition system of a subproblem layer by layer.
Nodes within a layer are deduplicated by state, keeping the best
value-from-root and its incoming arc.  When a layer of a width-bounded
diagram grows past the width limit it is squeezed: a restricted diagram
simply drops the nodes with the smallest value-from-root, a relaxed diagram
keeps the best `width - 1` of them and folds the rest into a single merged
node through the problem's merge/relax operators.  Ranking ties break on
insertion order so compilation is fully deterministic.

A node is exact while every path into it is a path of the exact diagram,
i.e. it is not a product of merging and all of its parents are exact.  The
last exact layer is the layer right above the first merged node; its nodes
are the branching frontier handed back to the branch-and-bound driver.

With `use_rub`, candidate children whose cheap completion bound cannot beat
the incumbent are discarded before insertion.  This may only remove
completions that are no better than the incumbent, so values derived from the
diagram remain valid for pruning and incumbent improvement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

from .model import NEG_INF, POS_INF, Problem, Relaxation
from .pruning import rub_admits


class DiagramKind(Enum):
    EXACT = "exact"
    RESTRICTED = "restricted"
    RELAXED = "relaxed"


@dataclass(slots=True)
class Node:
    state: Any
    value_top: Any                      # value of the best root-to-node path
    best_arc: Optional[tuple] = None    # (parent Node, decision value, weight)
    exact: bool = True
    inbound: Optional[list] = None      # all (parent, value, weight) arcs
    value_bot: Any = NEG_INF            # value of the best node-to-terminal path
    marked: bool = False                # reachable from the terminal layer
    local_bound: Any = NEG_INF


@dataclass(slots=True)
class SubProblem:
    """Fringe entry: a diagram root plus the path that reached it."""

    state: Any
    value_top: Any
    path: Tuple = ()
    ub: Any = POS_INF


@dataclass
class DecisionDiagram:
    kind: DiagramKind
    n: int
    first_layer: int                    # number of variables fixed by the root
    layers: List[List[Node]] = field(default_factory=list)
    is_exact: bool = True               # no restriction/relaxation occurred
    last_exact_layer: Optional[int] = None  # absolute layer index
    best_terminal: Optional[Node] = None
    nodes_created: int = 0

    @property
    def value(self):
        return self.best_terminal.value_top if self.best_terminal else NEG_INF


def _rank(nodes: Sequence[Node]) -> List[int]:
    """Indices sorted by value-from-root descending, insertion order on ties."""
    return sorted(range(len(nodes)), key=lambda i: (-nodes[i].value_top, i))


def restrict_layer(nodes: List[Node], width: int) -> List[Node]:
    """Keep the `width` nodes with the largest value-from-root."""
    if len(nodes) <= width:
        return nodes
    keep = set(_rank(nodes)[:width])
    return [node for i, node in enumerate(nodes) if i in keep]


def relax_layer(nodes: List[Node], width: int, relaxation: Relaxation) -> List[Node]:
    """Merge all nodes ranked below the best `width - 1` into a single node.

    The merged state may collide with a kept node's state, in which case the
    redirected arcs fold into that node and poison its exactness.  A
    selection of one node reduces to flagging it inexact (merging is the
    identity on singletons), which only arises when callers pass a layer of
    exactly `width` nodes; the compiler itself only squeezes layers that
    exceed the width.
    """
    order = _rank(nodes)
    kept = [nodes[i] for i in sorted(order[:width - 1])]
    selected = [nodes[i] for i in sorted(order[width - 1:])]
    if not selected:
        return nodes
    merged_state = relaxation.merge([node.state for node in selected])

    target = None
    for node in kept:
        if node.state == merged_state:
            target = node
            break
    fresh = target is None
    if fresh:
        target = Node(merged_state, NEG_INF, None, exact=False, inbound=[])
    else:
        target.exact = False

    for node in selected:
        for parent, value, weight in (node.inbound or ()):
            relaxed = relaxation.relax_arc(weight, node.state, merged_state)
            candidate = parent.value_top + relaxed
            if candidate > target.value_top:
                target.value_top = candidate
                target.best_arc = (parent, value, relaxed)
            target.inbound.append((parent, value, relaxed))
    target.exact = False
    return kept + [target] if fresh else kept


def compile_diagram(problem: Problem, relaxation: Optional[Relaxation],
                    sub: SubProblem, kind: DiagramKind, width: int = 0,
                    incumbent=NEG_INF, use_rub: bool = False,
                    keep_arcs: Optional[bool] = None) -> DecisionDiagram:
    """Unroll the subproblem rooted at `sub.state` into a decision diagram.

    `width` bounds every layer below the root for restricted/relaxed kinds
    (exact diagrams never bound).  `incumbent` and `use_rub` drive the
    before-insertion completion-bound filter.  `keep_arcs` forces full
    inbound arc lists (on by default for relaxed diagrams, which need them
    for the bottom-up bound pass and for merging).
    """
    if kind is not DiagramKind.EXACT and width < 1:
        raise ValueError("width-bounded compilation needs width >= 1")
    if kind is DiagramKind.RELAXED and relaxation is None:
        raise ValueError("relaxed compilation needs a relaxation")
    keep = kind is DiagramKind.RELAXED if keep_arcs is None else keep_arcs

    first = len(sub.path)
    root = Node(sub.state, sub.value_top, None, exact=True,
                inbound=[] if keep else None)
    dd = DecisionDiagram(kind=kind, n=problem.n, first_layer=first)
    dd.layers.append([root])
    dd.nodes_created = 1

    domain = problem.domain
    transition = problem.transition
    cost = problem.transition_cost
    first_inexact: Optional[int] = None

    for k in range(first, problem.n):
        by_state: dict = {}
        for node in dd.layers[-1]:
            state = node.state
            base = node.value_top
            for value in domain(state, k):
                child_state = transition(state, k, value)
                if child_state is None:
                    continue
                weight = cost(state, k, value)
                candidate = base + weight
                if use_rub and not rub_admits(problem, child_state, candidate,
                                              k + 1, incumbent):
                    continue
                child = by_state.get(child_state)
                if child is None:
                    child = Node(child_state, candidate, (node, value, weight),
                                 exact=node.exact,
                                 inbound=[] if keep else None)
                    by_state[child_state] = child
                    dd.nodes_created += 1
                else:
                    if candidate > child.value_top:
                        child.value_top = candidate
                        child.best_arc = (node, value, weight)
                    child.exact = child.exact and node.exact
                if keep:
                    child.inbound.append((node, value, weight))

        layer = list(by_state.values())
        if kind is not DiagramKind.EXACT and len(layer) > width:
            if kind is DiagramKind.RESTRICTED:
                layer = restrict_layer(layer, width)
            else:
                layer = relax_layer(layer, width, relaxation)
                if len(layer) == width:
                    # width - 1 kept plus a fresh merge node; a collision
                    # folds into a kept node instead and creates nothing
                    dd.nodes_created += 1
            dd.is_exact = False
        if first_inexact is None and any(not nd.exact for nd in layer):
            first_inexact = k + 1
        dd.layers.append(layer)
        if not layer:
            break

    if len(dd.layers) == problem.n - first + 1 and dd.layers[-1]:
        dd.best_terminal = max(dd.layers[-1], key=lambda nd: nd.value_top)
    if first_inexact is not None:
        dd.last_exact_layer = first_inexact - 1
    elif not dd.is_exact:
        # nodes were dropped (restriction) but none merged
        dd.last_exact_layer = first + len(dd.layers) - 1
    return dd


def best_solution(dd: DecisionDiagram):
    """(value, decision values from the diagram root) of the best terminal path."""
    node = dd.best_terminal
    if node is None:
        return None
    values = []
    while node.best_arc is not None:
        parent, value, _ = node.best_arc
        values.append(value)
        node = parent
    values.reverse()
    return dd.value, values


def _path_to(node: Node) -> list:
    values = []
    while node.best_arc is not None:
        parent, value, _ = node.best_arc
        values.append(value)
        node = parent
    values.reverse()
    return values


def exact_cutset(dd: DecisionDiagram, use_local_bounds: bool = True) -> List[SubProblem]:
    """One subproblem per node of the last exact layer of a relaxed diagram.

    Bounds come from the per-node local bounds when they were computed,
    otherwise every subproblem inherits the diagram value.
    """
    if dd.kind is not DiagramKind.RELAXED or dd.is_exact:
        raise ValueError("exact cutset is only defined for inexact relaxed diagrams")
    rel = dd.last_exact_layer - dd.first_layer
    subs = []
    for node in dd.layers[rel]:
        ub = node.local_bound if use_local_bounds else dd.value
        subs.append(SubProblem(node.state, node.value_top,
                               tuple(_path_to(node)), ub))
    return subs


def to_dot(dd: DecisionDiagram) -> str:
    """GraphViz rendering: states and path values on nodes, a double border
    on inexact nodes, decision/weight labels on arcs."""
    ids = {}
    out = ["digraph dd {", "  rankdir=TB;"]
    for layer in dd.layers:
        for node in layer:
            ids[id(node)] = name = f"n{len(ids)}"
            shape = ', peripheries=2' if not node.exact else ''
            out.append(f'  {name} [label="{node.state}\\nv={node.value_top}"{shape}];')
    for layer in dd.layers[1:]:
        for node in layer:
            arcs = node.inbound if node.inbound is not None else (
                [node.best_arc] if node.best_arc else [])
            for parent, value, weight in arcs:
                out.append(f'  {ids[id(parent)]} -> {ids[id(node)]}'
                           f' [label="{value}/{weight}"];')
    out.append("}")
    return "\n".join(out) + "\n"
