"""Bound-based pruning: per-cutset local bounds and the cheap admission check.

`compute_local_bounds` walks a relaxed diagram bottom-up from its terminal
layer, stopping once it crosses the last exact layer.  Along the way it marks
the nodes that can actually reach a terminal and accumulates, per node, the
value of its best node-to-terminal path.  A cutset node's local bound is then
its best root-to-node value plus that suffix value: the value of the best
full path threading through it, an upper bound on anything attainable from
its state.  Unmarked cutset nodes are dead ends and get the NEG_INF bound.

Everything lives inside the already-allocated nodes (one flag and two numbers
each) and the traversal touches only arcs the compilation created, so the
pass costs nothing beyond the compilation itself.  Note that a cutset taken
anywhere other than a full exact layer would need the traversal to continue
all the way up to the root; stopping at the last exact layer is only sound
because the cutset here always is that whole layer.

`rub_admits` is the admission test applied to candidate nodes while a
diagram is being compiled: a node survives only when its cheap completion
bound strictly beats the incumbent.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .model import NEG_INF, Problem

if TYPE_CHECKING:  # pragma: no cover
    from .mdd import DecisionDiagram


def rub_admits(problem: Problem, state, value_top, layer: int, incumbent) -> bool:
    """True when `state` may still lead to something better than `incumbent`."""
    return problem.rough_bound(state, value_top, layer) > incumbent


def compute_local_bounds(dd: "DecisionDiagram") -> int:
    """Annotate the last-exact-layer nodes of `dd` with their local bounds.

    Returns the number of node visits, which callers may compare against
    `dd.nodes_created` to confirm the pass stays within the compilation's
    own footprint.
    """
    from .mdd import DiagramKind

    if dd.kind is not DiagramKind.RELAXED:
        raise ValueError("local bounds are computed on relaxed diagrams")
    if dd.is_exact or dd.last_exact_layer is None:
        raise ValueError("an exact diagram has no cutset to annotate")

    visits = 0
    if dd.best_terminal is not None:
        for node in dd.layers[-1]:
            node.marked = True
            node.value_bot = 0
        cutoff = dd.last_exact_layer - dd.first_layer
        for rel in range(len(dd.layers) - 1, cutoff, -1):
            for node in dd.layers[rel]:
                visits += 1
                if not node.marked:
                    continue
                bot = node.value_bot
                for parent, _, weight in (node.inbound or ()):
                    parent.marked = True
                    candidate = bot + weight
                    if candidate > parent.value_bot:
                        parent.value_bot = candidate

    rel = dd.last_exact_layer - dd.first_layer
    for node in dd.layers[rel]:
        visits += 1
        if node.marked:
            node.local_bound = node.value_top + node.value_bot
        else:
            node.local_bound = NEG_INF
    return visits
