"""Contracts shared by every problem plugin, plus exhaustive evaluation oracles.

A problem is described as a labelled transition system: one state space per
variable, a transition function and an integer transition cost per decision,
and an initial value.  The solver core always MAXIMIZES the initial value plus
the sum of transition costs along a complete assignment.  Minimization
problems (TSPTW) plug in with negated costs and a negated bound hook; the CLI
negates reported values back.

Assignments and partial paths are plain lists of decision values: the value at
index k is the decision for variable k.  Paths always fix a consecutive prefix
of variables, so carrying explicit variable indices around would be redundant.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Iterable, Optional, Sequence

NEG_INF = float("-inf")
POS_INF = float("inf")

# Default cap on the number of transitions an exhaustive enumeration may take.
ENUMERATION_LIMIT = 10**7

State = Any


def iter_bits(mask: int):
    """Yield the indices of the set bits of an int bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Problem(ABC):
    """DP model of a discrete maximization problem over variables 0..n-1.

    Required attributes:
      n              -- number of variables
      initial_state  -- root state
      initial_value  -- value of the empty prefix (added to every total)
      negated        -- True when the plugin encodes a minimization problem
                        with negated costs (reports must be sign-corrected)
    """

    n: int
    initial_state: State
    initial_value: int = 0
    negated: bool = False

    @abstractmethod
    def domain(self, state: State, k: int) -> Iterable:
        """Candidate values for variable k out of `state`.

        Values whose infeasibility is cheap to detect may be omitted here;
        `transition` must still reject them when called directly.
        """

    @abstractmethod
    def transition(self, state: State, k: int, value) -> Optional[State]:
        """Next state after assigning `value` to variable k, None if infeasible."""

    @abstractmethod
    def transition_cost(self, state: State, k: int, value) -> int:
        """Immediate reward of assigning `value` to variable k from `state`."""

    def rough_bound(self, state: State, value_top, k: int):
        """Cheap admissible bound on the best total reachable through `state`.

        `value_top` is the value of the best known prefix into `state` and k
        is the layer (number of decided variables).  The returned number must
        be >= the total objective of every feasible completion whose prefix
        value is `value_top`.  The default gives no information; NEG_INF acts
        as a prune sentinel meaning "no feasible completion exists".
        """
        return POS_INF


class Relaxation(ABC):
    """Merge/relax operator pair used when a layer must be squeezed.

    `merge` must over-approximate: every completion feasible from any input
    state stays feasible (with a value at least as large after `relax_arc`)
    from the merged state.
    """

    @abstractmethod
    def merge(self, states: Sequence[State]) -> State:
        """Combine the states of the nodes selected for merging."""

    def relax_arc(self, weight, head_state: State, merged_state: State):
        """Weight of an arc redirected from its original head onto the merge.

        `head_state` is the state of the merged-away node the arc used to
        enter.  The default keeps the weight unchanged.
        """
        return weight


def evaluate_assignment(problem: Problem, values: Sequence):
    """Total objective of a complete assignment, or None when infeasible.

    Replays the transition system from the initial state; any rejected
    transition makes the whole assignment infeasible.
    """
    if len(values) != problem.n:
        raise ValueError(f"expected {problem.n} decisions, got {len(values)}")
    state = problem.initial_state
    total = problem.initial_value
    for k, value in enumerate(values):
        nxt = problem.transition(state, k, value)
        if nxt is None:
            return None
        total += problem.transition_cost(state, k, value)
        state = nxt
    return total


def best_completion(problem: Problem, state: State, k: int, prefix_value,
                    limit: int = ENUMERATION_LIMIT):
    """Best total objective of any completion from `state` at layer k.

    Exhaustive depth-first enumeration over the remaining variables; the
    prefix is assumed to have value `prefix_value`.  Returns NEG_INF when no
    feasible completion exists.  Raises ValueError when the enumeration would
    exceed `limit` transitions.
    """
    budget = [limit]

    def go(state, k, acc):
        if k == problem.n:
            return acc
        best = NEG_INF
        for value in problem.domain(state, k):
            budget[0] -= 1
            if budget[0] < 0:
                raise ValueError("enumeration limit exceeded")
            nxt = problem.transition(state, k, value)
            if nxt is None:
                continue
            sub = go(nxt, k + 1, acc + problem.transition_cost(state, k, value))
            if sub > best:
                best = sub
        return best

    return go(state, k, prefix_value)


def brute_force_optimum(problem: Problem, limit: int = ENUMERATION_LIMIT):
    """Exhaustive maximum of evaluate_assignment over all assignments.

    Returns (value, assignment); (NEG_INF, None) when the problem has no
    feasible assignment.  An n = 0 problem yields (initial_value, []).
    Refuses oversized enumerations by raising ValueError once `limit`
    transitions have been taken.
    """
    budget = [limit]
    best = [NEG_INF, None]

    def go(state, k, acc, prefix):
        if k == problem.n:
            if acc > best[0]:
                best[0] = acc
                best[1] = list(prefix)
            return
        for value in problem.domain(state, k):
            budget[0] -= 1
            if budget[0] < 0:
                raise ValueError("enumeration limit exceeded")
            nxt = problem.transition(state, k, value)
            if nxt is None:
                continue
            prefix.append(value)
            go(nxt, k + 1, acc + problem.transition_cost(state, k, value), prefix)
            prefix.pop()

    go(problem.initial_state, 0, problem.initial_value, [])
    if problem.n == 0:
        return problem.initial_value, []
    return best[0], best[1]
