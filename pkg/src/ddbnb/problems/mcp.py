"""Maximum cut with signed integer edge weights.

Vertices are assigned in index order to one of the two cut sides, S (value 0)
or T (value 1).  The state after k decisions is a length-n vector whose
component l >= k is the net benefit of eventually putting vertex l in T:
the sum of +-w[i][l] over decided i, positive when i went to S.  Components
below k are zero.

The total objective starts from the sum of all negative edge weights and the
per-decision cost collects, at decision time of vertex k:

  * the chosen side of the accumulated net benefit, (-s_k)^+ for S and
    (s_k)^+ for T, and
  * for every undecided l, the benefit guaranteed regardless of where l ends
    up: min(|s_l|, |w_kl|) whenever the update to component l cancels against
    its current sign (s_l * w_kl < 0 when k joins S, > 0 when k joins T).

Replaying any complete assignment through these costs reproduces its exact
cut value; the cancellation condition must follow the chosen side or the
identity breaks (checked against exhaustive enumeration in the tests).

Merging keeps, per component, the common-sign value closest to zero (zero on
sign disagreement); a redirected arc is compensated by the magnitude its head
lost, so no path length can decrease.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from ..instances import Graph
from ..model import Problem, Relaxation

S, T = 0, 1


class MaxCut(Problem):
    def __init__(self, graph: Graph):
        self.n = graph.n
        self.w = tuple(tuple(row) for row in graph.weight_matrix())
        self.initial_state = (0,) * self.n
        self.initial_value = sum(min(0, wt) for wt in graph.edges.values())
        # Layer tables for the completion bound: remaining[k] over-estimates
        # the cut among undecided vertices, settled[k] re-adds the negative
        # edges already interconnecting decided ones.
        rem = [0] * (self.n + 1)
        for i in range(self.n - 1, -1, -1):
            rem[i] = rem[i + 1] + sum(max(0, self.w[i][j])
                                      for j in range(i + 1, self.n))
        neg = [0] * (self.n + 1)
        for k in range(1, self.n + 1):
            neg[k] = neg[k - 1] + sum(min(0, self.w[i][k - 1])
                                      for i in range(k - 1))
        self.remaining = tuple(rem)
        self.settled_negative = tuple(neg)

    def domain(self, state, k: int):
        return (S, T)

    def transition(self, state: Tuple[int, ...], k: int, value: int):
        w_k = self.w[k]
        nxt = list(state)
        nxt[k] = 0
        if value == S:
            for l in range(k + 1, self.n):
                nxt[l] = state[l] + w_k[l]
        else:
            for l in range(k + 1, self.n):
                nxt[l] = state[l] - w_k[l]
        return tuple(nxt)

    def transition_cost(self, state: Tuple[int, ...], k: int, value: int) -> int:
        s_k = state[k]
        cost = max(0, -s_k) if value == S else max(0, s_k)
        w_k = self.w[k]
        for l in range(k + 1, self.n):
            cross = state[l] * w_k[l]
            if value == S:
                if cross < 0:
                    cost += min(abs(state[l]), abs(w_k[l]))
            elif cross > 0:
                cost += min(abs(state[l]), abs(w_k[l]))
        return cost

    def rough_bound(self, state: Tuple[int, ...], value_top, k: int):
        pending = sum(abs(state[l]) for l in range(k, self.n))
        return (value_top + pending + self.remaining[k]
                + self.settled_negative[k] - self.initial_value)


class BenefitVectorRelaxation(Relaxation):
    """Componentwise merge for net-benefit vector states (shared with MAX2SAT)."""

    def merge(self, states: Sequence[Tuple[int, ...]]) -> Tuple[int, ...]:
        merged = []
        for comps in zip(*states):
            lo, hi = min(comps), max(comps)
            if lo >= 0:
                merged.append(lo)
            elif hi <= 0:
                merged.append(hi)
            else:
                merged.append(0)
        return tuple(merged)

    def relax_arc(self, weight, head_state, merged_state):
        lost = 0
        for u_l, m_l in zip(head_state, merged_state):
            lost += abs(u_l) - abs(m_l)
        return weight + lost


McpRelaxation = BenefitVectorRelaxation


def load(text: str):
    from ..instances import parse_graph

    graph = parse_graph(text)
    return MaxCut(graph), McpRelaxation()
