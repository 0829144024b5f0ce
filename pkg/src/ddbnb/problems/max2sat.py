"""Weighted MAX2SAT over clauses of at most two literals.

Variables are decided in index order, value 1 = true, 0 = false.  The state
mirrors the max-cut one: component l >= k is the net benefit of eventually
setting variable l true, accumulated from clauses whose other literal was
already falsified.  Deciding variable k collects

  * the weights of unit clauses and pair clauses satisfied by the decision,
  * the chosen side of the accumulated net benefit, (s_k)^+ for true and
    (-s_k)^+ for false, and
  * for every undecided partner l, the weight guaranteed no matter where l
    ends up.  If the decision pushes p onto l's true-side pending weight and
    q onto its false side, that locked-in amount is
    (p + q - |s_l + p - q| + |s_l|) / 2, the growth of the overlap between
    the two pending sides.

Replaying a complete assignment through these costs plus the initial value
(the total weight of tautological clauses, which no decision can falsify)
yields exactly the satisfied weight of that assignment; the exhaustive
assignment oracle in the tests is the binding contract.

The completion bound adds |s_l| for every undecided l, the best pairwise
payoff among undecided pairs, and the best unit payoff per undecided
variable.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..instances import CnfFormula
from ..model import Problem
from .mcp import BenefitVectorRelaxation

Max2SatRelaxation = BenefitVectorRelaxation


class Max2Sat(Problem):
    def __init__(self, formula: CnfFormula):
        n = formula.n_vars
        self.n = n
        taut = [0] * n
        upos = [0] * n
        uneg = [0] * n
        # pair[(i, j)] with i < j: weights of (i or j), (i or -j), (-i or j),
        # (-i or -j)
        pair: Dict[Tuple[int, int], List[int]] = {}
        for weight, lits in formula.clauses:
            if len(lits) == 1:
                var = abs(lits[0]) - 1
                if lits[0] > 0:
                    upos[var] += weight
                else:
                    uneg[var] += weight
                continue
            a, b = lits
            va, vb = abs(a) - 1, abs(b) - 1
            if va == vb:
                if (a > 0) == (b > 0):
                    if a > 0:
                        upos[va] += weight
                    else:
                        uneg[va] += weight
                else:
                    taut[va] += weight
                continue
            if va > vb:
                va, vb, a, b = vb, va, b, a
            slot = pair.setdefault((va, vb), [0, 0, 0, 0])
            slot[(0 if a > 0 else 2) + (0 if b > 0 else 1)] += weight
        self.taut = tuple(taut)
        self.upos = tuple(upos)
        self.uneg = tuple(uneg)
        self.pairs_of: Tuple[Tuple[Tuple[int, int, int, int, int], ...], ...] = tuple(
            tuple((j, *pair[(i, j)]) for j in range(i + 1, n) if (i, j) in pair)
            for i in range(n)
        )
        self.initial_state = (0,) * n
        self.initial_value = sum(taut)

        # Suffix table for the completion bound: per pair the best of the four
        # joint assignments, per variable the best unit polarity (plus the
        # tautologies not yet swallowed by the prefix term).
        best = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            acc = taut[i] + max(upos[i], uneg[i])
            for _, pp, pn, np_, nn in self.pairs_of[i]:
                total = pp + pn + np_ + nn
                acc += total - min(pp, pn, np_, nn)
            best[i] = best[i + 1] + acc
        self.remaining = tuple(best)
        prefix = [0] * (n + 1)
        for k in range(1, n + 1):
            prefix[k] = prefix[k - 1] + taut[k - 1]
        self.settled_taut = tuple(prefix)

    def domain(self, state, k: int):
        return (0, 1)

    def _shift(self, k: int, value: int):
        """Per-partner (delta, total) pushed onto pending weights by decision."""
        if value:
            # truth of k falsifies the -k literals
            return [(j, np_ - nn, np_ + nn) for j, pp, pn, np_, nn in self.pairs_of[k]]
        return [(j, pp - pn, pp + pn) for j, pp, pn, np_, nn in self.pairs_of[k]]

    def transition(self, state: Tuple[int, ...], k: int, value: int):
        nxt = list(state)
        nxt[k] = 0
        for j, delta, _ in self._shift(k, value):
            nxt[j] = state[j] + delta
        return tuple(nxt)

    def transition_cost(self, state: Tuple[int, ...], k: int, value: int) -> int:
        s_k = state[k]
        if value:
            cost = self.upos[k] + max(0, s_k)
        else:
            cost = self.uneg[k] + max(0, -s_k)
        for j, pp, pn, np_, nn in self.pairs_of[k]:
            if value:
                cost += pp + pn
                delta, total = np_ - nn, np_ + nn
            else:
                cost += np_ + nn
                delta, total = pp - pn, pp + pn
            s_j = state[j]
            cost += (total - abs(s_j + delta) + abs(s_j)) // 2
        return cost

    def rough_bound(self, state: Tuple[int, ...], value_top, k: int):
        pending = sum(abs(state[l]) for l in range(k, self.n))
        return (value_top + pending + self.remaining[k]
                + self.settled_taut[k] - self.initial_value)


def load(text: str):
    from ..instances import parse_wcnf

    return Max2Sat(parse_wcnf(text)), Max2SatRelaxation()
