"""Traveling salesman with time windows, minimizing tour makespan.

The tour starts at the depot (city 0) at time 0, visits every other city
once, and returns to the depot; the objective is the arrival time back at the
depot.  Arriving at a city before its window opens means waiting until it
does; arriving after it closes is infeasible.  The core maximizes, so this
plugin negates every cost and bound and the CLI negates reported values back.

Variables 0..n-2 pick the city visited at each tour position; variable n-1 is
the return leg with the single value 0.  A state carries

  position  -- bitmask of cities the salesman may currently be at
  earliest  -- smallest possible arrival time at any of them
  latest    -- largest possible arrival time
  must      -- cities unvisited on every path into the state
  may       -- cities unvisited on some but not all paths

On exact (never-merged) states position is a singleton, earliest equals
latest and may is empty, which collapses to the classical makespan DP.
Merging unions position and may, intersects must and keeps the widest time
interval.  Redirected arcs keep their weight.

The completion bound underestimates the remaining work with per-city cheapest
inbound edges.  It prunes (returns the NEG_INF sentinel) when too few
window-reachable cities remain to fill the tour, when a mandatory city can no
longer be reached inside its window, or when even the underestimated return
would miss the depot's closing time.  All of its estimates stay below every
true completion without assuming the triangle inequality.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from ..instances import TsptwInstance
from ..model import NEG_INF, Problem, Relaxation, iter_bits


class TsptwState(NamedTuple):
    position: int
    earliest: int
    latest: int
    must: int
    may: int


class Tsptw(Problem):
    negated = True

    def __init__(self, inst: TsptwInstance):
        self.inst = inst
        self.n = inst.n
        self.dist = inst.dist
        self.windows = inst.windows
        self.shortest_edge = inst.shortest_edge
        self.initial_state = TsptwState(1, 0, 0, ((1 << inst.n) - 1) & ~1, 0)
        self.initial_value = 0

    def domain(self, state: TsptwState, k: int):
        if k == self.n - 1:
            return (0,)
        return tuple(iter_bits(state.must | state.may))

    def _arrival(self, state: TsptwState, city: int):
        col = self.dist
        lo = min(col[p][city] for p in iter_bits(state.position))
        hi = max(col[p][city] for p in iter_bits(state.position))
        return state.earliest + lo, state.latest + hi, lo

    def transition(self, state: TsptwState, k: int, city: int):
        if k == self.n - 1:
            if city != 0:
                return None
            lo, hi, _ = self._arrival(state, 0)
            if lo > self.windows[0][1]:
                return None
            return TsptwState(1, lo, max(lo, min(self.windows[0][1], hi)), 0, 0)
        bit = 1 << city
        if not (state.must | state.may) & bit:
            return None
        lo, hi, _ = self._arrival(state, city)
        open_t, close_t = self.windows[city]
        if lo > close_t:
            return None
        earliest = max(open_t, lo)
        latest = max(earliest, min(close_t, hi))
        return TsptwState(bit, earliest, latest,
                          state.must & ~bit, state.may & ~bit)

    def transition_cost(self, state: TsptwState, k: int, city: int) -> int:
        lo, _, travel = self._arrival(state, city)
        if k == self.n - 1:
            return -travel
        wait = max(0, self.windows[city][0] - lo)
        return -(travel + wait)

    def rough_bound(self, state: TsptwState, value_top, k: int):
        earliest = state.earliest
        shortest = self.shortest_edge
        windows = self.windows
        unreachable_may = 0
        for p in iter_bits(state.may):
            if earliest + shortest[p] > windows[p][1]:
                unreachable_may += 1
        must_count = state.must.bit_count()
        may_count = state.may.bit_count()
        slots = (self.n - 1) - k
        if must_count + may_count - unreachable_may < slots:
            return NEG_INF
        base = earliest
        for p in iter_bits(state.must):
            if earliest + shortest[p] > windows[p][1]:
                return NEG_INF
            base += shortest[p]
        depot_close = windows[0][1]
        if base > depot_close:
            return NEG_INF
        if state.must:
            back_from = state.must | state.may
        else:
            back_from = state.position | state.may
        total = base + min(self.dist[p][0] for p in iter_bits(back_from))
        if total > depot_close:
            return NEG_INF
        return -total


class TsptwRelaxation(Relaxation):
    def merge(self, states: Sequence[TsptwState]) -> TsptwState:
        position = 0
        must = -1
        pool = 0
        earliest = None
        latest = None
        for s in states:
            position |= s.position
            must &= s.must
            pool |= s.must | s.may
            earliest = s.earliest if earliest is None else min(earliest, s.earliest)
            latest = s.latest if latest is None else max(latest, s.latest)
        return TsptwState(position, earliest, latest, must, pool & ~must)


def load(text: str):
    from ..instances import parse_tsptw

    return Tsptw(parse_tsptw(text)), TsptwRelaxation()
