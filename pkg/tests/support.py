"""Shared test helpers: independent semantic oracles and suite builders.

The oracles work straight off the instance containers, never through the DP
models, so model bugs cannot hide behind them.
"""

from itertools import permutations, product

from ddbnb import instances as io
from ddbnb.problems import max2sat, mcp, misp, tsptw


def independent_set_optimum(graph: io.Graph) -> int:
    best = 0
    edges = list(graph.edges)
    for mask in range(1 << graph.n):
        if any((mask >> u) & 1 and (mask >> v) & 1 for u, v in edges):
            continue
        value = sum(graph.vertex_weights[i]
                    for i in range(graph.n) if (mask >> i) & 1)
        best = max(best, value)
    return best


def max_cut_optimum(graph: io.Graph) -> int:
    best = 0
    for mask in range(1 << (graph.n - 1)) if graph.n else [0]:
        value = sum(w for (u, v), w in graph.edges.items()
                    if ((mask >> u) & 1) != ((mask >> v) & 1))
        best = max(best, value)
    return best


def satisfied_weight(formula: io.CnfFormula, assignment) -> int:
    total = 0
    for weight, lits in formula.clauses:
        if any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in lits):
            total += weight
    return total


def max2sat_optimum(formula: io.CnfFormula) -> int:
    return max(satisfied_weight(formula, bits)
               for bits in product((0, 1), repeat=formula.n_vars))


def tour_makespan(inst: io.TsptwInstance, order):
    """Arrival back at the depot for a visit order, None when windows break.

    Early arrivals wait for the window to open; the final return does not
    wait, only has to beat the depot's closing time.
    """
    t, prev = 0, 0
    for city in order:
        arrival = t + inst.dist[prev][city]
        if arrival > inst.windows[city][1]:
            return None
        t = max(arrival, inst.windows[city][0])
        prev = city
    arrival = t + inst.dist[prev][0]
    if arrival > inst.windows[0][1]:
        return None
    return arrival


def tsptw_optimum(inst: io.TsptwInstance):
    """Minimum makespan over all visit permutations, None when infeasible."""
    best = None
    for order in permutations(range(1, inst.n)):
        span = tour_makespan(inst, order)
        if span is not None and (best is None or span < best):
            best = span
    return best


def make_problem(name: str, seed: int, n: int, p: float = 0.5):
    if name == "misp":
        graph = io.random_misp(n, p, seed)
        return graph, misp.MaxIndependentSet(graph), misp.MispRelaxation()
    if name == "mcp":
        graph = io.random_mcp(n, p, seed)
        return graph, mcp.MaxCut(graph), mcp.McpRelaxation()
    if name == "max2sat":
        formula = io.random_max2sat(2 * n, p, seed)
        return formula, max2sat.Max2Sat(formula), max2sat.Max2SatRelaxation()
    if name == "tsptw":
        inst = io.random_tsptw(n, seed)
        return inst, tsptw.Tsptw(inst), tsptw.TsptwRelaxation()
    raise ValueError(name)


def oracle_optimum(name: str, instance):
    """Sign-corrected optimum of the matching independent oracle."""
    if name == "misp":
        return independent_set_optimum(instance)
    if name == "mcp":
        return max_cut_optimum(instance)
    if name == "max2sat":
        return max2sat_optimum(instance)
    span = tsptw_optimum(instance)
    return None if span is None else -span


# crafted four-variable instance where the width-3 relaxation overshoots the
# true optimum of 25 by exactly one
CRAFTED_MISP = io.Graph(4, {(0, 2): 1, (1, 3): 1}, (12, 13, 6, 8))
CRAFTED_EXACT = 25
CRAFTED_RELAXED_W3 = 26
