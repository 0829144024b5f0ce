import pytest

from ddbnb import (DiagramKind, SubProblem, best_completion,
                   brute_force_optimum, compile_diagram)
from ddbnb import instances as io
from ddbnb.problems import misp

from support import independent_set_optimum, make_problem


def build(n, edges, weights):
    return misp.MaxIndependentSet(io.Graph(n, {e: 1 for e in edges}, weights))


FULL3 = 0b111


def test_take_vertex_clears_neighbors():
    triangle = build(3, [(0, 1), (0, 2), (1, 2)], (1, 1, 1))
    assert triangle.transition(FULL3, 0, 1) == 0


def test_take_vertex_on_edgeless_graph():
    edgeless = build(3, [], (1, 1, 1))
    assert edgeless.transition(FULL3, 0, 1) == 0b110


def test_take_middle_of_path():
    # frozen from the brute-force independence check: taking 0 on the path
    # 0-1-2 leaves only vertex 2 selectable
    path = build(3, [(0, 1), (1, 2)], (1, 1, 1))
    assert path.transition(FULL3, 0, 1) == 0b100
    assert independent_set_optimum(io.Graph(3, {(0, 1): 1, (1, 2): 1},
                                            (1, 1, 1))) == 2


def test_take_unavailable_vertex_is_infeasible():
    edgeless = build(2, [], (1, 1))
    assert edgeless.transition(0b10, 0, 1) is None


def test_skip_only_clears_own_bit():
    triangle = build(3, [(0, 1), (0, 2), (1, 2)], (1, 1, 1))
    assert triangle.transition(FULL3, 0, 0) == 0b110


def test_costs():
    prob = build(3, [], (4, 7, -3))
    assert prob.transition_cost(FULL3, 0, 1) == 4
    assert prob.transition_cost(FULL3, 0, 0) == 0
    assert prob.transition_cost(FULL3, 2, 1) == -3


def test_domain_omits_unavailable_take():
    prob = build(2, [(0, 1)], (1, 1))
    assert prob.domain(0b11, 0) == (0, 1)
    assert prob.domain(0b10, 0) == (0,)


def test_merge_is_union():
    relaxation = misp.MispRelaxation()
    assert relaxation.merge([0b101, 0b011]) == 0b111
    assert relaxation.merge([0b010]) == 0b010
    assert relaxation.merge([0, 0]) == 0
    assert relaxation.relax_arc(9, 0b101, 0b111) == 9


def test_rough_bound_sums_positive_candidates():
    prob = build(3, [], (1, 4, -3))
    assert prob.rough_bound(0b110, 10, 1) == 14
    assert prob.rough_bound(0, 9, 3) == 9


@pytest.mark.parametrize("seed", range(10))
def test_exact_compile_matches_independence_oracle(seed):
    graph, problem, relaxation = make_problem("misp", seed, 4 + seed % 9)
    dd = compile_diagram(problem, relaxation,
                         SubProblem(problem.initial_state, 0),
                         DiagramKind.EXACT)
    assert dd.value == independent_set_optimum(graph)


@pytest.mark.parametrize("seed", range(6))
def test_rough_bound_admissible_on_exact_nodes(seed):
    _, problem, relaxation = make_problem("misp", seed, 8)
    dd = compile_diagram(problem, relaxation,
                         SubProblem(problem.initial_state, 0),
                         DiagramKind.EXACT)
    for depth, layer in enumerate(dd.layers):
        k = depth + dd.first_layer
        for node in layer:
            bound = problem.rough_bound(node.state, node.value_top, k)
            assert bound >= best_completion(problem, node.state, k,
                                            node.value_top)


@pytest.mark.parametrize("width", [1, 2, 3, 5])
def test_relaxed_dominates_at_every_width(width):
    for seed in range(6):
        _, problem, relaxation = make_problem("misp", seed, 8)
        best, _ = brute_force_optimum(problem)
        dd = compile_diagram(problem, relaxation,
                             SubProblem(problem.initial_state, 0),
                             DiagramKind.RELAXED, width)
        assert dd.value >= best
