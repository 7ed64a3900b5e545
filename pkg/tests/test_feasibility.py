import random

from hypothesis import given, settings

from hamsolve.feasibility import (
    CLONE_SET,
    DISCONNECTED,
    FORCED_SUBCYCLE,
    ZERO_DEGREE,
    clone_set_check,
    connectivity_check,
    forced_chain_check,
    run_checks,
    zero_degree_check,
)
from hamsolve.graph import Graph
from hamsolve.oracle import enumerate_all, validate_cycle

from conftest import clone_set_instance, digraphs, directed_cycle, g1, random_graph


def test_forced_subcycle_among_degree_one_vertices():
    # 2 -> 3 -> 4 -> 2 all have out-degree 1 while n = 5.
    g = g1(5, {1: [2, 5], 2: [3], 3: [4], 4: [2], 5: [1, 3]})
    assert forced_chain_check(g).reason == FORCED_SUBCYCLE


def test_forced_chain_solves_directed_cycle():
    v = forced_chain_check(directed_cycle(5))
    assert v.solved
    assert validate_cycle(directed_cycle(5), v.cycle)


def test_forced_path_without_cycle_is_feasible():
    g = g1(5, {1: [2], 2: [3], 3: [4, 5], 4: [5, 1], 5: [1, 2]})
    assert forced_chain_check(g).feasible


def test_forced_subcycle_on_in_side():
    # Vertices 1, 2, 3 each have in-degree 1 and their forced in-edges
    # close 1 -> 3 -> 2 -> 1; every out-degree is 2 so only the mirrored
    # walk can see it.
    g = g1(6, {1: [3, 4], 2: [1, 5], 3: [2, 6],
               4: [5, 6], 5: [4, 6], 6: [4, 5]})
    assert all(g.out_degree(v) >= 2 for v in range(6))
    assert forced_chain_check(g).reason == FORCED_SUBCYCLE
    assert enumerate_all(g) == set()


def test_clone_set_pair_example():
    g = clone_set_instance({1: (3, 4), 2: (3, 4)}, n=6)
    assert clone_set_check(g).reason == CLONE_SET
    assert enumerate_all(g) == set()


def test_clone_set_triple_example():
    g = clone_set_instance({1: (4, 5, 6), 2: (4, 5, 6), 3: (4, 5, 6)}, n=8)
    assert clone_set_check(g).reason == CLONE_SET
    assert enumerate_all(g) == set()


def test_clone_set_subset_example():
    g = clone_set_instance({1: (4, 5, 6), 2: (4, 5), 3: (4, 6)}, n=8)
    assert clone_set_check(g).reason == CLONE_SET
    assert enumerate_all(g) == set()


def test_clone_set_guard_when_m_reaches_half():
    # Same shape but n = 2M: the short-cycle argument no longer applies.
    g = clone_set_instance({1: (3, 4), 2: (3, 4)}, n=4)
    assert clone_set_check(g).feasible


def test_connectivity_disconnected_pair_of_cycles():
    g = g1(6, {1: [2], 2: [3], 3: [1], 4: [5], 5: [6], 6: [4]})
    assert connectivity_check(g).reason == DISCONNECTED


def test_connectivity_one_way_reachability_is_not_enough():
    g = g1(3, {1: [2], 2: [3], 3: []})
    assert connectivity_check(g).reason == DISCONNECTED


def test_connectivity_directed_cycle_feasible():
    assert connectivity_check(directed_cycle(7)).feasible


def test_zero_degree_cases():
    assert zero_degree_check(g1(3, {1: [2], 2: [1], 3: []})).reason == ZERO_DEGREE
    # vertex 3 has out-edges but nothing points at it
    assert zero_degree_check(g1(3, {1: [2], 2: [1], 3: [1]})).reason == ZERO_DEGREE
    assert zero_degree_check(directed_cycle(4)).feasible


def test_checks_are_read_only():
    rng = random.Random(11)
    for _ in range(50):
        g = random_graph(rng, rng.randint(3, 9), 0.4)
        snap = g.copy()
        for check in (zero_degree_check, forced_chain_check, clone_set_check, connectivity_check):
            check(g)
            assert g == snap


def test_soundness_on_random_graphs():
    rng = random.Random(12)
    for _ in range(300):
        g = random_graph(rng, rng.randint(3, 9), rng.choice([0.2, 0.35, 0.5, 0.65]))
        verdict = run_checks(g)
        if verdict.infeasible:
            assert enumerate_all(g) == set()
        elif verdict.solved:
            assert validate_cycle(g, verdict.cycle)


@settings(max_examples=100, deadline=None)
@given(digraphs(min_n=1, max_n=7))
def test_clone_set_never_fires_on_hamiltonian_graphs(g: Graph):
    g.normalize()
    if clone_set_check(g).infeasible:
        assert enumerate_all(g) == set()
