import io

import numpy as np

from tailgraph.components import (
    component_size_distribution,
    strongly_connected_components,
    weakly_connected_components,
)
from tailgraph.graphcore import AdjacencyGraph, load_edge_list, transpose

from conftest import (
    partition_from_assignment,
    random_graph,
    scc_partition_oracle,
    wcc_partition_oracle,
)


def edges(text: str) -> io.BytesIO:
    return io.BytesIO(text.encode())


def test_wcc_two_pairs():
    g = load_edge_list(edges("a\tb\nc\td\n"))
    assert sorted(weakly_connected_components(g).sizes.tolist()) == [2, 2]


def test_wcc_isolated_nodes():
    g = AdjacencyGraph(np.zeros(6, dtype=np.int64), np.empty(0, dtype=np.int64))
    s = weakly_connected_components(g)
    assert s.sizes.tolist() == [1, 1, 1, 1, 1]


def test_scc_cycle_plus_tail():
    g = load_edge_list(edges("a\tb\nb\tc\nc\ta\nc\td\n"))
    assert sorted(strongly_connected_components(g).sizes.tolist()) == [1, 3]


def test_scc_dag_is_all_singletons():
    g = load_edge_list(edges("a\tb\nb\tc\n"))
    assert strongly_connected_components(g).sizes.tolist() == [1, 1, 1]


def test_wcc_matches_undirected_reachability_oracle():
    # brute-force undirected closure on a 300-node random graph
    g = random_graph(300, 700, seed=3)
    got = partition_from_assignment(weakly_connected_components(g).assignment)
    assert got == wcc_partition_oracle(g)


def test_scc_matches_transitive_closure_oracle():
    g = random_graph(200, 420, seed=4)
    got = partition_from_assignment(strongly_connected_components(g).assignment)
    assert got == scc_partition_oracle(g)


def test_partitions_match_oracles_across_densities():
    for seed in range(25):
        n = 20 + (seed * 13) % 100
        m = int(n * (0.3 + (seed % 7)))
        g = random_graph(n, m, seed=seed)
        assert partition_from_assignment(
            strongly_connected_components(g).assignment
        ) == scc_partition_oracle(g)
        assert partition_from_assignment(
            weakly_connected_components(g).assignment
        ) == wcc_partition_oracle(g)


def test_scc_refines_wcc_and_fraction_order():
    for seed in range(10):
        g = random_graph(120, 260, seed=100 + seed)
        scc = strongly_connected_components(g)
        wcc = weakly_connected_components(g)
        # every SCC sits inside exactly one WCC
        for comp in partition_from_assignment(scc.assignment):
            wcc_ids = {wcc.assignment[node] for node in comp}
            assert len(wcc_ids) == 1
        assert scc.largest_fraction <= wcc.largest_fraction


def test_scc_of_transpose_equals_original():
    g = random_graph(150, 400, seed=9)
    a = partition_from_assignment(strongly_connected_components(g).assignment)
    b = partition_from_assignment(strongly_connected_components(transpose(g)).assignment)
    assert a == b


def test_sizes_sum_to_node_count():
    g = random_graph(90, 150, seed=12)
    for summary in (
        strongly_connected_components(g),
        weakly_connected_components(g),
    ):
        assert int(summary.sizes.sum()) == g.node_count
        assert summary.largest_fraction == summary.sizes.max() / g.node_count


def test_deep_path_does_not_recurse():
    # 60k-node path: a recursive Tarjan would blow the stack
    n = 60_000
    src = np.arange(n - 1)
    g = AdjacencyGraph.from_arcs(n, src, src + 1)
    s = strongly_connected_components(g)
    assert s.component_count == n


def test_size_distribution():
    g = load_edge_list(edges("a\tb\nb\tc\nc\ta\nc\td\n"))
    d = component_size_distribution(strongly_connected_components(g))
    assert d.values.tolist() == [1, 3]
    assert d.counts.tolist() == [1, 1]
    g2 = load_edge_list(edges("a\tb\nc\td\n"))
    d2 = component_size_distribution(weakly_connected_components(g2))
    assert d2.values.tolist() == [2]
    assert d2.counts.tolist() == [2]


def test_size_distribution_mass_matches_oracle():
    g = random_graph(140, 300, seed=21)
    d = component_size_distribution(weakly_connected_components(g))
    assert d.total == len(wcc_partition_oracle(g))
