"""Shared test helpers: random graphs and brute-force oracles.

The oracles here deliberately take the dumb road: boolean-matrix
transitive closures, all-pairs scipy BFS distances, and hand-rolled set
partitions.  Implementation modules must match them exactly.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.sparse import csr_array
from scipy.sparse.csgraph import dijkstra

from tailgraph.graphcore import AdjacencyGraph


def random_graph(n: int, m: int, seed: int, self_loops: str = "keep") -> AdjacencyGraph:
    rng = np.random.default_rng(seed)
    src = rng.integers(0, n, m)
    dst = rng.integers(0, n, m)
    return AdjacencyGraph.from_arcs(n, src, dst, self_loops=self_loops)


def adjacency_matrix(g: AdjacencyGraph) -> np.ndarray:
    a = np.zeros((g.node_count, g.node_count), dtype=bool)
    src, dst = g.arcs()
    a[src, dst] = True
    return a


def reachability_closure(g: AdjacencyGraph) -> np.ndarray:
    """reach[u, v] == u can reach v (v != u allowed; diagonal True)."""
    reach = adjacency_matrix(g)
    np.fill_diagonal(reach, True)
    while True:
        nxt = reach | (reach @ reach)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def undirected_closure(g: AdjacencyGraph) -> np.ndarray:
    a = adjacency_matrix(g)
    und = AdjacencyGraph.from_arcs(
        g.node_count, *np.nonzero(a | a.T), self_loops="keep"
    )
    return reachability_closure(und)


def scc_partition_oracle(g: AdjacencyGraph) -> set[frozenset[int]]:
    reach = reachability_closure(g)
    mutual = reach & reach.T
    return {frozenset(np.nonzero(row)[0].tolist()) for row in mutual}


def wcc_partition_oracle(g: AdjacencyGraph) -> set[frozenset[int]]:
    reach = undirected_closure(g)
    return {frozenset(np.nonzero(row)[0].tolist()) for row in reach}


def partition_from_assignment(assignment: np.ndarray) -> set[frozenset[int]]:
    groups: dict[int, set[int]] = {}
    for node, cid in enumerate(assignment.tolist()):
        groups.setdefault(cid, set()).add(node)
    return {frozenset(v) for v in groups.values()}


def all_pairs_distances(g: AdjacencyGraph) -> np.ndarray:
    """Directed hop distances via scipy (inf when unreachable)."""
    n = g.node_count
    a = csr_array(
        (np.ones(g.arc_count), g.out_targets, g.out_offsets), shape=(n, n)
    )
    return dijkstra(a, directed=True, unweighted=True)


def exact_hopplot(g: AdjacencyGraph) -> np.ndarray:
    """Exact N(h) for h = 0..max finite distance, self-pairs included."""
    dist = all_pairs_distances(g)
    finite = dist[np.isfinite(dist)]
    top = int(finite.max()) if finite.size else 0
    return np.array(
        [float(np.count_nonzero(dist <= h)) for h in range(top + 1)]
    )


@pytest.fixture(scope="session")
def fixture_graph():
    from tailgraph.fixture import fixture_path
    from tailgraph.graphcore import load_edge_list

    return load_edge_list(fixture_path())
