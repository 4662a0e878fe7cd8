"""Strongly and weakly connected components and their size distributions.

WCC uses a disjoint-set union over the arc list; SCC uses Tarjan's
algorithm with an explicit work stack, so recursion depth never scales
with graph size.  Component ids are assigned in discovery order, but only
the partition itself is contractual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tailgraph.empirical import EmpiricalDistribution
from tailgraph.graphcore import AdjacencyGraph


@dataclass(eq=False)
class ComponentSummary:
    """Partition of nodes into components of one kind."""

    kind: str  # "scc" | "wcc"
    assignment: np.ndarray  # node id -> component id
    sizes: np.ndarray  # component id -> node count

    @property
    def component_count(self) -> int:
        return int(self.sizes.size)

    @property
    def largest_fraction(self) -> float:
        total = int(self.sizes.sum())
        if total == 0:
            return 0.0
        return float(self.sizes.max()) / total


def weakly_connected_components(g: AdjacencyGraph) -> ComponentSummary:
    """Components of the underlying undirected graph, via union-find."""
    n = g.node_count
    parent = np.arange(n, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    src, dst = g.arcs()
    for u, v in zip(src.tolist(), dst.tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru

    assignment = np.empty(n, dtype=np.int64)
    comp_of_root: dict[int, int] = {}
    for node in range(n):
        root = find(node)
        cid = comp_of_root.setdefault(root, len(comp_of_root))
        assignment[node] = cid
    sizes = np.bincount(assignment, minlength=len(comp_of_root)).astype(np.int64)
    return ComponentSummary("wcc", assignment, sizes)


def strongly_connected_components(g: AdjacencyGraph) -> ComponentSummary:
    """Mutual-reachability partition, via iterative Tarjan."""
    n = g.node_count
    offsets = g.out_offsets
    targets = g.out_targets

    index = np.full(n, -1, dtype=np.int64)
    lowlink = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    assignment = np.full(n, -1, dtype=np.int64)
    sizes: list[int] = []
    next_index = 0
    scc_stack: list[int] = []

    for root in range(n):
        if index[root] != -1:
            continue
        # work entries are (node, next out-arc position to scan)
        work: list[list[int]] = [[root, int(offsets[root])]]
        index[root] = lowlink[root] = next_index
        next_index += 1
        scc_stack.append(root)
        on_stack[root] = True

        while work:
            v, ptr = work[-1]
            if ptr < offsets[v + 1]:
                work[-1][1] = ptr + 1
                w = int(targets[ptr])
                if index[w] == -1:
                    index[w] = lowlink[w] = next_index
                    next_index += 1
                    scc_stack.append(w)
                    on_stack[w] = True
                    work.append([w, int(offsets[w])])
                elif on_stack[w]:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if lowlink[v] < lowlink[parent]:
                        lowlink[parent] = lowlink[v]
                if lowlink[v] == index[v]:
                    cid = len(sizes)
                    size = 0
                    while True:
                        w = scc_stack.pop()
                        on_stack[w] = False
                        assignment[w] = cid
                        size += 1
                        if w == v:
                            break
                    sizes.append(size)

    return ComponentSummary("scc", assignment, np.array(sizes, dtype=np.int64))


def component_size_distribution(s: ComponentSummary) -> EmpiricalDistribution:
    """Multiset of component sizes, ready for tail fitting."""
    return EmpiricalDistribution.from_observations(s.sizes)
