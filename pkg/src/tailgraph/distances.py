"""Distance structure: hop plots, effective diameter, BFS diameter bound.

The hop plot N(h) counts ordered node pairs within h hops, self-pairs
included, so N(0) = node_count.  It is estimated with Flajolet-Martin
style bit-string counters: every node starts with one geometrically
distributed bit per trial, and a hop ORs each node's counter with its
out-neighbors' counters, so after h hops a node's counter sketches its
h-step reachable set.  Cardinalities are read off by inverting the exact
expected bit-occupancy curve, which keeps small neighborhoods unbiased
(the classic 2**R/0.773 readout is badly biased for tiny sets).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tailgraph.graphcore import AdjacencyGraph, transpose

_TRIAL_CHUNK = 512


@dataclass(eq=False)
class HopPlot:
    """Estimated N(h) for h = 0..H, with the counter scheme's error bound."""

    counts: np.ndarray  # N(h), float64, non-decreasing
    pair_estimate_error: float  # approximate 1-sigma relative error
    trials: int
    bias_bits: int
    seed: int | None

    @property
    def max_hop(self) -> int:
        return int(self.counts.size - 1)

    @property
    def node_count(self) -> int:
        return int(round(self.counts[0]))


@dataclass
class DiameterEstimates:
    effective_diameter: float
    full_diameter_lower_bound: int
    bfs_sample_size: int
    seed: int | None


def _neighbor_or(
    masks: np.ndarray, offsets: np.ndarray, targets: np.ndarray
) -> np.ndarray:
    """For each node, OR of its out-neighbors' masks (0 for sinks)."""
    out = np.zeros_like(masks)
    if targets.size == 0:
        return out
    # reduceat over the slice starts of non-sink nodes only: consecutive
    # starts then delimit exactly each node's target slice
    nz = np.flatnonzero(np.diff(offsets) > 0)
    starts = offsets[nz]
    for lo in range(0, masks.shape[1], _TRIAL_CHUNK):
        hi = min(lo + _TRIAL_CHUNK, masks.shape[1])
        seg = np.bitwise_or.reduceat(masks[targets, lo:hi], starts, axis=0)
        out[nz, lo:hi] = seg
    return out


def _occupancy_curve(bits: int, grid: np.ndarray) -> np.ndarray:
    """Exact E[popcount] of a Flajolet-Martin sketch holding m elements."""
    probs = 2.0 ** -(np.arange(1, bits + 1, dtype=np.float64))
    return (1.0 - (1.0 - probs[:, None]) ** grid[None, :]).sum(axis=0)


def _invert_popcounts(mean_popcount: np.ndarray, bits: int, n: int) -> np.ndarray:
    grid = np.concatenate([[1e-3], np.geomspace(0.5, 8.0 * max(n, 2), 4096)])
    curve = _occupancy_curve(bits, grid)
    t = np.clip(mean_popcount, curve[0], curve[-1])
    return np.exp(np.interp(t, curve, np.log(grid)))


def anf_hopplot(
    g: AdjacencyGraph,
    trials: int = 64,
    bias_bits: int = 8,
    max_h: int | None = None,
    seed: int | None = None,
    epsilon: float = 1e-4,
    undirected: bool = False,
) -> HopPlot:
    """Approximate neighborhood function along arc direction.

    Stops at ``max_h`` (default: node_count) or once the relative growth
    of N(h) drops below ``epsilon``.  Identical seed, trials and graph
    give an identical hop plot.  ``undirected=True`` also propagates
    against arc direction, for sensitivity runs.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = g.node_count
    if n == 0:
        return HopPlot(np.zeros(1), 0.0, trials, bias_bits, seed)
    if max_h is None:
        max_h = n
    bits = min(64, int(np.ceil(np.log2(max(n, 2)))) + bias_bits)
    rng = np.random.default_rng(seed)

    u = rng.random((n, trials))
    with np.errstate(divide="ignore"):  # u == 0 maps to the top bit
        idx = np.minimum(np.floor(-np.log2(u)), bits - 1).astype(np.uint64)
    masks = (np.uint64(1) << idx).astype(np.uint64)

    rev = transpose(g) if undirected else None
    counts = [float(n)]  # N(0): self-pairs, exact by definition
    for _ in range(max_h):
        nxt = masks | _neighbor_or(masks, g.out_offsets, g.out_targets)
        if undirected:
            nxt |= _neighbor_or(masks, rev.out_offsets, rev.out_targets)
        masks = nxt
        mean_pop = np.bitwise_count(masks).astype(np.float64).mean(axis=1)
        est = _invert_popcounts(mean_pop, bits, n).sum()
        est = min(max(est, counts[-1]), float(n) * n)
        counts.append(est)
        if counts[-1] - counts[-2] <= epsilon * counts[-2]:
            break
    if len(counts) >= 2 and counts[-1] == counts[-2]:  # keep H at the last growing hop
        counts.pop()
    err = float(np.log(2.0) / np.sqrt(trials))
    return HopPlot(np.array(counts), err, trials, bias_bits, seed)


def effective_diameter(hp: HopPlot, quantile: float = 0.9) -> float:
    """Interpolated hop count within which ``quantile`` of pairs lie.

    The smallest h' with N(h') >= quantile * N(H), linearly interpolated
    between integer hops: h' = (h-1) + (q N(H) - N(h-1)) / (N(h) - N(h-1)).
    """
    if not (0.0 < quantile < 1.0):
        raise ValueError("quantile must be strictly between 0 and 1")
    counts = hp.counts
    threshold = quantile * counts[-1]
    if counts[0] >= threshold:
        return 0.0
    h = int(np.searchsorted(counts, threshold, side="left"))
    step = counts[h] - counts[h - 1]
    if step <= 0:
        return float(h)
    return (h - 1) + float(threshold - counts[h - 1]) / float(step)


def bfs_distances(g: AdjacencyGraph, source: int) -> np.ndarray:
    """Directed hop distances from ``source``; -1 marks unreachable nodes."""
    n = g.node_count
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    offsets, targets = g.out_offsets, g.out_targets
    while frontier.size:
        d += 1
        degs = offsets[frontier + 1] - offsets[frontier]
        total = int(degs.sum())
        if total == 0:
            break
        starts = offsets[frontier]
        pos = np.arange(total) - np.repeat(np.cumsum(degs) - degs, degs)
        cand = targets[np.repeat(starts, degs) + pos]
        cand = cand[dist[cand] < 0]
        if cand.size == 0:
            break
        frontier = np.unique(cand)
        dist[frontier] = d
    return dist


def bfs_diameter_lower_bound(
    g: AdjacencyGraph, sample: int = 10000, seed: int | None = None
) -> int:
    """Max finite BFS eccentricity over sampled start nodes.

    Sampling is without replacement; a sample at least as large as the
    graph scans every node, making the bound exact over connected pairs.
    Always a lower bound on the true directed diameter.
    """
    if sample < 1:
        raise ValueError("sample must be >= 1")
    n = g.node_count
    if n == 0:
        return 0
    if sample >= n:
        starts = np.arange(n, dtype=np.int64)
    else:
        starts = np.random.default_rng(seed).choice(n, size=sample, replace=False)
    best = 0
    for s in starts:
        dist = bfs_distances(g, int(s))
        ecc = int(dist.max())
        if ecc > best:
            best = ecc
    return best
