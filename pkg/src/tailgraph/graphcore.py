"""Compact immutable directed graphs loaded from edge lists.

Graphs are stored in compressed adjacency (CSR) form: a node's out-targets
occupy ``out_targets[out_offsets[u]:out_offsets[u+1]]``, sorted and
deduplicated.  Node ids are dense integers assigned in first-seen order of
the edge-list tokens; the original tokens are kept in a label table.
Storage is O(node_count + arc_count) words.  Built graphs are never
mutated, so they are safe to share across threads.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from tailgraph.empirical import EmpiricalDistribution
from tailgraph.errors import EdgeListParseError

DIRECTIONS = ("in", "out", "total")
_GZIP_MAGIC = b"\x1f\x8b"


@dataclass(eq=False)
class AdjacencyGraph:
    """Immutable directed graph in compressed adjacency form."""

    out_offsets: np.ndarray
    out_targets: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self):
        self.out_offsets = np.asarray(self.out_offsets, dtype=np.int64)
        self.out_targets = np.asarray(self.out_targets, dtype=np.int64)
        if self.out_offsets.ndim != 1 or self.out_offsets.size == 0:
            raise ValueError("out_offsets must be a non-empty 1-D array")
        if self.out_offsets[0] != 0 or np.any(np.diff(self.out_offsets) < 0):
            raise ValueError("out_offsets must start at 0 and be non-decreasing")
        if self.out_offsets[-1] != self.out_targets.size:
            raise ValueError("out_offsets[-1] must equal the number of arcs")
        if self.out_targets.size and (
            self.out_targets.min() < 0 or self.out_targets.max() >= self.node_count
        ):
            raise ValueError("arc target out of range")
        if self.labels is not None and len(self.labels) != self.node_count:
            raise ValueError("label table length must equal node_count")

    @property
    def node_count(self) -> int:
        return int(self.out_offsets.size - 1)

    @property
    def arc_count(self) -> int:
        return int(self.out_targets.size)

    def out_neighbors(self, u: int) -> np.ndarray:
        return self.out_targets[self.out_offsets[u] : self.out_offsets[u + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.out_targets, minlength=self.node_count).astype(
            np.int64
        )

    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        """(sources, targets) arrays of all arcs."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.out_degrees())
        return src, self.out_targets.copy()

    @classmethod
    def from_arcs(
        cls,
        node_count: int,
        sources,
        targets,
        *,
        dedup: bool = True,
        self_loops: str = "keep",
        labels: list[str] | None = None,
    ) -> "AdjacencyGraph":
        """Build a CSR graph from parallel source/target arrays.

        ``self_loops="drop"`` removes u->u arcs.  With ``dedup=False``
        duplicate arcs are an error rather than being merged silently.
        """
        if self_loops not in ("keep", "drop"):
            raise ValueError("self_loops must be 'keep' or 'drop'")
        src = np.asarray(sources, dtype=np.int64)
        dst = np.asarray(targets, dtype=np.int64)
        if src.shape != dst.shape:
            raise ValueError("sources and targets must have equal length")
        if self_loops == "drop" and src.size:
            keep = src != dst
            src, dst = src[keep], dst[keep]
        if src.size:
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
            dup = np.zeros(src.size, dtype=bool)
            dup[1:] = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                if not dedup:
                    raise ValueError(
                        "duplicate arcs present and deduplication is disabled"
                    )
                src, dst = src[~dup], dst[~dup]
        offsets = np.zeros(node_count + 1, dtype=np.int64)
        if src.size:
            np.cumsum(np.bincount(src, minlength=node_count), out=offsets[1:])
        return cls(offsets, dst, labels)

    def __repr__(self) -> str:
        return f"AdjacencyGraph(nodes={self.node_count}, arcs={self.arc_count})"


@dataclass
class DegreeHistogram:
    """Node counts per degree for one direction, zero bin included."""

    direction: str
    counts: dict[int, int]
    zero_degree_nodes: int

    @property
    def node_count(self) -> int:
        return sum(self.counts.values())

    def to_distribution(self) -> EmpiricalDistribution:
        """Positive degrees as a fit-ready distribution (zeros excluded)."""
        positive = {d: c for d, c in self.counts.items() if d > 0}
        if not positive:
            return EmpiricalDistribution(np.empty(0), np.empty(0, dtype=np.int64))
        return EmpiricalDistribution.from_counts(positive)


def _open_maybe_gzip(source) -> IO[bytes]:
    if hasattr(source, "read"):
        raw = source
    else:
        raw = open(source, "rb")
    if not raw.seekable():
        raw = io.BytesIO(raw.read())
    head = raw.read(2)
    raw.seek(-len(head), io.SEEK_CUR)
    if head == _GZIP_MAGIC:
        return gzip.open(raw, "rb")
    return raw


def load_edge_list(
    source,
    *,
    dedup: bool = True,
    self_loops: str = "keep",
) -> AdjacencyGraph:
    """Load "src<TAB>dst" records into an AdjacencyGraph.

    ``source`` is a path or a binary stream; gzip input is detected by its
    magic bytes and decompressed transparently.  Lines starting with '#'
    and blank lines are skipped.  Tokens (integer or not) are interned to
    dense node ids in first-seen order and kept as labels.  Nodes that only
    appear as targets get empty out-lists.

    Raises EdgeListParseError with the offending 1-based line number.
    """
    ids: dict[str, int] = {}
    srcs: list[int] = []
    dsts: list[int] = []
    stream = _open_maybe_gzip(source)
    try:
        text = io.TextIOWrapper(stream, encoding="utf-8")
        for line_no, line in enumerate(text, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise EdgeListParseError(
                    line_no, f"expected 'src<TAB>dst', got {line!r}"
                )
            u = ids.setdefault(parts[0], len(ids))
            v = ids.setdefault(parts[1], len(ids))
            srcs.append(u)
            dsts.append(v)
        text.detach()
    finally:
        if not hasattr(source, "read"):
            stream.close()
    labels = list(ids.keys())
    return AdjacencyGraph.from_arcs(
        len(labels),
        np.array(srcs, dtype=np.int64),
        np.array(dsts, dtype=np.int64),
        dedup=dedup,
        self_loops=self_loops,
        labels=labels,
    )


def write_edge_list(g: AdjacencyGraph, target) -> None:
    """Emit the deduplicated arc set as "src<TAB>dst" lines.

    Labels are used when present, otherwise numeric node ids.
    """
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8") if own else target
    try:
        name = (lambda u: g.labels[u]) if g.labels is not None else str
        src, dst = g.arcs()
        for u, v in zip(src, dst):
            fh.write(f"{name(int(u))}\t{name(int(v))}\n")
    finally:
        if own:
            fh.close()


def write_label_map(g: AdjacencyGraph, target) -> None:
    """Emit "id<TAB>label" lines for the node label table."""
    if g.labels is None:
        raise ValueError("graph has no label table")
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8") if own else target
    try:
        for i, label in enumerate(g.labels):
            fh.write(f"{i}\t{label}\n")
    finally:
        if own:
            fh.close()


def degree_sequence(g: AdjacencyGraph, direction: str) -> DegreeHistogram:
    """Histogram of node degrees for direction "in", "out" or "total"."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    if direction == "out":
        degs = g.out_degrees()
    elif direction == "in":
        degs = g.in_degrees()
    else:
        degs = g.out_degrees() + g.in_degrees()
    binned = np.bincount(degs) if degs.size else np.zeros(1, dtype=np.int64)
    counts = {int(d): int(c) for d, c in enumerate(binned) if c > 0}
    return DegreeHistogram(direction, counts, counts.get(0, 0))


def average_total_degree(node_count: int, arc_count: int) -> float:
    """Mean of indegree+outdegree: 2*arcs/nodes."""
    if node_count == 0:
        return 0.0
    return 2.0 * arc_count / node_count


def transpose(g: AdjacencyGraph) -> AdjacencyGraph:
    """Reverse every arc; node ids and labels are preserved."""
    src, dst = g.arcs()
    return AdjacencyGraph.from_arcs(
        g.node_count, dst, src, dedup=True, self_loops="keep", labels=g.labels
    )
