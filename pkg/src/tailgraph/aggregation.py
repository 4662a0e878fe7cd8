"""Host extraction, pay-level-domain mapping, and quotient graphs.

A host is the DNS name of a URL with scheme, credentials, port, path,
query and fragment stripped.  The pay-level domain (PLD) of a host is the
public suffix plus exactly one more label, where public suffixes come from
a Public Suffix List file.  Aggregation replaces each node by its group
(e.g. its PLD) and keeps one arc per connected group pair.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from urllib.parse import urlsplit

import numpy as np

from tailgraph.errors import NoPayLevelDomainError, UrlHostError
from tailgraph.graphcore import AdjacencyGraph

logger = logging.getLogger(__name__)


def parse_url_host(url: str) -> str:
    """Extract the lowercased host from an absolute URL.

    Credentials and port are stripped along with path, query and fragment.
    Raises UrlHostError when the URL has no host component.
    """
    try:
        host = urlsplit(url.strip()).hostname
    except ValueError as exc:
        raise UrlHostError(f"cannot parse {url!r}: {exc}") from None
    if not host:
        raise UrlHostError(f"no host component in {url!r}")
    return host


@dataclass(frozen=True)
class SuffixRule:
    labels: tuple[str, ...]
    kind: str  # "normal" | "wildcard" | "exception"


class SuffixRuleSet:
    """Public Suffix List rules with longest-match lookup.

    Exception rules beat wildcard rules, which beat shorter rules.  When
    nothing matches, the implicit root rule "*" applies and the public
    suffix is the host's last label.
    """

    def __init__(self, rules: list[SuffixRule] | None = None):
        self.rules: list[SuffixRule] = list(rules or [])
        # bucket by rightmost label so lookups only scan plausible rules
        self._by_last: dict[str, list[SuffixRule]] = {}
        for rule in self.rules:
            self._by_last.setdefault(rule.labels[-1], []).append(rule)

    def __len__(self) -> int:
        return len(self.rules)

    def public_suffix(self, host: str) -> str:
        """Longest matching public suffix of ``host`` (lowercased)."""
        labels = host.lower().strip(".").split(".")
        if not all(labels):
            raise ValueError(f"host {host!r} has empty labels")
        best: SuffixRule | None = None
        exception: SuffixRule | None = None
        for rule in self._by_last.get(labels[-1], ()):
            if len(rule.labels) > len(labels):
                continue
            tail = labels[len(labels) - len(rule.labels) :]
            if all(rl in ("*", hl) for rl, hl in zip(rule.labels, tail)):
                if rule.kind == "exception":
                    if exception is None or len(rule.labels) > len(exception.labels):
                        exception = rule
                elif (
                    best is None
                    or len(rule.labels) > len(best.labels)
                    or (len(rule.labels) == len(best.labels) and best.kind == "wildcard")
                ):
                    best = rule
        if exception is not None:
            # exception rules name a registrable domain: drop their first label
            return ".".join(labels[len(labels) - len(exception.labels) + 1 :])
        if best is not None:
            return ".".join(labels[len(labels) - len(best.labels) :])
        return labels[-1]


def load_public_suffix_list(source) -> SuffixRuleSet:
    """Parse a Public Suffix List file.

    One rule per line; "//" comment lines and blanks are skipped; "*."
    labels are wildcards and a leading "!" marks an exception rule.
    """
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    rules = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("//"):
            continue
        line = line.split()[0].lower()
        kind = "normal"
        if line.startswith("!"):
            kind = "exception"
            line = line[1:]
        labels = tuple(line.strip(".").split("."))
        if not all(labels):
            continue
        if kind == "normal" and "*" in labels:
            kind = "wildcard"
        rules.append(SuffixRule(labels, kind))
    return SuffixRuleSet(rules)


def pld_of_host(host: str, rules: SuffixRuleSet) -> str:
    """Pay-level domain: the public suffix plus one more label.

    Raises NoPayLevelDomainError when the host *is* a public suffix.
    """
    host = host.lower().strip(".")
    suffix = rules.public_suffix(host)
    if host == suffix:
        raise NoPayLevelDomainError(
            f"host {host!r} is itself a public suffix; no registrable label above it"
        )
    labels = host.split(".")
    n_suffix = suffix.count(".") + 1
    return ".".join(labels[len(labels) - n_suffix - 1 :])


@dataclass(eq=False)
class GroupMap:
    """Total mapping from node ids to dense group ids with group labels."""

    group_ids: np.ndarray
    group_labels: list[str]

    def __post_init__(self):
        self.group_ids = np.asarray(self.group_ids, dtype=np.int64)
        if self.group_ids.size and (
            self.group_ids.min() < 0 or self.group_ids.max() >= len(self.group_labels)
        ):
            raise ValueError("group id out of range")

    @property
    def group_count(self) -> int:
        return len(self.group_labels)

    @classmethod
    def identity(cls, g: AdjacencyGraph) -> "GroupMap":
        labels = g.labels if g.labels is not None else [str(i) for i in range(g.node_count)]
        return cls(np.arange(g.node_count, dtype=np.int64), list(labels))

    @classmethod
    def from_pld(cls, g: AdjacencyGraph, rules: SuffixRuleSet) -> "GroupMap":
        """Group every host label by its PLD.

        Hosts that are themselves public suffixes map to themselves; they
        are counted and reported with a warning instead of aborting.
        """
        if g.labels is None:
            raise ValueError("PLD grouping needs host labels on the graph")
        ids: dict[str, int] = {}
        group_ids = np.empty(g.node_count, dtype=np.int64)
        bad = 0
        for node, label in enumerate(g.labels):
            try:
                pld = pld_of_host(label, rules)
            except NoPayLevelDomainError:
                pld = label.lower().strip(".")
                bad += 1
            group_ids[node] = ids.setdefault(pld, len(ids))
        if bad:
            logger.warning(
                "%d host(s) are public suffixes; mapped to themselves", bad
            )
        return cls(group_ids, list(ids.keys()))

    @classmethod
    def from_mapping_file(cls, g: AdjacencyGraph, source) -> "GroupMap":
        """Read "node_label<TAB>group_label" lines; must cover every node."""
        if g.labels is None:
            raise ValueError("mapping files need node labels on the graph")
        if hasattr(source, "read"):
            text = source.read()
            if isinstance(text, bytes):
                text = text.decode("utf-8")
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        node_to_group: dict[str, str] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            node_label, group_label = line.split("\t")
            node_to_group[node_label] = group_label
        ids: dict[str, int] = {}
        group_ids = np.empty(g.node_count, dtype=np.int64)
        for node, label in enumerate(g.labels):
            if label not in node_to_group:
                raise ValueError(f"node {label!r} is unmapped")
            group_ids[node] = ids.setdefault(node_to_group[label], len(ids))
        return cls(group_ids, list(ids.keys()))

    def save(self, g: AdjacencyGraph, target) -> None:
        """Write "node_label<TAB>group_label" lines."""
        own = not hasattr(target, "write")
        fh = open(target, "w", encoding="utf-8") if own else target
        try:
            labels = g.labels or [str(i) for i in range(g.node_count)]
            for node, label in enumerate(labels):
                fh.write(f"{label}\t{self.group_labels[self.group_ids[node]]}\n")
        finally:
            if own:
                fh.close()


def aggregate_graph(
    g: AdjacencyGraph, m: GroupMap, self_loops: str = "drop"
) -> AdjacencyGraph:
    """Quotient graph: one node per group, one arc per connected group pair.

    An arc (A, B) exists iff some arc (u, v) of ``g`` has m(u)=A, m(v)=B,
    subject to the self-loop policy.  Never increases node or arc counts.
    """
    if m.group_ids.size != g.node_count:
        raise ValueError("group map does not cover the graph's nodes")
    src, dst = g.arcs()
    return AdjacencyGraph.from_arcs(
        m.group_count,
        m.group_ids[src],
        m.group_ids[dst],
        dedup=True,
        self_loops=self_loops,
        labels=list(m.group_labels),
    )
