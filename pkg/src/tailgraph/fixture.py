"""Synthetic crawl-like fixture graph for tests and CI pipelines.

A ~10k-node host graph with heavy-tailed indegree (preferential
attachment flavored), a large weakly connected core, a plausible strongly
connected core, many dangling hosts, and host names spread over a small
set of public suffixes so PLD aggregation has something to do.  Shipped
in-repo as a gzipped edge list; `generate_fixture` regenerates it.
"""

from __future__ import annotations

import gzip
import importlib.resources
from pathlib import Path

import numpy as np

EDGES_RESOURCE = "fixture_edges.tsv.gz"
PSL_RESOURCE = "fixture_psl.dat"

_SUFFIXES = ("com", "net", "org", "io", "co.uk", "ck")
_SUBHOSTS = ("www", "m", "blog", "shop", "api", "news", "mail", "cdn")


def fixture_path(name: str = EDGES_RESOURCE) -> Path:
    return Path(importlib.resources.files("tailgraph").joinpath("data", name))


def _host_names(n_hosts: int, rng: np.random.Generator) -> list[str]:
    """Host names over ~n_hosts/3 pay-level domains."""
    n_plds = max(1, n_hosts // 3)
    plds = []
    for i in range(n_plds):
        suffix = _SUFFIXES[int(rng.integers(len(_SUFFIXES)))]
        plds.append(f"site{i:05d}.{suffix}")
    hosts = []
    seen = set()
    for i in range(n_hosts):
        pld = plds[i % n_plds]
        if i < n_plds:
            name = pld  # the registrable domain itself is a host
        else:
            sub = _SUBHOSTS[int(rng.integers(len(_SUBHOSTS)))]
            name = f"{sub}.{pld}"
            while name in seen:
                name = f"{sub}{int(rng.integers(10, 100))}.{pld}"
        seen.add(name)
        hosts.append(name)
    return hosts


def generate_fixture(
    path, n_hosts: int = 10_000, n_arcs: int = 60_000, seed: int = 7
) -> None:
    """Write the fixture edge list (gzipped when the path ends in .gz)."""
    rng = np.random.default_rng(seed)
    hosts = _host_names(n_hosts, rng)

    # Crawl shape: a crawled core emits links with heavy-tailed out-counts;
    # targets mix preferential attachment with uniform discovery, so the
    # indegree grows a heavy tail while many hosts stay dangling.
    n_island = n_hosts // 16
    n_main = n_hosts - n_island
    core = n_main * 2 // 5
    src_perm = rng.permutation(core)
    src = src_perm[np.minimum(rng.zipf(1.6, n_arcs) - 1, core - 1)]
    dst = np.where(
        rng.random(n_arcs) < 0.7,
        np.minimum(rng.zipf(1.8, n_arcs) - 1, n_main - 1),
        rng.integers(0, n_main, n_arcs),
    )
    # directed cycles of assorted sizes inside the core give the SCC size
    # multiset some spread beyond one giant component
    cyc_src, cyc_dst = [np.arange(core // 4)], [np.roll(np.arange(core // 4), -1)]
    at = core // 4
    while at + 3 < core:
        size = min(int(rng.zipf(2.2)) + 2, 40, core - at)
        ring = np.arange(at, at + size)
        cyc_src.append(ring)
        cyc_dst.append(np.roll(ring, -1))
        at += size
    # disconnected island chains keep more than one weakly connected piece
    isl_src, isl_dst = [], []
    at = n_main
    while at + 1 < n_hosts:
        size = min(int(rng.zipf(2.0)) + 1, 50, n_hosts - at)
        chain = np.arange(at, at + size)
        isl_src.append(chain[:-1])
        isl_dst.append(chain[1:])
        at += size
    src = np.concatenate([src, *cyc_src, *isl_src])
    dst = np.concatenate([dst, *cyc_dst, *isl_dst])
    # hosts never touched become targets once, like uncrawled discoveries
    missing = np.setdiff1d(np.arange(n_hosts), np.union1d(src, dst))
    if missing.size:
        src = np.concatenate([src, rng.integers(0, core, missing.size)])
        dst = np.concatenate([dst, missing])

    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "wt", encoding="utf-8") as fh:
        fh.write("# synthetic crawl-like fixture graph\n")
        for u, v in zip(src, dst):
            fh.write(f"{hosts[int(u)]}\t{hosts[int(v)]}\n")


def generate_psl(path) -> None:
    """Public Suffix List fixture covering the host-name suffixes."""
    lines = [
        "// fixture public suffix list",
        "com",
        "net",
        "org",
        "io",
        "uk",
        "co.uk",
        "*.ck",
        "!www.ck",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    data_dir = Path(__file__).parent / "data"
    data_dir.mkdir(exist_ok=True)
    generate_fixture(data_dir / EDGES_RESOURCE)
    generate_psl(data_dir / PSL_RESOURCE)
    print(f"fixture written to {data_dir}")


if __name__ == "__main__":
    main()
