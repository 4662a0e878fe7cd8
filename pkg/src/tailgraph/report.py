"""Analysis report composition and plot-ready data emission.

Pipeline stages write self-contained artifacts into an output directory;
`compose_report` stitches them into one JSON report without recomputing
anything, so every number in the report traces back to a stage artifact.
Reports embed seeds, simulation counts and the package version, and are
serialized with sorted keys so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from tailgraph.empirical import EmpiricalDistribution
from tailgraph.errors import MissingArtifactError

SCHEMA_VERSION = 1

DISTRIBUTIONS = ("indegree", "outdegree", "scc_sizes", "wcc_sizes")
FORMALISMS = ("discrete", "continuous")

METHODOLOGY_NOTES = [
    "average_degree is 2*arcs/nodes (mean of indegree+outdegree); published"
    " headline values may differ in the second decimal from rounding or"
    " degree-definition ambiguity on the source side.",
    "loglikelihood-ratio q-values use the same two-sided normal tail"
    " erfc(|R|/sqrt(2)) for every model pair, including the nested power"
    " law / truncated power law pair (no one-sided nestedness correction).",
]

# stage artifact filenames, keyed as the report consumes them
GRAPH_NPZ = "graph.npz"
EDGES_TSV = "edges.tsv"
LABELS_TSV = "labels.tsv"
STATS_JSON = "graph_stats.json"
COMPONENTS_JSON = "components.json"
HOPPLOT_JSON = "hopplot.json"
HOPPLOT_TSV = "hopplot.tsv"
DIAMETER_JSON = "diameter.json"


def dist_file(name: str) -> str:
    return f"{name}.tsv"


def fit_file(name: str, formalism: str) -> str:
    return f"fit_{name}_{formalism}.json"


def compare_file(name: str, formalism: str) -> str:
    return f"compare_{name}_{formalism}.json"


def write_json(path, obj) -> None:
    Path(path).write_text(
        json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def require(directory: Path, name: str) -> Path:
    path = directory / name
    if not path.exists():
        raise MissingArtifactError(str(path))
    return path


def emit_plot_data(
    counts: dict[int, int],
    out_prefix,
    zero_shift: bool = False,
) -> tuple[Path, Path]:
    """Write log-log frequency and CCDF files for one distribution.

    Frequency rows are "value<TAB>count"; with ``zero_shift`` the zero bin
    is emitted at abscissa 0.1 and flagged with a zero_marker column so
    plotting layers can label it "0".  The CCDF file uses the P(X >= x)
    convention, with all observations (zeros included) in the denominator.
    """
    out_prefix = Path(out_prefix)
    freq_path = out_prefix.with_suffix(".freq.tsv")
    ccdf_path = out_prefix.with_suffix(".ccdf.tsv")
    items = sorted((int(v), int(c)) for v, c in counts.items())
    total = sum(c for _, c in items)

    with open(freq_path, "w", encoding="utf-8") as fh:
        fh.write("# value\tcount\t[zero_marker]\n")
        for v, c in items:
            if v == 0:
                if zero_shift:
                    fh.write(f"0.1\t{c}\tzero_marker\n")
                continue
            fh.write(f"{v}\t{c}\n")

    with open(ccdf_path, "w", encoding="utf-8") as fh:
        fh.write("# value\tccdf  (CCDF convention: P(X >= x))\t[zero_marker]\n")
        remaining = total
        for v, c in items:
            if total == 0:
                break
            if v == 0:
                if zero_shift:
                    fh.write(f"0.1\t{remaining / total}\tzero_marker\n")
            else:
                fh.write(f"{v}\t{remaining / total}\n")
            remaining -= c
    return freq_path, ccdf_path


def load_distribution(path) -> EmpiricalDistribution:
    return EmpiricalDistribution.load(path)


def compose_report(output_dir, zero_shift: bool = False) -> dict:
    """Assemble the full analysis report from prior stage artifacts."""
    from tailgraph import __version__

    out = Path(output_dir)
    stats = read_json(require(out, STATS_JSON))
    components = read_json(require(out, COMPONENTS_JSON))
    hopplot = read_json(require(out, HOPPLOT_JSON))
    diameter = read_json(require(out, DIAMETER_JSON))

    fits: dict[str, dict] = {}
    comparisons: dict[str, dict] = {}
    for name in DISTRIBUTIONS:
        fits[name] = {}
        comparisons[name] = {}
        for formalism in FORMALISMS:
            fits[name][formalism] = read_json(require(out, fit_file(name, formalism)))
            comparisons[name][formalism] = read_json(
                require(out, compare_file(name, formalism))
            )

    report = {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "graph_stats": stats,
        "fits": fits,
        "comparisons": comparisons,
        "components": {
            "largest_scc_fraction": components["largest_scc_fraction"],
            "largest_wcc_fraction": components["largest_wcc_fraction"],
            "scc_count": components["scc_count"],
            "wcc_count": components["wcc_count"],
        },
        "distances": {
            "effective_diameter": hopplot["effective_diameter"],
            "quantile": hopplot["quantile"],
            "trials": hopplot["trials"],
            "hopplot_seed": hopplot["seed"],
            "full_diameter_lower_bound": diameter["full_diameter_lower_bound"],
            "bfs_sample_size": diameter["bfs_sample_size"],
            "bfs_seed": diameter["seed"],
        },
        "methodology_notes": METHODOLOGY_NOTES,
    }

    # plot data for the four distributions, straight from the stage files
    for name in DISTRIBUTIONS:
        dist = load_distribution(require(out, dist_file(name)))
        counts = {int(v): int(c) for v, c in zip(dist.values, dist.counts)}
        zeros = stats["zero_degree_counts"].get(
            {"indegree": "in", "outdegree": "out"}.get(name, ""), 0
        )
        if zeros:
            counts[0] = zeros
        emit_plot_data(counts, out / name, zero_shift=zero_shift)
    return report


def fit_result_to_json(fit, p: float | None, n_sims: int | None, seed) -> dict:
    """The documented fit JSON schema."""
    return {
        "kind": fit.params.kind.value,
        "alpha": fit.params.alpha,
        "xmin": fit.xmin,
        "stderr": _nan_to_none(fit.alpha_stderr),
        "ks": fit.ks_distance,
        "p": p,
        "n_sims": n_sims,
        "seed": seed,
        "tail_fraction": fit.tail_fraction,
        "formalism": fit.formalism,
    }


def _nan_to_none(x):
    return None if x is None or not np.isfinite(x) else float(x)
