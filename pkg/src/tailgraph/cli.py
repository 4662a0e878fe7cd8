"""Command-line pipeline: ingest, aggregate, analyze, fit, compare, report.

Each subcommand is independently runnable and exchanges data through
documented artifacts in the --output directory, so partial pipelines
work and `report` never recomputes a number a stage already produced.
Missing inputs exit nonzero with a message naming the absent artifact.
TAILGRAPH_THREADS caps worker parallelism for the bootstrap.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from tailgraph import modelcompare, report, tailfit
from tailgraph.aggregation import GroupMap, aggregate_graph, load_public_suffix_list
from tailgraph.components import (
    component_size_distribution,
    strongly_connected_components,
    weakly_connected_components,
)
from tailgraph.distances import anf_hopplot, bfs_diameter_lower_bound, effective_diameter
from tailgraph.errors import MissingArtifactError
from tailgraph.graphcore import (
    AdjacencyGraph,
    average_total_degree,
    degree_sequence,
    load_edge_list,
    write_edge_list,
    write_label_map,
)

_DIRECTION_NAMES = {"in": "indegree", "out": "outdegree", "total": "totaldegree"}


def save_graph(g: AdjacencyGraph, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    labels = np.array(g.labels if g.labels is not None else [], dtype=str)
    np.savez(
        directory / report.GRAPH_NPZ,
        out_offsets=g.out_offsets,
        out_targets=g.out_targets,
        labels=labels,
    )
    write_edge_list(g, directory / report.EDGES_TSV)
    if g.labels is not None:
        write_label_map(g, directory / report.LABELS_TSV)


def load_graph(directory: Path) -> AdjacencyGraph:
    path = report.require(directory, report.GRAPH_NPZ)
    data = np.load(path, allow_pickle=False)
    labels = [str(x) for x in data["labels"]] if data["labels"].size else None
    return AdjacencyGraph(data["out_offsets"], data["out_targets"], labels)


def _write_stats(directory: Path, g: AdjacencyGraph) -> None:
    report.write_json(
        directory / report.STATS_JSON,
        {
            "nodes": g.node_count,
            "arcs": g.arc_count,
            "average_degree": average_total_degree(g.node_count, g.arc_count),
            "zero_degree_counts": {},
        },
    )


def cmd_ingest(args) -> int:
    out = Path(args.output)
    g = load_edge_list(args.input, self_loops=args.self_loops)
    save_graph(g, out)
    _write_stats(out, g)
    print(f"ingested {g.node_count} nodes, {g.arc_count} arcs -> {out}")
    return 0


def cmd_aggregate(args) -> int:
    src_dir = Path(args.input)
    out = Path(args.output)
    g = load_graph(src_dir)
    if args.psl:
        rules = load_public_suffix_list(args.psl)
        gm = GroupMap.from_pld(g, rules)
    elif args.groups:
        gm = GroupMap.from_mapping_file(g, args.groups)
    else:
        print("aggregate needs --psl or --groups", file=sys.stderr)
        return 1
    agg = aggregate_graph(g, gm, self_loops=args.self_loops)
    save_graph(agg, out)
    _write_stats(out, agg)
    gm.save(g, out / "groups.tsv")
    print(
        f"aggregated {g.node_count} -> {agg.node_count} nodes, "
        f"{agg.arc_count} arcs -> {out}"
    )
    return 0


def cmd_degrees(args) -> int:
    out = Path(args.output)
    g = load_graph(out if args.input is None else Path(args.input))
    hist = degree_sequence(g, args.direction)
    name = _DIRECTION_NAMES[args.direction]
    hist.to_distribution().save(out / report.dist_file(name))
    stats_path = out / report.STATS_JSON
    stats = report.read_json(stats_path) if stats_path.exists() else {
        "nodes": g.node_count,
        "arcs": g.arc_count,
        "average_degree": average_total_degree(g.node_count, g.arc_count),
        "zero_degree_counts": {},
    }
    stats["zero_degree_counts"][args.direction] = hist.zero_degree_nodes
    report.write_json(stats_path, stats)
    print(f"{name}: {len(hist.counts)} distinct degrees, "
          f"{hist.zero_degree_nodes} zero-degree nodes")
    return 0


def cmd_components(args) -> int:
    out = Path(args.output)
    g = load_graph(out if args.input is None else Path(args.input))
    scc = strongly_connected_components(g)
    wcc = weakly_connected_components(g)
    component_size_distribution(scc).save(out / report.dist_file("scc_sizes"))
    component_size_distribution(wcc).save(out / report.dist_file("wcc_sizes"))
    report.write_json(
        out / report.COMPONENTS_JSON,
        {
            "largest_scc_fraction": scc.largest_fraction,
            "largest_wcc_fraction": wcc.largest_fraction,
            "scc_count": scc.component_count,
            "wcc_count": wcc.component_count,
        },
    )
    if args.assignments:
        labels = g.labels or [str(i) for i in range(g.node_count)]
        for summary, fname in ((scc, "scc_assignment.tsv"), (wcc, "wcc_assignment.tsv")):
            with open(out / fname, "w", encoding="utf-8") as fh:
                for node, label in enumerate(labels):
                    fh.write(f"{label}\t{summary.assignment[node]}\n")
    print(
        f"SCC: {scc.component_count} components, largest "
        f"{scc.largest_fraction:.2%}; WCC: {wcc.component_count}, largest "
        f"{wcc.largest_fraction:.2%}"
    )
    return 0


def cmd_hopplot(args) -> int:
    out = Path(args.output)
    g = load_graph(out if args.input is None else Path(args.input))
    hp = anf_hopplot(g, trials=args.trials, seed=args.seed)
    eff = effective_diameter(hp, quantile=args.quantile)
    with open(out / report.HOPPLOT_TSV, "w", encoding="utf-8") as fh:
        fh.write("# h\tN(h)\n")
        for h, nh in enumerate(hp.counts):
            fh.write(f"{h}\t{nh!r}\n")
    report.write_json(
        out / report.HOPPLOT_JSON,
        {
            "effective_diameter": eff,
            "quantile": args.quantile,
            "trials": args.trials,
            "seed": args.seed,
            "pair_estimate_error": hp.pair_estimate_error,
            "max_hop": hp.max_hop,
        },
    )
    print(f"effective diameter ({args.quantile:.0%}): {eff:.2f} over {hp.max_hop} hops")
    return 0


def cmd_diameter(args) -> int:
    out = Path(args.output)
    g = load_graph(out if args.input is None else Path(args.input))
    bound = bfs_diameter_lower_bound(g, sample=args.bfs_sample, seed=args.seed)
    report.write_json(
        out / report.DIAMETER_JSON,
        {
            "full_diameter_lower_bound": bound,
            "bfs_sample_size": min(args.bfs_sample, g.node_count),
            "seed": args.seed,
        },
    )
    print(f"full diameter lower bound: {bound}")
    return 0


def cmd_fit(args) -> int:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    src = Path(args.input)
    if not src.exists():
        raise MissingArtifactError(str(src))
    dist = report.load_distribution(src)
    fit = tailfit.fit_power_law(dist, args.formalism, tail_floor=args.tail_floor)
    p = tailfit.gof_pvalue(dist, fit, n_sims=args.sims, seed=args.seed)
    payload = report.fit_result_to_json(fit, p, args.sims, args.seed)
    report.write_json(out / report.fit_file(src.stem, args.formalism), payload)
    print(
        f"{src.stem} [{args.formalism}]: {fit.summary()}, "
        f"p = {tailfit.format_pvalue(p, args.sims)}"
    )
    return 0


def cmd_compare(args) -> int:
    out = Path(args.output)
    src = Path(args.input)
    if not src.exists():
        raise MissingArtifactError(str(src))
    dist = report.load_distribution(src)
    fit_json = report.read_json(report.require(out, report.fit_file(src.stem, args.formalism)))
    fit = tailfit.fit_power_law(
        dist, args.formalism, xmin=fit_json["xmin"], tail_floor=args.tail_floor
    )
    verdicts = modelcompare.plausibility_scan(dist, fit)
    fits = {v.alternative: v.params for v in verdicts if v.params is not None}
    tournament = modelcompare.best_alternative_tournament(
        dist, verdicts, fits, fit.xmin
    )
    payload = {
        "distribution": src.stem,
        "formalism": args.formalism,
        "xmin": fit.xmin,
        "alternatives": [v.to_dict() for v in verdicts],
        "tournament": tournament.to_dict(),
    }
    report.write_json(out / report.compare_file(src.stem, args.formalism), payload)
    csv_path = out / (report.compare_file(src.stem, args.formalism)[:-5] + ".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "R", "q", "verdict"])
        for v in verdicts:
            writer.writerow(
                [
                    v.alternative.value,
                    v.comparison.r if v.comparison else "",
                    v.comparison.q if v.comparison else "",
                    v.support.value,
                ]
            )
    best = tournament.winner.value if tournament.winner else "none"
    print(f"{src.stem} [{args.formalism}]: best alternative = {best}")
    return 0


def cmd_report(args) -> int:
    out = Path(args.output)
    payload = report.compose_report(out, zero_shift=args.zero_shift)
    report.write_json(out / "report.json", payload)
    print(f"report written to {out / 'report.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailgraph",
        description="Directed-graph degree/component/heavy-tail/distance analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--output", required=True, metavar="DIR",
                       help="artifact directory")
        return p

    p = add("ingest", cmd_ingest, help="load an edge list into graph artifacts")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--self-loops", choices=["keep", "drop"], default="keep")

    p = add("aggregate", cmd_aggregate, help="build the PLD/group quotient graph")
    p.add_argument("--input", required=True, metavar="DIR",
                   help="ingested graph directory")
    p.add_argument("--psl", metavar="PATH", help="Public Suffix List file")
    p.add_argument("--groups", metavar="PATH",
                   help="node_label<TAB>group_label mapping file")
    p.add_argument("--self-loops", choices=["keep", "drop"], default="drop")

    p = add("degrees", cmd_degrees, help="degree histogram for one direction")
    p.add_argument("--input", metavar="DIR", default=None)
    p.add_argument("--direction", choices=["in", "out", "total"], required=True)

    p = add("components", cmd_components, help="SCC/WCC partitions and sizes")
    p.add_argument("--input", metavar="DIR", default=None)
    p.add_argument("--assignments", action="store_true",
                   help="also write per-node component assignment files")

    p = add("hopplot", cmd_hopplot, help="approximate neighborhood function")
    p.add_argument("--input", metavar="DIR", default=None)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quantile", type=float, default=0.9)

    p = add("diameter", cmd_diameter, help="sampled-BFS diameter lower bound")
    p.add_argument("--input", metavar="DIR", default=None)
    p.add_argument("--bfs-sample", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)

    p = add("fit", cmd_fit, help="power-law fit with bootstrap p-value")
    p.add_argument("--input", required=True, metavar="PATH",
                   help="distribution file (value<TAB>count or raw values)")
    p.add_argument("--formalism", choices=["discrete", "continuous"],
                   default="discrete")
    p.add_argument("--sims", type=int, default=tailfit.DEFAULT_GOF_SIMS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tail-floor", type=int, default=tailfit.DEFAULT_TAIL_FLOOR)

    p = add("compare", cmd_compare, help="power law vs alternative tail models")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--formalism", choices=["discrete", "continuous"],
                   default="discrete")
    p.add_argument("--tail-floor", type=int, default=tailfit.DEFAULT_TAIL_FLOOR)

    p = add("report", cmd_report, help="compose stage artifacts into one report")
    p.add_argument("--zero-shift", action="store_true",
                   help="emit zero bins at abscissa 0.1 in plot data")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MissingArtifactError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
