"""Command line interface.

Subcommands: ``generate``, ``ingest``, ``transform``, ``metrics``,
``compare``, ``report``.  Exit codes: 0 on success, 1 on usage errors
(synopsis goes to stderr), 2 on data errors.  The default output directory
comes from ``--out``, falling back to the ``AFFNET_OUT_DIR`` environment
variable and then the working directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ._version import __version__
from .errors import AffnetError
from .generators import ErConfig, density_report, generate_er_affiliation
from .io import (
    export_edge_list,
    ingest,
    load_affiliations,
    load_network,
    save_affiliations,
    save_network,
)
from .metrics import closeness_table, node_activity, slice_degrees
from .network import Rank3Network, Rank4Network
from .pipeline import export_report, run_comparison
from .transforms import infer_affiliations, rank3_to_rank4, rank4_to_rank3

__all__ = ["main", "entrypoint"]

OUT_DIR_ENV = "AFFNET_OUT_DIR"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _default_out() -> str:
    return os.environ.get(OUT_DIR_ENV, ".")


def _parse_generate_params(tokens: list[str]) -> ErConfig:
    values: dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise _UsageError(f"expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        values[key.strip().lower()] = value.strip()
    missing = {"n", "p", "m"} - set(values)
    if missing:
        raise _UsageError(f"--generate needs n=, p= and m= (missing {sorted(missing)})")
    try:
        return ErConfig(
            n_nodes=int(values["n"]),
            link_probability=float(values["p"]),
            n_affiliations=int(values["m"]),
            seed=int(values.get("seed", 0)),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="affnet",
        description="Single-affiliation multilayer network analysis",
    )
    parser.add_argument("--version", action="version", version=f"affnet {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("generate", parents=[], help="generate a random network")
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--p", type=float, required=True, help="link probability")
    p.add_argument("--m", type=int, required=True, help="affiliation count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output directory")

    p = sub.add_parser("ingest", help="build networks from edge and affiliation files")
    p.add_argument("--edges", required=True)
    p.add_argument("--affiliations", required=True)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--lenient", action="store_true",
                   help="drop unaffiliated endpoints and self-loops instead of failing")
    p.add_argument("--out", default=None)

    p = sub.add_parser("transform", help="convert between representations")
    p.add_argument("--input", required=True, help="native network file")
    p.add_argument("--to", required=True, choices=["rank3", "rank4"])
    p.add_argument("--affiliations", default=None,
                   help="affiliation sidecar used to order directed layer pairs")
    p.add_argument("--out", default=None)

    p = sub.add_parser("metrics", help="slice metrics of one network")
    p.add_argument("--input", required=True, help="native network file")
    p.add_argument("--out", default=None)

    p = sub.add_parser("compare", help="full two-representation comparison")
    p.add_argument("--generate", nargs="+", metavar="key=value",
                   help="generate input, e.g. n=2000 p=0.003 m=10")
    p.add_argument("--edges", default=None)
    p.add_argument("--affiliations", default=None)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--strict", dest="strict", action="store_true", default=True)
    p.add_argument("--lenient", dest="strict", action="store_false")
    p.add_argument("--seed", type=int, default=None,
                   help="overrides seed= in --generate")
    p.add_argument("--out", default=None)

    p = sub.add_parser("report", help="print a saved comparison summary")
    p.add_argument("--input", required=True, help="directory containing summary.json")
    return parser


def _cmd_generate(args) -> int:
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    config = ErConfig(args.n, args.p, args.m, args.seed)
    network, affiliations = generate_er_affiliation(config)
    save_network(network, out / "network.rank4.tsv")
    save_network(rank4_to_rank3(network), out / "network.rank3.tsv")
    save_affiliations(
        affiliations, network.node_labels, network.layer_labels,
        out / "affiliations.tsv",
    )
    export_edge_list(network, out / "edges.tsv")
    print(f"wrote network with {network.n_links} links to {out}")
    return 0


def _cmd_ingest(args) -> int:
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    result = ingest(
        args.edges,
        args.affiliations,
        directedness="directed" if args.directed else "undirected",
        strict=not args.lenient,
    )
    save_network(result.rank4, out / "network.rank4.tsv")
    save_network(result.rank3, out / "network.rank3.tsv")
    save_affiliations(
        result.affiliations,
        result.rank4.node_labels,
        result.rank4.layer_labels,
        out / "affiliations.tsv",
    )
    stats = result.stats
    print(
        f"ingested {result.rank4.n_nodes} nodes, {result.rank4.n_links} links, "
        f"{result.rank4.n_layers} layers "
        f"(duplicates collapsed: {stats.duplicate_links}, "
        f"dropped unaffiliated: {stats.dropped_unaffiliated}, "
        f"dropped self-loops: {stats.dropped_self_loops})"
    )
    return 0


def _cmd_transform(args) -> int:
    network = load_network(args.input)
    out = Path(args.out) if args.out else None
    if args.to == "rank3":
        if not isinstance(network, Rank4Network):
            raise AffnetError("input is already rank-3")
        converted = rank4_to_rank3(network)
        default_name = "network.rank3.tsv"
    else:
        if not isinstance(network, Rank3Network):
            raise AffnetError("input is already rank-4")
        affiliations = None
        if args.affiliations:
            affiliations = load_affiliations(args.affiliations, network)
        converted = rank3_to_rank4(network, affiliations)
        default_name = "network.rank4.tsv"
        inference = infer_affiliations(network)
        if inference.indeterminate_nodes:
            print(
                f"note: {len(inference.indeterminate_nodes)} nodes have "
                "structurally indeterminate affiliations",
                file=sys.stderr,
            )
    path = out if out is not None else Path(_default_out()) / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    save_network(converted, path)
    print(f"wrote {path}")
    return 0


def _cmd_metrics(args) -> int:
    network = load_network(args.input)
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)

    lines = ["slice\tnode\traw_degree\tnormalized_degree"]
    for sl in network.slices():
        vec = slice_degrees(network, sl)
        name = str(sl.alpha) if sl.beta is None else f"{sl.alpha},{sl.beta}"
        for node in range(network.n_nodes):
            raw = int(vec.raw[node])
            if raw:
                lines.append(
                    f"{name}\t{network.node_labels[node]}\t{raw}\t{repr(raw / network.n_nodes)}"
                )
    (out / "degrees.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    activity = node_activity(network)
    lines = ["node\tactivity"]
    for node, value in enumerate(activity):
        lines.append(f"{network.node_labels[node]}\t{repr(float(value))}")
    (out / "activity.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    table = closeness_table(network)
    lines = ["slice_x\tslice_y\tcloseness"]
    names = [str(s.alpha) if s.beta is None else f"{s.alpha},{s.beta}" for s in table.slices]
    for x in range(len(names)):
        for y in range(len(names)):
            lines.append(f"{names[x]}\t{names[y]}\t{repr(float(table.q[x, y]))}")
    (out / "closeness.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    density = density_report(network)
    print(
        f"{network!r}: populated={density.populated} "
        f"fraction={density.fraction!r}; wrote degrees/activity/closeness to {out}"
    )
    return 0


def _cmd_compare(args) -> int:
    out = Path(args.out or _default_out())
    if args.generate:
        config = _parse_generate_params(args.generate)
        if args.seed is not None:
            config = ErConfig(
                config.n_nodes, config.link_probability,
                config.n_affiliations, args.seed,
            )
        rank4, _ = generate_er_affiliation(config)
        metadata = {"source": "generated", **config.metadata()}
    elif args.edges and args.affiliations:
        result = ingest(
            args.edges,
            args.affiliations,
            directedness="directed" if args.directed else "undirected",
            strict=args.strict,
        )
        rank4 = result.rank4
        metadata = {
            "source": "ingested",
            "edges": str(args.edges),
            "affiliations": str(args.affiliations),
        }
    else:
        raise _UsageError("compare needs --generate or both --edges and --affiliations")
    rank3 = rank4_to_rank3(rank4)
    report = run_comparison(rank4, rank3, metadata=metadata)
    written = export_report(report, out)
    print(
        f"rank-3 significance fraction: {report.rank3.significance_fraction!r}; "
        f"rank-4: {report.rank4.significance_fraction!r}"
    )
    print(f"wrote {len(written)} files to {out}")
    return 0


def _cmd_report(args) -> int:
    summary_path = Path(args.input) / "summary.json"
    data = json.loads(summary_path.read_text(encoding="utf-8"))
    meta = data.get("metadata", {})
    print(f"comparison report (schema v{data.get('schema_version')})")
    for key in sorted(meta):
        print(f"  {key}: {meta[key]}")
    for name in ("rank3", "rank4"):
        rep = data[name]
        density = rep["density"]
        print(
            f"{name}: {len(rep['slices'])} slices, "
            f"significant fraction {rep['significance_fraction']}, "
            f"fittable fraction {rep['fittable_fraction']}, "
            f"density {density['fraction']}"
        )
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "ingest": _cmd_ingest,
    "transform": _cmd_transform,
    "metrics": _cmd_metrics,
    "compare": _cmd_compare,
    "report": _cmd_report,
}


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AffnetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())
