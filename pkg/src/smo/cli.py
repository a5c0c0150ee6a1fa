"""Command-line harness stitching the modules into experiments.

Single binary, subcommand style, flags only: every run is reproducible
from the command line echoed in its report.  Exit codes: 0 success (for
`compare`: IDENTICAL), 1 DIFFER / MISMATCH, 2 INCONCLUSIVE, 3 parse or
I/O errors.

The `census` report renders a frequency figure next to its delimited
output when an output path is given.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import goss, permgrp, splitting
from .ffpoly import FFError, factor, parse_poly, poly_str
from .permgrp import GroupError
from .splitting import field_of_order, parse_field_file

MODES = ("factor", "split", "table", "compare", "gassmann", "reconstruct", "census")


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    inputs: tuple = ()
    degree_bound: int = None
    seed: int = 0
    precision: int = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        needs_bound = {"table", "compare", "census"}
        if self.mode in needs_bound and (self.degree_bound is None or self.degree_bound < 1):
            raise ValueError(f"mode {self.mode} requires a degree bound >= 1")


def _read(path):
    return Path(path).read_text()


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _table_lines(table):
    lines = []
    for p, st in table.entries.items():
        if st is None:
            lines.append(f"p={poly_str(p)} type=unknown")
        else:
            es = ",".join(str(d.e) for d in table.above[p])
            lines.append(f"p={poly_str(p)} type={st} e=[{es}]")
    return lines


def cmd_factor(args) -> int:
    ExperimentConfig("factor", (args.poly,), seed=args.seed)
    field = field_of_order(args.q)
    f = parse_poly(field, args.poly)
    lines = [f"lc={f.lc}"] if not f.is_monic else []
    for g, m in factor(f, seed=args.seed):
        lines.append(f"factor={poly_str(g)} mult={m}")
    _emit(lines, args.out)
    return 0


def cmd_split(args) -> int:
    K = parse_field_file(_read(args.field))
    p = parse_poly(K.base, args.prime)
    try:
        stype, data = splitting.splitting_type_of_prime(K, p, seed=args.seed)
    except splitting.IndexDivisor:
        _emit([f"p={poly_str(p)} type=unknown"], args.out)
        return 0
    es = ",".join(str(d.e) for d in data)
    _emit([f"p={poly_str(p)} type={stype} e=[{es}]"], args.out)
    return 0


def cmd_table(args) -> int:
    ExperimentConfig("table", (args.field,), degree_bound=args.deg, seed=args.seed)
    K = parse_field_file(_read(args.field))
    table = splitting.splitting_table(K, args.deg, seed=args.seed)
    if args.euler or args.lifted:
        lines = table.render_lines(lifted=args.lifted)
    else:
        lines = _table_lines(table)
    _emit(lines, args.out)
    return 0


def cmd_compare(args) -> int:
    ExperimentConfig("compare", (args.a, args.b), degree_bound=args.deg, seed=args.seed)
    ka = parse_field_file(_read(args.a))
    kb = parse_field_file(_read(args.b))
    if ka.base.q != kb.base.q:
        raise FFError("fields must share q")
    ta = splitting.splitting_table(ka, args.deg, seed=args.seed)
    tb = splitting.splitting_table(kb, args.deg, seed=args.seed)
    report = goss.compare_tables(ta, tb)
    _emit(report.render_lines(), args.out)
    return {"IDENTICAL": 0, "DIFFER": 1, "INCONCLUSIVE": 2}[report.verdict]


def cmd_gassmann(args) -> int:
    gf = permgrp.parse_group_file(_read(args.group))
    try:
        h1 = gf.subgroups[args.h1]
        h2 = gf.subgroups[args.h2]
    except KeyError as exc:
        raise GroupError(f"unknown subgroup {exc}")
    equivalent = permgrp.gassmann_equivalent(gf.group, h1, h2)
    conj = permgrp.are_conjugate(gf.group, h1, h2)
    _emit(
        [
            f"gassmann_equivalent={'true' if equivalent else 'false'}",
            f"conjugate={'true' if conj else 'false'}",
        ],
        args.out,
    )
    return 0


def cmd_reconstruct(args) -> int:
    gf = permgrp.parse_group_file(_read(args.group))
    if args.decomp not in gf.decomps:
        raise GroupError(f"unknown decomp {args.decomp!r}")
    ge_name, dec = gf.decomps[args.decomp]
    G = gf.group
    G_E = gf.subgroups[ge_name]
    types = permgrp.unramified_types(G, G_E)
    census = permgrp.census_from_unramified_types(G, types)
    counts = permgrp.divisor_counts_from_census(G, census, dec)
    recovered = permgrp.recover_splitting_type(counts)
    lines = [f"census={list(census.counts)}"]
    for d in sorted(counts):
        lines.append(f"count[d={d}]={counts[d]}")
    lines.append(f"reconstructed={recovered}")
    status = 0
    if args.check:
        truth = permgrp.splitting_type_from_fibers(G, G_E, dec)
        ok = truth == recovered
        lines.append(f"direct={truth}")
        lines.append("MATCH" if ok else "MISMATCH")
        status = 0 if ok else 1
    _emit(lines, args.out)
    return status


def _census_histogram(K, deg, seed):
    table = splitting.splitting_table(K, deg, seed=seed)
    disc = K.discriminant
    counts = {}
    total = 0
    for p, st in table.entries.items():
        if st is None or (disc % p).is_zero:
            continue
        counts[str(st)] = counts.get(str(st), 0) + 1
        total += 1
    return counts, total


def cmd_census(args) -> int:
    ExperimentConfig("census", (args.field,), degree_bound=args.deg, seed=args.seed)
    K = parse_field_file(_read(args.field))
    counts, total = _census_histogram(K, args.deg, args.seed)
    lines = [f"unramified_primes={total}"]
    for key in sorted(counts):
        lines.append(f"type={key} count={counts[key]} freq={counts[key]/total:.6f}")
    _emit(lines, args.out)
    plot_path = args.plot
    if plot_path is None and args.out:
        plot_path = str(Path(args.out).with_suffix(".png"))
    if plot_path:
        _render_census_figure(counts, total, plot_path, title=f"{K.g}, deg <= {args.deg}")
        sys.stdout.write(f"figure written to {plot_path}\n")
    return 0


def _render_census_figure(counts, total, path, title=""):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    keys = sorted(counts)
    freqs = [counts[k] / total for k in keys]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(keys)), freqs, color="steelblue")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=30, ha="right")
    ax.set_ylabel("relative frequency")
    ax.set_title(f"splitting types of unramified primes: {title}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="smo",
        description="splitting types, double cosets, and Goss zeta Euler products",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("factor", help="factor a polynomial over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly", required=True)
    add_common(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("split", help="splitting type of one prime")
    p.add_argument("--field", required=True)
    p.add_argument("--prime", required=True)
    add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("table", help="splitting table up to a degree bound")
    p.add_argument("--field", required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--euler", action="store_true", help="emit Euler factors")
    p.add_argument("--lifted", action="store_true", help="emit Teichmuller-lifted factors")
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="compare two fields' Euler factor tables")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--deg", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gassmann", help="test Gassmann equivalence of two subgroups")
    p.add_argument("--group", required=True)
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", required=True)
    add_common(p)
    p.set_defaults(func=cmd_gassmann)

    p = sub.add_parser("reconstruct", help="ramified splitting type from unramified data")
    p.add_argument("--group", required=True)
    p.add_argument("--decomp", required=True)
    p.add_argument("--check", action="store_true", help="verify against the fiber computation")
    add_common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("census", help="splitting-type frequencies over unramified primes")
    p.add_argument("--field", required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--plot", help="render the histogram figure to this path")
    add_common(p)
    p.set_defaults(func=cmd_census)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FFError, GroupError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
