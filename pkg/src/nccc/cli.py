"""Command-line front end.

Subcommands::

    nccc analyze --family d2m --m 5 [--json] [--export-json PATH] [--export-edges PATH]
    nccc verify [--family d2m t4m ...] [--max M] [--csv PATH] [--perturb] [--lemma-squares]
    nccc figure --figure N [--csv PATH] [--oracle]
    nccc quotient --kind {zpxzp,d2m} (--p P | --m M) --z Z

Exit status: 0 on success and agreement, 1 on any disagreement, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import analysis, classify, closed_form, graphs
from .groups import FamilySpec, GroupValidationError, load_table_json

log = logging.getLogger("nccc")

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2
SQUARE_SETS_EXPECTED = ([1, 2], [2, 4, 11], [1])


class UsageError(Exception):
    pass


def _spec_from_args(args) -> FamilySpec:
    fam = args.family
    try:
        if fam == "table":
            if not args.table:
                raise UsageError("--family table needs --table PATH")
            return load_table_json(args.table)
        kind = analysis.CLI_FAMILY[fam]
        if kind == "heisenberg":
            if args.p is None:
                raise UsageError("--family heis needs --p")
            return FamilySpec.heisenberg(args.p)
        if args.m is None:
            raise UsageError(f"--family {fam} needs --m")
        if kind == "umn":
            if args.n is None:
                raise UsageError("--family umn needs --n")
            return FamilySpec.umn(args.n, args.m)
        return FamilySpec(kind, m=args.m)
    except (ValueError, OSError, GroupValidationError) as exc:
        raise UsageError(str(exc)) from exc


def _emit_json(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ----------------------------------------------------------------------

def cmd_analyze(args) -> int:
    spec = _spec_from_args(args)
    record, gamma, _ = analysis.analyze(spec, args.tol, exact=not args.no_exact,
                                        perturb=args.perturb, return_graphs=True)
    if args.export_json:
        with open(args.export_json, "w") as fh:
            fh.write(graphs.to_adjacency_json(gamma) + "\n")
    if args.export_edges:
        with open(args.export_edges, "w") as fh:
            fh.write(graphs.to_edge_list(gamma))
    if args.json:
        _emit_json(record.to_dict())
    else:
        print(record.format_table())
    return EXIT_OK if record.agree else EXIT_DISAGREE


def _lemma_squares(args) -> int:
    max_m = args.max or 1_000_000
    t0 = time.perf_counter()
    sets = classify.square_solution_sets(max_m)
    elapsed = time.perf_counter() - t0
    labels = ("m^2+6m-7", "m^2+12m-28", "4m^2+12m-7")
    ok = list(sets) == list(SQUARE_SETS_EXPECTED)
    if args.json:
        _emit_json({"schema": analysis.SCHEMA, "max": max_m, "seconds": elapsed,
                    "solutions": dict(zip(labels, sets)), "agree": ok})
    else:
        for lab, s in zip(labels, sets):
            print(f"{lab:<12} square for m in {{{', '.join(map(str, s))}}}")
        print(f"scanned m <= {max_m} in {elapsed:.2f}s")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_verify(args) -> int:
    if args.lemma_squares:
        return _lemma_squares(args)
    families = None
    if args.family:
        families = [analysis.CLI_FAMILY[f] for f in args.family]
        if "table" in families:
            raise UsageError("verify sweeps named families; use analyze for tables")
    specs = analysis.default_sweep_specs(families, args.max)
    if not specs:
        raise UsageError("nothing to verify for the given --family/--max")
    t0 = time.perf_counter()
    records = analysis.run_sweep(specs, args.tol, exact=not args.no_exact, perturb=args.perturb,
                                 threads=analysis.worker_count())
    elapsed = time.perf_counter() - t0
    if args.csv:
        analysis.sweep_csv(records, args.csv)
    bad = [r for r in records if not r.agree]
    if args.json:
        _emit_json({
            "schema": analysis.SCHEMA,
            "instances": len(records),
            "tolerance": args.tol,
            "seconds": elapsed,
            "disagreements": [{"name": r.name, "params": r.params, "failures": r.failures()} for r in bad],
            "agree": not bad,
        })
    else:
        for r in bad:
            print(f"DISAGREE {r.name} {r.params}: {', '.join(r.failures())}")
        print(f"{len(records)} instances, {len(bad)} disagreements, {elapsed:.1f}s")
    return EXIT_OK if not bad else EXIT_DISAGREE


def cmd_figure(args) -> int:
    if args.figure is None:
        raise UsageError("--figure is required")
    if args.figure not in analysis.FIGURES:
        raise UsageError(f"unknown figure {args.figure}; valid ids are 1..{len(analysis.FIGURES)}")
    rows = analysis.figure_rows(args.figure, oracle=args.oracle)
    bad = analysis.figure_violations(args.figure, rows, args.tol)
    text = analysis.figure_csv(args.figure, args.csv, oracle=args.oracle)
    if args.json:
        fig = analysis.FIGURES[args.figure]
        _emit_json({"schema": analysis.SCHEMA, "figure": fig.number, "title": fig.title,
                    "rows": [dict(zip(("m", "E", "LE", "SE"), r)) for r in rows],
                    "violations": [dict(zip(("m", "expected", "got"), b)) for b in bad]})
    elif not args.csv:
        sys.stdout.write(text)
    for m, want, got in bad:
        print(f"figure {args.figure}: m={m} expected {want}, got {got}", file=sys.stderr)
    return EXIT_OK if not bad else EXIT_DISAGREE


def cmd_quotient(args) -> int:
    try:
        if args.kind == "zpxzp":
            if args.p is None:
                raise UsageError("--kind zpxzp needs --p")
            res = closed_form.spectra_pp_quotient(args.p, args.z)
        else:
            if args.m is None:
                raise UsageError("--kind d2m needs --m")
            res = closed_form.spectra_d2m_quotient(args.m, args.z)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "schema": analysis.SCHEMA,
        "case_tag": res.case_tag,
        "shape": str(res.shape),
        "n_vertices": res.n_vertices,
        "n_edges": res.n_edges,
        "spectra": {k: [[str(v), mult] for v, mult in s.pairs]
                    for k, s in (("A", res.spec_A), ("L", res.spec_L), ("Q", res.spec_Q))},
        "energies": {"E": str(res.E), "LE": str(res.LE), "SE": str(res.SE)},
    }
    if args.json:
        _emit_json(doc)
    else:
        print(f"{res.case_tag}: {res.shape}, {res.n_vertices} vertices, {res.n_edges} edges")
        for k, s in (("A", res.spec_A), ("L", res.spec_L), ("Q", res.spec_Q)):
            print(f"Spec {k}: {s}")
        print(f"E = {res.E}, LE = {res.LE}, SE = {res.SE}")
    return EXIT_OK


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nccc", description="Spectra and energies of NCCC-graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8, help="agreement tolerance (default 1e-8)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    def family_args(p):
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--table", metavar="PATH", help="Cayley table JSON for --family table")

    p = sub.add_parser("analyze", help="analyze one group")
    common(p)
    p.add_argument("--family", required=True, choices=sorted(analysis.CLI_FAMILY))
    family_args(p)
    p.add_argument("--export-json", metavar="PATH", help="write the graph as adjacency-list JSON")
    p.add_argument("--export-edges", metavar="PATH", help="write the graph as an edge list")
    p.add_argument("--no-exact", action="store_true", help="skip exact characteristic polynomials")
    p.add_argument("--perturb", action="store_true", help="flip one formula sign (self-test)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="formula-vs-oracle sweep")
    common(p)
    p.add_argument("--family", nargs="+", choices=sorted(set(analysis.CLI_FAMILY) - {"table"}))
    p.add_argument("--max", type=int, help="cap on m (sweep) or scan bound (--lemma-squares)")
    p.add_argument("--csv", metavar="PATH", help="per-instance deviations")
    p.add_argument("--no-exact", action="store_true", help="skip exact integrality checks")
    p.add_argument("--perturb", action="store_true", help="flip one formula sign (self-test)")
    p.add_argument("--lemma-squares", action="store_true", help="scan m for the three perfect-square expressions")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="energy curves as CSV")
    common(p)
    p.add_argument("--figure", type=int)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--oracle", action="store_true", help="compute from the constructed graphs")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("quotient", help="closed form for a central quotient")
    common(p)
    p.add_argument("--kind", required=True, choices=("zpxzp", "d2m"))
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--z", type=int, required=True)
    p.set_defaults(func=cmd_quotient)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.tol <= 0:
        parser.error("--tol must be positive")
    if getattr(args, "max", None) is not None and args.max < 1:
        parser.error("--max must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nccc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # bad NCCC_THREADS and similar configuration problems
        print(f"nccc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
