"""Command-line surface: batch runs, certificate checking, metrics, surveys.

Machine-parsable line records first, human-readable second.  Exit codes:
0 success, 1 check failure, 2 usage error, 3 oracle limit encountered.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import metrics
from .certificates import (OracleLimit, RunConfig, certificate_from_record,
                           certificate_kind, certificate_to_record, check_certificate,
                           fmt_q, parse_q, parse_record, record_line)
from .generators import GenerationError, generate
from .graph import Graph
from .graph6 import Graph6Error, read_graph6_file
from .pipeline import run_theorem

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_ORACLE_LIMIT = 3


def _config_from_args(args, t: Fraction) -> RunConfig:
    cfg = RunConfig(t=t, seed=args.seed)
    if args.cap_toughness:
        cfg.cap_subsets = args.cap_toughness
    if args.cap_oracle:
        cfg.cap_oracle = args.cap_oracle
    return cfg


def cmd_run(args, out) -> int:
    t = parse_q(args.t)
    cfg = _config_from_args(args, t)
    graphs = read_graph6_file(args.input)
    limit_hit = False
    records: list[str] = []
    for index, g in enumerate(graphs):
        cert, trace = run_theorem(g, cfg)
        records.append(record_line("graph", [("index", index), ("n", g.n), ("t", t)]))
        records.extend(trace)
        records.append(certificate_to_record(cert))
        if isinstance(cert, OracleLimit):
            limit_hit = True
    text = "\n".join(records) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_ORACLE_LIMIT if limit_hit else EXIT_OK


def _certificates_by_index(path: str):
    found: dict[int, tuple[Fraction, object]] = {}
    current = None
    current_t = Fraction(11)
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            name, fields, _ids = parse_record(line)
            if name == "graph":
                current = int(fields["index"])
                current_t = parse_q(fields.get("t", "11"))
            elif name == "cert":
                if current is None:
                    raise ValueError("certificate record before any graph record")
                found[current] = (current_t, certificate_from_record(line))
    return found


def cmd_check(args, out) -> int:
    graphs = read_graph6_file(args.graph)
    certs = _certificates_by_index(args.cert)
    failures = 0
    for index, g in enumerate(graphs):
        if index not in certs:
            out.write(f"check index={index} result=missing\n")
            failures += 1
            continue
        t, cert = certs[index]
        ok, reason = check_certificate(g, cert, RunConfig(t=t))
        out.write(f"check index={index} result={'pass' if ok else 'fail'}"
                  f" reason={reason.replace(' ', '-')}\n")
        if not ok:
            failures += 1
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _metrics_line(g: Graph) -> tuple[str, bool]:
    limited = False

    def attempt(solver, render):
        nonlocal limited
        try:
            value, _ = solver(g)
        except metrics.OracleLimitExceeded:
            limited = True
            return "limit"
        return render(value)

    tau = attempt(metrics.toughness, lambda v: "inf" if v == metrics.INF else fmt_q(v))
    kappa = attempt(metrics.connectivity, str)
    alpha = attempt(metrics.independence, str)
    s = attempt(metrics.scattering, lambda v: "inf" if v == metrics.INF else str(v))
    line = f"tau={tau} kappa={kappa} alpha={alpha} delta={g.min_degree()} s={s}"
    return line, limited


def cmd_metrics(args, out) -> int:
    limit_hit = False
    for g in read_graph6_file(args.input):
        line, limited = _metrics_line(g)
        out.write(line + "\n")
        limit_hit = limit_hit or limited
    return EXIT_ORACLE_LIMIT if limit_hit else EXIT_OK


def cmd_survey(args, out) -> int:
    grid = [parse_q(tok) for tok in args.t_grid.split(",") if tok.strip()]
    if not grid:
        raise ValueError("empty t grid")
    graphs = [generate(args.gen, {"n": args.n, "p": 0.5}, seed=args.seed + i)
              for i in range(args.count)]
    for t in grid:
        cfg = RunConfig(t=t, seed=args.seed)
        counts = {"hamilton-cycle": 0, "toughness-witness": 0,
                  "forbidden-witness": 0, "oracle-limit": 0}
        for g in graphs:
            cert, _trace = run_theorem(g, cfg)
            counts[certificate_kind(cert)] += 1
        out.write(record_line(
            "survey",
            [("t", t), ("graphs", len(graphs))] + sorted(counts.items())) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toughham",
        description="certifying Hamilton-cycle pipeline for tough pattern-free graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the pipeline on graph6 inputs")
    p_run.add_argument("--t", default="11", help="toughness parameter, NUM/DEN")
    p_run.add_argument("--input", required=True, help="graph6 file, one graph per line")
    p_run.add_argument("--out", default="-", help="certificate file (default stdout)")
    p_run.add_argument("--cap-toughness", type=int, default=None)
    p_run.add_argument("--cap-oracle", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.set_defaults(func=cmd_run)

    p_check = sub.add_parser("check", help="validate a certificate file")
    p_check.add_argument("--graph", required=True)
    p_check.add_argument("--cert", required=True)
    p_check.set_defaults(func=cmd_check)

    p_metrics = sub.add_parser("metrics", help="print exact structural quantities")
    p_metrics.add_argument("--input", required=True)
    p_metrics.set_defaults(func=cmd_metrics)

    p_survey = sub.add_parser("survey", help="sweep t over a grid and tabulate outcomes")
    p_survey.add_argument("--t-grid", required=True, help="comma-separated rationals")
    p_survey.add_argument("--gen", default="random_in_class")
    p_survey.add_argument("--n", type=int, required=True)
    p_survey.add_argument("--count", type=int, required=True)
    p_survey.add_argument("--seed", type=int, default=0)
    p_survey.set_defaults(func=cmd_survey)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, out)
    except (Graph6Error, GenerationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
