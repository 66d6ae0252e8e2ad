"""Command-line interface: ``permsim <command> ...``.

Results go to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 on domain errors (bad input, degree mismatch, failed checks) and 2 when an
enumeration limit is hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from . import __version__
from .alpha_action import EnumerationLimitError, build_set, verify_2chars
from .characters import RepresentationSpec, rep_char, subset_gen_fn
from .field_linalg import invariant_factors, parse_matrix, similar
from .invariant_recovery import oracle_from_matrix, recover_cycle_type
from .perm_core import (CycleType, DegreeMismatchError, cycle_type, enumerate_cycle_types,
                        format_cycle_type, order, parse_cycle_type, parse_permutation,
                        perm_power, power_cycle_type, representative)
from .uniting_analysis import (DEFAULT_ACTION_LIMIT, ActionSetTooLargeError, default_workers,
                               find_united_pairs, induced_permutation)
from .verify import run_battery

EXIT_OK, EXIT_DOMAIN, EXIT_LIMIT = 0, 1, 2
QQ_WARN_SIZE = 12


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    format: str = "json"
    limit: int = DEFAULT_ACTION_LIMIT
    workers: int = 1

    def __post_init__(self):
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.limit < 1 or self.workers < 1:
            raise UsageError("--limit and --workers must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes for scans (default: CPU count)")
    common.add_argument("--limit", type=int, default=DEFAULT_ACTION_LIMIT,
                        help="maximum size of an enumerated set")

    parser = _Parser(prog="permsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    p = add("parse", "parse a permutation")
    p.add_argument("perm")
    p.add_argument("--n", type=int)

    p = add("cycle-type", "cycle type of a permutation")
    p.add_argument("perm")
    p.add_argument("--n", type=int)

    p = add("power", "cycle type (or permutation) of a power")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--perm")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)

    p = add("char", "permutation character value")
    p.add_argument("--rep", required=True)
    p.add_argument("--type")
    p.add_argument("--n", type=int)
    p.add_argument("--table", action="store_true",
                   help="character values on every class of S_n")

    p = add("gen-fn", "fixed-subset generating function of a cycle type")
    p.add_argument("--type", required=True)

    p = add("scan", "find class pairs united by a representation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--almost-similar-only", action="store_true")

    p = add("recover", "recover the cycle type of a permutation matrix")
    p.add_argument("matrix", help="matrix file, or - for stdin")

    p = add("similar", "decide similarity of two matrices")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")

    p = add("induced", "permutation induced on an action set")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--perm")
    p.add_argument("--rep", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--images", action="store_true", help="also print the one-line images")

    p = add("alpha-verify", "check fixed-point counts of the two-sided action")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--set", dest="set_kind", choices=("full-gl", "perm"), default="full-gl")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-paper", "run the full theorem battery")
    p.add_argument("--max-n", type=int, default=6)
    return parser


def _read(path: str, in_stream: TextIO) -> str:
    return in_stream.read() if path == "-" else Path(path).read_text()


def _dump(obj, out: TextIO):
    json.dump(obj, out, indent=2)
    out.write("\n")


def _cmd_parse(cfg: RunConfig, out, err, inp):
    p = parse_permutation(cfg.args.perm, cfg.args.n)
    if cfg.format == "text":
        out.write(f"{p}\n")
    else:
        _dump({"n": p.n, "one_line": list(p.images), "cycles": p.cycle_string(),
               "cycle_type": format_cycle_type(cycle_type(p))}, out)


def _cmd_cycle_type(cfg: RunConfig, out, err, inp):
    ct = cycle_type(parse_permutation(cfg.args.perm, cfg.args.n))
    if cfg.format == "text":
        out.write(format_cycle_type(ct) + "\n")
    else:
        _dump({"n": ct.n, "cycle_type": format_cycle_type(ct), "order": order(ct)}, out)


def _cmd_power(cfg: RunConfig, out, err, inp):
    a = cfg.args
    result = {"k": a.k}
    if a.perm:
        p = parse_permutation(a.perm, a.n)
        q = perm_power(p, a.k)
        ct = cycle_type(p)
        result.update(perm=p.cycle_string(), power=q.cycle_string())
    else:
        ct = parse_cycle_type(a.type, a.n)
    power = power_cycle_type(ct, a.k) if a.k else CycleType.from_counts({1: ct.n})
    result.update(type=format_cycle_type(ct), power_type=format_cycle_type(power))
    if cfg.format == "text":
        out.write(result["power_type"] + "\n")
    else:
        _dump(result, out)


def _cmd_char(cfg: RunConfig, out, err, inp):
    a = cfg.args
    if a.table:
        if a.n is None:
            raise UsageError("--table needs --n")
        spec = RepresentationSpec.parse(a.rep, a.n)
        rows = [(format_cycle_type(ct), order(ct), rep_char(spec, ct))
                for ct in enumerate_cycle_types(a.n)]
        if cfg.format == "json":
            _dump({"n": a.n, "rep": spec.label(),
                   "table": [{"class": c, "order": o, "value": v} for c, o, v in rows]}, out)
        else:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["class", "order", "value"])
            w.writerows(rows)
        return
    if not a.type:
        raise UsageError("char needs --type (or --table with --n)")
    ct = parse_cycle_type(a.type, a.n)
    spec = RepresentationSpec.parse(a.rep, ct.n)
    out.write(f"{rep_char(spec, ct)}\n")


def _cmd_gen_fn(cfg: RunConfig, out, err, inp):
    ct = parse_cycle_type(cfg.args.type)
    coeffs = subset_gen_fn(ct)
    if cfg.format == "text":
        out.write(" + ".join(f"{c}*t^{k}" for k, c in enumerate(coeffs) if c) + "\n")
    else:
        _dump({"type": format_cycle_type(ct), "coefficients": list(coeffs)}, out)


def _cmd_scan(cfg: RunConfig, out, err, inp):
    spec = RepresentationSpec.parse(cfg.args.rep, cfg.args.n)
    report = find_united_pairs(spec, almost_similar_only=cfg.args.almost_similar_only,
                               workers=cfg.workers)
    if cfg.format == "text":
        out.write(f"{spec.label()} on n={spec.n}: {report.verdict}\n")
        for a, b in report.labels():
            out.write(f"  {a} ~ {b}\n")
    else:
        _dump(report.to_dict(), out)


def _warn_qq(A, err):
    if A.field.characteristic == 0 and A.n_rows > QQ_WARN_SIZE:
        err.write(f"warning: invariant factors over Q at size {A.n_rows} may be slow\n")


def _cmd_recover(cfg: RunConfig, out, err, inp):
    A = parse_matrix(_read(cfg.args.matrix, inp))
    oracle = oracle_from_matrix(A)
    ct = recover_cycle_type(oracle)
    if cfg.format == "text":
        out.write(format_cycle_type(ct) + "\n")
        for k, m in oracle.trace():
            out.write(f"  m(pi^{k}) = {m}\n")
    else:
        _dump({"field": str(A.field), "cycle_type": format_cycle_type(ct),
               "queries": [list(q) for q in oracle.trace()]}, out)


def _cmd_similar(cfg: RunConfig, out, err, inp):
    A = parse_matrix(_read(cfg.args.matrix_a, inp))
    B = parse_matrix(_read(cfg.args.matrix_b, inp))
    _warn_qq(A, err)
    result = similar(A, B)
    if cfg.format == "text":
        out.write(("similar" if result else "not similar") + "\n")
    else:
        _dump({"field": str(A.field), "similar": result,
               "invariant_factors_a": invariant_factors(A).format(),
               "invariant_factors_b": invariant_factors(B).format()}, out)


def _cmd_induced(cfg: RunConfig, out, err, inp):
    a = cfg.args
    if a.perm:
        p = parse_permutation(a.perm, a.n)
    else:
        p = representative(parse_cycle_type(a.type, a.n))
    spec = RepresentationSpec.parse(a.rep, p.n)
    q = induced_permutation(p, spec, cfg.limit)
    ct = cycle_type(q)
    result = {"rep": spec.label(), "perm": p.cycle_string(), "degree": q.n,
              "cycle_type": format_cycle_type(ct), "fixed_points": ct.counts.get(1, 0)}
    if a.images:
        result["images"] = list(q.images)
    if cfg.format == "text":
        out.write(format_cycle_type(ct) + "\n")
    else:
        _dump(result, out)


def _cmd_alpha_verify(cfg: RunConfig, out, err, inp):
    a = cfg.args
    kind = "full_gl" if a.set_kind == "full-gl" else "perm_matrices"
    M = build_set(kind, a.n, a.p, cfg.limit)
    report = verify_2chars(M, samples=a.samples, seed=a.seed)
    report["set"] = a.set_kind
    if cfg.format == "text":
        for r in report["rows"]:
            out.write(f"{'PASS' if r['pass'] else 'FAIL'} {r['type1']} {r['type2']} "
                      f"alpha={r['alpha_char']} commutant={r['commutant_count']}\n")
    else:
        _dump(report, out)
    return EXIT_OK if report["pass"] else EXIT_DOMAIN


def _cmd_verify_paper(cfg: RunConfig, out, err, inp):
    results = run_battery(cfg.args.max_n, cfg.workers)
    ok = all(r.passed for r in results)
    if cfg.format == "text":
        width = max(len(r.name) for r in results)
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["check", "pass", "detail"])
        w.writerows((r.name, r.passed, r.detail) for r in results)
    else:
        _dump({"max_n": cfg.args.max_n, "pass": ok, "checks": [r.to_dict() for r in results]}, out)
    return EXIT_OK if ok else EXIT_DOMAIN


COMMANDS = {
    "parse": _cmd_parse,
    "cycle-type": _cmd_cycle_type,
    "power": _cmd_power,
    "char": _cmd_char,
    "gen-fn": _cmd_gen_fn,
    "scan": _cmd_scan,
    "recover": _cmd_recover,
    "similar": _cmd_similar,
    "induced": _cmd_induced,
    "alpha-verify": _cmd_alpha_verify,
    "verify-paper": _cmd_verify_paper,
}


def run(config: RunConfig, in_stream: TextIO, out_stream: TextIO, err_stream: TextIO) -> int:
    # Buffer results so a failing command leaves stdout empty.
    buf = io.StringIO()
    try:
        code = COMMANDS[config.command](config, buf, err_stream, in_stream)
    except (ActionSetTooLargeError, EnumerationLimitError) as exc:
        err_stream.write(f"error: {exc}\n")
        return EXIT_LIMIT
    except (UsageError, ValueError, DegreeMismatchError, OSError) as exc:
        err_stream.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    out_stream.write(buf.getvalue())
    return EXIT_OK if code is None else code


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    fmt = args.format
    if fmt is None:
        fmt = "csv" if getattr(args, "table", False) else "json"
    return RunConfig(
        command=args.command,
        args=args,
        format=fmt,
        limit=args.limit,
        workers=args.workers if args.workers is not None else default_workers(),
    )


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    return run(config, sys.stdin, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
