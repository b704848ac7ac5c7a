"""Command line interface.

Exit codes: 0 success, 1 oracle/formula mismatch, 2 usage or parse error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .dyadic import DyadicRational
from .enumeration import (
    bruteforce_census, count_ncf, count_ncf_recursive, count_table, enumerate_all,
)
from .errors import NCFError, NotNCF, NotReduced
from .metrics import (
    activity_formula, conjectured_max, lemma_profiles, max_sensitivity_scan,
    sensitivity_formula, weight_formula,
)
from .ncf import construct_ncf, decompose, is_ncf_oracle, presentation
from .netsim import derrida_curve, ensemble_mean_sensitivity
from .randgen import TAG_SAMPLE, sample_network, sample_uniform_ncf, stream
from .truthtable import (
    activity_bruteforce, anf, average_sensitivity_bruteforce, canalizing_pairs,
    essential_variables, hamming_weight, parse_truth_table, reduce,
)

SCHEMA = "nestcan.analysis/1"
SEED_ENV = "NESTCAN_SEED"
ORACLE_LIMIT = 12


class OracleMismatch(AssertionError):
    pass


@dataclass
class AnalysisReport:
    n: int
    bits: str
    essential: list[int]
    canalizing: list[tuple[int, int, int]]
    is_ncf: bool
    weight: int
    average_sensitivity: DyadicRational
    anf: str
    kept_variables: list[int] | None = None
    reason: str | None = None
    form: dict | None = None
    profile: list[int] | None = None
    layer_number: int | None = None
    degenerate: bool = False
    layer_activities: list[DyadicRational] = field(default_factory=list)
    presentation: dict | None = None
    oracle: dict | None = None

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "n": self.n,
            "bits": self.bits,
            "essential_variables": self.essential,
            "canalizing_triples": [list(t) for t in self.canalizing],
            "is_ncf": self.is_ncf,
            "weight": self.weight,
            "average_sensitivity": self.average_sensitivity.to_json(),
            "anf": self.anf,
        }
        if self.kept_variables is not None:
            out["kept_variables"] = self.kept_variables
        if self.reason:
            out["reason"] = self.reason
        if self.is_ncf:
            out.update({
                "form": self.form,
                "profile": self.profile,
                "layer_number": self.layer_number,
                "degenerate": self.degenerate,
                "layer_activities": [a.to_json() for a in self.layer_activities],
                "presentation": self.presentation,
            })
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out

    def to_text(self) -> str:
        lines = [
            f"n: {self.n}",
            f"bits: {self.bits}",
            f"anf: {self.anf}",
            f"essential: {self.essential}",
            f"canalizing (i,a,b): {[tuple(t) for t in self.canalizing]}",
            f"is_ncf: {str(self.is_ncf).lower()}",
        ]
        if self.kept_variables is not None:
            lines.append(f"kept variables: {self.kept_variables}")
        if self.reason:
            lines.append(f"reason: {self.reason}")
        if self.is_ncf:
            p = self.presentation
            lines += [
                f"layer number: {self.layer_number}" + (" (degenerate n=1)" if self.degenerate else ""),
                f"profile: {tuple(self.profile)}",
                f"form: {json.dumps(self.form, separators=(',', ':'))}",
                "presentation: {%s:%s:%s}" % tuple(
                    "(" + ",".join(map(str, p[key])) + ")" for key in ("sigma", "alpha", "beta")),
                "layer activities: " + ", ".join(map(str, self.layer_activities)),
            ]
        lines += [f"weight: {self.weight}", f"average sensitivity: {self.average_sensitivity}"]
        if self.oracle is not None:
            lines.append("oracle: " + ("agrees" if self.oracle["agrees"] else "MISMATCH"))
        return "\n".join(lines)


def analyze(text: str, n: int | None = None, *, oracle: bool = False,
            do_reduce: bool = False) -> AnalysisReport:
    tt = parse_truth_table(text, n)
    kept = None
    if do_reduce:
        tt, kept = reduce(tt)
    report = AnalysisReport(
        n=tt.n,
        bits=tt.to_string(),
        essential=sorted(essential_variables(tt)),
        canalizing=canalizing_pairs(tt),
        is_ncf=False,
        weight=hamming_weight(tt),
        average_sensitivity=average_sensitivity_bruteforce(tt) if tt.n else DyadicRational(0),
        anf=str(anf(tt)),
        kept_variables=kept,
    )
    try:
        form = decompose(tt)
    except NotReduced:
        report.reason = "non-essential variables present (use --reduce)"
        form = None
    except NotNCF as exc:
        report.reason = str(exc)
        form = None
    if form is not None:
        p = presentation(form)
        report.is_ncf = True
        report.form = form.to_json()
        report.profile = list(form.profile.ks)
        report.layer_number = form.r
        report.degenerate = form.degenerate
        report.layer_activities = [activity_formula(form.profile, l) for l in range(1, form.r + 1)]
        report.presentation = {"sigma": list(p.sigma), "alpha": list(p.alpha), "beta": list(p.beta)}
        report.average_sensitivity = sensitivity_formula(form.profile)
        report.weight = weight_formula(form.profile, form.b)
    if oracle:
        report.oracle = _oracle_check(tt, form, report)
    return report


def _oracle_check(tt, form, report: AnalysisReport) -> dict:
    if tt.n > ORACLE_LIMIT:
        raise NCFError(f"--oracle supports n <= {ORACLE_LIMIT}")
    checks = {}
    checks["weight"] = report.weight == hamming_weight(tt)
    if tt.n:
        checks["average_sensitivity"] = report.average_sensitivity == average_sensitivity_bruteforce(tt)
    if form is not None:
        checks["activities"] = all(
            activity_bruteforce(tt, v) == report.layer_activities[l - 1]
            for l, layer in enumerate(form.layers, start=1) for v, _ in layer)
    if tt.n <= 4 and len(report.essential) == tt.n:
        checks["is_ncf"] = is_ncf_oracle(tt) == report.is_ncf
    return {"checks": checks, "agrees": all(checks.values())}


# output helpers


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: "" if row.get(c) is None else row[c] for c in columns})
    else:
        cells = [[("all" if c == "r" else "") if row.get(c) is None else str(row[c])
                  for c in columns] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
        for r in cells:
            out.write("  ".join(x.rjust(w) for x, w in zip(r, widths)) + "\n")


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


# subcommands


def cmd_analyze(args, out) -> int:
    report = analyze(args.tt, args.n, oracle=args.oracle, do_reduce=args.reduce)
    if args.format == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    else:
        out.write(report.to_text() + "\n")
    if report.oracle is not None and not report.oracle["agrees"]:
        raise OracleMismatch(f"oracle disagrees: {report.oracle['checks']}")
    return 0


def cmd_count(args, out) -> int:
    if args.census and args.r is not None:
        raise NCFError("the census counts all layer numbers together; drop --r")
    rows = [c.to_json() for c in count_table(args.n, args.r)]
    columns = ["n", "r", "count"]
    total = count_ncf(args.n).value if args.r is None else None
    if args.recursive:
        rec = count_ncf_recursive(args.n).value
        columns.append("recursive")
        rows[-1]["recursive"] = rec
        if args.r is None and rec != total:
            raise OracleMismatch(f"recursion gives {rec}, formula gives {total}")
    if args.census:
        census = bruteforce_census(args.n, workers=args.threads).value
        columns.append("census")
        rows[-1]["census"] = census
        if census != total:
            raise OracleMismatch(f"census gives {census}, formula gives {total}")
    _emit_rows(rows, columns, args.format, out)
    return 0


def cmd_enumerate(args, out) -> int:
    if args.format == "csv":
        out.write("bits,layer_number,form\n")
    for form, tt in enumerate_all(args.n):
        if args.format == "csv":
            out.write(f"{tt.to_string()},{form.r},\"{form.dumps()}\"\n")
        elif args.format == "json":
            out.write(json.dumps({"bits": tt.to_string(), "form": form.to_json()}) + "\n")
        else:
            out.write(f"{tt.to_string()}  r={form.r}  {form.dumps()}\n")
    return 0


def cmd_sample(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    for j in range(args.count):
        rng = stream(seed, TAG_SAMPLE, j)
        form = sample_uniform_ncf(args.n, rng, args.r)
        tt = construct_ncf(form)
        if args.format == "json":
            out.write(json.dumps({"bits": tt.to_string(), "form": form.to_json()}) + "\n")
        else:
            out.write(f"{tt.to_string()}  r={form.r}  {form.dumps()}\n")
    return 0


def cmd_network(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    net = sample_network(args.nodes, args.k, args.layer, seed, args.index,
                         degree=args.degree, self_loops=not args.no_self_loops)
    text = net.dumps() + "\n"
    return _write(text, args.out, out)


def cmd_scan(args, out) -> int:
    lo = args.n if args.n is not None else args.n_min
    hi = args.n if args.n is not None else args.n_max
    rows = []
    for n in range(lo, hi + 1):
        best, arg = max_sensitivity_scan(n)
        expected = conjectured_max(n)
        rows.append({
            "n": n,
            "max": str(best),
            "max_decimal": best.decimal(),
            "conjectured": str(expected),
            "matches": best == expected,
            "argmax_count": len(arg),
            "argmax": " ".join("(" + ",".join(map(str, p.ks)) + ")" for p in arg),
            "lemma_profiles": " ".join(f"{p}={v}" for p, v in lemma_profiles(n)),
        })
        if best != expected:
            sys.stderr.write(f"COUNTEREXAMPLE: n={n} max {best} != conjectured {expected}\n")
            if args.strict:
                raise OracleMismatch(f"conjectured maximum fails at n={n}")
    columns = ["n", "max", "max_decimal", "conjectured", "matches", "argmax_count", "argmax"]
    if args.format == "json":
        columns.append("lemma_profiles")
    _emit_rows(rows, columns if args.format != "text" else columns[:6], args.format, out)
    return 0


def cmd_derrida(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    curve = derrida_curve(args.nodes, args.k, args.layer, args.networks, args.pairs, seed,
                          workers=args.threads, degree=args.degree,
                          self_loops=not args.no_self_loops)
    code = _write(curve.to_csv(normalized=args.normalized), args.out, out)
    predicted = curve.predicted_slope()
    if args.out and args.out != "-":
        msg = f"wrote {args.out}"
        if predicted is not None:
            msg += f"; predicted slope at d=1: {predicted} = {float(predicted):.6f}"
        msg += f"; observed mean at d=1: {float(curve.mean(1)):.6f}"
        sys.stderr.write(msg + "\n")
    elif predicted is not None:
        sys.stderr.write(f"predicted slope at d=1: {predicted} = {float(predicted):.6f}\n")
    return code


def _write(text: str, path: str | None, out) -> int:
    if not path or path == "-":
        out.write(text)
        return 0
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nestcan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nestcan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decompose and measure one truth table")
    p.add_argument("--tt", required=True, help="binary string (index 0 first) or 0x-hex with --n")
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--reduce", action="store_true", help="drop non-essential variables first")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="number of NCFs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--recursive", action="store_true")
    p.add_argument("--census", action="store_true", help="brute-force scan (n <= 4)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every NCF for n <= 5")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sample", help="draw uniform random NCFs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("network", help="sample one random NCF network as JSON")
    _network_args(p)
    p.add_argument("--index", type=int, default=0, help="network index within the ensemble")
    p.add_argument("--out")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("scan-max-sensitivity", help="maximum average sensitivity over all profiles")
    p.add_argument("--n", type=int)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--strict", action="store_true", help="exit 1 if the conjectured maximum fails")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("derrida", help="Derrida curve of random NCF networks as CSV")
    _network_args(p)
    p.add_argument("--networks", type=int, default=256)
    p.add_argument("--pairs", type=int, default=64)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--normalized", action="store_true", help="add distance/N columns")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_derrida)
    return parser


def _network_args(p) -> None:
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--layer", type=int, help="layer number of every node function (default any)")
    p.add_argument("--seed", type=int, help=f"default from ${SEED_ENV} or 0")
    p.add_argument("--degree", choices=("fixed", "random"), default="fixed")
    p.add_argument("--no-self-loops", action="store_true")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except OracleMismatch as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (NCFError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; used by the tests."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    return code, buf.getvalue()
