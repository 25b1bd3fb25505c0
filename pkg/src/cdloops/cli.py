"""Command-line interface.

Exit codes: 0 all requested checks pass, 1 a check against the expected
values failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import alg_multiply, zero_divisors_to_json
from .analysis import SECTIONS, Analysis
from .cdcore import build_cd_loop, format_code
from .identities import identity_report, report_to_json
from .isoclass import classes_to_csv
from .lattice import export_dot, height, is_modular, lattice_to_json
from .subloops import subloops_to_json

MAX_CLI_DIM_LOG = 7

_FORMATS = {
    "build": ("text", "json"),
    "report": ("text", "json"),
    "subloops": ("text", "json", "csv"),
    "classify": ("text", "json", "csv"),
    "identities": ("text", "json"),
    "zerodiv": ("text", "json"),
    "lattice": ("text", "json", "dot"),
}

# sections checked by --check on each subcommand
_SECTIONS = {
    "subloops": ("census", "normality"),
    "classify": ("classes", "profiles"),
    "identities": ("identities", "algebra"),
    "zerodiv": ("zerodiv",),
    "lattice": ("lattice",),
}


def _dim_log(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n <= MAX_CLI_DIM_LOG:
        raise argparse.ArgumentTypeError(f"must lie in [0, {MAX_CLI_DIM_LOG}], got {n}")
    return n


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim-log", type=_dim_log, default=5, help="doubling level n (algebra dimension 2**n)")
    common.add_argument("--format", default=None, help="output format")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="cdloops", description="Cayley-Dickson basis loop analysis")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="Cayley table of the basis loop")
    sub.add_parser("report", parents=[common], help="full verification report")
    for name, text in (
        ("subloops", "subloop enumeration with normality"),
        ("classify", "isomorphy classes"),
        ("identities", "loop and algebra identity battery"),
        ("zerodiv", "zero divisors of the 16-dimensional subalgebras"),
        ("lattice", "subloop lattice"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--check", action="store_true", help="compare against expected values")
        if name == "lattice":
            p.add_argument("--by-class", action="store_true", help="collapse isomorphy classes into blocks")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    fmt = args.format or _FORMATS[args.command][0]
    if fmt not in _FORMATS[args.command]:
        parser.error(f"--format for {args.command} must be one of {', '.join(_FORMATS[args.command])}")
    if getattr(args, "by_class", False) and fmt != "dot":
        parser.error("--by-class needs --format dot")

    status = 0
    if args.command == "build":
        text = _build(args.dim_log, fmt, args.out)
    elif args.command == "report":
        text, status = _report(Analysis(args.dim_log), fmt)
    else:
        an = Analysis(args.dim_log)
        text = globals()[f"_cmd_{args.command}"](an, fmt, args)
        if args.check:
            failed = [c for c in an.checks(_SECTIONS[args.command]) if not c.passed]
            for c in failed:
                print(c.line(), file=sys.stderr)
            status = 1 if failed else 0
    _emit(text, args.out if args.command != "build" else None)
    return status


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _build(n: int, fmt: str, out: str | None) -> str:
    L = build_cd_loop(n)
    summary = f"order {L.order}, {L.half} basis elements\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(L.to_json() + "\n")
        return summary
    if fmt == "json":
        return L.to_json() + "\n"
    # basis portion of the Cayley table, each +-e_i written as +-i
    half = L.half
    width = len(str(half - 1)) + 1
    rows = [summary]
    for i in range(half):
        cells = [format_code(int(L.table[i, j]), half).replace("e", "") for j in range(half)]
        rows.append(" ".join(c.rjust(width) for c in cells) + "\n")
    return "".join(rows)


def _report(an: Analysis, fmt: str) -> tuple[str, int]:
    checks = an.checks()
    passed = all(c.passed for c in checks)
    if fmt == "json":
        doc = {"dim_log": an.dim_log, "order": an.loop.order,
               "checks": [c.to_json_dict() for c in checks], "all_pass": passed}
        return json.dumps(doc, indent=2) + "\n", 0 if passed else 1
    titles = {
        "census": "Subloop census",
        "normality": "Normality",
        "classes": "Isomorphy classes",
        "profiles": "Maximal-subloop composition types",
        "identities": "Loop identities",
        "algebra": "Algebra identities",
        "zerodiv": "Zero divisors",
        "lattice": "Subloop lattice",
    }
    lines = [f"Cayley-Dickson basis loop, dimension {an.loop.half}, order {an.loop.order}"]
    if not checks:
        lines.append("no expected values recorded for this level")
    for section in SECTIONS:
        group = [c for c in checks if c.section == section]
        if group:
            lines.append("")
            lines.append(f"== {titles[section]}")
            lines.extend(c.line() for c in group)
    lines.append("")
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", 0 if passed else 1


def _cmd_subloops(an: Analysis, fmt: str, args) -> str:
    if fmt == "json":
        return subloops_to_json(an.subloops, an.normal) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "support", "normal"])
        for s, flag in zip(an.subloops, an.normal):
            w.writerow([s.order, " ".join(map(str, s.support)), str(flag).lower()])
        return buf.getvalue()
    lines = [f"{s.order:>4}  normal={str(flag).lower():5}  {{{', '.join(map(str, s.support))}}}"
             + ("  (e_0 only)" if s.order == 1 else "")
             for s, flag in zip(an.subloops, an.normal)]
    lines.append(f"{len(an.subloops)} subloops")
    return "\n".join(lines) + "\n"


def _cmd_classify(an: Analysis, fmt: str, args) -> str:
    if fmt == "csv":
        return classes_to_csv(an.classes)
    rows = []
    for c in an.classes:
        prof = an.profiles.get(c.representative.mask)
        rows.append({
            "label": c.label,
            "order": c.order,
            "size": c.size,
            "representative": list(c.representative.support),
            "profile": None if prof is None else str(prof),
        })
    if fmt == "json":
        return json.dumps(rows, separators=(",", ":")) + "\n"
    lines = [
        f"{r['label']:<10} order {r['order']:>3}  x{r['size']:<4} rep {{{', '.join(map(str, r['representative']))}}}"
        + (f"  {r['profile']}" if r["profile"] else "")
        for r in rows
    ]
    return "\n".join(lines) + "\n"


def _cmd_identities(an: Analysis, fmt: str, args) -> str:
    reps = {c.label: c.representative.loop for c in an.classes if c.order > 1}
    if fmt == "json":
        doc = {
            "loop": json.loads(report_to_json(an.loop_identities)),
            "classes": {label: json.loads(report_to_json(identity_report(L))) for label, L in reps.items()},
            "algebra": {
                name: {"holds": r.holds, "certified": r.certified,
                       "witness": None if r.witness is None else [w.tolist() for w in r.witness]}
                for name, r in an.algebra_identities.items()
            },
        }
        return json.dumps(doc, separators=(",", ":")) + "\n"
    lines = [f"order-{an.loop.order} loop:"]
    for name, r in an.loop_identities.items():
        lines.append(f"  {name:<9} {'holds' if r.holds else 'fails'}" + ("" if r.holds else f"  witness {r.witness}"))
    for label, L in reps.items():
        failing = [n for n, r in identity_report(L).items() if not r.holds]
        lines.append(f"{label}: fails {', '.join(failing) if failing else 'nothing'}")
    lines.append("algebra:")
    for name, r in an.algebra_identities.items():
        extra = " (certified over basis)" if r.certified else ""
        if not r.holds:
            extra = f"  witness {r.witness}"
        lines.append(f"  {name:<9} {'holds' if r.holds else 'fails'}{extra}")
    return "\n".join(lines) + "\n"


def _cmd_zerodiv(an: Analysis, fmt: str, args) -> str:
    if fmt == "json":
        return zero_divisors_to_json(an.zero_divisors) + "\n"
    lines = []
    for support, pair in an.zero_divisors:
        sup = "{" + ",".join(map(str, support)) + "}"
        if pair is None:
            lines.append(f"{sup}: none among two-term combinations")
        else:
            u, v = pair
            assert alg_multiply(u, v).is_zero()
            lines.append(f"{sup}: ({_terms(u)})({_terms(v)}) = 0")
    lines.append(f"{sum(p is not None for _, p in an.zero_divisors)} of {len(an.zero_divisors)} "
                 "16-dimensional subalgebras have a two-term zero divisor")
    return "\n".join(lines) + "\n"


def _terms(u) -> str:
    return " ".join(f"{'+' if c > 0 else '-'}e{i}" for i, c in enumerate(u.tolist()) if c)


def _cmd_lattice(an: Analysis, fmt: str, args) -> str:
    lat = an.lattice
    if fmt == "dot":
        if args.by_class:
            return export_dot(lat, "by-class", an.classes)
        return export_dot(lat, "full", an.classes)
    if fmt == "json":
        return lattice_to_json(lat) + "\n"
    modular, witness = is_modular(lat)
    return (
        f"{len(lat)} nodes, {len(lat.covers)} cover edges, height {height(lat)}\n"
        f"modular: {str(modular).lower()}" + ("" if modular else f" (witness {witness})") + "\n"
    )


if __name__ == "__main__":
    sys.exit(main())
