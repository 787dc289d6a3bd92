"""Command line front end.

Exit status: 0 on success, 1 when a verification finds counterexamples or
the two S evaluators disagree, 2 on usage errors, 3 when a resource guard
refuses to run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import cohen_lenstra, counting, mobius, oracle
from .errors import DomainError, FormulaError, ResourceGuardError
from .poset import (
    GroupClass,
    check_ell,
    embeds,
    enumerate_chains,
    enumerate_interval,
    parse_partition,
)
from .schemas import BY_COMMAND, MEASURE

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

# commands whose natural output is a single number default to text
_TEXT_DEFAULT = {"sub", "inj", "aut", "surj"}


class UsageError(Exception):
    pass


def schema_for(doc: dict) -> dict:
    if "weights" in doc:
        return MEASURE
    return BY_COMMAND[doc["command"]]


def _ell(text):
    try:
        return check_ell(int(text))
    except (ValueError, DomainError) as e:
        raise argparse.ArgumentTypeError(f"ell must be an odd prime >= 3 ({e})") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ell", type=_ell, required=True, help="odd prime l")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)

    parser = argparse.ArgumentParser(
        prog="ellpos",
        description="Subgroup counts, the Mobius-type function S, and Cohen-Lenstra weights "
        "for finite abelian l-groups.  Partitions are written [2,1]; [] is the trivial group.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, a=True, c=True):
        p = sub.add_parser(name, parents=[common], help=help)
        if a:
            p.add_argument("--a", required=True, metavar="PARTITION")
        if c:
            p.add_argument("--c", required=True, metavar="PARTITION")
        return p

    add("sub", "number of subgroups of C isomorphic to A")
    add("inj", "number of injective homomorphisms A -> C")
    add("aut", "order of Aut(A)", c=False)
    add("surj", "number of surjective homomorphisms C -> A")
    p = add("s", "S(A, C)")
    p.add_argument("--method", choices=["chain", "conv", "both"], default="conv")
    add("interval", "all classes B with A <= B <= C")
    add("chains", "every A-chain with maximum C and its signed weight")

    p = sub.add_parser("mu", parents=[common], help="Mobius function of the subgroup lattice of C")
    p.add_argument("--c", required=True, metavar="PARTITION")
    p.add_argument("--a", metavar="PARTITION", help="list mu_C(B, C) for subgroups B of type A "
                   "(default: mu_C(1, C))")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.add_argument("--dump-lattice", metavar="FILE", help="write the subgroup lattice as JSON")

    p = add("amalgam", "compare S(A, C) with the sum of mu_C(B, C) over subgroups B of type A")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    p = sub.add_parser("verify", parents=[common], help="sweep the vanishing and factorisation results")
    p.add_argument("--max-order-exp", type=int, required=True)
    p.add_argument("--method", choices=["chain", "conv", "both"], default="both")
    p.add_argument("--oracle", action="store_true",
                   help="also check mu_G(1, G) and unique-subgroup vanishing on concrete groups")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    for name, help in [("cl-nu", "Cohen-Lenstra weight of A, or the whole truncated measure"),
                       ("cl-moment", "partial A-th moment of the truncated Cohen-Lenstra measure")]:
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--a", required=(name == "cl-moment"), metavar="PARTITION")
        p.add_argument("--bound", type=int, default=6, help="support bound M: classes of order <= l^M")
        p.add_argument("--product-terms", type=int, default=cohen_lenstra.DEFAULT_PRODUCT_TERMS)
        p.add_argument("--precision", type=int, default=cohen_lenstra.DEFAULT_PRECISION)
    return parser


def _group(args, name) -> GroupClass | None:
    text = getattr(args, name, None)
    if text is None:
        return None
    try:
        return GroupClass(args.ell, parse_partition(text))
    except DomainError as e:
        raise UsageError(f"--{name}: {e}") from None


def _value_doc(args, value, **extra):
    return {"command": args.command, "ell": args.ell, **extra, "value": str(value)}


def _run_s(args, a, c):
    doc = {"command": "s", "ell": args.ell, "a": str(a), "c": str(c), "method": args.method}
    status = EXIT_OK
    if args.method == "conv":
        doc["value"] = str(mobius.s_conv(a, c).value)
    elif args.method == "chain":
        e = mobius.s_chain(a, c)
        doc["value"] = str(e.value)
        doc["chains"] = str(e.chain_count)
    else:
        conv = mobius.s_conv(a, c)
        chain = mobius.s_chain(a, c)
        agree = conv.value == chain.value
        doc["value"] = str(conv.value)
        doc["methods_agree"] = agree
        doc["chains"] = str(chain.chain_count)
        if not agree:
            doc["chain_value"] = str(chain.value)
            print(
                f"INTERNAL ERROR: S({a}, {c}) disagrees between methods: "
                f"convolution {conv.value} vs chain sum {chain.value}",
                file=sys.stderr,
            )
            status = EXIT_FAILED
    return doc, status


def _run_mu(args, c, a):
    lat = oracle.lattice_for(c, args.cap)
    if args.dump_lattice:
        with open(args.dump_lattice, "w", encoding="utf-8") as f:
            json.dump(lat.to_json(), f, indent=1)
    mu = lat.mu_to(lat.top)
    picked = [lat.bottom] if a is None else lat.of_type(a)
    rows = [
        {"subgroup": str(s.index), "iso_type": str(s.iso_type), "order": str(s.order), "mu": str(mu.get(s.index, 0))}
        for s in picked
    ]
    total = sum(mu.get(s.index, 0) for s in picked)
    doc = {"command": "mu", "ell": args.ell, "c": str(c), "value": str(total), "rows": rows}
    if a is not None:
        doc["a"] = str(a)
    return doc


def _run_verify(args):
    reports = [mobius.verify_theorems(args.ell, args.max_order_exp, args.method)]
    if args.oracle:
        reports.append(oracle.hall_trivialyes_check(args.ell, args.max_order_exp, args.cap))
    doc = {
        "command": "verify",
        "ell": args.ell,
        "bound": args.max_order_exp,
        "pairs_checked": sum(r.pairs_checked for r in reports),
        "counterexamples": [dict(x, check=r.name) for r in reports for x in r.counterexamples],
        "checks": [r.to_dict() for r in reports],
    }
    return doc, EXIT_OK if not doc["counterexamples"] else EXIT_FAILED


def _run_cl(args, a):
    if args.bound < 0 or args.product_terms < 1:
        raise UsageError("--bound must be >= 0 and --product-terms >= 1")
    prec = args.precision
    if args.command == "cl-nu" and a is not None:
        lo, hi = cohen_lenstra.nu_bracket(a, args.product_terms, prec)
        return {
            "command": "cl-nu", "ell": args.ell, "a": str(a), "N": args.product_terms, "precision": prec,
            "value": cohen_lenstra.decimal_string(hi, prec), "lower": cohen_lenstra.decimal_string(lo, prec),
            "upper": cohen_lenstra.decimal_string(hi, prec),
        }
    measure = cohen_lenstra.cohen_lenstra_measure(args.ell, args.bound, args.product_terms, prec)
    if args.command == "cl-nu":
        return {"command": "cl-nu", **measure.to_json()}
    return {
        "command": "cl-moment", "ell": args.ell, "a": str(a), "M": args.bound, "N": args.product_terms,
        "precision": prec, "partial_sum": True,
        "value": cohen_lenstra.decimal_string(cohen_lenstra.moment(a, measure), prec),
        "total_mass": cohen_lenstra.decimal_string(cohen_lenstra.total_mass(measure), prec),
    }


def run(args) -> tuple[dict, int]:
    """Execute a parsed command; returns (document, exit status)."""
    a = _group(args, "a")
    c = _group(args, "c")
    cmd = args.command
    if cmd == "sub":
        return _value_doc(args, counting.sub_count(a, c), a=str(a), c=str(c)), EXIT_OK
    if cmd == "inj":
        return _value_doc(args, counting.inj_count(a, c), a=str(a), c=str(c)), EXIT_OK
    if cmd == "aut":
        return _value_doc(args, counting.aut_count(a), a=str(a)), EXIT_OK
    if cmd == "surj":
        return _value_doc(args, counting.surj_count(c, a), a=str(a), c=str(c)), EXIT_OK
    if cmd == "s":
        return _run_s(args, a, c)
    if cmd == "interval":
        rows = [{"b": str(b), "order_exponent": str(b.size)} for b in enumerate_interval(a, c)]
        return {"command": cmd, "ell": args.ell, "a": str(a), "c": str(c), "rows": rows}, EXIT_OK
    if cmd == "chains":
        if a == c or not embeds(a, c):
            raise UsageError(f"chains needs A < C, got A={a}, C={c}")
        rows = [
            {"chain": " < ".join(str(x) for x in (ch.base,) + ch.links), "weight": str(counting.chain_weight(ch))}
            for ch in enumerate_chains(a, c)
        ]
        return {"command": cmd, "ell": args.ell, "a": str(a), "c": str(c), "rows": rows}, EXIT_OK
    if cmd == "mu":
        return _run_mu(args, c, a), EXIT_OK
    if cmd == "amalgam":
        lattice_side = oracle.amalgam_sum(a, c, args.cap)
        s = mobius.s_conv(a, c).value
        doc = _value_doc(args, s, a=str(a), c=str(c))
        doc.update(lattice_sum=str(lattice_side), holds=lattice_side == s)
        return doc, EXIT_OK if lattice_side == s else EXIT_FAILED
    if cmd == "verify":
        return _run_verify(args)
    if cmd in ("cl-nu", "cl-moment"):
        return _run_cl(args, a), EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")


def _flat(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(doc: dict, fmt: str) -> str:
    rows = doc.get("rows")
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            if "checks" in doc:
                rows = [
                    {"check": r["check"], "pairs_checked": r["pairs_checked"],
                     "counterexamples": len(r["counterexamples"])}
                    for r in doc["checks"]
                ]
            elif "weights" in doc:
                rows = [{"b": b, "weight": w} for b, w in doc["weights"]]
            else:
                rows = [{k: v for k, v in doc.items()}]
        keys = list(rows[0]) if rows else ["empty"]
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _flat(r.get(k, "")) for k in keys})
        return buf.getvalue().rstrip("\n")
    # text
    if rows is None and "value" in doc and doc["command"] in _TEXT_DEFAULT | {"s", "amalgam", "cl-moment"}:
        return str(doc["value"])
    lines = [f"{k}: {_flat(v)}" for k, v in doc.items() if k not in ("rows", "weights", "checks")]
    for r in rows or doc.get("weights") or []:
        lines.append("  " + (" ".join(f"{k}={v}" for k, v in r.items()) if isinstance(r, dict) else " ".join(r)))
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    fmt = args.format or ("text" if args.command in _TEXT_DEFAULT else "json")
    try:
        doc, status = run(args)
    except (UsageError, DomainError) as e:
        print(f"ellpos {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as e:
        print(f"ellpos {args.command}: refused by resource guard '{e.guard}': {e}", file=sys.stderr)
        return EXIT_GUARD
    except FormulaError as e:
        print(f"ellpos {args.command}: INTERNAL ERROR: {e}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(render(doc, fmt) + "\n")
    return status
