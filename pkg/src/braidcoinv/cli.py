"""Command line front end: ``braidcoinv info|verify|hilbert|pairing|decompose|validate``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .cache import SCHEMA_VERSION, Cache, SchemaError, check_schema
from .checks import CHECKS, CheckConfig
from .group import CapExceeded, get_group, group_order, parse_element
from .nichols import ORIENTATIONS, TWISTS
from .ydmod import dimension

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _report(command: str, config: dict, ok: bool, result: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "braidcoinv",
        "version": __version__,
        "command": command,
        "config": config,
        "ok": ok,
        "result": result,
    }


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2, sort_keys=True, default=str)
        out.write("\n")
        return
    status = "PASS" if report["ok"] else "FAIL"
    cfg = " ".join(f"{k}={v}" for k, v in sorted(report["config"].items()) if v is not None)
    out.write(f"{report['command']}: {status} ({cfg})\n")
    out.write(json.dumps(report["result"], indent=2, sort_keys=True, default=str) + "\n")


def _group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidcoinv", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--max-order", type=int, default=50000, help="cap on |G|")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="group summary")
    _group_args(p)

    p = sub.add_parser("verify", help="run a verification check")
    _group_args(p)
    p.add_argument("--check", required=True, choices=sorted(CHECKS))
    p.add_argument("--kappa", default=None, help="preset name or JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist", choices=TWISTS, default="inverse")
    p.add_argument("--orientation", choices=ORIENTATIONS, default="literal")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--tensor-degree", type=int, default=None)

    p = sub.add_parser("hilbert", help="Hilbert function of the coinvariant algebra")
    _group_args(p)
    p.add_argument("--method", choices=("ideal", "pairing", "image-tensor", "image-pairing"), default="ideal")
    p.add_argument("--kappa", default="random-generic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=None)

    p = sub.add_parser("pairing", help="pairing table of mu~(monomials) against [w]")
    _group_args(p)
    p.add_argument("--kappa", default="solved-C1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist", choices=TWISTS, default="inverse")
    p.add_argument("--convention", choices=("as-written", "k-flipped"), default="k-flipped")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--table", choices=("left", "right"), default="left", help="which values to emit as CSV")

    p = sub.add_parser("decompose", help="canonical factorization of an element")
    _group_args(p)
    p.add_argument("--element", required=True, help='e.g. "w: 2 1; c: 0 1"')

    p = sub.add_parser("validate", help="check a JSON report's schema version")
    p.add_argument("path")
    return ap


def _guard(args) -> None:
    if args.e < 1 or args.n < 1:
        raise ValueError("e and n must be positive")
    if group_order(args.e, args.n) > args.max_order:
        raise CapExceeded(f"|G| = {group_order(args.e, args.n)} exceeds cap {args.max_order}")


def cmd_info(args) -> dict:
    G = get_group(args.e, args.n)
    from .poly import invariants, top_degree

    res = {
        "order": G.order,
        "hyperplanes": len(G.hyperplanes),
        "hyperplane_labels": [H.label() for H in G.hyperplanes],
        "degrees": [f.degree() for f in invariants(args.e, args.n)],
        "dim_M": dimension(args.e, args.n),
        "top_degree": top_degree(args.e, args.n),
        "level": G.level,
    }
    return _report("info", {"e": args.e, "n": args.n}, True, res)


def cmd_verify(args, cache: Cache) -> dict:
    cfg = CheckConfig(args.e, args.n, args.kappa, args.seed, args.twist, args.orientation, args.max_degree, cache)
    if args.tensor_degree is not None:
        cfg.extra["tensor_degree"] = args.tensor_degree
    res = CHECKS[args.check](cfg)
    conf = {"e": args.e, "n": args.n, "check": args.check, "kappa": args.kappa, "seed": args.seed,
            "twist": args.twist, "orientation": args.orientation}
    return _report(f"verify:{args.check}", conf, bool(res["ok"]), res)


def cmd_hilbert(args) -> dict:
    from .model import hilbert_image, load_kappa
    from .poly import expected_hilbert, hilbert_PG

    if args.method in ("ideal", "pairing"):
        vals = list(hilbert_PG(args.e, args.n, args.method))
    else:
        ks = load_kappa(args.kappa, args.e, args.n, args.seed)
        vals = hilbert_image(ks, args.method.split("-")[1], max_degree=args.max_degree)
    exp = expected_hilbert(args.e, args.n)
    ok = vals == exp[: len(vals)] if args.max_degree is not None else vals == exp
    res = {"values": vals, "total": sum(vals), "expected": exp, "order": group_order(args.e, args.n)}
    return _report("hilbert", {"e": args.e, "n": args.n, "method": args.method}, ok, res)


def cmd_pairing(args):
    from .duality import pairing_table
    from .model import load_kappa

    ks = load_kappa(args.kappa, args.e, args.n, args.seed)
    table = pairing_table(args.e, args.n, ks, args.convention, args.side, args.twist)
    v = table.verdict()
    conf = {"e": args.e, "n": args.n, "kappa": args.kappa, "convention": args.convention,
            "side": args.side, "twist": args.twist}
    return _report("pairing", conf, v["ok"], v), table


def cmd_decompose(args) -> dict:
    from .duality import rs_decompose

    g = parse_element(args.element, args.e)
    if g.n != args.n:
        raise ValueError(f"element has {g.n} coordinates, expected {args.n}")
    f = rs_decompose(g)
    res = f.to_json()
    res["reconstructed"] = f.reconstruct().text()
    return _report("decompose", {"e": args.e, "n": args.n, "element": args.element},
                   f.reconstruct() == g, res)


def _error(kind: str, detail: str) -> None:
    err = {"schema_version": SCHEMA_VERSION, "ok": False, "error": kind, "detail": detail}
    sys.stderr.write(json.dumps(err) + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        _error("UsageError", "invalid command line")
        return EXIT_USAGE
    try:
        if args.command == "validate":
            with open(args.path) as fh:
                check_schema(json.load(fh))
            out.write("ok\n")
            return EXIT_OK
        _guard(args)
        cache = Cache(args.cache_dir, enabled=not args.no_cache)
        table = None
        if args.command == "info":
            rep = cmd_info(args)
        elif args.command == "verify":
            rep = cmd_verify(args, cache)
        elif args.command == "hilbert":
            rep = cmd_hilbert(args)
        elif args.command == "pairing":
            rep, table = cmd_pairing(args)
        else:
            rep = cmd_decompose(args)
    except (CapExceeded, ValueError, SchemaError, OSError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_USAGE
    if args.format == "csv":
        if table is None:
            _error("UsageError", "csv output is only available for the pairing command")
            return EXIT_USAGE
        out.write(table.to_csv(args.table))
    else:
        _emit(rep, args.format, out)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
