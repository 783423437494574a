"""Command-line front end: construct, verify, convert, simulate, table.

Exit status is 0 on success or a valid object, 1 for an invalid object and
2 for usage or parameter errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import bigraph, caching, constructions
from .combinatorics import Count, binomial
from .errors import InvalidPdaError, MaterializationError, PdaKitError
from .pda import parse_pda, scheme_params, serialize_pda, verify_pda

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def decimal4(x: Fraction) -> str:
    """Four decimals, truncated toward zero as in the published tables."""
    scaled = (x.numerator * 10**4) // x.denominator
    return f"{scaled // 10**4}.{scaled % 10**4:04d}"


def render_rational(x: Fraction) -> str:
    return f"{x} ({decimal4(x)})"


def render_count(c) -> str:
    return c.render() if isinstance(c, Count) else str(c)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_object(text: str):
    """A Pda or a ColoredBipartiteGraph, chosen by the header keyword."""
    if text.startswith("BIGRAPH"):
        return bigraph.parse_graph(text)
    return parse_pda(text)


def cmd_construct(args) -> int:
    if args.scheme == "mn":
        if args.K is None or args.t is None:
            raise UsageError("--scheme mn needs --K and --t")
        p = constructions.maddah_niesen_pda(args.K, args.t)
    else:
        missing = [n for n in ("m", "a", "b", "lam") if getattr(args, n) is None]
        if missing:
            raise UsageError("--scheme theorem3 needs --m --a --b --lambda")
        params = constructions.SubsetGraphParams(args.m, args.a, args.b, args.lam)
        try:
            p = constructions.theorem3_pda(params)
        except MaterializationError as exc:
            raise UsageError(f"{exc}; try the 'table' command for analysis-only parameters") from exc
    text = serialize_pda(p)
    if args.out:
        _write(args.out, text)
    print(scheme_params(p).summary())
    return EXIT_OK


def _print_pda_report(report):
    print(f"valid g={report.g if report.g is not None else '-'}" if report.valid else "invalid")
    print(f"K={report.K} F={report.F} Z={report.Z} S={report.S}")
    for v in report.violations:
        print(v)


def _print_coloring_report(report):
    deg = "-" if report.left_degree is None else report.left_degree
    print(f"proper={str(report.proper).lower()} strong={str(report.strong).lower()} left_degree={deg}")
    for v in report.violations:
        print(v)


def cmd_verify(args) -> int:
    obj = _load_object(_read(args.path))
    if isinstance(obj, bigraph.ColoredBipartiteGraph):
        report = bigraph.verify_strong_coloring(obj)
        _print_coloring_report(report)
        ok = report.strong and report.left_degree is not None
        if args.as_graph:
            agree = bigraph.theorem2_check(obj)
            print(f"equivalence: {'agree' if agree else 'DISAGREE'}")
            ok = ok and agree
        return EXIT_OK if ok else EXIT_INVALID

    report = verify_pda(obj)
    _print_pda_report(report)
    ok = report.valid
    if args.as_graph:
        graph_report = bigraph.verify_strong_coloring(bigraph.array_graph(obj))
        _print_coloring_report(graph_report)
        agree = bigraph.theorem2_check(obj)
        print(f"equivalence: {'agree' if agree else 'DISAGREE'}")
        ok = ok and agree
    return EXIT_OK if ok else EXIT_INVALID


def cmd_convert(args) -> int:
    obj = _load_object(_read(args.path))
    if args.to == "graph":
        if isinstance(obj, bigraph.ColoredBipartiteGraph):
            raise UsageError("input is already a graph")
        out = bigraph.serialize_graph(bigraph.pda_to_graph(obj))
    else:
        if not isinstance(obj, bigraph.ColoredBipartiteGraph):
            raise UsageError("input is already a PDA")
        out = serialize_pda(bigraph.graph_to_pda(obj))
    _write(args.out, out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    p = parse_pda(_read(args.path))
    N = args.files if args.files is not None else p.K
    demands = caching.parse_demands(args.demands) if args.demands else None
    if demands is not None and len(demands) != p.K:
        raise UsageError(f"--demands has {len(demands)} entries, expected K={p.K}")
    report = caching.simulate(p, N, args.packet_bytes, demands, seed=args.seed)
    sys.stdout.write(report.render())
    if args.audit:
        labels = constructions.mn_row_labels(p)
        for sig in report.signals:
            print(caching.format_signal(sig, report.demands, labels))
    return EXIT_OK if report.all_ok else EXIT_INVALID


_FAMILY_RE = re.compile(r"^\s*(\d*)\s*\*?\s*b\s*(?:([+-])\s*(\d+))?\s*$")


def parse_family(text: str) -> dict:
    """``a=2,lambda=1,m=2b`` -> {'a': (0, 2), 'lam': (0, 1), 'm': (2, 0)}.

    Each value is (coefficient of b, constant).
    """
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad family term {part!r}, expected name=value")
        name, value = (s.strip() for s in part.split("=", 1))
        name = {"lambda": "lam", "λ": "lam"}.get(name, name)
        if name not in ("m", "a", "lam"):
            raise UsageError(f"unknown family parameter {name!r}")
        if value.isdigit():
            out[name] = (0, int(value))
            continue
        match = _FAMILY_RE.match(value)
        if not match:
            raise UsageError(f"cannot read {value!r}; use an integer or an affine form like 2b+1")
        coef = int(match.group(1) or 1)
        const = int(match.group(3) or 0) * (-1 if match.group(2) == "-" else 1)
        out[name] = (coef, const)
    missing = {"m", "a", "lam"} - set(out)
    if missing:
        raise UsageError(f"family is missing {sorted(missing)}")
    return out


def parse_range(text: str) -> range:
    match = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not match:
        raise UsageError(f"bad range {text!r}, expected lo..hi")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def ali_niesen_point(K: int, memory_ratio: Fraction) -> tuple[int, Fraction, Count]:
    """(t, R, F) of the Ali-Niesen scheme at a matched (K, M/N)."""
    t = K * memory_ratio
    if t.denominator != 1:
        raise UsageError(f"K*M/N = {t} is not an integer; no Ali-Niesen point to compare")
    t = int(t)
    return t, Fraction(K - t, t + 1), binomial(K, t)


def table_rows(family: dict, bs: range) -> list[dict]:
    rows = []
    for b in bs:
        m, a, lam = (c * b + k for c, k in (family["m"], family["a"], family["lam"]))
        p = constructions.SubsetGraphParams(m, a, b, lam)
        t3 = constructions.theorem3_params(p)
        t, an_rate, an_F = ali_niesen_point(int(t3.K), t3.memory_ratio)
        rows.append(
            dict(b=b, K=t3.K, memory_ratio=t3.memory_ratio, t=t, an_rate=an_rate, an_F=an_F,
                 new_rate=t3.rate, new_F=t3.F)
        )
    return rows


def general_rows(bs: range) -> list[dict]:
    """Closed forms of the a=2, lambda=1, m=2b family evaluated per b."""
    rows = []
    for b in bs:
        rows.append(
            dict(b=b, K=b * (2 * b - 1), memory_ratio=Fraction(b - 1, 2 * b - 1),
                 an_rate=Fraction(b * b, b * b - b + 1), an_F=binomial(b * (2 * b - 1), b * (b - 1)),
                 new_rate=Fraction(b), new_F=binomial(2 * b, b))
        )
    return rows


def render_table(rows: list[dict]) -> str:
    head = f"{'b':>3}  {'(K, M/N)':<12}  {'':<3}  {'Ali-Niesen':<28}  New"
    lines = [head]
    for r in rows:
        point = f"({r['K']}, {r['memory_ratio']})"
        lines.append(
            f"{r['b']:>3}  {point:<12}  {'R':<3}  {render_rational(r['an_rate']):<28}  {render_rational(r['new_rate'])}"
        )
        lines.append(f"{'':>3}  {'':<12}  {'F':<3}  {render_count(r['an_F']):<28}  {render_count(r['new_F'])}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    bs = parse_range(args.b_range)
    if args.general:
        rows = general_rows(bs)
    else:
        rows = table_rows(parse_family(args.family), bs)
    sys.stdout.write(render_table(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdakit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a PDA and print 'K F Z S g M/N R'")
    c.add_argument("--scheme", choices=("theorem3", "mn"), required=True)
    c.add_argument("--m", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--K", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--out", help="write the PDA here")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a PDA or colored graph file")
    v.add_argument("path")
    v.add_argument("--as-graph", action="store_true", help="run both checkers and compare")
    v.set_defaults(func=cmd_verify)

    cv = sub.add_parser("convert", help="switch between PDA and graph formats")
    cv.add_argument("path")
    cv.add_argument("--to", choices=("graph", "pda"), required=True)
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_convert)

    s = sub.add_parser("simulate", help="run placement, delivery and decoding")
    s.add_argument("path")
    s.add_argument("--files", type=int, help="number of files N (default K)")
    s.add_argument("--packet-bytes", type=int, default=32)
    s.add_argument("--demands", help="comma-separated file indices, one per user")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--audit", action="store_true", help="print each signal's XOR terms")
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("table", help="compare with the Ali-Niesen scheme")
    t.add_argument("--family", default="a=2,lambda=1,m=2b")
    t.add_argument("--b-range", default="3..5")
    t.add_argument("--general", action="store_true", help="closed-form rows for a=2, lambda=1, m=2b")
    t.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidPdaError as exc:
        print(f"pdakit {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, PdaKitError) as exc:
        print(f"pdakit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
