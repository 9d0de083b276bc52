"""``k3corr`` command line: classify, scan, demo-line, families.

Exit codes: 0 success, 1 failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .k3class import (
    H1,
    Certificate,
    Reason,
    Status,
    classify,
    family_membership_check,
    line_demo,
    scan,
)
from .lattice2 import Elem2
from .quadorder import FundamentalUnit

CSV_FIELDS = ["d", "status", "reason", "mu", "eps0_s", "eps0_t", "eps0_norm", "cl",
              "h1_a", "h1_b", "h1_sq", "r_x", "r_y", "hprime_x", "hprime_y",
              "ht1_x", "ht1_y", "H_x", "H_y", "notes"]


def _half(x: int, y: int) -> str:
    return f"({x}h{'+' if y >= 0 else '-'}{abs(y)}a)/2"


def status_text(cert: Certificate) -> str:
    if cert.status is Status.NOT_IN_D:
        return f"not-in-D:{cert.reason.value}"
    return cert.status.value


def render_text(cert: Certificate) -> str:
    lines = [f"d={cert.d} status={status_text(cert)}"]
    if cert.eps0 is not None:
        lines.append(f"eps0={_half(cert.eps0.s, cert.eps0.t)} norm={cert.eps0.norm:+d}")
    if cert.cl is not None:
        lines.append(f"cl={cert.cl}")
    if cert.h1 is not None:
        lines.append(f"h1={_half(cert.h1.a, cert.h1.b)} sq={cert.h1.sq:+d}")
    if cert.r is not None:
        lines.append(f"r={_half(cert.r.x, cert.r.y)}")
    if cert.hprime is not None:
        lines.append(f"hp={_half(cert.hprime.x, cert.hprime.y)}")
    if cert.ht1 is not None:
        lines.append(f"ht1={_half(cert.ht1.x, cert.ht1.y)}")
    if cert.H is not None:
        lines.append(f"H={_half(cert.H.x, cert.H.y)}")
    lines.extend(f"note={n}" for n in cert.notes)
    return "\n".join(lines)


def _xy(e: Elem2 | None):
    return None if e is None else {"x": str(e.x), "y": str(e.y)}


def to_json(cert: Certificate) -> dict:
    """JSON-ready dict; coordinates are decimal strings so no consumer truncates them."""
    return {
        "d": str(cert.d),
        "status": cert.status.value,
        "reason": cert.reason.value if cert.reason else None,
        "mu": cert.mu,
        "eps0": None if cert.eps0 is None else {
            "s": str(cert.eps0.s), "t": str(cert.eps0.t), "norm": cert.eps0.norm},
        "cl": None if cert.cl is None else str(cert.cl),
        "h1": None if cert.h1 is None else {
            "a": str(cert.h1.a), "b": str(cert.h1.b), "sq": cert.h1.sq},
        "r": _xy(cert.r),
        "hprime": _xy(cert.hprime),
        "ht1": _xy(cert.ht1),
        "H": _xy(cert.H),
        "notes": list(cert.notes),
    }


def from_json(obj: dict) -> Certificate:
    d = int(obj["d"])

    def elem(key):
        v = obj.get(key)
        return None if v is None else Elem2(d, int(v["x"]), int(v["y"]))

    e = obj.get("eps0")
    h = obj.get("h1")
    return Certificate(
        d=d,
        status=Status(obj["status"]),
        reason=Reason(obj["reason"]) if obj.get("reason") else None,
        mu=obj.get("mu"),
        eps0=None if e is None else FundamentalUnit(d, int(e["s"]), int(e["t"]), int(e["norm"])),
        cl=None if obj.get("cl") is None else int(obj["cl"]),
        h1=None if h is None else H1(int(h["a"]), int(h["b"]), int(h["sq"])),
        r=elem("r"), hprime=elem("hprime"), ht1=elem("ht1"), H=elem("H"),
        notes=tuple(obj.get("notes", ())),
    )


def csv_row(cert: Certificate) -> dict:
    row = dict.fromkeys(CSV_FIELDS, "")
    row.update(d=cert.d, status=cert.status.value,
               reason=cert.reason.value if cert.reason else "",
               mu="" if cert.mu is None else cert.mu,
               cl="" if cert.cl is None else cert.cl,
               notes="; ".join(cert.notes))
    if cert.eps0:
        row.update(eps0_s=cert.eps0.s, eps0_t=cert.eps0.t, eps0_norm=cert.eps0.norm)
    if cert.h1:
        row.update(h1_a=cert.h1.a, h1_b=cert.h1.b, h1_sq=cert.h1.sq)
    for key in ("r", "hprime", "ht1", "H"):
        e = getattr(cert, key)
        if e is not None:
            row[f"{key}_x"], row[f"{key}_y"] = e.x, e.y
    return row


def _write_csv(fields, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def render_scan(entries, fmt: str) -> str:
    if fmt == "csv":
        return _write_csv(["d", "tag"], [{"d": d, "tag": t} for d, t in entries])
    if fmt == "json":
        return json.dumps([{"d": str(d), "tag": t, "certificate": to_json(classify(d))}
                           for d, t in entries], ensure_ascii=False, indent=1)
    return ", ".join(f"{d}({t})" for d, t in entries)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"k3corr: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return n


def _fmt_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    p.set_defaults(fmt="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3corr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub.add_parser("classify", help="certificate for one discriminant")
    p.add_argument("d", type=_positive)
    _fmt_flags(p)
    p = sub.add_parser("scan", help="members of D up to dmax")
    p.add_argument("dmax", type=_positive)
    _fmt_flags(p)
    sub.add_parser("demo-line", help="the line-on-X example, d = 17")
    p = sub.add_parser("families", help="check the infinite families for k = 1..kmax")
    p.add_argument("kmax", type=_positive)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    if args.cmd == "classify":
        cert = classify(args.d)
        if args.fmt == "json":
            print(json.dumps(to_json(cert), indent=1), file=out)
        elif args.fmt == "csv":
            print(_write_csv(CSV_FIELDS, [csv_row(cert)]), file=out)
        else:
            print(render_text(cert), file=out)
        return 0
    if args.cmd == "scan":
        print(render_scan(scan(args.dmax), args.fmt), file=out)
        return 0
    report = line_demo() if args.cmd == "demo-line" else family_membership_check(args.kmax)
    if args.cmd == "demo-line" or not report.ok:
        print("\n".join(report.lines), file=out)
    else:
        print(f"ok: {len(report.lines)} family members checked", file=out)
    if not report.ok:
        print(f"verification failed: {report.counterexample}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
