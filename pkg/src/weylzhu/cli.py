"""
Command-line interface.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 truncation overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional, Sequence

from .exactmath import GaussRat, parse_gauss, rat
from .flow import central_charge
from .fock import State, StateSyntaxError, TruncConfig, weight
from .grading import classify, mu_grid, rat_range
from .modes import A, ASTAR, GenMode, TruncationOverflow, act_gen, beta_mode, d_op, virasoro_mode
from .report import CheckResult
from .tensor import tensor_central_charge, tensor_classify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument helpers


def _mu(text: str) -> GaussRat:
    try:
        return parse_gauss(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rat(text: str):
    try:
        return rat(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _window(text: str):
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"mode window must look like -3:3, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (rat(p) for p in parts)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be positive")
    return lo, hi, step


def _grid(text: str):
    halves = text.split(",")
    if len(halves) != 2:
        raise argparse.ArgumentTypeError("grid must be reLo:reHi:step,imLo:imHi:step")
    return _range(halves[0]), _range(halves[1])


_APPLY_TOKEN = re.compile(r"\s*(?:(a\*|a|L|beta)\(\s*(-?\d+)\s*\)|(D))\s*,?")


def parse_apply(text: str):
    """Mode list such as ``"a(0) L(-2) D"``; returned in application order."""
    ops = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _APPLY_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise StateSyntaxError("unknown mode in --apply", pos, text)
        if m.group(3):
            ops.append(("D", None))
        else:
            ops.append((m.group(1), int(m.group(2))))
        pos = m.end()
    return ops


def _check_cap(s: State, mu: GaussRat, deg_cap, context: str) -> None:
    for m in s.terms:
        w = weight(m).re_at(mu)
        if w > deg_cap:
            raise TruncationOverflow(m, w, deg_cap, context)


def apply_ops(ops, s: State, mu: Optional[GaussRat], deg_cap=None) -> State:
    """Apply ``ops`` left to right; with ``deg_cap`` every intermediate is bounded."""
    cap_mu = mu if mu is not None else GaussRat(0)
    for name, n in ops:
        if name == "a":
            s = act_gen(GenMode(A, n), s)
        elif name == "a*":
            s = act_gen(GenMode(ASTAR, n), s)
        elif name == "beta":
            s = beta_mode(n, s)
        elif name == "D":
            s = d_op(s)
        else:
            if mu is None:
                raise UsageError("L(n) needs --mu")
            s = virasoro_mode(mu, n, s)
        if deg_cap is not None:
            label = name if n is None else f"{name}({n})"
            _check_cap(s, cap_mu, deg_cap, f"after {label}")
    return s


def _emit(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _report_checks(results: List[CheckResult], reproducer: str) -> int:
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    if failed:
        print(f"reproduce with: {reproducer}")
        return EXIT_FAIL
    return EXIT_OK


# --------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    if args.mu is not None:
        points = [args.mu]
    elif args.grid is not None:
        points = mu_grid(*args.grid)
    else:
        raise UsageError("classify needs --mu or --grid")
    rows = []
    for mu in points:
        rc = classify(mu)
        rows.append([str(mu), str(mu.re), str(mu.im), *rc.as_row(), str(central_charge(mu))])
    header = ["mu", "reMu", "imMu", "tag", "subcase", "omega", "central_charge"]
    if args.csv:
        _emit(args.csv, _csv_text(header, rows))
    if args.json:
        _emit(args.json, json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    if args.svg:
        from .plotting import region_map

        region_map(args.svg, points=points)
    if not (args.csv == "-" or args.json == "-"):
        if len(rows) == 1:
            mu, _, _, tag, sub, omega, c = rows[0]
            print(f"mu = {mu}: {tag} ({sub}), Omega(V) {omega}, c = {c}")
        else:
            counts = {}
            for r in rows:
                counts[r[3]] = counts.get(r[3], 0) + 1
            print(f"{len(rows)} points: " + ", ".join(f"{k} {counts[k]}" for k in sorted(counts)))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suites import run_suite

    cfg = TruncConfig(deg_cap=args.degcap, mode_window=args.modewindow)
    results = run_suite(args.suite, args.mu, cfg)
    lo, hi = args.modewindow
    repro = f"weylzhu verify --suite {args.suite} --mu {args.mu} --degcap {args.degcap} --modewindow {lo}:{hi}"
    if args.json:
        _emit(args.json, json.dumps({
            "command": "verify",
            "parameters": {"suite": args.suite, "mu": str(args.mu), "degCap": str(args.degcap),
                           "modeWindow": [lo, hi]},
            "checks": [r.as_dict() for r in results],
        }, indent=2) + "\n")
    return _report_checks(results, repro)


def cmd_zhu(args) -> int:
    from .zhu import zhu_report

    pb = args.pairbudget if args.pairbudget is not None else args.degcap - 1
    rc = args.reportcap if args.reportcap is not None else args.degcap - 2
    try:
        cfg = TruncConfig(deg_cap=args.degcap, pair_budget=pb, mode_window=args.modewindow)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if rc > cfg.deg_cap - 2:
        raise UsageError("--reportcap must not exceed degcap - 2")
    report = zhu_report(args.mu, cfg, rc, checks=not args.no_checks)
    report = {"command": "zhu", **report}
    if args.json:
        _emit(args.json, json.dumps(report, indent=2) + "\n")
    if args.json != "-":
        print(f"mu = {report['mu']}: dimUpperBound = {report['dimUpperBound']}, "
              f"dim(V/C(V)) <= {report['cQuotientDim']} (weights <= {report['reportCap']})")
        for c in report["checks"]:
            status = "PASS" if c["ok"] else "FAIL"
            print(f"{status}  {c['name']}  ({c['passed']} passed, {c['failed']} failed)")
    if any(not c["ok"] for c in report["checks"]):
        return EXIT_FAIL
    return EXIT_OK


def cmd_eval(args) -> int:
    s = State.parse(args.expr)
    ops = parse_apply(args.apply) if args.apply else []
    print(apply_ops(ops, s, args.mu, args.degcap))
    return EXIT_OK


def cmd_central_charge(args) -> int:
    if args.mu:
        mus = list(args.mu)
    else:
        mus = [GaussRat(x) for x in rat_range(*(args.range or _range("-1/2:3/2:1/4")))]
    if args.tensor:
        rc = tensor_classify(mus)
        print(f"rank {len(mus)}: c = {tensor_central_charge(mus)}, {rc.tag.value}")
        return EXIT_OK
    rows = [[str(mu), str(central_charge(mu))] for mu in mus]
    _emit(args.csv, _csv_text(["mu", "central_charge"], rows))
    if args.svg:
        from .plotting import central_charge_plot

        lo, hi = min(m.re for m in mus), max(m.re for m in mus)
        central_charge_plot(args.svg, (lo, hi, (hi - lo) / 200 if hi > lo else 1))
    return EXIT_OK


def cmd_region_map(args) -> int:
    from .plotting import DEFAULT_IM, DEFAULT_RE, region_map

    re_spec, im_spec = args.grid if args.grid else (DEFAULT_RE, DEFAULT_IM)
    points = mu_grid(re_spec, im_spec)
    counts = region_map(args.svg, points=points)
    if args.csv:
        rows = [[str(mu.re), str(mu.im), *classify(mu).as_row()[:2]] for mu in points]
        _emit(args.csv, _csv_text(["reMu", "imMu", "tag", "subcase"], rows))
    print(f"wrote {args.svg}: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylzhu", description="Exact computations for the Weyl vertex algebra under conformal flow.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="region of mu, single point or grid")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", type=_mu)
    g.add_argument("--grid", type=_grid, help="reLo:reHi:step,imLo:imHi:step")
    c.add_argument("--csv", help="CSV output path ('-' for stdout)")
    c.add_argument("--json", help="JSON output path ('-' for stdout)")
    c.add_argument("--svg", help="region map output path")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run an exact invariant suite")
    v.add_argument("--suite", required=True, choices=["virasoro", "modes", "flow", "grading", "zhu-props"])
    v.add_argument("--mu", type=_mu, required=True)
    v.add_argument("--degcap", type=_rat, default=rat(4))
    v.add_argument("--modewindow", type=_window, default=(-3, 3))
    v.add_argument("--json", help="JSON report path ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("zhu", help="truncated Zhu algebra certificate")
    z.add_argument("--mu", type=_mu, required=True)
    z.add_argument("--degcap", type=_rat, default=rat(4))
    z.add_argument("--pairbudget", type=_rat)
    z.add_argument("--reportcap", type=_rat)
    z.add_argument("--modewindow", type=_window, default=(-4, 4),
                   help="its upper end caps zero-weight factors when Re(mu) is 0 or 1")
    z.add_argument("--json", help="JSON report path ('-' for stdout)")
    z.add_argument("--no-checks", action="store_true", help="skip the identity suite")
    z.set_defaults(func=cmd_zhu)

    e = sub.add_parser("eval", help="apply modes to a state")
    e.add_argument("--expr", required=True)
    e.add_argument("--apply", default="", help="modes applied left to right, e.g. \"a(0) L(-2) D\"")
    e.add_argument("--mu", type=_mu)
    e.add_argument("--degcap", type=_rat, help="abort if any intermediate Re(weight) exceeds this")
    e.set_defaults(func=cmd_eval)

    cc = sub.add_parser("central-charge", help="c_mu table as CSV")
    cc.add_argument("--mu", type=_mu, action="append")
    cc.add_argument("--range", type=_range, help="real lo:hi:step")
    cc.add_argument("--tensor", action="store_true", help="treat the --mu values as factors of a tensor product")
    cc.add_argument("--csv", help="output path (default stdout)")
    cc.add_argument("--svg", help="plot of c_mu against real mu")
    cc.set_defaults(func=cmd_central_charge)

    r = sub.add_parser("region-map", help="SVG of the mu-plane regions")
    r.add_argument("--svg", default="region_map.svg")
    r.add_argument("--grid", type=_grid)
    r.add_argument("--csv")
    r.set_defaults(func=cmd_region_map)
    return p


_NEGATIVE = re.compile(r"-[\d(i]")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    # "--mu -1/2" would otherwise be read as an unknown option
    out: List[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except TruncationOverflow as exc:
        print(f"error: truncation overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except StateSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.pos}^", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
