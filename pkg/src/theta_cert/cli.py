"""theta-cert: command-line front end.

Usage:
    theta-cert tables --validate             check every embedded table
    theta-cert tables --list                 list embedded entries and deg_X
    theta-cert tables --load FILE.mptab      parse and validate an external table
    theta-cert certify --target theta3 --n 20 [--y 1,2] [--primes 2,3]
    theta-cert certify --all
    theta-cert verify --tau 0,2 --prec 192 --identities
    theta-cert verify --tau 0,1 --n 7 --target theta3
    theta-cert verify --tau 0.2,1 --product-form 5

Exit status: 0 all checks pass, 1 a mathematical check failed, 2 usage or
domain error.  ``--format json`` emits a deterministic report; integers are
written as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__
from .ball import DivisionByZeroBall, PrecisionError
from .criteria import (
    DEFAULT_PRIMES,
    DEFAULT_Y,
    CriterionError,
    MissingTable as CriterionMissingTable,
    NoCertificateFound,
    UnsupportedPair,
    build_criterion,
    certify_nonvanishing,
    supported_pairs,
)
from .modular_tables import DegreeMismatch, ParseError, TableError, embedded_entries, load_file, validate_tables
from .theta_numeric import (
    DEFAULT_TAUS,
    DomainError,
    MissingTable as NumericMissingTable,
    TauPoint,
    verify_duplication,
    verify_jacobi,
    verify_modular_vanishing,
    verify_product_form,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: list[dict[str, Any]] = field(default_factory=list)
    verdict: str = "pass"
    wall_time_ms: float = 0.0
    error: str | None = None

    def finish(self) -> None:
        if self.verdict != "error":
            self.verdict = "pass" if all(r.get("passed") for r in self.results) else "fail"

    def as_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "tool": "theta-cert",
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdict": self.verdict,
        }
        if self.error is not None:
            out["error"] = self.error
        if timing:
            out["wall_time_ms"] = f"{self.wall_time_ms:.1f}"
        return out

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.verdict, EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


# -- tables -----------------------------------------------------------------


def cmd_tables(args, rep: RunReport) -> None:
    rep.inputs = {"validate": args.validate, "list": args.list, "load": args.load}
    if not (args.validate or args.list or args.load):
        args.validate = True
        rep.inputs["validate"] = True
    if args.list:
        for e in embedded_entries():
            rep.results.append({
                "entry": f"{e.family}:{e.n}",
                "kind": "list",
                "deg_x": str(e.poly.deg_x),
                "deg_y": str(e.poly.deg_y),
                "terms": str(len(e.poly.terms)),
                "passed": True,
            })
    if args.validate:
        report = validate_tables()
        for c in report.checks:
            rep.results.append({
                "entry": c.entry,
                "kind": "validate",
                "check": c.check,
                "value": c.value,
                "expected": c.expected,
                "passed": c.passed,
            })
        fams = [e.family for e in embedded_entries()]
        rep.inputs["odd_entries"] = str(fams.count("odd"))
        rep.inputs["pow2_entries"] = str(fams.count("pow2"))
    if args.load:
        entry = load_file(args.load)
        rep.results.append({
            "entry": f"{entry.family}:{entry.n}",
            "kind": "load",
            "file": str(args.load),
            "deg_x": str(entry.poly.deg_x),
            "expected_deg_x": str(entry.expected_degx),
            "passed": True,
        })


# -- certify ----------------------------------------------------------------


def cmd_certify(args, rep: RunReport) -> None:
    ys = args.y or list(DEFAULT_Y)
    ps = args.primes or list(DEFAULT_PRIMES)
    rep.inputs = {"y": [str(v) for v in ys], "primes": [str(p) for p in ps]}
    if args.all:
        pairs = supported_pairs()
        rep.inputs["all"] = True
    else:
        if args.target is None or args.n is None:
            raise UsageError("certify needs --target and --n (or --all)")
        pairs = [(args.target, args.n)]
        rep.inputs.update({"target": args.target, "n": str(args.n)})
    for target, n in pairs:
        spec = build_criterion(target, n)
        rec = {
            "target": spec.target.value,
            "n": str(n),
            "kind": spec.kind.value,
            "sylvester_size": str(spec.sylvester_size),
        }
        try:
            cert = certify_nonvanishing(spec, ys, ps)
        except NoCertificateFound as exc:
            rec.update({"passed": False, "reason": str(exc), "zero_at": [str(v) for v in exc.zero_points]})
        else:
            d = cert.as_dict()
            rec.update({
                "y0": str(d["y0"]),
                "p": str(d["p"]),
                "residue": str(d["residue"]),
                "backend": d["backend"],
                "degree_dropped": d["degree_dropped"],
                "resultant_at_y0": d["resultant_at_y0"],
                "passed": True,
            })
        rep.results.append(rec)


# -- verify -----------------------------------------------------------------


def _residual_records(report) -> list[dict]:
    out = []
    for r in report.residuals:
        d = r.as_dict()
        d["report"] = report.name
        d["tau"] = str(report.tau)
        out.append(d)
    return out


def cmd_verify(args, rep: RunReport) -> None:
    taus = [TauPoint.parse(t) for t in args.tau] if args.tau else list(DEFAULT_TAUS)
    rep.inputs = {"tau": [str(t) for t in taus], "prec": str(args.prec)}
    do_ident = args.identities or (args.n is None and args.product_form is None)
    if args.n is not None:
        rep.inputs.update({"n": str(args.n), "target": args.target})
    if args.product_form is not None:
        rep.inputs.update({"product_form": str(args.product_form), "x": [str(v) for v in args.x]})
    rep.inputs["identities"] = do_ident
    for t in taus:
        if do_ident:
            rep.results += _residual_records(verify_jacobi(t, args.prec))
            rep.results += _residual_records(verify_duplication(t, args.prec))
        if args.n is not None:
            rep.results += _residual_records(verify_modular_vanishing(args.target, args.n, t, args.prec))
        if args.product_form is not None:
            rep.results += _residual_records(verify_product_form(args.product_form, t, args.x, args.prec))


# -- rendering ----------------------------------------------------------------


def render_text(rep: RunReport) -> str:
    lines = [f"theta-cert {rep.command}: {rep.verdict.upper()}  ({rep.wall_time_ms:.0f} ms)"]
    for k, v in rep.inputs.items():
        lines.append(f"  {k} = {v}")
    if rep.error:
        lines.append(f"  error: {rep.error}")
    for r in rep.results:
        status = "ok  " if r.get("passed") else "FAIL"
        body = ", ".join(f"{k}={v}" for k, v in r.items() if k != "passed")
        lines.append(f"  [{status}] {body}")
    return "\n".join(lines)


def render_json(rep: RunReport, timing: bool = False) -> str:
    return json.dumps(rep.as_dict(timing), indent=2, sort_keys=False, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="theta-cert", description=__doc__.split("\n\n")[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    # Repeated on each subcommand; SUPPRESS keeps a top-level value from being reset.
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    fmt.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[fmt], help="list, validate or load modular tables")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--load", metavar="FILE")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("certify", parents=[fmt], help="residue certificate for a criterion resultant")
    p.add_argument("--target", choices=("theta2", "theta3", "theta4"))
    p.add_argument("--n", type=int)
    p.add_argument("--y", type=_int_list, help="candidate Y values, e.g. 1,2,3")
    p.add_argument("--primes", type=_int_list, help="candidate primes, e.g. 2,3,5")
    p.add_argument("--all", action="store_true", help="certify every supported (target, n)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[fmt], help="ball-arithmetic identity checks")
    p.add_argument("--tau", action="append", metavar="RE,IM")
    p.add_argument("--prec", type=int, default=192)
    p.add_argument("--n", type=int)
    p.add_argument("--target", choices=("theta2", "theta3", "theta4"), default="theta3")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--product-form", type=int, metavar="N")
    p.add_argument("--x", type=lambda s: [int(v) for v in s.split(",")], default=[0, 1, 2])
    p.set_defaults(func=cmd_verify)
    return parser


_DOMAIN_ERRORS = (
    UsageError,
    DomainError,
    UnsupportedPair,
    CriterionMissingTable,
    NumericMissingTable,
    ParseError,
    DegreeMismatch,
    TableError,
    PrecisionError,
    DivisionByZeroBall,
    OSError,
)


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    emit = out or (lambda s: print(s))
    rep = RunReport(args.command, {})
    start = time.perf_counter()
    try:
        args.func(args, rep)
        rep.finish()
    except _DOMAIN_ERRORS as exc:
        rep.verdict = "error"
        rep.error = f"{type(exc).__name__}: {exc}"
    except CriterionError as exc:
        rep.verdict = "fail"
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.wall_time_ms = (time.perf_counter() - start) * 1000.0
    if args.format == "json":
        emit(render_json(rep, args.timing))
    else:
        emit(render_text(rep))
    if rep.verdict == "error":
        print(rep.error, file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
