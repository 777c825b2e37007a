"""Command-line interface.

Exit codes: 0 positive verdict or success, 1 negative verdict or failed
check, 2 bad input, 3 budget exhausted, 4 internal dispatch error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import certify
from .classify import HN, NOT_HN, UNDECIDED, DispatchError, classify, parse_ranks, theorem1_scan
from .checks import full_check_suite
from .rootsystem import RootSystem, Weight, in_weight_lattice, is_dominant, signed_stabilizer, simple_reflections, weight_set, weyl_group_arrays
from .saturation import (DEFAULT_BUDGET, STRATEGIES, BudgetExceeded, StrategyNotApplicable, VectorSet,
                         dump_vector_set, is_hereditarily_normal, is_saturated, load_vector_set)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


def _root_system(family: str, rank: str) -> RootSystem:
    try:
        return RootSystem(family.upper(), int(rank))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _weight(rs: RootSystem, text: str) -> Weight:
    try:
        lam = Weight.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse weight {text!r}: {exc}") from None
    if lam.n != rs.n:
        raise InputError(f"weight has {lam.n} coordinates, {rs} needs {rs.n}")
    if not any(lam.doubled):
        raise InputError("weight must be nonzero")
    if not in_weight_lattice(rs, lam):
        raise InputError(f"{lam} is not in the weight lattice of {rs}")
    if not is_dominant(rs, lam):
        raise InputError(f"{lam} is not dominant for {rs}")
    return lam


def _load(path: str) -> tuple[VectorSet, int]:
    try:
        return load_vector_set(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(args, human: str, data: dict):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n")


# ---------------------------------------------------------------------------


def cmd_weights(args) -> int:
    rs = _root_system(args.family, args.rank)
    lam = _weight(rs, args.weight)
    ws = weight_set(rs, lam)
    text = dump_vector_set(ws.integer_members, ws.denominator)
    if args.out:
        _write(Path(args.out), text)
    if args.format == "json":
        print(text)
    else:
        print(f"{rs} lambda={lam}: {len(ws)} weights, denominator {ws.denominator}")
        for w in ws.members:
            print("  " + "  ".join(f"{str(c):>5}" for c in w.coords))
    return EXIT_OK


def cmd_check_sat(args) -> int:
    vs, den = _load(args.path)
    notes = []
    if vs.duplicates:
        notes.append(f"{vs.duplicates} duplicate rows collapsed")
    if vs.dropped_zero:
        notes.append("zero vector dropped")
    w = is_saturated(vs)
    if w is None:
        _emit(args, "saturated" + "".join(f" ({n})" for n in notes),
              {"saturated": True, "notes": notes, "vectors": len(vs)})
        return EXIT_OK
    cert = certify.certificate_from_witness(w, vs, f"file {args.path}", den)
    out = Path(args.out) if args.out else Path(args.path).with_suffix(".nss.json")
    _write(out, certify.dumps(cert))
    _emit(args, f"not saturated: v0={list(w.v0)} (certificate written to {out})"
          + "".join(f" ({n})" for n in notes),
          {"saturated": False, "notes": notes, "v0": list(w.v0), "certificate_path": str(out)})
    return EXIT_NEGATIVE


def _hn_from_weight(args) -> int:
    rs = _root_system(args.family, args.rank)
    lam = _weight(rs, args.weight)
    if args.strategy == "auto" and args.symmetry == "on":
        report = classify(rs, lam, args.budget)
        if report.verdict == UNDECIDED:
            _emit(args, "undecided: budget exhausted", report.to_json())
            return EXIT_BUDGET
        return _report_hn(args, report.certificate, f"{rs} {lam}", f"{rs}-nss.json")
    ws = weight_set(rs, lam)
    vs = VectorSet.of(ws.integer_members)
    group = weyl_group_arrays(rs) if args.symmetry == "on" else None
    gens = [g.to_json() for g in simple_reflections(rs)]
    return _run_hn(args, vs, ws.denominator, group, gens, f"{rs} lambda={lam}", default_out=f"{rs}-nss.json")


def _run_hn(args, vs: VectorSet, den: int, group, group_spec, context: str, default_out: str) -> int:
    try:
        verdict = is_hereditarily_normal(vs, args.strategy, group, args.budget)
    except BudgetExceeded as exc:
        _emit(args, str(exc), {"verdict": "Undecided", "detail": str(exc)})
        return EXIT_BUDGET
    except StrategyNotApplicable as exc:
        _emit(args, f"strategy not applicable: {exc}", {"verdict": "Error", "detail": str(exc)})
        return EXIT_INPUT
    if verdict.normal:
        data = {k: v for k, v in verdict.detail.items() if k in ("m", "bases_checked", "examined")}
        if group is not None and verdict.method != "Unimodular":
            data["group"] = group_spec
        cert = certify.HnCertificate(context, vs.vectors, verdict.method, data, den)
    else:
        cert = certify.certificate_from_witness(verdict.witness, vs, context, den)
    return _report_hn(args, cert, context, default_out)


def _report_hn(args, cert, context: str, default_out: str = "nss-certificate.json") -> int:
    text = certify.dumps(cert)
    if isinstance(cert, certify.HnCertificate):
        if args.out:
            _write(Path(args.out), text)
        _emit(args, f"hereditarily normal ({cert.method})", {"verdict": "HereditarilyNormal", "certificate": cert.to_json()})
        return EXIT_OK
    out = Path(args.out or default_out)
    _write(out, text)
    _emit(args, f"not hereditarily normal: v0={list(cert.v0)} from {len(cert.vectors)} vectors "
          f"(certificate written to {out})",
          {"verdict": "NotHereditarilyNormal", "certificate_path": str(out), "certificate": cert.to_json()})
    return EXIT_NEGATIVE


def cmd_check_hn(args) -> int:
    if args.vectors:
        vs, den = _load(args.vectors)
        group = signed_stabilizer(vs.vectors) if args.symmetry == "on" else None
        if args.strategy == "structural" and group is None:
            raise InputError("the structural strategy needs a symmetry group; none available for this file")
        default = str(Path(args.vectors).with_suffix(".nss.json"))
        return _run_hn(args, vs, den, group, certify.STABILIZER, f"file {args.vectors}", default)
    if not (args.family and args.rank and args.weight):
        raise InputError("give FAMILY RANK WEIGHT or --vectors PATH")
    return _hn_from_weight(args)


def cmd_classify(args) -> int:
    rs = _root_system(args.family, args.rank)
    lam = _weight(rs, args.weight)
    try:
        report = classify(rs, lam, args.budget)
    except DispatchError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    path = None
    if args.out and report.certificate is not None:
        path = args.out
        _write(Path(path), certify.dumps(report.certificate))
    data = report.to_json(path)
    human = f"{rs} lambda={lam}: {report.verdict}"
    if report.matched_entry:
        human += f" (table row {report.matched_entry['row']}{', via dual' if report.matched_entry['via_dual'] else ''})"
    for step in report.trace:
        human += "\n  " + ", ".join(f"{k}={v}" for k, v in step.items() if k != "group")
    _emit(args, human, data)
    return {HN: EXIT_OK, NOT_HN: EXIT_NEGATIVE}.get(report.verdict, EXIT_BUDGET)


def cmd_theorem1(args) -> int:
    try:
        ranks = parse_ranks(args.ranks)
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad rank ranges {args.ranks!r}: {exc}") from None
    scan = theorem1_scan(ranks, args.height, args.budget, args.threads)
    if args.out:
        _write(Path(args.out), "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in scan.reports))
    summary = scan.summary()
    if args.format == "json":
        print(json.dumps({"summary": summary, "discrepancies": scan.discrepancies}, sort_keys=True))
    else:
        for key, s in summary["per_root_system"].items():
            print(f"{key:>4}: {s['weights']:4d} weights, {s['normal']:3d} normal, {s['millis']:9.1f} ms")
        print(f"{summary['weights']} weights, {summary['discrepancies']} discrepancies")
        for d in scan.discrepancies:
            print(f"  {d}")
    return EXIT_OK if not scan.discrepancies else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    try:
        cert = certify.loads(Path(args.path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read certificate {args.path}: {exc}") from None
    ambient = _load(args.vectors)[0] if args.vectors else None
    if isinstance(cert, certify.NssCertificate):
        problems = certify.nss_certificate_problems(cert, ambient)
        ok = not problems
    else:
        try:
            ok = certify.verify_hn_certificate(cert, ambient, args.budget)
        except BudgetExceeded:
            print("undecided: budget exhausted")
            return EXIT_BUDGET
        problems = [] if ok else ["method does not reproduce"]
    _emit(args, "valid" if ok else "invalid: " + "; ".join(problems), {"valid": ok, "problems": problems})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_self_checks(args) -> int:
    results = full_check_suite()
    if args.format == "json":
        print(json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results], sort_keys=True))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--out", help="output path")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="subset budget for exhaustive search")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--strategy", choices=STRATEGIES, default="auto")
    common.add_argument("--symmetry", choices=("on", "off"), default="on")

    p = argparse.ArgumentParser(prog="torusnormal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("weights", parents=[common], help="emit the weight set M(lambda)")
    s.add_argument("family")
    s.add_argument("rank")
    s.add_argument("weight", help='e.g. "3/2,1/2" or "d2:3,1"')
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("check-sat", parents=[common], help="decide saturation of a vector file")
    s.add_argument("path")
    s.set_defaults(func=cmd_check_sat)

    s = sub.add_parser("check-hn", parents=[common], help="decide hereditary normality")
    s.add_argument("family", nargs="?")
    s.add_argument("rank", nargs="?")
    s.add_argument("weight", nargs="?")
    s.add_argument("--vectors", help="vector file instead of a weight")
    s.set_defaults(func=cmd_check_hn)

    s = sub.add_parser("classify", parents=[common], help="classify a simple module")
    s.add_argument("family")
    s.add_argument("rank")
    s.add_argument("weight")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("theorem1", parents=[common], help="classify every weight in a range and compare with the table")
    s.add_argument("--ranks", default="B2-5,C3-5,D4-7")
    s.add_argument("--height", type=int, default=8, help="bound on the doubled coordinate sum")
    s.set_defaults(func=cmd_theorem1)

    s = sub.add_parser("verify", parents=[common], help="check a certificate file")
    s.add_argument("path")
    s.add_argument("--vectors", help="ambient vector file the certificate must lie in")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("paper-checks", parents=[common], help="run the full self-check suite")
    s.set_defaults(func=cmd_self_checks)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
