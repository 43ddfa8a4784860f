"""Command-line interface.

Exit codes: 0 success, 1 usage or manifest error, 2 structure equation
fails, 3 internal inconsistency between criteria that must agree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from fstruct.checks import InconsistencyError
from fstruct.cr import cr_analysis
from fstruct.fstructure import StructureError, check_decomposition, check_projector_identities
from fstruct.generator import GeneratorSpec, generate_instance
from fstruct.integrability import analyze, classify
from fstruct.manifest import (ManifestError, builtin_example, builtin_manifest_data, load_manifest,
                              parse_rational)
from fstruct.nijenhuis import integrable_consequences, nijenhuis_apply, nijenhuis_identity_suite, nijenhuis_of
from fstruct.report import manifest_report, render_cr, render_text

EXIT_OK, EXIT_USAGE, EXIT_STRUCTURE, EXIT_INCONSISTENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fstruct", description="Exact analysis of polynomial F-structures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check the structure equation and projector identities")
    p.add_argument("file")

    p = sub.add_parser("report", help="full integrability report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("nijenhuis", help="N_F on coordinate frame pairs")
    p.add_argument("file")
    p.add_argument("--pair", nargs=2, metavar=("I", "J"),
                   help="frame fields by 1-based index or variable name")

    p = sub.add_parser("cr", help="CR-structure analysis (manifest must contain Fhat)")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="match (alpha, beta, K) against the special cases")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--K", type=int, required=True)

    p = sub.add_parser("example", help="run or print a built-in example")
    p.add_argument("id", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--emit", action="store_true", help="print the manifest instead of the report")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fuzz", help="check generated instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--position-dependent", action="store_true")
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def cmd_verify(args) -> int:
    m = load_manifest(args.file)
    S = m.structure()
    print(f"structure equation holds: alpha={S.alpha} beta={S.beta} K={S.K}; rank {S.r}")
    ok = True
    for suite in (check_projector_identities(S), check_decomposition(S)):
        for c in suite.checks:
            print(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}")
            ok &= c.passed
    for w in S.warnings:
        print(f"warning: {w}")
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_report(args) -> int:
    rep = manifest_report(load_manifest(args.file))
    print(_dump(rep) if args.json else render_text(rep))
    return EXIT_OK


def _frame_index(token: str, names) -> int:
    if token in names:
        return names.index(token)
    try:
        k = int(token)
    except ValueError:
        raise UsageError(f"unknown frame field {token!r}")
    if not 1 <= k <= len(names):
        raise UsageError(f"frame index {k} out of range 1..{len(names)}")
    return k - 1


def cmd_nijenhuis(args) -> int:
    m = load_manifest(args.file)
    S = m.structure()
    names = S.chart.vars
    if args.pair:
        i, j = (_frame_index(t, names) for t in args.pair)
        v = nijenhuis_apply(S.F, S.chart.frame()[i], S.chart.frame()[j])
        print(f"N_F(d_{names[i]}, d_{names[j]}) = {v}")
        return EXIT_OK
    for key, comps in nijenhuis_of(S.F).to_dict().items():
        a, b = key.split(",")
        vf = S.chart.vector(comps)
        print(f"N_F(d_{a}, d_{b}) = {vf}")
    return EXIT_OK


def cmd_cr(args) -> int:
    m = load_manifest(args.file)
    if m.Fhat is None:
        raise UsageError("manifest has no Fhat entry")
    res = cr_analysis(m.structure(), m.Fhat).to_dict()
    print(_dump(res) if args.json else render_cr(res))
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.K < 3:
        raise UsageError("K must be at least 3")
    c = classify(args.alpha, args.beta, args.K)
    print(_dump(c.to_dict()))
    return EXIT_OK


def cmd_example(args) -> int:
    if args.emit:
        print(_dump(builtin_manifest_data(args.id)))
        return EXIT_OK
    rep = manifest_report(builtin_example(args.id))
    print(_dump(rep) if args.json else render_text(rep))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    conj = "unimodular" if args.position_dependent else "constant"
    failures = 0
    start = time.perf_counter()
    for k in range(args.count):
        try:
            spec = GeneratorSpec(args.n, args.K, args.alpha, args.beta, None, conj, args.seed + k)
            spec.layout()
        except ValueError as exc:
            raise UsageError(str(exc))
        inst = generate_instance(spec)
        S = inst.S
        suites = [check_projector_identities(S), check_decomposition(S),
                  nijenhuis_identity_suite(S), integrable_consequences(S)]
        rep = analyze(S)
        bad = [f"{s.name}: {c.name}" for s in suites for c in s.failures]
        if inst.Fhat is not None:
            cr_analysis(S, inst.Fhat)
        flags = "".join("1" if v else "0" for v in rep.flags().values())
        status = "ok" if not bad else "FAIL " + "; ".join(bad)
        print(f"seed {spec.seed}: rank {S.r} flags {flags} {status}")
        failures += bool(bad)
    elapsed = time.perf_counter() - start
    print(f"{args.count} instances, {failures} with failing identities, {elapsed:.2f} s")
    return EXIT_OK if not failures else EXIT_INCONSISTENT


COMMANDS = {
    "verify": cmd_verify,
    "report": cmd_report,
    "nijenhuis": cmd_nijenhuis,
    "cr": cmd_cr,
    "classify": cmd_classify,
    "example": cmd_example,
    "fuzz": cmd_fuzz,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    except (ManifestError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        payload = exc.payload
        if hasattr(payload, "to_dict"):
            print(_dump(payload.to_dict()), file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
