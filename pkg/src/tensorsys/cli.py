"""Command-line interface.

Verbs: validate, basis, check-tl, check-bmw, invariants, export, gauge-test.
Exit codes: 0 success/pass, 1 relation failure, 2 structural or validation
error.  ``--json`` switches output to a machine-readable report.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys as _sys

from . import catalog, io as sysio
from .errors import TensorSystemError
from .paths import ChainSpec, enumerate_basis
from .relations import build_bmw, build_tl_chain, check_skein, operator_residual
from .system import (
    TOL_RELATION,
    BraidedTensorSystem,
    apply_gauge,
    gauge_invariant_diagonal,
    random_gauge,
    validate_braiding,
    validate_system,
)

PASS, FAIL, STRUCTURAL = 0, 1, 2


def _fmt(z: complex) -> str:
    scale = max(abs(z), 1.0)
    re = 0.0 if abs(z.real) < 1e-13 * scale else z.real
    im = 0.0 if abs(z.imag) < 1e-13 * scale else z.imag
    if im == 0.0:
        return f"{re:.15g}"
    return f"{re:.15g}{im:+.15g}j"


def _load(args):
    if args.catalog and args.file:
        raise TensorSystemError("give either --catalog or --file, not both")
    if args.catalog:
        return catalog.get_system(args.catalog)
    if args.file:
        return sysio.load_system(args.file)
    raise TensorSystemError("a system source is required (--catalog or --file)")


def _validate_loaded(system, tol):
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    report = validate_system(base, tol)
    braid_report = None
    if isinstance(system, BraidedTensorSystem) and report.passed:
        braid_report = validate_braiding(system, tol)
    return report, braid_report


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, default=_fmt))
    else:
        for line in text_lines:
            print(line)


def cmd_validate(args):
    system = _load(args)
    report, braid_report = _validate_loaded(system, args.tol)
    lines = [report.summary()]
    checks = [{"name": c.name, "residual": c.residual, "passed": c.passed,
               "detail": c.detail} for c in report.checks]
    if braid_report is not None:
        lines.append(braid_report.summary())
        checks += [{"name": c.name, "residual": c.residual, "passed": c.passed,
                    "detail": c.detail} for c in braid_report.checks]
    ok = report.passed and (braid_report is None or braid_report.passed)
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    _emit(args, {"command": "validate", "passed": ok, "checks": checks}, lines)
    return PASS if ok else STRUCTURAL


def _chain_spec(args, system):
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    if args.lam is None:
        raise TensorSystemError("--lambda is required for this command")
    labels = tuple(base.require_label(s) for s in args.lam.split(","))
    seeds = (frozenset(base.require_label(s) for s in args.seeds.split(","))
             if args.seeds else frozenset(base.labels))
    chain = labels if len(labels) > 1 else labels * args.L
    return ChainSpec(chain, seeds), labels[0]


def cmd_basis(args):
    system = _load(args)
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    report, braid_report = _validate_loaded(system, args.tol)
    if not report.passed:
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    spec, _ = _chain_spec(args, system)
    basis = enumerate_basis(base, spec)
    lines = [f"dimension: {basis.dimension}"]
    if args.paths:
        lines += [" ".join(p) for p in basis.paths]
    _emit(args, {"command": "basis", "dimension": basis.dimension,
                 "paths": [list(p) for p in basis.paths] if args.paths else None},
          lines)
    return PASS


def cmd_check_tl(args):
    system = _load(args)
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    report, _ = _validate_loaded(system, args.tol)
    if not report.passed:
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    if args.lam is None or args.nu is None:
        raise TensorSystemError("--lambda and --nu are required for check-tl")
    lam = base.require_label(args.lam)
    nu = base.require_label(args.nu)
    seeds = (frozenset(base.require_label(s) for s in args.seeds.split(","))
             if args.seeds else None)
    d, gens = build_tl_chain(base, lam, nu, args.L, seeds=seeds, tol=args.tol)
    residual = 0.0
    for i, U in enumerate(gens):
        residual = max(residual, operator_residual(U @ U, d * U))
        for j, V in enumerate(gens):
            if abs(i - j) == 1:
                residual = max(residual, operator_residual(U @ V @ U, U))
            elif abs(i - j) >= 2:
                residual = max(residual, operator_residual(U @ V, V @ U))
    ok = residual <= args.tol
    payload = {"command": "check-tl", "relation": "temperley-lieb",
               "satisfied": ok, "constant": {"re": d.real, "im": d.imag},
               "residual": residual}
    _emit(args, payload,
          [f"d = {_fmt(d)}",
           f"relations: {'pass' if ok else 'FAIL'} (residual {residual:.3e})"])
    return PASS if ok else FAIL


def cmd_check_bmw(args):
    system = _load(args)
    if not isinstance(system, BraidedTensorSystem):
        raise TensorSystemError("check-bmw needs a braided system")
    report, braid_report = _validate_loaded(system, args.tol)
    if not report.passed or braid_report is None or not braid_report.passed:
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    if args.lam is None or args.nu is None:
        raise TensorSystemError("--lambda and --nu are required for check-bmw")
    lam = system.require_label(args.lam)
    nu = system.require_label(args.nu)
    cert = build_bmw(system, lam, nu, args.L, tol=args.tol)
    roots = cert.passing_roots(args.tol)
    lines = [f"d = {_fmt(cert.d)}",
             f"proof identity residual = {cert.proof_identity_residual:.3e}"]
    families = []
    for g, fams in cert.relation_residuals.items():
        worst = max(fams.values())
        lines.append(f"g = {_fmt(g)}: worst residual {worst:.3e} "
                     f"({'pass' if worst <= args.tol else 'FAIL'})")
        for name, res in fams.items():
            families.append({"relation": name, "g": _fmt(g),
                             "satisfied": res <= args.tol, "residual": res})
    skein = None
    for g in roots:
        m, sk = check_skein(system, lam, nu, cert.d, g, tol=args.tol)
        lines.append(f"skein (g = {_fmt(g)}): "
                     f"{'m = ' + _fmt(m) if m is not None else 'unsatisfied'}"
                     f" (residual {sk.residual:.3e})")
        skein = {"g": _fmt(g), "m": None if m is None else _fmt(m),
                 "satisfied": sk.satisfied, "residual": sk.residual}
    ok = bool(roots)
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    _emit(args, {"command": "check-bmw", "satisfied": ok,
                 "constant": {"re": cert.d.real, "im": cert.d.imag},
                 "families": families, "skein": skein}, lines)
    return PASS if ok else FAIL


def cmd_invariants(args):
    system = _load(args)
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    report, _ = _validate_loaded(system, args.tol)
    if not report.passed:
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    lines, records = [], []
    for a, d, e in itertools.product(base.labels, repeat=3):
        val = gauge_invariant_diagonal(base, a, d, e)
        if val != 0:
            lines.append(f"({a},{d},{e}) -> {_fmt(val)}")
            records.append({"a": a, "d": d, "e": e, "re": val.real, "im": val.imag})
    _emit(args, {"command": "invariants", "values": records}, lines)
    return PASS


def cmd_export(args):
    system = _load(args)
    report, braid_report = _validate_loaded(system, args.tol)
    if not report.passed or (braid_report is not None and not braid_report.passed):
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    if args.output:
        sysio.save_system(system, args.output)
        print(f"wrote {args.output}")
    else:
        print(json.dumps(sysio.system_to_dict(system), ensure_ascii=False, indent=1))
    return PASS


def cmd_gauge_test(args):
    system = _load(args)
    base = system.base if isinstance(system, BraidedTensorSystem) else system
    report, braid_report = _validate_loaded(system, args.tol)
    if not report.passed or (braid_report is not None and not braid_report.passed):
        print(report.summary(), file=_sys.stderr)
        return STRUCTURAL
    invariants_before = {
        (a, d, e): gauge_invariant_diagonal(base, a, d, e)
        for a, d, e in itertools.product(base.labels, repeat=3)}
    g = random_gauge(base, args.seed)
    gauged = apply_gauge(system, g)
    gbase = gauged.base if isinstance(gauged, BraidedTensorSystem) else gauged
    greport, gbraid = _validate_loaded(gauged, args.tol)
    drift = max(abs(invariants_before[k]
                    - gauge_invariant_diagonal(gbase, *k))
                for k in invariants_before)
    ok = (greport.passed and (gbraid is None or gbraid.passed)
          and drift <= args.tol)
    lines = [f"seed {args.seed}: revalidation "
             f"{'pass' if greport.passed else 'FAIL'}, "
             f"invariant drift {drift:.3e}",
             f"overall: {'pass' if ok else 'FAIL'}"]
    _emit(args, {"command": "gauge-test", "seed": args.seed, "passed": ok,
                 "invariant_drift": drift}, lines)
    return PASS if ok else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensorsys",
        description="Validate tensor systems and certify projector/braid relations.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, chain=False):
        p.add_argument("--catalog", help="catalog entry, e.g. fibonacci or su2k(4)")
        p.add_argument("--file", help="path to a tensor-system JSON file")
        p.add_argument("--tol", type=float, default=TOL_RELATION,
                       help="residual tolerance (default %(default)g)")
        p.add_argument("--json", action="store_true",
                       help="emit a JSON report instead of text")
        if chain:
            p.add_argument("--lambda", dest="lam", help="chain label")
            p.add_argument("--nu", help="projection channel label")
            p.add_argument("--nu-prime", dest="nu_prime",
                           help="secondary channel label")
            p.add_argument("--L", type=int, default=4, help="chain length")
            p.add_argument("--seeds", help="comma-separated seed labels")

    common(sub.add_parser("validate", help="check all axioms"))
    p = sub.add_parser("basis", help="enumerate a fusion-path basis")
    common(p, chain=True)
    p.add_argument("--paths", action="store_true", help="also print every path")
    p = sub.add_parser("check-tl", help="certify Temperley-Lieb relations")
    common(p, chain=True)
    p = sub.add_parser("check-bmw", help="certify tangle-algebra relations")
    common(p, chain=True)
    common(sub.add_parser("invariants", help="print gauge-invariant diagonals"))
    p = sub.add_parser("export", help="write the system to JSON")
    common(p)
    p.add_argument("--output", help="output path (default stdout)")
    p = sub.add_parser("gauge-test",
                       help="apply a random gauge and recheck invariants")
    common(p)
    p.add_argument("--seed", type=int, default=0, help="gauge RNG seed")
    return parser


_HANDLERS = {
    "validate": cmd_validate,
    "basis": cmd_basis,
    "check-tl": cmd_check_tl,
    "check-bmw": cmd_check_bmw,
    "invariants": cmd_invariants,
    "export": cmd_export,
    "gauge-test": cmd_gauge_test,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.verb](args)
    except TensorSystemError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return STRUCTURAL


if __name__ == "__main__":
    raise SystemExit(main())
