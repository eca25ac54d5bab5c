"""Command-line front end.

Exit codes: 0 success, 1 a verified failure (the input was understood and a
check came out negative), 2 unusable input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from flagforge import bundles
from flagforge.bott import FORMS, POLYVECTORS, BottQuery, bott_dim, theorem1_audit, vanishing_report
from flagforge.bundles import BundleError, FlagBundle, MultiBundle
from flagforge.extalg import MultiVector, PForm
from flagforge.flags import (
    NOT_APPLICABLE,
    ChainVerdict,
    FlagReport,
    audit_degree_chain,
    audit_inequalities,
    verify_flag,
)
from flagforge.polyring import Poly
from flagforge.projective import (
    DistributionError,
    FieldsDistribution,
    ProjDistribution,
    descend_form,
    fields_distribution,
    singular_ideal,
)
from flagforge.textfmt import ParseError, parse_components
from flagforge.zeros import isolatedness_evidence

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _emit(args, payload: dict, text: str) -> None:
    out = bundles.dumps(payload) if args.format == "json" else text
    if not out.endswith("\n"):
        out += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# -- check ---------------------------------------------------------------------------


def _describe_form(dist: ProjDistribution) -> dict:
    return {
        "kind": "form",
        "n": dist.n,
        "codim": dist.codim,
        "dim": dist.dim,
        "degree": dist.degree,
        "twist": dist.twist,
        "omega": str(dist.omega),
        "singular_ideal": [str(g) for g in singular_ideal(dist)],
    }


def _describe_fields(dist: FieldsDistribution) -> dict:
    return {
        "kind": "fields",
        "n": dist.n,
        "dim": dist.dim,
        "degrees": list(dist.degrees),
        "degree": dist.total_degree,
        "fields": [str(x) for x in dist.generators],
        "singular_ideal": [str(g) for g in singular_ideal(dist)],
    }


def _text_block(d: dict) -> str:
    lines = []
    for key, value in d.items():
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    given = [x for x in (args.form, args.fields, args.input) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --form, --field or --input")
    try:
        if args.form:
            nvars, p, _ = parse_components(args.form, "dif")
            n = args.n if args.n is not None else max(nvars - 1, p + 1)
            omega = PForm.parse(args.form, nvars=n + 1)
            described = _describe_form(descend_form(omega, n))
        elif args.fields:
            gens = [MultiVector.parse(t) for t in args.fields]
            width = max(x.nvars for x in gens)
            n = args.n if args.n is not None else max(width - 1, len(gens) + 1)
            gens = [MultiVector.parse(t, nvars=n + 1) for t in args.fields]
            described = _describe_fields(fields_distribution(gens, n))
        else:
            bundle = bundles.loads(_read_input(args.input))
            if isinstance(bundle, ProjDistribution):
                described = _describe_form(bundle)
            elif isinstance(bundle, FieldsDistribution):
                described = _describe_fields(bundle)
            else:
                raise InputError("check takes a single distribution; use audit for flags")
    except DistributionError as exc:
        payload = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
        _emit(args, payload, f"{type(exc).__name__}: {exc}")
        return EXIT_FAIL
    described["ok"] = True
    _emit(args, described, _text_block(described))
    return EXIT_OK


# -- bott ----------------------------------------------------------------------------


def cmd_bott(args) -> int:
    single = [args.kind, args.rank, args.twist, args.cohom]
    triple = [args.d, args.m]
    if args.n is None:
        raise InputError("--n is required")
    if any(v is not None for v in single):
        if any(v is None for v in single):
            raise InputError("a single dimension needs --kind, --rank, --twist and --cohom")
        try:
            query = BottQuery(args.n, args.kind, args.rank, args.twist, args.cohom)
        except ValueError as exc:
            raise InputError(str(exc))
        value = bott_dim(query)
        payload = {"n": args.n, "kind": args.kind, "rank": args.rank, "twist": args.twist, "cohom": args.cohom, "h": value}
        sheaf = "Omega" if args.kind == FORMS else "wedge T"
        _emit(args, payload, f"h^{args.cohom}(P^{args.n}, {sheaf}^{args.rank}({args.twist})) = {value}")
        return EXIT_OK
    if any(v is None for v in triple):
        raise InputError("give --d and --m, or a single query with --kind/--rank/--twist/--cohom")
    try:
        report = vanishing_report(args.n, args.d, args.m)
        audit = theorem1_audit(args.n, args.d, args.m)
    except ValueError as exc:
        raise InputError(str(exc))
    payload = {"vanishing": report.to_dict(), "theorem1": audit.to_dict()}
    lines = [f"Koszul twists for n={args.n}, d={args.d}, m={args.m}: {list(report.twists)}"]
    lines.append("  r   t_r   h^{r-2}  h^{r-1}  required  ok")
    for row in report.rows:
        req = ",".join(row.required) or "-"
        lines.append(f"  {row.r:<3} {row.twist:<5} {row.h_low:<8} {row.h_high:<8} {req:<9} {row.ok}")
    lines.append(f"chain holds: {report.chain_holds}")
    lines.append(f"exceptional condition: {report.exceptional or 'none'}")
    lines.append(f"Theorem 1 bound asserted: {audit.bound_asserted}; m <= d-1: {audit.bound_holds}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- gen -----------------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        if args.family == "disti":
            if args.k < 1:
                raise InputError("--k must be at least 1")
            bundle = bundles.disti_bundle(args.k)
        else:
            f = Poly.parse(args.f, nvars=args.n2 + 1)
            bundle = bundles.hamilton_bundle(f, args.n2, args.k, args.fields)
    except ParseError as exc:
        raise InputError(str(exc))
    except DistributionError as exc:
        payload = {"ok": False, "error": type(exc).__name__, "message": str(exc)}
        _emit(args, payload, f"{type(exc).__name__}: {exc}")
        return EXIT_FAIL
    except ValueError as exc:
        # bad f, odd n2, degree mismatch: the request itself is malformed
        raise InputError(str(exc))
    data = bundle.to_dict()
    _emit(args, data, _text_block({"n": data["n"], "upper": data["upper"]["omega"], "lower": data["lower"]["fields"]}))
    return EXIT_OK


# -- sing ----------------------------------------------------------------------------


def cmd_sing(args) -> int:
    bundle = bundles.loads(_read_input(args.input))
    if isinstance(bundle, MultiBundle):
        raise InputError("sing takes one distribution or one flag")
    if isinstance(bundle, FlagBundle):
        dist = bundle.upper if args.member == "upper" else bundle.lower
    else:
        dist = bundle
    try:
        evidence = isolatedness_evidence(singular_ideal(dist), dist.n, args.primes)
    except ValueError as exc:
        raise InputError(str(exc))
    payload = evidence.to_dict()
    lines = [f"primes: {list(evidence.primes)}", f"counts: {list(evidence.counts)}"]
    if evidence.rejected_primes:
        lines.append(f"rejected (bad reduction): {list(evidence.rejected_primes)}")
    for p, pts in zip(evidence.primes, evidence.points):
        if pts:
            lines.append(f"points mod {p}: {' '.join(pts)}")
    lines.append(f"verdict: {evidence.verdict} ({evidence.note})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- audit ---------------------------------------------------------------------------


def _report_text(rep: FlagReport) -> List[str]:
    lines = [
        f"flag on P^{rep.n}: dim(F)={rep.dims[0]}, dim(G)={rep.dims[1]}",
        f"deg(G)={rep.degrees[1]}, deg(F)={rep.degrees[0]}",
        f"tangency: {rep.tangency}",
        f"contraction chain vanishes against omega: {rep.contraction_chain_zero}",
        f"integrable: F {rep.integrability_lower}, G {rep.integrability_upper}",
    ]
    names = {"theorem1": "Theorem 1", "theorem2": "Theorem 2", "theorem3": "Theorem 3"}
    for key, verdict in sorted(rep.inequality_verdicts.items()):
        if verdict == NOT_APPLICABLE:
            lines.append(f"{names[key]} bound not applicable")
        else:
            lines.append(f"{names[key]} bound {verdict}")
    for item in rep.unverified:
        lines.append(f"unverified: {item}")
    return lines


def _chain_text(chain: ChainVerdict) -> str:
    degs = [d for _, d in chain.members]
    status = "holds" if chain.holds else f"violated at {list(chain.violations)}"
    return f"degree chain {degs} (dims {[d for d, _ in chain.members]}): {status}"


def cmd_audit(args) -> int:
    if args.degrees is not None:
        chain = audit_degree_chain(args.degrees)
        _emit(args, {"degree_chain": chain.to_dict()}, _chain_text(chain))
        return EXIT_OK if chain.holds else EXIT_FAIL
    bundle = bundles.loads(_read_input(args.input))
    if isinstance(bundle, FlagBundle):
        flags = [bundle]
    elif isinstance(bundle, MultiBundle):
        flags = list(bundle.flags)
    else:
        raise InputError("audit needs a flag bundle (keys n, lower, upper) or a list of flags")
    reports = [verify_flag(fb.lower, fb.upper) for fb in flags]
    foliations = all(r.integrability_lower and r.integrability_upper for r in reports)
    chain = None
    if all(r.tangency for r in reports) and (foliations or len(reports) > 1):
        try:
            chain = audit_inequalities(reports)
        except ValueError as exc:
            raise InputError(str(exc))
    lines: List[str] = []
    for rep in reports:
        lines.extend(_report_text(rep))
    if chain is not None:
        lines.append(_chain_text(chain))
    chain_dict = chain.to_dict() if chain is not None else None
    if len(reports) == 1:
        payload = reports[0].to_dict()
        payload["degree_chain"] = chain_dict
    else:
        payload = {"reports": [r.to_dict() for r in reports], "degree_chain": chain_dict}
    _emit(args, payload, "\n".join(lines))
    ok = all(r.ok for r in reports) and (chain is None or chain.holds)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="output format (default json)")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="flagforge", description="Exact checks for flags of distributions on P^n.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="{check,bott,gen,sing,audit}")
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="validate one distribution")
    p.add_argument("--form", help="form text, e.g. 'z1 dz0 - z0 dz1'")
    p.add_argument("--field", dest="fields", action="append", help="vector field text (repeatable)")
    p.add_argument("--input", help="JSON distribution file ('-' for stdin)")
    p.add_argument("--n", type=int, help="projective dimension (default: inferred)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bott", parents=[common], help="Bott dimensions and the Koszul vanishing table")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, help="degree of the line field")
    p.add_argument("--m", type=int, help="degree of the codimension-one distribution")
    p.add_argument("--kind", choices=(FORMS, POLYVECTORS))
    p.add_argument("--rank", type=int)
    p.add_argument("--twist", type=int)
    p.add_argument("--cohom", type=int)
    p.set_defaults(func=cmd_bott)

    p = sub.add_parser("gen", help="generate an example flag bundle")
    gsub = p.add_subparsers(dest="family", metavar="{disti,hamilton}")
    gsub.required = True
    g = gsub.add_parser("disti", parents=[common], help="antisymmetric-matrix example on P^3")
    g.add_argument("--k", type=int, required=True)
    g = gsub.add_parser("hamilton", parents=[common], help="Kupka form with Hamiltonian fields")
    g.add_argument("--f", required=True, help="polynomial in z1..z_{n2}")
    g.add_argument("--n2", type=int, required=True, help="even number of variables")
    g.add_argument("--k", type=int, help="degree of f (default: its total degree)")
    g.add_argument("--fields", type=_int_list, help="indices of the lower fields (default 1)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sing", parents=[common], help="finite-field evidence about the singular set")
    p.add_argument("--input", help="JSON distribution or flag ('-' for stdin)")
    p.add_argument("--primes", type=_int_list, default=[5, 7, 11])
    p.add_argument("--member", choices=("upper", "lower"), default="upper", help="which member of a flag")
    p.set_defaults(func=cmd_sing)

    p = sub.add_parser("audit", parents=[common], help="verify a flag bundle and its degree inequalities")
    p.add_argument("--input", help="JSON flag bundle ('-' or omitted: stdin)")
    p.add_argument("--degrees", type=_int_list, help="audit a bare degree chain instead")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, BundleError, ParseError) as exc:
        print(f"flagforge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DistributionError as exc:
        print(f"flagforge {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
