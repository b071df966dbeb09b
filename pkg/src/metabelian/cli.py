"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 verification failure,
3 unsupported module class.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import cyclotomic as cy
from . import examples
from .errors import IllDefinedMapError, MalformedInputError, MetabelianError, NotInSError, UnsupportedModuleError
from .groups import (
    ParaCertificate,
    ParaStatus,
    ParaVerdict,
    SplitMetabelianGroup,
    nilpotent_quotient_table,
    subgroup_index,
    telescope_chain,
    verify_para_certificate,
)
from .laurent import LaurentPoly, augmentation
from .modules import LatticeModule, gamma_omega_bruteforce, module_from_json, residually_nilpotent
from .validation import validate

EXIT_OK, EXIT_MALFORMED, EXIT_FAILED, EXIT_UNSUPPORTED = 0, 1, 2, 3
DEPTH_ENV = "METABELIAN_DEPTH"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def default_depth() -> int:
    raw = os.environ.get(DEPTH_ENV)
    if raw is None or raw == "":
        return 6
    try:
        value = int(raw)
    except ValueError:
        raise MalformedInputError(f"{DEPTH_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise MalformedInputError(f"{DEPTH_ENV} must be >= 1")
    return value


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path} is not valid JSON: {exc}") from None


def _load_group(args) -> SplitMetabelianGroup:
    if args.example and args.input:
        raise MalformedInputError("give either an input file or --example, not both")
    if args.example:
        return examples.example_group(args.example, args.n)
    if not args.input:
        raise MalformedInputError("an input file or --example is required")
    data = _read_json(args.input)
    if isinstance(data, dict) and "kind" in data:
        validate(data, "module")
        return SplitMetabelianGroup(module_from_json(data), os.path.basename(args.input))
    validate(data, "group")
    return SplitMetabelianGroup.from_json(data)


def _parse_poly(text: str) -> LaurentPoly:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"--s is not valid JSON: {exc}") from None
    validate(data, "poly")
    return LaurentPoly.from_json(data)


# -- commands -------------------------------------------------------------

def cmd_lcq(args) -> tuple[int, object]:
    G = _load_group(args)
    if args.dump:
        return EXIT_OK, G.to_json()
    rows = nilpotent_quotient_table(G, args.depth)
    if args.format == "tsv":
        lines = ["k\tquotient\tquotient_free_rank\tquotient_torsion\tlayer\tlayer_free_rank\tlayer_torsion"]
        for r in rows:
            lines.append("\t".join([
                str(r.k), str(r.upper), str(r.upper.free_rank), ",".join(map(str, r.upper.torsion)),
                str(r.layer), str(r.layer.free_rank), ",".join(map(str, r.layer.torsion))]))
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, {"command": "lcq", "status": "ok", "group": G.to_json(), "depth": args.depth,
                     "rows": [r.to_json() for r in rows]}


def cmd_para(args) -> tuple[int, object]:
    if args.example and args.cert:
        raise MalformedInputError("give either --cert or --example, not both")
    if args.example:
        cert = examples.example_certificate(args.example)
        if args.dump:
            return EXIT_OK, cert.to_json()
    elif args.cert:
        data = _read_json(args.cert)
        validate(data, "certificate")
        try:
            cert = ParaCertificate.from_json(data)
        except IllDefinedMapError as exc:
            verdict = ParaVerdict(ParaStatus.REJECTED, {"maps_well_defined": False}, ["maps_well_defined"])
            return EXIT_FAILED, _para_report(verdict, args.depth, str(exc))
        if args.dump:
            return EXIT_OK, cert.to_json()
    else:
        raise MalformedInputError("--cert or --example is required")
    verdict = verify_para_certificate(cert, args.depth)
    code = EXIT_FAILED if verdict.status is ParaStatus.REJECTED else EXIT_OK
    return code, _para_report(verdict, args.depth)


def _para_report(verdict: ParaVerdict, depth: int, reason: str | None = None) -> dict:
    out = {"command": "para", "depth": depth, **verdict.to_json()}
    if reason:
        out["reason"] = reason
    return out


def cmd_resnilp(args) -> tuple[int, object]:
    G = _load_group(args)
    if args.dump:
        return EXIT_OK, G.to_json()
    verdict = residually_nilpotent(G.module)
    report = {"command": "resnilp", "status": "RN" if verdict.residually_nilpotent else "NOT-RN",
              "module": G.module.to_json(), "label": G.label, **verdict.to_json(), "brute_force": None}
    code = EXIT_OK if verdict.residually_nilpotent else EXIT_FAILED
    if args.brute_force is not None:
        if not isinstance(G.module, LatticeModule):
            raise UnsupportedModuleError("--brute-force is only available for lattice modules")
        stable = gamma_omega_bruteforce(G.module, args.brute_force)
        agrees = stable.is_zero == verdict.residually_nilpotent
        report["brute_force"] = {"k_max": args.brute_force, "stable_rank": stable.rank,
                                 "stable_basis": [list(r) for r in stable.basis], "agrees": agrees}
        if not agrees:
            report["status"] = "DISAGREE"
            code = EXIT_FAILED
    return code, report


def cmd_telescope(args) -> tuple[int, object]:
    G = _load_group(args)
    if args.dump:
        return EXIT_OK, G.to_json()
    s = _parse_poly(args.s) if args.s is not None else LaurentPoly.from_json({"0": -1, "1": 2})
    report = telescope_chain(G, s, args.stages, args.depth)
    out = {"command": "telescope", "status": "PASS" if report.passed else "FAIL",
           "label": G.label, **report.to_json()}
    return (EXIT_OK if report.passed else EXIT_FAILED), out


def cyclotomic_report(p: int = 23, include_assumed: bool = True) -> dict:
    """All identities of the Z[zeta_23] example (or only the period identities for other p)."""
    P = cy.gaussian_period(p)
    one = cy.CyclotomicElement.one(p)
    two_p_plus_one = 2 * P + 1
    checks = {
        "period exponents are the residues (Euler criterion)":
            [e for e in range(1, p) if pow(e, (p - 1) // 2, p) == 1] == cy.quadratic_residues(p),
        "(2P+1)^2 = -p": two_p_plus_one * two_p_plus_one == cy.CyclotomicElement.integer(p, -p),
        "P^2 + P + (p+1)/4 = 0": (P * P + P + (p + 1) // 4).is_zero(),
    }
    values = {"p": p, "period_exponents": cy.quadratic_residues(p), "period": P.to_json()}
    report = {"command": "cyclo", "p": p, "checks": checks, "values": values}
    if p == examples.CYCLO_P:
        s_poly = cy.period_lift(p)
        s = cy.eval_p_of_zeta(p)
        L = examples.cyclotomic_ideal_lattice(p)
        principal = cy.ideal_from_generators([s])
        cert = examples.cyclotomic_certificate()
        verdict = verify_para_certificate(cert, 6)
        index_alpha = subgroup_index(cert.f)
        index_incl = subgroup_index(cert.g)
        norm_s = s.norm()
        checks.update({
            "p(1) = 1": augmentation(s_poly) == 1,
            "p(zeta) = 2 + 2P": s == 2 * P + 2,
            "(p(zeta) - 1)^2 = -23": (s - one) * (s - one) == cy.CyclotomicElement.integer(p, -23),
            "norm (2, 1+P) = 2^11": cy.ideal_norm(L) == 2 ** 11,
            "norm (2(1+P)) = 24^11": cy.ideal_norm(principal) == 24 ** 11,
            "index of inclusion = 2^11": index_incl == 2 ** 11,
            "index of alpha = 12^11": index_alpha == 12 ** 11,
            "2^11 * 12^11 = N(s) = 24^11": index_incl * index_alpha == norm_s == 24 ** 11,
            "N(s) = |res(p(t), Phi_23)|": norm_s == cy.cyclotomic_norm_via_resultant(s),
            "norm (2, 1+P)^2 = 2^22": cy.ideal_norm(cy.ideal_mul(L, L)) == 2 ** 22,
            "certificate CERTIFIED": verdict.status is ParaStatus.CERTIFIED,
        })
        quad = cy.quadratic_class_check()
        if not include_assumed:
            quad.pop("cyclotomic_class_group", None)
        checks.update({
            "quadratic ideal norm 2": quad["ideal"]["norm"] == 2,
            "no element of norm 2": not quad["norm_2_elements"],
            "a^2 not principal": not quad["a2"]["principal"] and not quad["a2"]["equals_(2)"],
            "a^3 principal": quad["a3"]["principal"],
        })
        values.update({
            "p_of_t": s_poly.to_json(),
            "p_of_zeta": s.to_json(),
            "ideal_basis_hnf_diagonal": [L.basis[i][i] for i in range(p - 1)],
            "ideal_norm": cy.ideal_norm(L),
            "index_alpha": index_alpha,
            "index_inclusion": index_incl,
            "norm_s": norm_s,
            "certificate": verdict.to_json(),
        })
        report["quadratic_class_check"] = quad
    report["status"] = "PASS" if all(checks.values()) else "FAIL"
    return report


def cmd_cyclo(args) -> tuple[int, object]:
    report = cyclotomic_report(args.p, include_assumed=not args.skip_assumed)
    return (EXIT_OK if report["status"] == "PASS" else EXIT_FAILED), report


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    depth = default_depth()
    parser = _Parser(prog="metabelian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, group_input=True):
        if group_input:
            p.add_argument("input", nargs="?", help="group or module JSON file")
            p.add_argument("--example", choices=sorted(examples.GROUPS), help="builtin example")
            p.add_argument("--n", type=int, help="parameter of gamma-n")
        p.add_argument("--depth", type=_positive, default=depth,
                       help=f"truncation depth (default {depth}, env {DEPTH_ENV})")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--output", help="write to this file instead of standard output")
        p.add_argument("--dump", action="store_true", help="print the loaded input as JSON and exit")

    p = sub.add_parser("lcq", help="lower central quotient table")
    common(p)
    p.set_defaults(func=cmd_lcq)

    p = sub.add_parser("para", help="verify a para-equivalence certificate")
    common(p, group_input=False)
    p.add_argument("--cert", help="certificate JSON file")
    p.add_argument("--example", choices=sorted(examples.CERTIFICATES), help="builtin certificate")
    p.set_defaults(func=cmd_para)

    p = sub.add_parser("resnilp", help="decide residual nilpotence")
    common(p)
    p.add_argument("--brute-force", type=_positive, metavar="K_MAX",
                   help="cross-check lattice modules against the image-chain oracle")
    p.set_defaults(func=cmd_resnilp)

    p = sub.add_parser("telescope", help="check a telescope chain")
    common(p)
    p.add_argument("--s", help='multiplier as polynomial JSON, e.g. \'{"1":2,"0":-1}\'')
    p.add_argument("--stages", type=_positive, default=3)
    p.set_defaults(func=cmd_telescope)

    p = sub.add_parser("cyclo", help="run the Z[zeta_23] checks")
    common(p, group_input=False)
    p.add_argument("--p", type=int, default=23, help="prime p = 3 mod 4 (only period checks unless 23)")
    p.add_argument("--skip-assumed", action="store_true", help="omit facts taken from the literature")
    p.set_defaults(func=cmd_cyclo)
    return parser


def _emit(payload, args) -> None:
    text = payload if isinstance(payload, str) else canonical_json(payload)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise MalformedInputError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.format == "tsv" and args.command != "lcq":
            raise MalformedInputError("tsv output is only available for lcq")
        code, payload = args.func(args)
        if isinstance(payload, dict) and "command" in payload:
            validate(payload, "report")
        _emit(payload, args)
        return code
    except UnsupportedModuleError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NotInSError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except IllDefinedMapError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (MalformedInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except MetabelianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
