"""Command-line front end: count-types, split, invariants, generate, verify.

Every command takes --json for machine-readable output: exactly one JSON
document on stdout (schema_version 1), diagnostics on stderr. Exit codes:
0 success, 2 usage, 3 domain error (ramified prime, bad reduction, unknown
label), 4 resource limit or prime-search timeout, 5 verification mismatch.
"""

import argparse
import json
import os
import sys

from . import generator, invariants, splitting
from .cm_types import count_E, count_E_primitive, enumerate_classes
from .errors import (
    DomainError,
    PrimeSearchTimeout,
    ResourceLimitError,
)
from .ff_arith import is_prime

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4
EXIT_MISMATCH = 5


class UsageError(Exception):
    pass


def _load_catalog(args):
    path = args.catalog or os.environ.get("CM_REDUCE_CATALOG") or None
    return generator.catalog_load(path)


def format_poly(coeffs, var="T"):
    """Little-endian integer coefficients as a descending-power string."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


def _slopes_json(slopes):
    if slopes is None:
        return None
    return [str(s) for s in slopes]


def _slopes_text(slopes):
    if slopes is None:
        return "not computed"
    out = []
    i = 0
    while i < len(slopes):
        j = i
        while j < len(slopes) and slopes[j] == slopes[i]:
            j += 1
        run = f"{slopes[i]}" + (f" x{j - i}" if j - i > 1 else "")
        out.append(run)
        i = j
    return ", ".join(out)


def _profile_json(profile):
    if profile is None:
        return None
    return {
        "p_rank": profile.p_rank,
        "a_number": profile.a_number,
        "slopes": _slopes_json(profile.slopes),
        "group_scheme": profile.group_scheme,
        "type_name": profile.type_name,
    }


def _split_json(split):
    if split is None:
        return None
    return {
        "num_primes": split.num_primes,
        "inertia_degree": split.inertia_degree,
        "ramified": split.ramified,
    }


def _prediction_json(pred):
    if pred is None:
        return None
    return {
        "certainty": pred.certainty,
        "source": pred.source,
        "profile": _profile_json(pred.profile),
    }


def _curve_json(label, curve, field_label, provenance):
    return {
        "label": label,
        "genus": curve.genus,
        "f_coeffs": list(curve.coeffs),
        "field_label": field_label,
        "provenance": provenance,
    }


def cmd_count_types(args):
    if args.g < 1:
        raise UsageError("--g must be >= 1")
    total = count_E(args.g)
    prim = count_E_primitive(args.g)
    result = {"g": args.g}
    if args.primitive:
        result["primitive"] = prim
    else:
        result.update(total=total, primitive=prim, imprimitive=total - prim)
    lines = []
    if args.primitive:
        word = "class" if prim == 1 else "classes"
        lines.append(f"g = {args.g}: {prim} primitive {word}")
    else:
        word = "class" if total == 1 else "classes"
        lines.append(
            f"g = {args.g}: {total} {word}"
            f" ({prim} primitive, {total - prim} imprimitive)"
        )
    if args.enumerate:
        classes = enumerate_classes(args.g)
        if args.primitive:
            classes = [c for c in classes if c.primitive]
        result["classes"] = [
            {
                "extended": "".join(map(str, c.representative.extended)),
                "exponents": sorted(c.representative.exponents),
                "period": c.period,
                "primitive": c.primitive,
            }
            for c in classes
        ]
        for c in classes:
            tag = "primitive" if c.primitive else "imprimitive"
            ext = "".join(map(str, c.representative.extended))
            exps = ",".join(map(str, sorted(c.representative.exponents)))
            lines.append(f"  {ext}  period {c.period:>2}  {tag}  exponents {{{exps}}}")
    return result, lines, EXIT_OK


def cmd_split(args):
    catalog = _load_catalog(args)
    field = catalog.field(args.field)
    p = args.p
    if p < 2 or not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    method = args.method
    if method == "stickelberger":
        parity = splitting.stickelberger_parity(field, p)
        result = {"field": field.label, "p": p, "method": method, "parity": parity}
        word = "odd" if parity else "even"
        return result, [f"p = {p} in {field.label}: number of primes is {word}"], EXIT_OK
    if method == "residue":
        split = splitting.split_by_residue(field, p)
    elif method == "factor":
        split = splitting.split_by_factorization(field, p)
    elif field.conductor is not None:
        method = "residue"
        split = splitting.split_by_residue(field, p)
    else:
        method = "factor"
        split = splitting.split_by_factorization(field, p)
    result = {"field": field.label, "p": p, "method": method}
    result.update(_split_json(split))
    shape = {1: "inert"}.get(split.num_primes, f"{split.num_primes} primes")
    lines = [
        f"p = {p} in {field.label} ({method}): {shape},"
        f" inertia degree {split.inertia_degree}"
    ]
    return result, lines, EXIT_OK


def cmd_invariants(args):
    catalog = _load_catalog(args)
    record = catalog.record(args.curve)
    if args.p >= generator.VERIFY_CAP:
        raise ResourceLimitError(
            f"invariants: p must be below {generator.VERIFY_CAP}"
        )
    curve = generator.reduce_curve(record, args.p)
    profile = invariants.reduction_profile(curve)
    lpoly = None
    if curve.p**curve.genus <= invariants.SLOPE_BUDGET:
        lpoly = invariants.l_polynomial(curve)
    result = {
        "curve": record.label,
        "p": args.p,
        "genus": curve.genus,
        "f_coeffs_mod_p": list(curve.coeffs),
        "p_rank": profile.p_rank,
        "a_number": profile.a_number,
        "slopes": _slopes_json(profile.slopes),
        "l_polynomial": lpoly,
        "group_scheme": profile.group_scheme,
        "type_name": profile.type_name,
    }
    lines = [
        f"{record.label} at p = {args.p}: genus {curve.genus}",
        f"  p-rank {profile.p_rank}, a-number {profile.a_number}",
        f"  slopes: {_slopes_text(profile.slopes)}",
    ]
    if lpoly is not None:
        lines.append(f"  L(T) = {format_poly(lpoly)}")
    lines.append(f"  group scheme {profile.group_scheme} ({profile.type_name})")
    return result, lines, EXIT_OK


def cmd_generate(args):
    catalog = _load_catalog(args)
    record = catalog.record(args.curve)
    out = generator.generate(record, args.type, args.bits, seed=args.seed)
    reduced_label = f"{record.label}-mod-p"
    result = {
        "curve": record.label,
        "target_type": out.target_type,
        "bits": args.bits,
        "seed": args.seed,
        "p": out.p,
        "reduced_curve": _curve_json(
            reduced_label,
            out.curve,
            record.field.label,
            f"reduction of {record.label} at a generated prime",
        ),
        "prediction": _prediction_json(out.prediction),
        "verified_profile": _profile_json(out.verified_profile),
    }
    lines = [
        f"{record.label}, target {out.target_type}, {args.bits} bits, seed {args.seed}",
        f"p = {out.p}",
        f"reduced: y^2 = {format_poly(out.curve.coeffs, var='x')}",
    ]
    pred = out.prediction
    if pred.profile is not None:
        lines.append(
            f"prediction: ({pred.profile.p_rank}, {pred.profile.a_number})"
            f" {pred.profile.type_name} [{pred.certainty}: {pred.source}]"
        )
    else:
        lines.append(f"prediction: undetermined [{pred.source}]")
    if out.verified_profile is not None:
        v = out.verified_profile
        lines.append(
            f"verified: p-rank {v.p_rank}, a-number {v.a_number},"
            f" group scheme {v.group_scheme}"
        )
    else:
        lines.append("verified: skipped (p >= 2^20)")
    return result, lines, EXIT_OK


def cmd_verify(args):
    catalog = _load_catalog(args)
    record = catalog.record(args.curve)
    if args.p is not None:
        reports = [generator.verify(record, args.p)]
        bad = ()
        pmax = args.p
    else:
        res = generator.sweep(record, args.pmax)
        reports = list(res.reports)
        bad = res.bad_primes
        pmax = args.pmax
    rows = []
    lines = []
    mismatches = []
    verified = 0
    for r in reports:
        pred_fa = None
        if r.prediction is not None and r.prediction.profile is not None:
            pred_fa = [r.prediction.profile.p_rank, r.prediction.profile.a_number]
        rows.append(
            {
                "p": r.p,
                "splitting": _split_json(r.splitting),
                "predicted": pred_fa,
                "computed": [r.profile.p_rank, r.profile.a_number],
                "slopes": _slopes_json(r.profile.slopes),
                "group_scheme": r.profile.group_scheme,
                "match": r.match,
                "notes": list(r.notes),
            }
        )
        if r.match is False:
            mismatches.append(r.p)
        if r.match is not None:
            verified += 1
        shape = "-" if r.splitting is None else f"l={r.splitting.num_primes}"
        pred_txt = "-" if pred_fa is None else f"({pred_fa[0]},{pred_fa[1]})"
        comp_txt = f"({r.profile.p_rank},{r.profile.a_number})"
        if r.match is None:
            flag = "skip"
        else:
            flag = "ok" if r.match else "MISMATCH"
        lines.append(
            f"  p={r.p:<7} {shape:<5} predicted {pred_txt:<6}"
            f" computed {comp_txt:<6} {flag}"
        )
    summary = f"{verified} verified, {len(mismatches)} mismatches"
    if bad:
        summary += f"; bad reduction at {', '.join(map(str, bad))}"
    lines.append(summary)
    result = {
        "curve": record.label,
        "pmax": pmax,
        "rows": rows,
        "bad_reduction": list(bad),
        "verified": verified,
        "mismatches": mismatches,
    }
    code = EXIT_MISMATCH if mismatches else EXIT_OK
    return result, lines, code


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cmreduce",
        description="Predict and verify reduction types of CM curves.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--catalog",
        default=None,
        help="catalog file (default: packaged; env CM_REDUCE_CATALOG)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count-types", parents=[common],
                       help="count CM type classes at half-degree g")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--primitive", action="store_true",
                   help="primitive classes only")
    p.add_argument("--enumerate", action="store_true",
                   help="list canonical representatives")
    p.set_defaults(func=cmd_count_types)

    p = sub.add_parser("split", parents=[common],
                       help="splitting type of a prime in a catalog field")
    p.add_argument("--field", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=["residue", "factor", "stickelberger", "auto"],
                   default="auto")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("invariants", parents=[common],
                       help="computed invariants of a catalog curve mod p")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("generate", parents=[common],
                       help="find a prime giving a requested reduction type")
    p.add_argument("--curve", required=True)
    p.add_argument("--type", required=True,
                   help="ordinary, superspecial, supersingular, ssing-non-sspec")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[common],
                       help="sweep predictions against computed invariants")
    p.add_argument("--curve", required=True)
    p.add_argument("--pmax", type=int, default=300)
    p.add_argument("--p", type=int, default=None,
                   help="verify a single prime instead of sweeping")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(args, command, result, lines, code):
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)
    return code


def _emit_error(args, command, exc, code):
    print(f"error: {exc}", file=sys.stderr)
    if getattr(args, "json", False):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(doc, indent=2))
    return code


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, lines, code = args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except (ResourceLimitError, PrimeSearchTimeout) as e:
        return _emit_error(args, args.command, e, EXIT_RESOURCE)
    except DomainError as e:
        return _emit_error(args, args.command, e, EXIT_DOMAIN)
    return _emit(args, args.command, result, lines, code)


if __name__ == "__main__":
    sys.exit(main())
