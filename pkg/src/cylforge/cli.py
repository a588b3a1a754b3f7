"""Command-line interface.

Exit codes: 0 success/true, 1 false or negative verdict, 2 unknown or
unverified, 3 input error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificates import verify_certificate
from .corpus import corpus_cases, get_case, run_case
from .cylinder import (DEFAULT_BOUND, cyclic_quotient, polar_cylinder, positive_degree_slice,
                       slice_construct, veronese_cylinder)
from .dpd import (QDivisor, cylindricity_spectrum, h0_floor, liendo_cylindrical, pham_brieskorn,
                  veronese_cylindrical_pb)
from .errors import (ConstructionError, CylforgeError, InconsistencyError, InputError,
                     ResourceCapError)
from .graded import GradedDomain, check_prime, validate, veronese
from .lnd import (DEFAULT_NILPOTENCY_CAP, check_derivation, is_locally_nilpotent, kernel_generators,
                  kernel_piece, kernel_saturation_index, replica)
from .problem import Problem, load_json, problem_from_json

OK, FALSE, UNKNOWN, INPUT, RESOURCE = 0, 1, 2, 3, 4


# --------------------------------------------------------------------------------------
# rendering


def _canonical(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def render_json(obj) -> str:
    return json.dumps(_canonical(obj), sort_keys=True, indent=2, ensure_ascii=False)


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(obj, mode: str, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write((render_json(obj) if mode == "json" else render_text(_canonical(obj))) + "\n")


# --------------------------------------------------------------------------------------
# inputs


def _split_list(text: str, what: str) -> list[str]:
    items = [t.strip() for t in text.split(",")]
    if not all(items):
        raise InputError(f"empty entry in {what} list {text!r}")
    return items


def _parse_der(A: GradedDomain, text: str):
    parts = _split_list(text, "derivation")
    if all("=" in p for p in parts):
        mapping = {}
        for p in parts:
            name, _, image = p.partition("=")
            mapping[name.strip()] = image.strip()
        return check_derivation(A, mapping)
    if any("=" in p for p in parts):
        raise InputError("derivation: use either 'x=...,y=...' or positional images, not both")
    return check_derivation(A, parts)


def load_problem_args(args, need_derivation: bool = False) -> Problem:
    if args.problem:
        if args.vars or args.weights:
            raise InputError("give either --problem or --vars/--weights, not both")
        problem = problem_from_json(load_json(args.problem))
    else:
        if not args.vars or not args.weights:
            raise InputError("a ring is required: --problem FILE or --vars and --weights")
        names = _split_list(args.vars, "variable")
        try:
            weights = [int(w) for w in _split_list(args.weights, "weight")]
        except ValueError:
            raise InputError(f"weights must be integers: {args.weights!r}") from None
        problem = Problem(GradedDomain(names, weights, args.rel or []))
    if getattr(args, "der", None):
        problem.derivation = _parse_der(problem.ring, args.der)
    if need_derivation:
        problem.require_derivation()
    return problem


def _param(args, problem: Problem, name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return problem.params.get(name, default)


def _divisor_from_args(args) -> QDivisor:
    if args.pb and args.divisor:
        raise InputError("give either --pb or --divisor")
    if args.pb:
        H = pham_brieskorn(*args.pb).H
    elif args.divisor:
        text = args.divisor
        data = load_json(text) if Path(text).is_file() else _json_arg(text)
        H = QDivisor.from_json(data)
    else:
        raise InputError("a divisor is required: --pb A B C or --divisor JSON")
    if getattr(args, "scale", None):
        H = _fraction(args.scale) * H
    return H


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at column {exc.colno}: {exc.msg}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {text!r}") from None


def _write_certificate(args, cert: dict) -> None:
    if getattr(args, "certificate", None):
        Path(args.certificate).write_text(render_json(cert) + "\n", encoding="utf-8")


# --------------------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    problem = load_problem_args(args)
    rep = validate(problem.ring)
    out = rep.to_json()
    valid = rep.valid
    if args.check_prime and valid:
        prime = check_prime(problem.ring, args.prime_degree)
        out["prime_check"] = prime.to_json()
        valid = prime.status != "zero_divisor"
        out["valid"] = valid
    return out, OK if valid else FALSE


def cmd_lnd_check(args):
    problem = load_problem_args(args, need_derivation=True)
    D = problem.derivation
    verdict = is_locally_nilpotent(D, _param(args, problem, "cap", DEFAULT_NILPOTENCY_CAP))
    out = verdict.to_json()
    out["derivation"] = D.to_json()
    out["components"] = [{"degree": deg, "images": c.to_json()} for deg, c in D.components]
    code = {"nilpotent": OK, "not_nilpotent": FALSE}.get(verdict.status, UNKNOWN)
    return out, code


def cmd_kernel(args):
    problem = load_problem_args(args, need_derivation=True)
    D = problem.derivation
    bound = _param(args, problem, "bound", DEFAULT_BOUND)
    if args.degree is not None:
        return {"degree": args.degree,
                "basis": [str(b) for b in kernel_piece(D, args.degree)]}, OK
    idx = kernel_saturation_index(D, bound)
    out = {"saturation_index": idx.to_json(),
           "generators": [{"poly": str(g), "degree": deg}
                          for g, deg in kernel_generators(D, _param(args, problem, "gen_bound", 12))]}
    if args.replica:
        out["replica"] = replica(D, args.replica, bound).to_json()
    return out, OK if idx.certified else UNKNOWN


def cmd_slice(args):
    problem = load_problem_args(args, need_derivation=True)
    build = positive_degree_slice if args.positive else slice_construct
    cert = build(problem.derivation, _param(args, problem, "bound", DEFAULT_BOUND),
                 verified_degree=_param(args, problem, "verified_degree", 20))
    data = cert.to_json()
    checks = cert.checks()
    _write_certificate(args, data)
    return {"certificate": data, "checks": checks}, OK if all(checks.values()) else UNKNOWN


def cmd_cyclic_quotient(args):
    problem = load_problem_args(args, need_derivation=True)
    if not args.h:
        raise InputError("--h is required")
    data = cyclic_quotient(problem.derivation, problem.ring.element(args.h),
                           _param(args, problem, "bound", 30))
    out = data.to_json()
    _write_certificate(args, out)
    return out, OK if data.consistent else UNKNOWN


def cmd_polar_cylinder(args):
    problem = load_problem_args(args, need_derivation=True)
    A = problem.ring
    cert = polar_cylinder(problem.derivation,
                          h=A.element(args.h) if args.h else None,
                          g=A.element(args.g) if args.g else None,
                          bound=_param(args, problem, "bound", DEFAULT_BOUND),
                          verified_degree=_param(args, problem, "verified_degree", 40),
                          require_domain_fiber=not args.allow_reducible_fiber)
    data = cert.to_json()
    _write_certificate(args, data)
    return data, OK if all(cert.report["checks"].values()) else UNKNOWN


def cmd_veronese(args):
    problem = load_problem_args(args)
    rep = veronese(problem.ring, args.d, _param(args, problem, "bound", None))
    data = rep.to_json()
    _write_certificate(args, data)
    return data, OK if rep.verified else UNKNOWN


def cmd_dpd(args):
    action = args.action
    if action == "pb":
        if not args.pb:
            raise InputError("dpd pb needs --pb A B C")
        return pham_brieskorn(*args.pb).to_json(), OK
    if action == "veronese-pb":
        if not args.pb or args.d is None:
            raise InputError("dpd veronese-pb needs --pb A B C and --d")
        value = veronese_cylindrical_pb(*args.pb, args.d)
        return {"cylindrical": value, "d": args.d, "pb": list(args.pb)}, OK if value else FALSE
    H = _divisor_from_args(args)
    if action == "h0":
        if args.nu is None:
            raise InputError("dpd h0 needs --nu")
        return {"H": H.to_json(), "nu": args.nu, "h0": h0_floor(H, args.nu)}, OK
    if action == "liendo":
        value = liendo_cylindrical(H)
        return {"H": H.to_json(), "fractional_part": H.fractional_part().to_json(),
                "cylindrical": value}, OK if value else FALSE
    if action == "cylinder":
        if args.point is None or args.p is None or args.q is None:
            raise InputError("dpd cylinder needs --point, --p and --q")
        v = veronese_cylinder(H, args.point, args.p, args.q)
        data = v.to_json()
        _write_certificate(args, data)
        return {"certificate": data, "checks": v.checks()}, OK if v.verify() else FALSE
    raise InputError(f"unknown dpd action {action!r}")


def cmd_spectrum(args):
    H = _divisor_from_args(args)
    rep = cylindricity_spectrum(H, args.max_num, args.max_den)
    data = rep.to_json()
    _write_certificate(args, data)
    return data, OK


def cmd_verify(args):
    outcome = verify_certificate(load_json(args.file))
    return outcome.to_json(), OK if outcome.ok else FALSE


def cmd_corpus(args):
    if args.action == "list":
        return [{"id": c.id, "description": c.description, "checks": len(c.checks)}
                for c in corpus_cases()], OK
    cases = corpus_cases() if args.case in (None, "all") else [get_case(args.case)]
    report = []
    for case in cases:
        outcomes = run_case(case)
        failed = [o.to_json() for o in outcomes if not o.passed]
        report.append({"id": case.id, "passed": not failed, "checks": len(outcomes),
                       "failures": failed})
        if failed:
            return {"cases": report, "passed": False}, FALSE
    return {"cases": report, "passed": True}, OK


# --------------------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "text"], default="json")

    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("--problem", help="problem file (JSON with ring, derivation, params)")
    ring.add_argument("--vars", help="comma-separated variable names")
    ring.add_argument("--weights", help="comma-separated positive weights")
    ring.add_argument("--rel", action="append", help="relation (repeatable)")

    der = argparse.ArgumentParser(add_help=False)
    der.add_argument("--der", help="derivation images: 'x=0,y=0,z=1' or '0,0,1'")

    cert = argparse.ArgumentParser(add_help=False)
    cert.add_argument("--certificate", help="write the certificate JSON to this path")

    divisor = argparse.ArgumentParser(add_help=False)
    divisor.add_argument("--pb", type=int, nargs=3, metavar=("A", "B", "C"),
                         help="Pham-Brieskorn divisor of x^A + y^B + z^C")
    divisor.add_argument("--divisor", help="divisor JSON or file with points and coeffs")
    divisor.add_argument("--scale", help="multiply the divisor by this rational")

    parser = argparse.ArgumentParser(prog="cylforge", description=__doc__.splitlines()[0],
                                     parents=[common])
    parser.add_argument("--version", action="version", version=f"cylforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, ring], help="check a graded domain")
    p.add_argument("--check-prime", dest="check_prime", action="store_true",
                   help="bounded search for zero divisors")
    p.add_argument("--prime-degree", dest="prime_degree", type=int, default=6)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lnd-check", parents=[common, ring, der], help="local nilpotency verdict")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_lnd_check)

    p = sub.add_parser("kernel", parents=[common, ring, der], help="kernel pieces and e(A^D)")
    p.add_argument("--degree", type=int, help="only the kernel piece of this degree")
    p.add_argument("--bound", type=int)
    p.add_argument("--gen-bound", dest="gen_bound", type=int)
    p.add_argument("--replica", type=int, metavar="M", help="also find a replica for A^(M)")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("slice", parents=[common, ring, der, cert], help="slice certificate")
    p.add_argument("--positive", action="store_true", help="force deg h > 0")
    p.add_argument("--bound", type=int)
    p.add_argument("--verified-degree", dest="verified_degree", type=int)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("cyclic-quotient", parents=[common, ring, der, cert],
                       help="F = A/(h-1) with its cyclic grading")
    p.add_argument("--h", help="homogeneous kernel element of positive degree")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_cyclic_quotient)

    p = sub.add_parser("polar-cylinder", parents=[common, ring, der, cert],
                       help="polar cylinder certificate")
    p.add_argument("--h", help="designated kernel element h")
    p.add_argument("--g", help="designated g with D g = h")
    p.add_argument("--allow-reducible-fiber", action="store_true")
    p.add_argument("--bound", type=int)
    p.add_argument("--verified-degree", dest="verified_degree", type=int)
    p.set_defaults(func=cmd_polar_cylinder)

    p = sub.add_parser("veronese", parents=[common, ring, cert], help="Veronese subalgebra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_veronese)

    p = sub.add_parser("dpd", parents=[common, divisor, cert], help="divisors on P^1")
    p.add_argument("action", choices=["pb", "h0", "liendo", "veronese-pb", "cylinder"])
    p.add_argument("--nu", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--point")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_dpd)

    p = sub.add_parser("spectrum", parents=[common, divisor, cert], help="cylindricity spectrum")
    p.add_argument("--max-num", dest="max_num", type=int, default=100)
    p.add_argument("--max-den", dest="max_den", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="bundled example cases")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("case", nargs="?", default="all")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code not in (0, None) else OK
    mode = args.output
    try:
        payload, code = args.func(args)
    except InputError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, INPUT
    except ResourceCapError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, RESOURCE
    except ConstructionError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, FALSE
    except InconsistencyError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, UNKNOWN
    except CylforgeError as exc:
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, UNKNOWN
    if isinstance(payload, dict) and "error" in payload:
        print(f"error: {payload['message']}", file=sys.stderr)
    emit(payload, mode)
    return code


if __name__ == "__main__":
    sys.exit(main())
