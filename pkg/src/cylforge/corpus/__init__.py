"""Bundled example cases with tagged expectations.

Each ``*.json`` file in this package is one case::

    {"id": ..., "description": ..., "problem": {ring, derivation, params},
     "checks": [{"op": ..., "args": {...}, "expect": {...}, "tag": ...}, ...]}

A check passes when every key of ``expect`` equals the corresponding key of
the operation's result.  Expected errors are written ``{"error": "ClassName"}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from ..cylinder import (cyclic_quotient, polar_cylinder, positive_degree_slice, slice_construct,
                        veronese_cylinder)
from ..dpd import (QDivisor, cylindricity_spectrum, h0_floor, liendo_cylindrical, pham_brieskorn,
                   veronese_cylindrical_pb)
from ..errors import CylforgeError, InputError
from ..graded import (GradedDomain, evaluate_expression, hilbert_dim, subalgebra_member, validate,
                      veronese)
from ..lnd import (check_derivation, is_locally_nilpotent, kernel_piece, kernel_saturation_index,
                   principal_component, replica)
from ..problem import Problem, problem_from_json


@dataclass
class CorpusCase:
    id: str
    description: str
    problem: Problem | None
    checks: list[dict]
    raw: dict = field(repr=False, default_factory=dict)


def _load(name: str) -> CorpusCase:
    data = json.loads(resources.files(__name__).joinpath(name).read_text(encoding="utf-8"))
    problem = problem_from_json(data["problem"]) if data.get("problem") else None
    return CorpusCase(data["id"], data.get("description", ""), problem, data["checks"], data)


def corpus_cases() -> list[CorpusCase]:
    names = sorted(p.name for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))
    return sorted((_load(n) for n in names), key=lambda c: c.id)


def get_case(case_id: str) -> CorpusCase:
    for case in corpus_cases():
        if case.id == case_id:
            return case
    raise InputError(f"no corpus case {case_id!r}")


# --------------------------------------------------------------------------------------
# operations


def _divisor(args: dict) -> QDivisor:
    if "pb" in args:
        H = pham_brieskorn(*args["pb"]).H
    else:
        H = QDivisor.from_json(args["divisor"])
    if "scale" in args:
        H = Fraction(args["scale"]) * H
    return H


def _der(problem: Problem, args: dict):
    if "derivation" in args:
        return check_derivation(problem.ring, args["derivation"])
    return problem.require_derivation()


def op_validate(p: Problem, args: dict) -> dict:
    rep = validate(p.ring)
    return {"valid": rep.valid, "saturation_index": rep.saturation_index}


def op_hilbert(p: Problem, args: dict) -> dict:
    return {"dims": [hilbert_dim(p.ring, nu) for nu in range(args["nu_max"] + 1)]}


def op_lnd(p: Problem, args: dict) -> dict:
    v = is_locally_nilpotent(_der(p, args), args.get("cap", 200))
    return {"status": v.status, "reason": v.reason}


def op_principal_component(p: Problem, args: dict) -> dict:
    return {"images": principal_component(_der(p, args)).to_json()}


def op_kernel_piece(p: Problem, args: dict) -> dict:
    return {"basis": [str(b) for b in kernel_piece(_der(p, args), args["nu"])]}


def op_kernel_index(p: Problem, args: dict) -> dict:
    D = _der(p, args)
    idx = kernel_saturation_index(D, args.get("bound", 60))
    return {"e": idx.e, "certified": idx.certified,
            "gcd_with_degree": math.gcd(idx.e, -D.degree)}


def op_replica(p: Problem, args: dict) -> dict:
    r = replica(_der(p, args), args["m"], args.get("bound", 60))
    return {"a": str(r.a), "j": r.j, "degree": r.degree, "derivation": r.derivation.to_json()}


def _slice_result(cert) -> dict:
    return {"g": str(cert.g), "h": str(cert.h), "deg_h": cert.h.degree(), "verified": cert.verify(),
            "kernel_generators": [str(k) for k in cert.kernel_generators]}


def op_slice(p: Problem, args: dict) -> dict:
    return _slice_result(slice_construct(_der(p, args), verified_degree=args.get("verified_degree", 12)))


def op_positive_slice(p: Problem, args: dict) -> dict:
    return _slice_result(positive_degree_slice(_der(p, args),
                                               verified_degree=args.get("verified_degree", 12)))


def op_cyclic_quotient(p: Problem, args: dict) -> dict:
    data = cyclic_quotient(_der(p, args), p.ring.element(args["h"]), args.get("bound", 30))
    return {"m": data.m, "n": data.n, "k": data.k, "plain_n": len(data.plain_residues),
            "readings_agree": data.readings_agree, "consistent": data.consistent,
            "fiber": data.fiber.status,
            "F0_fractions": [f for f, _ in data.F0_generators],
            "F0_images": [i for _, i in data.F0_generators]}


def op_polar_cylinder(p: Problem, args: dict) -> dict:
    h = p.ring.element(args["h"]) if "h" in args else None
    cert = polar_cylinder(_der(p, args), h=h, verified_degree=args.get("verified_degree", 40),
                          require_domain_fiber=not args.get("allow_reducible_fiber", False))
    checks = cert.report["checks"]
    return {"s1": cert.s1, "f": str(cert.data.f), "k": cert.data.k, "r": cert.data.r,
            "alpha": cert.data.alpha,
            "coordinate_ring_trivial": cert.coordinate_ring_trivial,
            "coordinate_ring_generators": cert.coordinate_ring_generators,
            "verified": all(checks.values()), "fiber": cert.fiber.status}


def op_veronese(p: Problem, args: dict) -> dict:
    rep = veronese(p.ring, args["d"], args.get("bound"))
    return {"generators": [str(g) for g, _ in rep.generators],
            "generator_count": len(rep.generators), "relation_count": len(rep.relations),
            "relations": [str(r) for r in rep.relations], "verified": rep.verified}


def op_veronese_hilbert(p: Problem, args: dict) -> dict:
    out = {}
    for d in args["d"]:
        pres = veronese(p.ring, d).presentation()
        out[str(d)] = all(hilbert_dim(pres, nu) == hilbert_dim(p.ring, nu * d)
                          for nu in range(args["nu_max"] + 1))
    return {"match": out}


def _membership(p: Problem, element, gens) -> dict:
    A = p.ring
    gs = [A.element(g) for g in gens]
    res = subalgebra_member(A.element(element), gs, domain=A)
    out = {"status": res.status}
    if res.witness is not None:
        out["witness"] = str(res.witness)
    if res.expression is not None:
        out["expression"] = str(res.expression)
        out["re_evaluates"] = evaluate_expression(res.expression, gs, A) == A.element(element)
    return out


def op_membership(p: Problem, args: dict) -> dict:
    return _membership(p, args["element"], args["generators"])


def op_stabilizes(p: Problem, args: dict) -> dict:
    """Does the derivation map every generator of k[generators] back into it?"""
    D = _der(p, args)
    A = p.ring
    results = []
    for g in args["generators"]:
        image = D(A.element(g))
        r = _membership(p, str(image), args["generators"])
        r["generator"] = g
        r["image"] = str(image)
        results.append(r)
    failing = [r for r in results if r["status"] != "yes"]
    out = {"stabilizes": not failing,
           "all_re_evaluate": all(r.get("re_evaluates", True) for r in results),
           "results": results}
    if failing:
        out["witness"] = failing[0].get("witness")
    return out


def op_pb(p, args: dict) -> dict:
    pb = pham_brieskorn(*args["pb"])
    return {"alpha": pb.alpha, "beta": pb.beta, "gamma": pb.gamma, "degree": str(pb.H.degree),
            "H": pb.H.to_json()}


def op_liendo(p, args: dict) -> dict:
    return {"cylindrical": liendo_cylindrical(_divisor(args))}


def op_veronese_pb(p, args: dict) -> dict:
    a, b, c = args["pb"]
    lo, hi = args.get("d_range", [1, 50])
    ds = [d for d in range(lo, hi + 1) if veronese_cylindrical_pb(a, b, c, d)]
    pb = pham_brieskorn(a, b, c)
    agree = all(veronese_cylindrical_pb(a, b, c, d) == liendo_cylindrical(d * pb.H)
                == (d % a == 0 or d % b == 0 or d % c == 0) for d in range(lo, hi + 1))
    return {"cylindrical_d": ds, "agree": agree}


def op_h0_identity(p, args: dict) -> dict:
    out = {}
    for triple in args["triples"]:
        pb = pham_brieskorn(*triple)
        A = GradedDomain.from_json(pb.ring_json())
        out["-".join(map(str, triple))] = all(h0_floor(pb.H, nu) == hilbert_dim(A, nu)
                                              for nu in range(args["nu_max"] + 1))
    return {"match": out}


def op_spectrum(p, args: dict) -> dict:
    rep = cylindricity_spectrum(_divisor(args), args.get("max_num", 100), args.get("max_den", 10))
    return {"primitive": [str(r) for r in rep.primitive_members],
            "count": len(rep.primitive_members), "dense": rep.dense,
            "witnesses_verify": all(w.verify(rep.H) for w in rep.members)}


def op_veronese_cylinder(p, args: dict) -> dict:
    v = veronese_cylinder(_divisor(args), args["point"], args["p"], args["q"])
    return {"verified": v.verify(), "phi": v.phi, "s": v.s, "j": v.j, "liendo_pH": v.liendo_pH}


OPS = {
    "validate": op_validate, "hilbert": op_hilbert, "lnd": op_lnd,
    "principal_component": op_principal_component, "kernel_piece": op_kernel_piece,
    "kernel_index": op_kernel_index, "replica": op_replica, "slice": op_slice,
    "positive_slice": op_positive_slice, "cyclic_quotient": op_cyclic_quotient,
    "polar_cylinder": op_polar_cylinder, "veronese": op_veronese,
    "veronese_hilbert": op_veronese_hilbert, "membership": op_membership,
    "stabilizes": op_stabilizes, "pb": op_pb, "liendo": op_liendo, "veronese_pb": op_veronese_pb,
    "h0_identity": op_h0_identity, "spectrum": op_spectrum,
    "veronese_cylinder": op_veronese_cylinder,
}


@dataclass
class CheckOutcome:
    case: str
    op: str
    tag: str
    passed: bool
    diff: dict

    def to_json(self) -> dict:
        return {"case": self.case, "op": self.op, "tag": self.tag, "passed": self.passed,
                "diff": self.diff}


def run_check(case: CorpusCase, check: dict) -> CheckOutcome:
    op = check["op"]
    if op not in OPS:
        raise InputError(f"case {case.id}: unknown op {op!r}")
    args = check.get("args", {})
    try:
        result = OPS[op](case.problem, args)
    except CylforgeError as exc:
        result = {"error": type(exc).__name__, "message": str(exc)}
    diff = {k: {"expected": v, "actual": result.get(k)}
            for k, v in check["expect"].items() if result.get(k) != v}
    return CheckOutcome(case.id, op, check.get("tag", ""), not diff, diff)


def run_case(case: CorpusCase) -> list[CheckOutcome]:
    return [run_check(case, c) for c in case.checks]
