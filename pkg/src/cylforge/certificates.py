"""Re-checking serialized certificates without repeating any search."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cylinder import (PolarData, SliceCertificate, check_fiber, fiber_presentation,
                       verify_polar, veronese_cylinder)
from .dpd import QDivisor, SpectrumWitness, parse_point
from .errors import InputError
from .exactalg import normal_form, nullspace
from .graded import GradedDomain, hilbert_dim
from .lnd import check_derivation

KINDS = ("slice", "polar_cylinder", "cyclic_quotient", "spectrum", "veronese_cylinder", "veronese")


@dataclass
class VerifyOutcome:
    kind: str
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "checks": self.checks}


def _field(data: dict, key: str):
    try:
        return data[key]
    except KeyError:
        raise InputError(f"certificate is missing {key!r}") from None


def _ring_and_derivation(data: dict):
    A = GradedDomain.from_json(_field(data, "ring"))
    D = check_derivation(A, _field(data, "derivation"))
    return A, D


def verify_slice(data: dict) -> dict[str, bool]:
    A, D = _ring_and_derivation(data)
    cert = SliceCertificate(D, A.element(_field(data, "g")), A.element(_field(data, "h")),
                            [A.element(k) for k in data.get("kernel_generators", [])],
                            int(_field(data, "verified_degree")))
    return cert.checks()


def verify_polar_data(data: dict) -> dict[str, bool]:
    A, D = _ring_and_derivation(data)
    el = A.element
    x = PolarData(D, el(data["g"]), el(data["h0"]), el(data["h"]), int(data["l"]),
                  Fraction(data["unit"]), el(data["t"]), int(data["k"]), int(data["m"]),
                  int(data["d"]), int(data["r"]), int(data["alpha"]), int(data["E"]))
    report = verify_polar(x, int(_field(data, "verified_degree")))
    checks = dict(report["checks"])
    L = x.localization()
    checks["f_equals_h_t"] = not A.nf(el(data["f"]) - x.f).terms
    checks["s1_matches"] = L.format(x.s1(L)) == data.get("s1")
    checks["coordinate_ring_flag"] = report["coordinate_ring_trivial"] == data.get(
        "coordinate_ring_trivial")
    checks["k_d_m_consistent"] = (x.d % x.m == x.r and x.h.degree() == x.m
                                  and x.t.degree() == x.k + x.alpha * x.m)
    return checks


def verify_cyclic(data: dict) -> dict[str, bool]:
    A, D = _ring_and_derivation(data)
    h = A.element(data["h"])
    m = int(data["m"])
    gb = fiber_presentation(A, h)
    checks = {
        "h_in_kernel": not D(h).terms and h.degree() == m,
        "presentation": [str(p) for p in gb] == data["F_presentation"]["relations"],
        "labels": data["F_presentation"]["labels"] == {v: w % m for v, w in zip(A.variables, A.weights)},
        "fiber_status": check_fiber(A, gb).status == data["fiber"]["status"],
    }
    residues = set()
    for nu in range(int(data["bound"]) + 1):
        basis = A.basis(nu)
        for vec in nullspace([dict(normal_form(D(b), gb).terms) for b in basis]):
            elem = normal_form(sum((basis[i].scale(c) for i, c in vec.items()), A.ring.zero()), gb)
            if elem.terms:
                residues.add(nu % m)
                break
    checks["kernel_residues"] = sorted(residues) == data["kernel_residues"]
    checks["n_k"] = len(residues) == data["n"] and m == data["n"] * data["k"]
    checks["k_equals_e"] = data["k"] == data["e_kernel"] if data.get("consistent") else True
    for item in data.get("F0_generators", []):
        image = A.element(item["image"])
        checks.setdefault("F0_images_reduced", True)
        checks["F0_images_reduced"] &= normal_form(image, gb) == image
    return checks


def verify_spectrum(data: dict) -> dict[str, bool]:
    H = QDivisor.from_json(_field(data, "H"))
    members = [SpectrumWitness(Fraction(w["r"]), parse_point(w["point"]), QDivisor.from_json(w["D"]))
               for w in data["members"]]
    values = [w.r for w in members]
    valueset = set(values)
    bound = data["tested_bound"]
    primitive = [r for r in values if not any(s != r and (r / s).denominator == 1 for s in values)]
    closed = all(
        n * r in valueset
        for r in values for n in range(2, bound["max_num"] + 1)
        if (n * r).numerator <= bound["max_num"] and (n * r).denominator <= bound["max_den"]
    )
    return {
        "witnesses": all(w.verify(H) for w in members),
        "primitive_members": [str(r) for r in primitive] == data["primitive_members"],
        "primitive_count": len(primitive) == data["primitive_count"],
        "closed_under_multiples": closed,
    }


def verify_veronese_cylinder(data: dict) -> dict[str, bool]:
    H = QDivisor.from_json(_field(data, "H"))
    v = veronese_cylinder(H, data["point"], int(data["p"]), int(data["q"]))
    checks = v.checks()
    checks["matches_recorded"] = v.to_json() == data
    return checks


def verify_veronese(data: dict) -> dict[str, bool]:
    A = GradedDomain.from_json(_field(data, "ring"))
    d = int(data["d"])
    gens = [(A.element(g["poly"]), int(g["degree"])) for g in data["generators"]]
    names = data["presentation_variables"]
    P = GradedDomain(names, [deg // d for _, deg in gens], data["relations"])
    images = [g for g, _ in gens]
    checks = {
        "generators_homogeneous": all(g.is_homogeneous() and g.degree() == deg and deg % d == 0
                                      for g, deg in gens),
        "relations_vanish": all(not A.nf(r.substitute(images, A.ring)).terms for r in P.relations),
    }
    top = int(data["verified_up_to"]) // d
    checks["hilbert_match"] = all(hilbert_dim(P, nu) == hilbert_dim(A, nu * d) for nu in range(top + 1))
    return checks


_VERIFIERS = {
    "slice": verify_slice,
    "polar_cylinder": verify_polar_data,
    "cyclic_quotient": verify_cyclic,
    "spectrum": verify_spectrum,
    "veronese_cylinder": verify_veronese_cylinder,
    "veronese": verify_veronese,
}


def verify_certificate(data: dict) -> VerifyOutcome:
    if not isinstance(data, dict):
        raise InputError("a certificate must be a JSON object")
    kind = data.get("kind")
    if kind not in _VERIFIERS:
        raise InputError(f"unknown certificate kind {kind!r}; expected one of {list(KINDS)}")
    try:
        checks = _VERIFIERS[kind](data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed {kind} certificate: {exc}") from None
    return VerifyOutcome(kind, checks)
