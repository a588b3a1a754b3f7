"""Acceptance criteria, one test each.

Every test records a one-line verdict; ``conftest.py`` prints them after the
run as ``criterion N: PASS|FAIL  <summary>``.
"""

import json
import math
import random
from fractions import Fraction

import pytest

from cylforge.cli import main
from cylforge.corpus import corpus_cases
from cylforge.cylinder import cyclic_quotient, polar_cylinder, slice_construct
from cylforge.dpd import (cylindricity_spectrum, h0_floor, liendo_cylindrical, pham_brieskorn,
                          veronese_cylindrical_pb)
from cylforge.graded import GradedDomain, evaluate_expression, hilbert_dim, subalgebra_member, veronese
from cylforge.lnd import (Derivation, check_derivation, is_locally_nilpotent, kernel_piece,
                          kernel_saturation_index)


def criterion(n, summary):
    def wrap(fn):
        fn.criterion = (n, summary)
        return pytest.mark.acceptance(n)(fn)
    return wrap


def corpus_lnds() -> list[Derivation]:
    out, seen = [], set()
    for case in corpus_cases():
        if case.problem is None:
            continue
        images = []
        if case.problem.derivation is not None:
            images.append(case.problem.derivation.to_json())
        images += [c["args"]["derivation"] for c in case.checks if "derivation" in c.get("args", {})]
        for im in images:
            D = check_derivation(case.problem.ring, im)
            key = (json.dumps(case.problem.ring.to_json(), sort_keys=True), json.dumps(im, sort_keys=True))
            if key in seen or not D.is_homogeneous():
                continue
            if is_locally_nilpotent(D).status == "nilpotent":
                seen.add(key)
                out.append(D)
    return out


@criterion(1, "Ex 2.3: s = z, deg h = 0, Hilbert dims match k[t^2,t^3][z] up to 30")
def test_criterion_1():
    A = GradedDomain(["x", "y", "z"], [3, 2, 1], ["x^2 - y^3"])
    cert = slice_construct(check_derivation(A, ["0", "0", "1"]))
    assert str(cert.g) == "z" and str(cert.h) == "1" and cert.h.degree() == 0
    assert cert.verify()
    # monomials t^a z^b with a != 1 and a + b = nu
    assert all(hilbert_dim(A, nu) == sum(1 for a in range(nu + 1) if a != 1) for nu in range(31))


@criterion(2, "Ex 2.7: e(A^D) = 2, n = 1, k = 2, F_[0] = k[y^2/x], polar cylinder verified to 40")
def test_criterion_2():
    A = GradedDomain(["x", "y"], [2, 1])
    D = check_derivation(A, ["0", "1"])
    assert kernel_saturation_index(D).e == 2
    data = cyclic_quotient(D, A.ring.parse("x"))
    assert (data.n, data.k) == (1, 2)
    assert data.F0_generators == [("(y^2)/(x)", "y^2")]
    cert = polar_cylinder(D, verified_degree=40)
    assert cert.s1 == "y^2/x" and cert.coordinate_ring_trivial
    assert all(cert.report["checks"].values()) and cert.verified_degree == 40


@criterion(3, "Pham-Brieskorn (2,3,7): Liendo false; Veronese criteria agree for d in [1,50]")
def test_criterion_3():
    H = pham_brieskorn(2, 3, 7).H
    assert liendo_cylindrical(H) is False
    for d in range(1, 51):
        expected = d % 2 == 0 or d % 3 == 0 or d % 7 == 0
        assert veronese_cylindrical_pb(2, 3, 7, d) == liendo_cylindrical(d * H) == expected


@criterion(4, "DPD identity h0(floor(nu H)) = dim A_nu for nu <= 100 on (2,3,5), (2,3,7), (3,4,5)")
def test_criterion_4():
    for triple in [(2, 3, 5), (2, 3, 7), (3, 4, 5)]:
        pb = pham_brieskorn(*triple)
        A = GradedDomain.from_json(pb.ring_json())
        for nu in range(101):
            assert h0_floor(pb.H, nu) == hilbert_dim(A, nu), (triple, nu)


@criterion(5, "Spectrum (2,3,7): 3 primitive members, witnesses verify, closed under multiples")
def test_criterion_5():
    rep = cylindricity_spectrum(pham_brieskorn(2, 3, 7).H, 100, 10)
    assert len(rep.primitive_members) == 3
    assert all(w.verify(rep.H) for w in rep.members)
    values = set(rep.member_values())
    for r in values:
        n = 2
        while (n * r).numerator <= 100:
            if (n * r).denominator <= 10:
                assert n * r in values
            n += 1


@criterion(6, "gcd(e(A^D), -deg D) = 1 for every homogeneous corpus LND (at least 5)")
def test_criterion_6():
    lnds = corpus_lnds()
    assert len(lnds) >= 5
    for D in lnds:
        idx = kernel_saturation_index(D)
        assert idx.certified
        assert math.gcd(idx.e, -D.degree) == 1, D.to_json()


@criterion(7, "Ex 3.8: y d/dx leaves B (witness x^2 y); y^3 d/dx stabilizes B with explicit expressions")
def test_criterion_7():
    A = GradedDomain(["x", "y"], [1, 1])
    gens = [A.ring.parse(g) for g in ["x^2", "x*y", "y^2", "x^3", "y^3"]]
    D = check_derivation(A, ["y", "0"])
    res = subalgebra_member(D(A.ring.parse("x^3")), gens, domain=A)
    assert res.status == "no" and str(res.witness) == "x^2*y"
    E = check_derivation(A, ["y^3", "0"])
    for g in gens:
        image = E(g)
        res = subalgebra_member(image, gens, domain=A)
        assert res.status == "yes"
        assert evaluate_expression(res.expression, gens, A) == image


def _random_kernel_element(rng, D, max_degree=4):
    A = D.domain
    for _ in range(50):
        nu = rng.randint(0, max_degree)
        piece = kernel_piece(D, nu) if nu else [A.ring.one()]
        if piece:
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in piece]
            a = sum((p.scale(c) for p, c in zip(piece, coeffs)), A.ring.zero())
            if a.terms:
                return A.nf(a)
    return A.ring.one()


@criterion(8, "100 randomized slice certificates: D s = 1 and Taylor projection exact; verify exits 0")
def test_criterion_8(tmp_path, capsys):
    rng = random.Random(20261016)
    lnds = corpus_lnds()
    for i in range(100):
        base = rng.choice(lnds)
        a = _random_kernel_element(rng, base)
        D = check_derivation(base.domain, [a * base(v) for v in base.domain.ring.gens()])
        cert = slice_construct(D, kernel_bound=4, verified_degree=6)
        checks = cert.checks()
        assert checks["dg_equals_h"] and checks["dh_zero"] and checks["slice_identity"]
        assert checks["taylor_projection"]
        path = tmp_path / f"slice-{i}.json"
        path.write_text(json.dumps(cert.to_json()))
        assert main(["verify", str(path)]) == 0
    capsys.readouterr()
    # certificates written by the other subcommands
    writers = [
        ["polar-cylinder", "--vars", "x,y", "--weights", "2,1", "--der", "0,1"],
        ["cyclic-quotient", "--vars", "x,y", "--weights", "2,1", "--der", "0,1", "--h", "x"],
        ["veronese", "--vars", "x,y", "--weights", "1,1", "--d", "2"],
        ["spectrum", "--pb", "2", "3", "7"],
        ["dpd", "cylinder", "--pb", "2", "3", "7", "--point", "inf", "--p", "6", "--q", "1"],
        ["slice", "--vars", "x,y,z", "--weights", "3,2,1", "--rel", "x^2-y^3", "--der", "0,0,1",
         "--positive"],
    ]
    for j, argv in enumerate(writers):
        path = tmp_path / f"cert-{j}.json"
        assert main(argv + ["--certificate", str(path)]) == 0
        assert main(["verify", str(path)]) == 0
    capsys.readouterr()


@criterion(9, "Veronese: dim A^(d)_nu = dim A_(nu d) for d in {2,3}, nu <= 15; k[x,y]^(2) has 3 gens, 1 rel")
def test_criterion_9():
    rings = [GradedDomain(["x", "y"], [1, 1]), GradedDomain(["x", "y"], [2, 1]),
             GradedDomain(["x", "y", "z"], [3, 2, 1], ["x^2 - y^3"])]
    for A in rings:
        for d in (2, 3):
            P = veronese(A, d).presentation()
            assert all(hilbert_dim(P, nu) == hilbert_dim(A, nu * d) for nu in range(16))
    rep = veronese(rings[0], 2)
    assert len(rep.generators) == 3 and len(rep.relations) == 1
