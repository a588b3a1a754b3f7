import pytest

from cylforge.errors import InputError
from cylforge.graded import (GradedDomain, check_prime, evaluate_expression, graded_piece_basis,
                             hilbert_dim, saturation_index, subalgebra_member, validate, veronese)


def _strs(polys):
    return sorted(str(p) for p in polys)


def test_piece_basis_cusp_degree_6(cusp):
    assert _strs(graded_piece_basis(cusp, 6)) == _strs(
        cusp.ring.parse(m) for m in ["x*y*z", "x*z^3", "y^3", "y^2*z^2", "y*z^4", "z^6"])


def test_piece_basis_small(plane21, pb237):
    assert _strs(graded_piece_basis(plane21, 1)) == ["y"]
    assert _strs(graded_piece_basis(pb237, 42)) == ["y^3", "z^7"]


def test_hilbert_dims(plane21, pb237, cusp):
    assert hilbert_dim(plane21, 4) == 3
    assert hilbert_dim(pb237, 42) == 2
    for A in (plane21, pb237, cusp):
        assert hilbert_dim(A, 0) == 1


def test_cusp_hilbert_matches_t2_t3_z(cusp):
    # k[t^2, t^3] has one monomial in each degree except 1, so dim A_nu = nu
    for nu in range(31):
        expected = sum(1 for a in range(nu + 1) if a != 1)
        assert hilbert_dim(cusp, nu) == expected


def test_validate(cusp, pb237):
    assert validate(cusp).valid and validate(cusp).saturation_index == 1
    assert validate(pb237).valid
    bad = validate(GradedDomain(["x", "y"], [2, 1], ["x - y"]))
    assert not bad.valid and bad.degrees == (2, 1)


def test_saturation_index():
    assert saturation_index(GradedDomain(["x"], [2])) == 2
    assert saturation_index(GradedDomain(["x", "y", "z"], [21, 14, 6])) == 1


def test_negative_degree_rejected(cusp):
    with pytest.raises(InputError):
        graded_piece_basis(cusp, -1)


def test_veronese_square_plane(plane11):
    rep = veronese(plane11, 2)
    assert _strs(g for g, _ in rep.generators) == ["x*y", "x^2", "y^2"]
    assert len(rep.relations) == 1 and rep.verified


def test_veronese_weighted_plane_is_polynomial(plane21):
    rep = veronese(plane21, 2)
    assert _strs(g for g, _ in rep.generators) == ["x", "y^2"] and not rep.relations


def test_veronese_identity(cusp):
    rep = veronese(cusp, 1)
    assert _strs(g for g, _ in rep.generators) == ["x", "y", "z"]
    assert len(rep.relations) == 1


@pytest.mark.parametrize("d", [2, 3])
def test_veronese_hilbert(cusp, plane11, plane21, d):
    for A in (cusp, plane11, plane21):
        P = veronese(A, d).presentation()
        assert [hilbert_dim(P, nu) for nu in range(11)] == [hilbert_dim(A, nu * d) for nu in range(11)]


def test_membership(plane11):
    A = plane11
    gens = [A.ring.parse(g) for g in ["x^2", "x*y", "y^2", "x^3", "y^3"]]
    no = subalgebra_member(A.ring.parse("x^2*y"), gens, domain=A)
    assert no.status == "no"
    yes = subalgebra_member(A.ring.parse("x^3*y"), gens, domain=A)
    assert yes.status == "yes"
    assert evaluate_expression(yes.expression, gens, A) == A.ring.parse("x^3*y")
    assert subalgebra_member(A.ring.parse("x^2"), gens[:3], domain=A).status == "yes"


def test_check_prime():
    assert check_prime(GradedDomain(["x", "y"], [1, 1], ["x*y"])).status == "zero_divisor"
    assert check_prime(GradedDomain(["x", "y", "z"], [3, 2, 1], ["x^2 - y^3"])).status == "none_found"
