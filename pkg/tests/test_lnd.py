import pytest

from cylforge.errors import ConstructionError, DerivationError, InputError
from cylforge.graded import GradedDomain
from cylforge.lnd import (is_locally_nilpotent, kernel_piece, kernel_saturation_index,
                          principal_component, replica)

from conftest import der


def _strs(polys):
    return sorted(str(p) for p in polys)


def test_check_derivation(cusp, plane21):
    D = der(cusp, "0", "0", "1")
    assert D.is_homogeneous() and D.degree == -1
    with pytest.raises(DerivationError):
        der(cusp, "1", "0", "0")
    assert der(plane21, "y", "0").degree == -1


def test_unknown_variable_rejected(plane21):
    from cylforge.lnd import check_derivation
    with pytest.raises(InputError):
        check_derivation(plane21, {"x": "0", "w": "1"})


def test_principal_component(plane21):
    D = der(plane21, "y", "1")
    assert principal_component(D).to_json() == D.to_json()
    P = principal_component(der(plane21, "y^3", "1"))
    assert P.to_json() == {"x": "y^3", "y": "0"}


def test_nilpotency_verdicts(cusp, plane11):
    assert is_locally_nilpotent(der(cusp, "0", "0", "1")).reason == "negative_degree_automatic"
    A = GradedDomain(["x"], [1])
    assert is_locally_nilpotent(der(A, "x")).status == "not_nilpotent"
    assert is_locally_nilpotent(der(plane11, "y", "0")).status == "nilpotent"
    assert is_locally_nilpotent(der(plane11, "0", "x")).status == "nilpotent"


def test_kernel_pieces(plane21, cusp):
    D = der(plane21, "0", "1")
    assert _strs(kernel_piece(D, 2)) == ["x"]
    assert kernel_piece(D, 1) == []
    assert _strs(kernel_piece(der(cusp, "0", "0", "1"), 2)) == ["y"]


def test_saturation_index_of_kernel(plane21, cusp, plane11):
    assert kernel_saturation_index(der(plane21, "0", "1")).e == 2
    assert kernel_saturation_index(der(cusp, "0", "0", "1")).e == 1
    idx = kernel_saturation_index(der(plane11, "y", "0"))
    assert idx.e == 1 and idx.certified


def test_replica(plane21, plane11):
    with pytest.raises(ConstructionError):
        replica(der(plane21, "0", "1"), 2)
    r = replica(der(plane11, "y", "0"), 2)
    # y d/dx has degree 0, so the congruence is already satisfied by a = 1
    assert str(r.a) == "1" and r.degree == 0
    r3 = replica(der(plane11, "0", "x"), 2)
    assert (r3.degree) % 2 == 0 and r3.derivation.is_homogeneous()
