from fractions import Fraction

import pytest

from cylforge.cylinder import (cyclic_quotient, find_slice_partner, polar_cylinder,
                               positive_degree_slice, radical_root, slice_construct, taylor_check,
                               veronese_cylinder)
from cylforge.dpd import pham_brieskorn, point_divisor
from cylforge.errors import ConstructionError, InputError

from conftest import der


def test_slice_cusp_is_whole_space(cusp):
    cert = slice_construct(der(cusp, "0", "0", "1"))
    assert (str(cert.g), str(cert.h), cert.h.degree()) == ("z", "1", 0)
    assert cert.verify()


def test_slice_plane21(plane21):
    cert = slice_construct(der(plane21, "0", "1"))
    assert (str(cert.g), str(cert.h)) == ("y", "1")


def test_slice_x_dy(plane11):
    cert = slice_construct(der(plane11, "0", "x"))
    assert (str(cert.g), str(cert.h)) == ("y", "x")
    assert [str(k) for k in cert.kernel_generators] == ["x"]
    assert cert.verify()


def test_positive_degree_slice(plane21, cusp, plane11):
    c = positive_degree_slice(der(plane21, "0", "1"))
    assert (str(c.g), str(c.h), c.h.degree()) == ("x*y", "x", 2)
    c = positive_degree_slice(der(cusp, "0", "0", "1"))
    assert (str(c.g), str(c.h)) == ("y*z", "y")
    c = positive_degree_slice(der(plane11, "0", "x"))
    assert str(c.h) == "x" and c.multiplier is None


def test_taylor_projection_lands_in_kernel(cusp):
    D = der(cusp, "0", "0", "1")
    A = cusp
    g, h = A.ring.parse("y*z"), A.ring.parse("y")
    for nu in range(8):
        for b in A.basis(nu):
            assert taylor_check(D, g, h, b)


def test_find_slice_partner(plane21):
    D = der(plane21, "0", "1")
    assert str(find_slice_partner(D, plane21.ring.parse("x"))) == "x*y"


def test_cyclic_quotient_ex27(plane21):
    data = cyclic_quotient(der(plane21, "0", "1"), plane21.ring.parse("x"))
    assert (data.m, data.n, data.k) == (2, 1, 2)
    assert data.fiber.status in ("domain", "irreducible_over_Q")
    assert [f for f, _ in data.F0_generators] == ["(y^2)/(x)"]
    assert [i for _, i in data.F0_generators] == ["y^2"]


def test_cyclic_quotient_reducible_fibers(cusp):
    D = der(cusp, "0", "0", "1")
    assert cyclic_quotient(D, cusp.ring.parse("y")).fiber.status == "reducible"
    assert cyclic_quotient(D, cusp.ring.parse("x")).fiber.status == "reducible"


def test_cyclic_quotient_m1(plane11):
    data = cyclic_quotient(der(plane11, "0", "x"), plane11.ring.parse("x"))
    assert (data.m, data.k) == (1, 1)


def test_cyclic_quotient_rejects_non_kernel(plane21):
    with pytest.raises(InputError):
        cyclic_quotient(der(plane21, "0", "1"), plane21.ring.parse("y"))


def test_radical_root(cusp):
    h1, l, unit = radical_root(cusp, cusp.ring.parse("4*y^2"))
    assert (str(h1), l, unit) == ("y", 2, 4)


def test_polar_cylinder_ex27(plane21):
    cert = polar_cylinder(der(plane21, "0", "1"))
    assert cert.s1 == "y^2/x"
    assert (cert.data.k, cert.data.r, cert.data.alpha) == (2, 1, 0)
    assert cert.coordinate_ring_trivial
    assert all(cert.report["checks"].values())


def test_polar_cylinder_k1_r0(plane11):
    cert = polar_cylinder(der(plane11, "0", "x"))
    assert cert.s1 == "y/x" and str(cert.data.f) == "x^2"
    assert all(cert.report["checks"].values())


def test_polar_cylinder_ex23_reducible_fiber(cusp):
    D = der(cusp, "0", "0", "1")
    with pytest.raises(ConstructionError):
        polar_cylinder(D)
    cert = polar_cylinder(D, h=cusp.ring.parse("y"), require_domain_fiber=False)
    assert cert.s1 == "y*z/x" and cert.fiber.status == "reducible"
    assert all(cert.report["checks"].values())


def test_veronese_cylinder_integral_case():
    v = veronese_cylinder(point_divisor("inf"), "inf", 1, 1)
    assert v.verify() and v.D == point_divisor("inf")


def test_veronese_cylinder_pb():
    H = pham_brieskorn(2, 3, 7).H
    v = veronese_cylinder(H, "0", 21, 1)
    assert v.verify() and v.D == point_divisor("0", Fraction(1, 2))
    with pytest.raises(ConstructionError):
        veronese_cylinder(H, "0", 1, 1)
    with pytest.raises(InputError):
        veronese_cylinder(H, "0", 2, 4)
