"""Polynomial arithmetic, parsing and Groebner bases; sympy is the oracle."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cylforge.errors import ParseError, ResourceCapError
from cylforge.exactalg import PolyRing, Span, groebner, ideal_member, normal_form, nullspace, rank
from cylforge.exactalg.factor import factor_over_q, from_sympy, is_irreducible_over_q, to_sympy
from cylforge.exactalg.linalg import rref_basis

R3 = PolyRing(["x", "y", "z"], [1, 1, 1])
W = PolyRing(["x", "y", "z"], [3, 2, 1])


def test_parse_and_print_roundtrip():
    p = W.parse("x^2 - y^3 + 1/2*z")
    assert str(W.parse(str(p))) == str(p)
    assert W.parse("2*x*y - 3") == W.parse("-3 + 2 * y * x")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        W.parse("x^2 + * y")
    assert info.value.position is not None


def test_weighted_degree_and_homogeneity():
    p = W.parse("x^2 - y^3")
    assert p.degree() == 6 and p.is_homogeneous()
    assert not W.parse("x + y").is_homogeneous()


def test_exact_rational_coefficients():
    p = R3.parse("1/3*x") * R3.parse("3/7*y")
    assert dict(p.terms) == {(1, 1, 0): Fraction(1, 7)}


def test_groebner_twisted_cubic_matches_sympy():
    gens = ["x*z - y^2", "y - x^2", "z - x*y"]
    ours = groebner([R3.parse(g) for g in gens])
    x, y, z = sympy.symbols("x y z")
    theirs = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], x, y, z,
                            order="grevlex")
    assert sorted(str(from_sympy(g, R3).monic()) for g in theirs.exprs) == sorted(map(str, ours))


def test_step_cap_raises():
    gens = [R3.parse("x*z - y^2"), R3.parse("y^3 - x^2*z"), R3.parse("z^2 - x*y")]
    with pytest.raises(ResourceCapError):
        groebner(gens, max_steps=0)


def test_step_cap_from_environment(monkeypatch):
    monkeypatch.setenv("CYLFORGE_MAX_STEPS", "0")
    with pytest.raises(ResourceCapError):
        groebner([R3.parse("x*y - z^2"), R3.parse("y^2 - x*z")])


_coeff = st.integers(-3, 3)
_mono = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
_poly = st.dictionaries(_mono, _coeff, min_size=1, max_size=4)


def _mk(terms):
    from cylforge.exactalg import Poly
    return Poly(R3, {m: Fraction(c) for m, c in terms.items() if c})


@settings(max_examples=30, deadline=None)
@given(st.lists(_poly, min_size=1, max_size=3))
def test_groebner_agrees_with_sympy(raw):
    gens = [p for p in map(_mk, raw) if p.terms]
    if not gens:
        return
    ours = groebner(gens)
    syms = sympy.symbols("x y z")
    theirs = sympy.groebner([to_sympy(g)[0] for g in gens], *syms, order="grevlex")
    assert sorted(map(str, ours)) == sorted(str(from_sympy(g, R3).monic()) for g in theirs.exprs)


@settings(max_examples=30, deadline=None)
@given(_poly, _poly)
def test_ring_axioms(a, b):
    p, q = _mk(a), _mk(b)
    assert p * q == q * p
    assert (p + q) * p == p * p + q * p
    assert to_sympy(p * q)[0].expand() == (to_sympy(p)[0] * to_sympy(q)[0]).expand()


def test_normal_form_and_membership():
    gb = groebner([W.parse("x^2 - y^3")])
    assert normal_form(W.parse("x^2*z"), gb) == W.parse("y^3*z")
    assert ideal_member(W.parse("x^4 - y^6"), gb)
    assert not ideal_member(W.parse("x"), gb)


def test_linear_algebra():
    vecs = [{"a": Fraction(1), "b": Fraction(2)}, {"a": Fraction(2), "b": Fraction(4)}, {"c": Fraction(1)}]
    assert rank(vecs) == 2
    ker = nullspace(vecs)
    assert len(ker) == 1
    combo = {}
    for i, c in ker[0].items():
        for k, v in vecs[i].items():
            combo[k] = combo.get(k, 0) + c * v
    assert not any(combo.values())
    span = Span()
    assert span.add(vecs[0]) and not span.add(vecs[1])
    rows = rref_basis(vecs, ["a", "b", "c"])
    assert len(rows) == 2


def test_factor_over_q():
    unit, factors = factor_over_q(R3.parse("2*x^2 - 2"))
    assert unit == 2 and [str(f) for f, _ in factors] == ["x - 1", "x + 1"] or len(factors) == 2
    assert is_irreducible_over_q(R3.parse("x^2 + 1"))
    assert not is_irreducible_over_q(R3.parse("x^2 - y^2"))
