"""Factorization over Q, delegated to sympy."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .poly import Poly, PolyRing


def to_sympy(p: Poly):
    syms = sympy.symbols(p.ring.variables)
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            if e:
                term *= s**e
        expr += term
    return expr, syms


def from_sympy(expr, ring: PolyRing) -> Poly:
    syms = sympy.symbols(ring.variables)
    if not isinstance(syms, tuple):
        syms = (syms,)
    sp = sympy.Poly(expr, *syms, domain="QQ")
    terms = {}
    for mono, coeff in sp.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return Poly(ring, terms)


def factor_over_q(p: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """``p = content * prod(f**e)`` with each ``f`` irreducible over Q and monic."""
    if not p.terms:
        raise ValueError("cannot factor the zero polynomial")
    expr, syms = to_sympy(p)
    if not syms:
        return p.constant_value(), []
    content, factors = sympy.factor_list(expr, *syms)
    out = []
    unit = Fraction(int(sympy.Rational(content).p), int(sympy.Rational(content).q))
    for f, e in factors:
        fp = from_sympy(f, p.ring)
        lc = fp.lead()[1]
        unit *= lc**e
        out.append((fp.monic(), int(e)))
    out.sort(key=lambda fe: (fe[0].degree(), str(fe[0])))
    return unit, out


def is_irreducible_over_q(p: Poly) -> bool:
    if p.is_constant():
        return False
    _, factors = factor_over_q(p)
    return len(factors) == 1 and factors[0][1] == 1
