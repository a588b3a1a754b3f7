"""Polynomial string grammar.

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := INT ['/' INT] | VAR ['^' INT]

Juxtaposition multiplies (``2xy`` is ``2*x*y`` when ``xy`` is not itself a
variable name and splits uniquely into declared names).
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _split_identifier(name: str, ring: PolyRing) -> list[str] | None:
    """Split ``name`` into a product of declared variable names if the split is unique."""
    names = sorted(ring.variables, key=len, reverse=True)
    results: list[list[str]] = []

    def rec(rest: str, acc: list[str]):
        if len(results) > 1:
            return
        if not rest:
            results.append(list(acc))
            return
        for v in names:
            if rest.startswith(v):
                acc.append(v)
                rec(rest[len(v):], acc)
                acc.pop()

    rec(name, [])
    return results[0] if len(results) == 1 else None


def parse_poly(text: str, ring: PolyRing) -> Poly:
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}")
    tokens = _tokenize(text)
    i = 0
    terms: dict = {}
    n = ring.nvars

    def peek():
        return tokens[i]

    def expect_int(what: str) -> int:
        nonlocal i
        kind, val, pos = tokens[i]
        if kind != "int":
            raise ParseError(f"expected integer {what}", text, pos)
        i += 1
        return int(val)

    if peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)

    sign = 1
    first = True
    while True:
        kind, val, pos = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, pos)
        first = False

        coeff = Fraction(sign)
        mono = [0] * n
        got_factor = False
        while True:
            kind, val, pos = peek()
            if kind == "int":
                i += 1
                num = int(val)
                if peek()[0] == "op" and peek()[1] == "/":
                    i += 1
                    den = expect_int("denominator")
                    if den == 0:
                        raise ParseError("zero denominator", text, tokens[i - 1][2])
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "ident":
                i += 1
                if val in ring.variables:
                    names = [val]
                else:
                    names = _split_identifier(val, ring)
                    if names is None:
                        raise ParseError(f"unknown variable {val!r} (ring variables: "
                                         f"{', '.join(ring.variables)})", text, pos)
                exp = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    i += 1
                    exp = expect_int("exponent")
                for k, name in enumerate(names):
                    mono[ring.index(name)] += exp if k == len(names) - 1 else 1
            else:
                if not got_factor:
                    raise ParseError("expected a coefficient or a variable", text, pos)
                break
            got_factor = True
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                i += 1
                nxt = peek()
                if nxt[0] not in ("int", "ident"):
                    raise ParseError("expected a factor after '*'", text, nxt[2])
                continue
            if kind in ("int", "ident"):
                continue
            break

        m = tuple(mono)
        terms[m] = terms.get(m, 0) + coeff
        kind, val, pos = peek()
        if kind == "end":
            break
        if not (kind == "op" and val in "+-"):
            raise ParseError(f"unexpected {val!r}", text, pos)
    return Poly(ring, terms)
