"""Sparse multivariate polynomials over Q with a weighted grading.

A monomial is a tuple of exponents.  Terms live in a plain dict
``{monomial: Fraction}`` that never stores zero coefficients.  The monomial
order is weighted degree, then total degree (only matters when some weight
is zero), then reverse lexicographic in the declared variable order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import AmbientMismatchError, InputError

Monomial = tuple  # tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class PolyRing:
    """Q[x_1..x_n] with positive-or-zero integer weights."""

    __slots__ = ("variables", "weights", "_index", "_hash", "_has_zero_weight")

    def __init__(self, variables: Sequence[str], weights: Sequence[int] | None = None):
        variables = tuple(variables)
        if weights is None:
            weights = (1,) * len(variables)
        weights = tuple(int(w) for w in weights)
        if len(variables) != len(weights):
            raise InputError("one weight per variable is required")
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {variables}")
        if any(w < 0 for w in weights):
            raise InputError("weights must be non-negative")
        for v in variables:
            if not v or not (v[0].isalpha() or v[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in v):
                raise InputError(f"invalid variable name {v!r}")
        self.variables = variables
        self.weights = weights
        self._index = {v: i for i, v in enumerate(variables)}
        self._hash = hash((variables, weights))
        self._has_zero_weight = any(w == 0 for w in weights)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.weights == other.weights)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{v}:{w}" for v, w in zip(self.variables, self.weights))
        return f"PolyRing({body})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}; ring has {list(self.variables)}") from None

    def wdeg(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def key(self, mono: Monomial) -> tuple:
        """Sort key: larger key means larger monomial.

        Total degree only breaks ties when a weight is zero; without it the
        order would not be a well-order on k[weight-0 variables].
        """
        revlex = tuple(-e for e in reversed(mono))
        if self._has_zero_weight:
            return (self.wdeg(mono), sum(mono), revlex)
        return (self.wdeg(mono), revlex)

    def one_mono(self) -> Monomial:
        return (0,) * len(self.variables)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.one_mono(): Fraction(1)})

    def const(self, c) -> "Poly":
        c = _as_fraction(c)
        return Poly(self, {self.one_mono(): c} if c else {})

    def var(self, name: str | int) -> "Poly":
        i = name if isinstance(name, int) else self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {mono: Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, mono: Monomial, coeff=1) -> "Poly":
        return Poly(self, {tuple(mono): _as_fraction(coeff)})

    def monomials_of_degree(self, nu: int) -> list[Monomial]:
        """All monomials of weighted degree ``nu``, in descending monomial order."""
        if any(w == 0 for w in self.weights):
            raise InputError("weighted-degree pieces are infinite when a variable has weight 0")
        return list(_monomials_of_degree(self.weights, nu))

    def parse(self, text: str) -> "Poly":
        from .parse import parse_poly
        return parse_poly(text, self)


@lru_cache(maxsize=4096)
def _monomials_of_degree(weights: tuple, nu: int) -> tuple:
    if nu < 0:
        return ()
    n = len(weights)
    out: list[tuple] = []

    def rec(i: int, remaining: int, prefix: list[int]):
        if i == n - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(prefix + [remaining // weights[i]]))
            return
        for e in range(remaining // weights[i], -1, -1):
            prefix.append(e)
            rec(i + 1, remaining - e * weights[i], prefix)
            prefix.pop()

    if n == 0:
        return ((),) if nu == 0 else ()
    rec(0, nu, [])
    out.sort(key=lambda m: tuple(-e for e in reversed(m)), reverse=True)
    return tuple(out)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Poly:
    """Immutable polynomial; do not mutate ``terms`` after construction."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._lead = None

    # -- construction helpers -------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise AmbientMismatchError(f"ambient mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff: Fraction) -> "Poly":
        return Poly(self.ring, {tuple(x + y for x, y in zip(m, mono)): c * coeff
                                for m, c in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / _as_fraction(c))
        return NotImplemented

    # -- comparisons ----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(self.ring.one_mono(), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def lead(self) -> tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient); raises on zero."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            key = self.ring.key
            m = max(self.terms, key=key)
            self._lead = (m, self.terms[m])
        return self._lead

    def lead_monomial(self) -> Monomial:
        return self.lead()[0]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(Fraction(1) / self.lead()[1])

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def degree(self) -> int:
        """Maximal weighted degree; -1 for zero."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def degrees(self) -> list[int]:
        return sorted({self.ring.wdeg(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ring.wdeg(m), {})[m] = c
        return {d: Poly(self.ring, t) for d, t in sorted(parts.items())}

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def diff(self, i: int) -> "Poly":
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                terms[mm] = c * e
        return Poly(self.ring, terms)

    def substitute(self, images: Sequence["Poly"], target: PolyRing | None = None) -> "Poly":
        """Ring map sending variable i to ``images[i]`` (all in ``target``)."""
        if len(images) != self.ring.nvars:
            raise InputError("substitution needs one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        powers: list[dict[int, Poly]] = [{0: target.one()} for _ in images]

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        result = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def to_ring(self, target: PolyRing, index_map: Sequence[int]) -> "Poly":
        """Re-embed monomials: variable i goes to ``target`` variable ``index_map[i]``."""
        terms = {}
        for m, c in self.terms.items():
            mm = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    mm[index_map[i]] += e
            terms[tuple(mm)] = c
        return Poly(target, terms)

    # -- printing ---------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())


def format_monomial(ring: PolyRing, mono: Monomial) -> str:
    parts = []
    for v, e in zip(ring.variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical string, parseable by :func:`parse_poly`."""
    if not p.terms:
        return "0"
    pieces = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(p.ring, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    """Exact ``p op q`` for ``op`` in add/sub/mul."""
    if p.ring != q.ring:
        raise AmbientMismatchError(f"ambient mismatch: {p.ring} vs {q.ring}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise InputError(f"unknown operation {op!r}")


def linear_combination(ring: PolyRing, coeffs: Iterable, polys: Iterable[Poly]) -> Poly:
    terms: dict = {}
    for c, p in zip(coeffs, polys):
        if not c:
            continue
        for m, v in p.terms.items():
            terms[m] = terms.get(m, 0) + c * v
    return Poly(ring, terms)
