"""Positively graded domains presented as Q[x]/I.

A :class:`GradedDomain` holds a weighted polynomial ring, homogeneous
relations and their reduced Groebner basis.  Graded pieces are spanned by the
standard monomials of a given weighted degree, so ``A_nu`` is realised as a
finite-dimensional coordinate space keyed by monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .errors import InputError, NonHomogeneousError
from .exactalg import Poly, PolyRing, Span, groebner, normal_form, nullspace
from .exactalg.poly import mono_divides


class GradedDomain:
    """``Q[variables]/(relations)`` with a weight per variable.

    The Groebner basis is computed once at construction; instances are
    treated as immutable afterwards.
    """

    def __init__(self, variables: Sequence[str], weights: Sequence[int],
                 relations: Sequence[Poly | str] = (), *, max_steps: int | None = None):
        self.ring = PolyRing(variables, weights)
        rels = []
        for r in relations:
            p = self.ring.parse(r) if isinstance(r, str) else r
            if p.ring != self.ring:
                raise InputError("relation lives in a different ring")
            if p.terms:
                rels.append(p)
        self.relations: tuple[Poly, ...] = tuple(rels)
        self.gb: tuple[Poly, ...] = tuple(groebner(rels, max_steps=max_steps)) if rels else ()
        self._leads = [g.lead_monomial() for g in self.gb]
        self._basis_cache: dict[int, list] = {}

    @classmethod
    def from_json(cls, data: dict, *, max_steps: int | None = None) -> "GradedDomain":
        unknown = set(data) - {"variables", "weights", "relations"}
        if unknown:
            raise InputError(f"unknown ring keys: {sorted(unknown)}")
        try:
            variables = data["variables"]
            weights = data["weights"]
        except KeyError as exc:
            raise InputError(f"ring description is missing {exc.args[0]!r}") from None
        if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
            raise InputError("'variables' must be a list of names")
        if not isinstance(weights, list) or not all(isinstance(w, int) for w in weights):
            raise InputError("'weights' must be a list of integers")
        return cls(variables, weights, data.get("relations", []), max_steps=max_steps)

    def to_json(self) -> dict:
        return {"variables": list(self.ring.variables), "weights": list(self.ring.weights),
                "relations": [str(r) for r in self.relations]}

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"GradedDomain({self.ring!r}, relations=[{rels}])"

    def __eq__(self, other):
        return (isinstance(other, GradedDomain) and self.ring == other.ring
                and self.gb == other.gb)

    def __hash__(self):
        return hash((self.ring, self.gb))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ring.weights

    def parse(self, text: str) -> Poly:
        return self.ring.parse(text)

    def element(self, p: Poly | str) -> Poly:
        """Parse if needed and reduce to normal form."""
        if isinstance(p, str):
            p = self.ring.parse(p)
        return self.nf(p)

    def nf(self, p: Poly) -> Poly:
        return normal_form(p, self.gb)

    def is_zero(self, p: Poly) -> bool:
        return not normal_form(p, self.gb).terms

    def is_standard(self, mono) -> bool:
        return not any(mono_divides(lm, mono) for lm in self._leads)

    def standard_monomials(self, nu: int) -> list:
        if nu not in self._basis_cache:
            if nu < 0:
                self._basis_cache[nu] = []
            else:
                self._basis_cache[nu] = [m for m in self.ring.monomials_of_degree(nu)
                                         if self.is_standard(m)]
        return self._basis_cache[nu]

    def basis(self, nu: int) -> list[Poly]:
        return [self.ring.monomial(m) for m in self.standard_monomials(nu)]

    def vector(self, p: Poly) -> dict:
        """Coordinates of ``p`` on standard monomials (reduces first)."""
        return dict(self.nf(p).terms)

    def from_vector(self, vec: dict) -> Poly:
        return Poly(self.ring, vec)


# --------------------------------------------------------------------------------------
# validation and invariants


@dataclass
class ValidationReport:
    valid: bool
    saturation_index: int | None = None
    warnings: list[str] = field(default_factory=list)
    offending_relation: str | None = None
    degrees: tuple[int, int] | None = None
    message: str = ""

    def to_json(self) -> dict:
        return {"valid": self.valid, "saturation_index": self.saturation_index,
                "warnings": self.warnings, "offending_relation": self.offending_relation,
                "degrees": list(self.degrees) if self.degrees else None,
                "message": self.message}


def check_homogeneous(A: GradedDomain) -> None:
    for r in A.relations:
        degs = r.degrees()
        if len(degs) > 1:
            raise NonHomogeneousError(r, (degs[-1], degs[0]))


def validate(A: GradedDomain) -> ValidationReport:
    """Homogeneity of relations, positivity of the grading and e(A)."""
    try:
        check_homogeneous(A)
    except NonHomogeneousError as exc:
        return ValidationReport(False, offending_relation=str(exc.relation),
                                degrees=exc.degrees, message=str(exc))
    if A.gb and A.gb[0].is_constant():
        return ValidationReport(False, message="relations generate the unit ideal")
    try:
        e = saturation_index(A)
    except InputError as exc:
        return ValidationReport(False, message=str(exc))
    report = ValidationReport(True, saturation_index=e)
    if e != 1:
        report.warnings.append(f"saturation index e(A) = {e} != 1; the G_m-action is not effective")
    if any(w == 0 for w in A.weights):
        report.warnings.append("weight-0 variables present: A_0 != k, graded pieces are "
                               "not finite-dimensional over k")
    return report


def saturation_index(A: GradedDomain) -> int:
    """gcd of the weights of the variables that survive in A."""
    degrees = [w for i, w in enumerate(A.weights) if w > 0 and not A.is_zero(A.ring.var(i))]
    if not degrees:
        raise InputError("not positively graded: no variable of positive weight is nonzero")
    return reduce(math.gcd, degrees)


def graded_piece_basis(A: GradedDomain, nu: int) -> list[Poly]:
    """Standard monomials spanning A_nu, in descending monomial order."""
    if nu < 0:
        raise InputError("graded pieces are indexed by nu >= 0")
    return A.basis(nu)


def hilbert_dim(A: GradedDomain, nu: int) -> int:
    return len(graded_piece_basis(A, nu))


# --------------------------------------------------------------------------------------
# subalgebras


def subalgebra_generators(A: GradedDomain, piece: Callable[[int], list[Poly]],
                          max_level: int) -> list[tuple[Poly, int]]:
    """Homogeneous generators of the graded subalgebra ``R = k + sum_j R_j``.

    ``piece(j)`` must return a basis of ``R_j`` inside ``A``.  At each
    level the span of products of earlier generators is computed, and basis
    elements of ``R_j`` outside that span become new generators.  Returns
    ``[(generator, level), ...]``.
    """
    gens: list[tuple[Poly, int]] = []
    full: dict[int, list[Poly]] = {0: [A.ring.one()]}
    for j in range(1, max_level + 1):
        span = Span()
        for g, lg in gens:
            for b in full.get(j - lg, []):
                span.add(A.vector(g * b))
        basis_j = piece(j)
        for b in basis_j:
            if span.add(A.vector(b)):
                gens.append((A.nf(b), j))
        full[j] = basis_j
    return gens


@dataclass
class VeroneseReport:
    d: int
    generators: list[tuple[Poly, int]]
    relations: list[Poly]
    generation_bound: int
    verified_up_to: int
    source: GradedDomain

    @property
    def verified(self) -> bool:
        return self.verified_up_to >= self.generation_bound

    def presentation_ring(self) -> PolyRing:
        names = [f"g{i}" for i in range(len(self.generators))]
        return PolyRing(names, [deg // self.d for _, deg in self.generators])

    def presentation(self) -> GradedDomain:
        """A^(d) as a graded domain, degrees divided by d."""
        ring = self.presentation_ring()
        return GradedDomain(ring.variables, ring.weights, self.relations)

    def to_json(self) -> dict:
        return {
            "kind": "veronese",
            "ring": self.source.to_json(),
            "d": self.d,
            "generators": [{"poly": str(g), "degree": deg} for g, deg in self.generators],
            "relations": [str(r) for r in self.relations],
            "presentation_variables": list(self.presentation_ring().variables),
            "generation_bound": self.generation_bound,
            "verified_up_to": self.verified_up_to,
            "verified": self.verified,
        }


def veronese_generation_bound(A: GradedDomain, d: int) -> int:
    # A minimal zero-sum sequence in Z/d has at most d terms, so indecomposable
    # monomials of A^(d) have at most d variable factors.
    return d * max(A.weights)


def veronese(A: GradedDomain, d: int, bound: int | None = None) -> VeroneseReport:
    """Generators and relations of ``A^(d) = sum_nu A_{nu d}`` up to degree ``bound``.

    ``bound`` is measured in the grading of ``A`` and defaults to
    ``3 * d * max(weights)``.
    """
    if d < 1:
        raise InputError("Veronese index d must be positive")
    if bound is None:
        bound = 3 * d * max(A.weights)
    gen_bound = veronese_generation_bound(A, d)
    if d == 1:
        gens = [(A.ring.var(i), w) for i, w in enumerate(A.weights)]
        return VeroneseReport(1, gens, list(A.relations), gen_bound, bound, A)

    gens: list[tuple[Poly, int]] = []
    relations: list[Poly] = []
    pres: PolyRing = PolyRing([], [])
    gb: list[Poly] = []
    image_cache: dict = {}

    def image(mono) -> Poly:
        if mono not in image_cache:
            i = next(k for k, e in enumerate(mono) if e)
            rest = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
            image_cache[mono] = A.nf(image(rest) * gens[i][0]) if any(rest) else gens[i][0]
        return image_cache[mono]

    def standard(level: int) -> list:
        leads = [g.lead_monomial() for g in gb]
        return [m for m in pres.monomials_of_degree(level)
                if not any(mono_divides(lm, m) for lm in leads)]

    for level in range(1, bound // d + 1):
        target = A.basis(level * d)
        span = Span()
        for m in standard(level) if gens else []:
            span.add(A.vector(image(m)))
        new = [b for b in target if span.add(A.vector(b))]
        if new:
            old_n = len(gens)
            gens.extend((A.nf(b), level * d) for b in new)
            pres = PolyRing([f"g{i}" for i in range(len(gens))], [deg // d for _, deg in gens])
            embed = list(range(old_n))
            relations = [r.to_ring(pres, embed) for r in relations]
            gb = [g.to_ring(pres, embed) for g in gb]
            image_cache = {m + (0,) * (len(gens) - old_n): v for m, v in image_cache.items()}
        monos = standard(level)
        kernel = nullspace([A.vector(image(m)) for m in monos])
        if kernel:
            for vec in kernel:
                rel = Poly(pres, {monos[i]: c for i, c in vec.items()}).monic()
                relations.append(rel)
            gb = groebner(relations)
    return VeroneseReport(d, gens, relations, gen_bound, bound, A)


@dataclass
class MembershipResult:
    status: str                      # "yes" | "no" | "unknown"
    expression: Poly | None = None   # polynomial in the generator ring g0, g1, ...
    witness: Poly | None = None      # a monomial outside the semigroup, for "no"
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": self.status,
                "expression": str(self.expression) if self.expression is not None else None,
                "witness": str(self.witness) if self.witness is not None else None,
                "reason": self.reason}


def generator_ring(gens: Sequence[Poly]) -> PolyRing:
    return PolyRing([f"g{i}" for i in range(len(gens))], [max(g.degree(), 1) for g in gens])


def _semigroup_decompose(target: tuple, exps: list[tuple], memo: dict) -> tuple | None:
    if not any(target):
        return (0,) * len(exps)
    if target in memo:
        return memo[target]
    memo[target] = None
    for i, e in enumerate(exps):
        if mono_divides(e, target):
            rest = tuple(t - x for t, x in zip(target, e))
            sub = _semigroup_decompose(rest, exps, memo)
            if sub is not None:
                found = sub[:i] + (sub[i] + 1,) + sub[i + 1:]
                memo[target] = found
                return found
    return None


def subalgebra_member(p: Poly, gens: Sequence[Poly], bound: int | None = None,
                      domain: GradedDomain | None = None) -> MembershipResult:
    """Is ``p`` in ``k[gens]``?  Exact for monomial generators in a polynomial ring."""
    if not gens:
        raise InputError("at least one generator is required")
    ring = p.ring
    if any(g.ring != ring for g in gens):
        raise InputError("generators and element live in different rings")
    if any(g.is_constant() or not g.is_homogeneous() for g in gens):
        raise InputError("generators must be homogeneous of positive degree")
    G = generator_ring(gens)
    polynomial_ring = domain is None or not domain.gb

    if polynomial_ring and all(g.is_monomial() for g in gens):
        exps = [g.lead_monomial() for g in gens]
        coeffs = [g.lead()[1] for g in gens]
        memo: dict = {}
        expr: dict = {}
        for m, c in p.sorted_terms():
            dec = _semigroup_decompose(m, exps, memo)
            if dec is None:
                return MembershipResult("no", witness=ring.monomial(m),
                                        reason="monomial outside the generator semigroup")
            scale = Fraction(1)
            for k, e in zip(coeffs, dec):
                scale *= k**e
            expr[dec] = expr.get(dec, 0) + c / scale
        return MembershipResult("yes", expression=Poly(G, expr), reason="semigroup decomposition")

    A = domain if domain is not None else GradedDomain(ring.variables, ring.weights)
    p = A.nf(p)
    expr = G.zero()
    for deg, part in p.homogeneous_components().items():
        if bound is not None and deg > bound:
            return MembershipResult("unknown", reason=f"degree {deg} exceeds bound {bound}")
        monos = G.monomials_of_degree(deg) if deg > 0 else [G.one_mono()]
        span = Span()
        for m in monos:
            span.add(A.vector(G.monomial(m).substitute(list(gens), ring)), label=m)
        coeffs = span.express(A.vector(part))
        if coeffs is None:
            return MembershipResult("no", witness=part,
                                    reason=f"degree-{deg} component outside span of generator products")
        expr = expr + Poly(G, coeffs)
    return MembershipResult("yes", expression=expr, reason="graded linear algebra")


def evaluate_expression(expr: Poly, gens: Sequence[Poly], domain: GradedDomain | None = None) -> Poly:
    value = expr.substitute(list(gens), gens[0].ring)
    return domain.nf(value) if domain is not None else value


# --------------------------------------------------------------------------------------
# bounded primality sanity check


@dataclass
class PrimeCheck:
    status: str            # "zero_divisor" | "none_found"
    witness: tuple[str, str] | None = None
    searched_degree: int = 0
    note: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "witness": list(self.witness) if self.witness else None,
                "searched_degree": self.searched_degree, "note": self.note}


def check_prime(A: GradedDomain, degree_bound: int = 6) -> PrimeCheck:
    """Bounded search for zero divisors; never proves primality.

    A principal relation ideal is factored over Q.  Otherwise, for each pair of
    degrees up to ``degree_bound`` the multiplication map by every standard
    monomial (and by the sum of all of them) is tested for a kernel.
    """
    from .exactalg.factor import factor_over_q

    if len(A.gb) == 1:
        _, factors = factor_over_q(A.gb[0])
        if len(factors) > 1 or (factors and factors[0][1] > 1):
            f = factors[0][0]
            rest = A.ring.one()
            for g, e in factors:
                rest = rest * g**(e - 1 if g == f else e)
            return PrimeCheck("zero_divisor", (str(f), str(rest)), 0,
                              "relation factors over Q")
    for n1 in range(1, degree_bound + 1):
        for n2 in range(n1, degree_bound + 1):
            left = A.basis(n1)
            right = A.basis(n2)
            if not left or not right:
                continue
            candidates = list(left)
            candidates.append(sum(left[1:], left[0]))
            for a in candidates:
                cols = [A.vector(a * b) for b in right]
                ker = nullspace(cols)
                if ker:
                    b = sum((right[i].scale(c) for i, c in ker[0].items()), A.ring.zero())
                    return PrimeCheck("zero_divisor", (str(a), str(b)), degree_bound)
    return PrimeCheck("none_found", None, degree_bound,
                      "bounded search only; primality is not proven")
