"""Slices, the cyclic quotient construction and polar cylinders.

Everything is built from a homogeneous locally nilpotent derivation ``D`` of
a graded domain ``A`` and is emitted as a certificate that can be re-checked
on bounded graded pieces without repeating the searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dpd import GENERIC, INF, QDivisor, liendo_cylindrical, point_divisor, point_label, parse_point
from .errors import ConstructionError, InputError, ResourceCapError
from .exactalg import Poly, Span, groebner, normal_form, nullspace
from .exactalg.factor import factor_over_q
from .exactalg.linalg import rref_basis
from .graded import GradedDomain, subalgebra_generators, veronese, veronese_generation_bound
from .lnd import (Derivation, is_locally_nilpotent, kernel_generators, kernel_piece,
                  kernel_saturation_index, require_homogeneous)

DEFAULT_BOUND = 60
DEFAULT_VERIFIED_DEGREE = 40
ORDER_CAP = 10_000


def _require_lnd(D: Derivation) -> int:
    deg = require_homogeneous(D)
    verdict = is_locally_nilpotent(D)
    if verdict.status != "nilpotent":
        raise InputError(f"derivation is not certified locally nilpotent ({verdict.status})")
    return deg


def nilpotency_order(D: Derivation, p: Poly) -> int:
    """Largest n with D^n(p) != 0 (-1 for p == 0)."""
    n = -1
    while p.terms:
        n += 1
        if n > ORDER_CAP:
            raise ResourceCapError(f"D-order exceeds {ORDER_CAP}")
        p = D(p)
    return n


def _first_by_rref(A: GradedDomain, vectors: list[dict], nu: int) -> list[Poly]:
    """Canonical basis of a subspace of A_nu: reduced echelon form, smallest monomials as pivots."""
    order = sorted(A.standard_monomials(nu), key=A.ring.key)
    return [Poly(A.ring, row) for row in rref_basis(vectors, order)]


def canonical_kernel_piece(D: Derivation, nu: int) -> list[Poly]:
    A = D.domain
    if nu == 0:
        return [A.ring.one()]
    return _first_by_rref(A, [A.vector(p) for p in kernel_piece(D, nu)], nu)


def taylor_check(D: Derivation, g: Poly, h: Poly, a: Poly) -> bool:
    """``sum_i (-1)^i/i! (g/h)^i D^i(a)`` lies in ker D, cleared of denominators."""
    A = D.domain
    iterates = [A.nf(a)]
    while iterates[-1].terms:
        if len(iterates) > ORDER_CAP:
            raise ResourceCapError(f"D-order exceeds {ORDER_CAP}")
        iterates.append(D(iterates[-1]))
    iterates.pop()
    N = len(iterates) - 1
    if N < 0:
        return True
    total = A.ring.zero()
    gpow = A.ring.one()
    hpows = [A.ring.one()]
    for _ in range(N):
        hpows.append(A.nf(hpows[-1] * h))
    for i, w in enumerate(iterates):
        coeff = Fraction((-1) ** i, math.factorial(i))
        total = total + (gpow * hpows[N - i] * w).scale(coeff)
        gpow = A.nf(gpow * g)
    return not D(A.nf(total)).terms


# --------------------------------------------------------------------------------------
# slices


@dataclass
class SliceCertificate:
    derivation: Derivation
    g: Poly
    h: Poly
    kernel_generators: list[Poly]
    verified_degree: int
    multiplier: Poly | None = None

    @property
    def domain(self) -> GradedDomain:
        return self.derivation.domain

    @property
    def s(self) -> str:
        return f"({self.g})/({self.h})"

    def checks(self) -> dict[str, bool]:
        D, A = self.derivation, self.domain
        dg = D(self.g)
        out = {
            "h_nonzero": bool(A.nf(self.h).terms),
            "dg_equals_h": not A.nf(dg - self.h).terms,
            "dh_zero": not D(self.h).terms,
            "slice_identity": not A.nf(self.h * dg - self.g * D(self.h) - self.h * self.h).terms,
            "kernel_generators_in_kernel": all(not D(k).terms for k in self.kernel_generators),
        }
        out["taylor_projection"] = all(
            taylor_check(D, self.g, self.h, b)
            for nu in range(self.verified_degree + 1) for b in A.basis(nu)
        )
        return out

    def verify(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "kind": "slice",
            "ring": self.domain.to_json(),
            "derivation": self.derivation.to_json(),
            "g": str(self.g),
            "h": str(self.h),
            "s": {"numerator": str(self.g), "denominator": str(self.h)},
            "deg_h": self.h.degree(),
            "multiplier": str(self.multiplier) if self.multiplier is not None else None,
            "kernel_generators": [str(k) for k in self.kernel_generators],
            "verified_degree": self.verified_degree,
        }


def slice_construct(D: Derivation, bound: int = DEFAULT_BOUND, kernel_bound: int = 12,
                    verified_degree: int = 20) -> SliceCertificate:
    """Minimal-degree ``g`` in ker D^2 minus ker D, ``h = D g`` and ``s = g/h``."""
    _require_lnd(D)
    A = D.domain
    for nu in range(bound + 1):
        basis = A.basis(nu)
        if not basis:
            continue
        second = nullspace([A.vector(D(D(b))) for b in basis])
        vectors = [A.vector(sum((basis[i].scale(c) for i, c in v.items()), A.ring.zero()))
                   for v in second]
        for g in _first_by_rref(A, vectors, nu):
            h = D(g)
            if h.terms:
                gens = [p for p, _ in kernel_generators(D, kernel_bound)]
                return SliceCertificate(D, g, h, gens, verified_degree)
    raise ResourceCapError(f"no element of ker D^2 outside ker D up to degree {bound}")


def _min_positive_kernel_element(D: Derivation, bound: int) -> Poly:
    for nu in range(1, bound + 1):
        piece = canonical_kernel_piece(D, nu)
        if piece:
            return piece[0]
    raise ConstructionError(
        f"ker D lies in degree 0 up to degree {bound}; a positive-degree slice needs "
        "ker D outside A_0, which holds when Proj A has positive dimension over Spec A_0"
    )


def positive_degree_slice(D: Derivation, bound: int = DEFAULT_BOUND, kernel_bound: int = 12,
                          verified_degree: int = 20) -> SliceCertificate:
    cert = slice_construct(D, bound, kernel_bound, verified_degree)
    if cert.h.degree() > 0:
        return cert
    a = _min_positive_kernel_element(D, bound)
    A = D.domain
    return SliceCertificate(D, A.nf(a * cert.g), A.nf(a * cert.h), cert.kernel_generators,
                            verified_degree, multiplier=a)


def find_slice_partner(D: Derivation, h: Poly) -> Poly:
    """Homogeneous ``g`` with ``D g = h``."""
    deg = require_homogeneous(D)
    A = D.domain
    h = A.nf(h)
    if not h.terms or not h.is_homogeneous():
        raise InputError("h must be a nonzero homogeneous element")
    nu = h.degree() - deg
    basis = A.basis(nu)
    span = Span()
    for i, b in enumerate(basis):
        span.add(A.vector(D(b)), label=i)
    coeffs = span.express(A.vector(h))
    if coeffs is None:
        raise ConstructionError(f"{h} is not in the image of D on A_{nu}")
    return A.nf(sum((basis[i].scale(c) for i, c in coeffs.items()), A.ring.zero()))


# --------------------------------------------------------------------------------------
# fibers h = 1


@dataclass
class FiberCheck:
    status: str                 # domain | irreducible_over_Q | reducible | undetermined
    witness: tuple[str, str] | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "witness": list(self.witness) if self.witness else None,
                "note": self.note}


def fiber_presentation(A: GradedDomain, h: Poly) -> list[Poly]:
    gb = groebner(list(A.gb) + [A.nf(h) - 1])
    if len(gb) == 1 and gb[0].is_constant():
        raise ConstructionError(f"the fiber {h} = 1 is empty")
    return gb


def check_fiber(A: GradedDomain, gb: Sequence[Poly]) -> FiberCheck:
    """Integrality of ``A/(h-1)`` read off a reduced Groebner basis.

    A basis element that factors as ``p*q`` with both factors nonzero modulo
    the ideal exhibits zero divisors.  If every element eliminates a distinct
    variable linearly the quotient is a polynomial ring.
    """
    def eliminates(p: Poly) -> bool:
        lm = p.lead_monomial()
        return sum(lm) == 1
    for p in gb:
        _, factors = factor_over_q(p)
        if len(factors) > 1 or (factors and factors[0][1] > 1):
            f = factors[0][0]
            rest = p.ring.one()
            for q, e in factors:
                rest = rest * q ** (e - 1 if q == f else e)
            if normal_form(f, gb).terms and normal_form(rest, gb).terms:
                return FiberCheck("reducible", (str(f), str(rest)),
                                  f"{p} = ({f}) * ({rest}) up to a unit")
    rest = [p for p in gb if not eliminates(p)]
    if not rest:
        return FiberCheck("domain", note="the fiber is an affine space")
    if len(rest) == 1 and len(factor_over_q(rest[0])[1]) == 1:
        return FiberCheck("irreducible_over_Q", note="one irreducible relation after elimination; "
                          "absolute irreducibility is not checked")
    return FiberCheck("undetermined", note="no factorization found in the Groebner basis")


def radical_root(A: GradedDomain, h: Poly) -> tuple[Poly, int, Fraction]:
    """``h = unit * h1^l`` with ``l`` maximal, from a factorization over Q."""
    unit, factors = factor_over_q(A.nf(h))
    l = 0
    for _, e in factors:
        l = math.gcd(l, e)
    if l <= 1:
        return A.nf(h), 1, Fraction(1)
    h1 = A.ring.one()
    for f, e in factors:
        h1 = h1 * f ** (e // l)
    return A.nf(h1), l, unit


# --------------------------------------------------------------------------------------
# cyclic quotient


@dataclass
class CyclicQuotientData:
    derivation: Derivation
    h: Poly
    m: int
    F_gb: list[Poly]
    labels: dict[str, int]
    induced_derivation: dict[str, str]
    n: int
    k: int
    kernel_residues: list[int]
    plain_residues: list[int]
    readings_agree: bool
    e_kernel: int
    consistent: bool
    fiber: FiberCheck
    F0_generators: list[tuple[str, str]]     # (fraction in A_(h), image in F_[0])
    injective_up_to: int
    bound: int

    def to_json(self) -> dict:
        return {
            "kind": "cyclic_quotient",
            "ring": self.derivation.domain.to_json(),
            "derivation": self.derivation.to_json(),
            "h": str(self.h), "m": self.m,
            "F_presentation": {"relations": [str(p) for p in self.F_gb], "labels": self.labels},
            "induced_derivation": self.induced_derivation,
            "n": self.n, "k": self.k,
            "kernel_residues": self.kernel_residues,
            "plain_residues": self.plain_residues,
            "plain_n": len(self.plain_residues),
            "readings_agree": self.readings_agree,
            "e_kernel": self.e_kernel,
            "consistent": self.consistent,
            "fiber": self.fiber.to_json(),
            "F0_generators": [{"fraction": f, "image": i} for f, i in self.F0_generators],
            "injective_up_to": self.injective_up_to,
            "bound": self.bound,
        }


def _check_kernel_element(D: Derivation, h: Poly) -> tuple[Poly, int]:
    A = D.domain
    h = A.nf(h)
    if not h.terms or not h.is_homogeneous() or h.degree() <= 0:
        raise InputError("h must be homogeneous of positive degree")
    if D(h).terms:
        raise InputError(f"h = {h} is not in ker D")
    return h, h.degree()


def cyclic_quotient(D: Derivation, h: Poly, bound: int = 30) -> CyclicQuotientData:
    """``F = A/(h-1)`` with its Z_m-grading, the induced derivation and ``n``, ``k``."""
    require_homogeneous(D)
    A = D.domain
    h, m = _check_kernel_element(D, h)
    gb = fiber_presentation(A, h)
    fiber = check_fiber(A, gb)

    def nf_F(p: Poly) -> Poly:
        return normal_form(p, gb)

    kernel_res, plain_res = set(), set()
    injective_up_to = -1
    for nu in range(bound + 1):
        basis = A.basis(nu)
        if not basis:
            continue
        plain_res.add(nu % m)
        images = [dict(nf_F(b).terms) for b in basis]
        injective = not nullspace(images)
        if injective and injective_up_to == nu - 1:
            injective_up_to = nu
        for vec in nullspace([dict(nf_F(D(b)).terms) for b in basis]):
            elem = nf_F(sum((basis[i].scale(c) for i, c in vec.items()), A.ring.zero()))
            if elem.terms:
                kernel_res.add(nu % m)
                break
    n = len(kernel_res)
    if n == 0 or m % n:
        raise ConstructionError("kernel residues do not form a subgroup of Z_m; increase the bound")
    k = m // n
    e = kernel_saturation_index(D, max(bound, m)).e
    gens = []
    ver = veronese(A, m, bound=veronese_generation_bound(A, m))
    for g, deg in ver.generators:
        j = deg // m
        image = nf_F(g)
        if image.is_constant():
            continue
        den = "1" if j == 0 else (f"({h})" if j == 1 else f"({h})^{j}")
        gens.append((f"({g})/{den}", str(image)))
    return CyclicQuotientData(
        D, h, m, gb, {v: w % m for v, w in zip(A.variables, A.weights)},
        {v: str(nf_F(img)) for v, img in zip(A.variables, D.images)},
        n, k, sorted(kernel_res), sorted(plain_res), len(plain_res) == n, e, k == e,
        fiber, gens, injective_up_to, bound,
    )


# --------------------------------------------------------------------------------------
# polar cylinders


@dataclass(frozen=True)
class LocalElement:
    """``num / (c * h^p * t^q)`` in the localization ``A_{ht}``."""
    num: Poly
    p: int
    q: int


class Localization:
    def __init__(self, A: GradedDomain, h: Poly, t: Poly):
        self.A, self.h, self.t = A, h, t
        self._hp = [A.ring.one()]
        self._tp = [A.ring.one()]
        self._ideal_cache: dict = {}

    def _pow(self, table, base, e):
        while len(table) <= e:
            table.append(self.A.nf(table[-1] * base))
        return table[e]

    def hpow(self, e: int) -> Poly:
        return self._pow(self._hp, self.h, e)

    def tpow(self, e: int) -> Poly:
        return self._pow(self._tp, self.t, e)

    def make(self, num: Poly, p: int = 0, q: int = 0) -> LocalElement:
        if p < 0:
            num, p = num * self.hpow(-p), 0
        if q < 0:
            num, q = num * self.tpow(-q), 0
        return LocalElement(self.A.nf(num), p, q)

    def _lift(self, x: LocalElement, p: int, q: int) -> Poly:
        return x.num * self.hpow(p - x.p) * self.tpow(q - x.q)

    def add(self, x: LocalElement, y: LocalElement, beta: Fraction = Fraction(1)) -> LocalElement:
        p, q = max(x.p, y.p), max(x.q, y.q)
        return self.make(self._lift(x, p, q) + self._lift(y, p, q).scale(beta), p, q)

    def mul(self, x: LocalElement, y: LocalElement) -> LocalElement:
        return self.make(x.num * y.num, x.p + y.p, x.q + y.q)

    def scale(self, x: LocalElement, c: Fraction) -> LocalElement:
        return LocalElement(x.num.scale(c), x.p, x.q)

    def is_zero(self, x: LocalElement) -> bool:
        return not x.num.terms

    def in_A(self, x: LocalElement) -> bool:
        if x.p == 0 and x.q == 0:
            return True
        key = (x.p, x.q)
        if key not in self._ideal_cache:
            self._ideal_cache[key] = groebner(list(self.A.gb) + [self.hpow(x.p) * self.tpow(x.q)])
        return not normal_form(x.num, self._ideal_cache[key]).terms

    def simplify(self, x: LocalElement) -> LocalElement:
        """Cancel factors of h and t from the numerator where exact division succeeds."""
        num, p, q = x.num, x.p, x.q
        for base, attr in ((self.h, "p"), (self.t, "q")):
            while (p if attr == "p" else q) > 0:
                quo = exact_quotient(num, base)
                if quo is None or self.A.nf(quo * base - num).terms:
                    break
                num = self.A.nf(quo)
                if attr == "p":
                    p -= 1
                else:
                    q -= 1
        return LocalElement(num, p, q)

    def format(self, x: LocalElement) -> str:
        x = self.simplify(x)
        den = self.A.nf(self.hpow(x.p) * self.tpow(x.q))
        return _paren(x.num) if den.is_constant() and den.constant_value() == 1 else \
            f"{_paren(x.num)}/{_paren(den)}"


def _paren(p: Poly) -> str:
    text = str(p)
    return text if len(p.terms) == 1 and p.lead()[1] == 1 else f"({text})"


def exact_quotient(a: Poly, b: Poly) -> Poly | None:
    """``a / b`` in the polynomial ring when the division is exact."""
    lm, lc = b.lead()
    quo = a.ring.zero()
    rem = a
    while rem.terms:
        m, c = rem.lead()
        if not all(x >= y for x, y in zip(m, lm)):
            return None
        step = a.ring.monomial(tuple(x - y for x, y in zip(m, lm)), c / lc)
        quo = quo + step
        rem = rem - step * b
    return quo


@dataclass
class PolarData:
    """Everything needed to re-check a polar cylinder without searching."""
    derivation: Derivation
    g: Poly
    h0: Poly           # D g = h0 = unit * h^l
    h: Poly
    l: int
    unit: Fraction
    t: Poly
    k: int
    m: int
    d: int
    r: int
    alpha: int
    E: int             # s1 = s^k * h^E * t^(-r)

    @property
    def f(self) -> Poly:
        return self.derivation.domain.nf(self.h * self.t)

    def localization(self) -> Localization:
        return Localization(self.derivation.domain, self.h, self.t)

    def s1(self, L: Localization) -> LocalElement:
        # s = g / (unit * h^l)
        return L.make(self.g ** self.k * Fraction(1) / self.unit ** self.k,
                      self.l * self.k - self.E, self.r)


@dataclass
class PolarCylinderCertificate:
    data: PolarData
    s1: str
    coordinate_ring_generators: list[str]
    coordinate_ring_trivial: bool
    verified_degree: int
    fiber: FiberCheck
    radical_replacement: dict | None = None
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        x = self.data
        A = x.derivation.domain
        return {
            "kind": "polar_cylinder",
            "ring": A.to_json(),
            "derivation": x.derivation.to_json(),
            "g": str(x.g), "h0": str(x.h0), "h": str(x.h), "l": x.l, "unit": str(x.unit),
            "t": str(x.t), "f": str(x.f), "deg_f": x.f.degree(),
            "k": x.k, "m": x.m, "d": x.d, "r": x.r, "alpha": x.alpha, "E": x.E,
            "s1": self.s1,
            "coordinate_ring_generators": self.coordinate_ring_generators,
            "coordinate_ring_trivial": self.coordinate_ring_trivial,
            "verified_degree": self.verified_degree,
            "fiber": self.fiber.to_json(),
            "radical_replacement": self.radical_replacement,
            "report": self.report,
        }


def _expand_in_s1(D: Derivation, L: Localization, x: PolarData,
                  w: LocalElement) -> dict[int, LocalElement] | None:
    """Coefficients ``{i: c_i}`` with ``w = sum c_i s1^i`` and ``c_i`` in ker D.

    Each step removes ``D^n(w) s^n / n!``, which lowers the D-order; None is
    returned when some order is not a multiple of k, i.e. ``w`` is not a
    polynomial in ``s1`` over the kernel.
    """
    s = L.make(x.g * Fraction(1) / x.unit, x.l, 0)
    coeffs: dict[int, LocalElement] = {}
    while not L.is_zero(w):
        iterates = [w.num]
        while True:
            nxt = D(iterates[-1])
            if not nxt.terms:
                break
            iterates.append(nxt)
            if len(iterates) > ORDER_CAP:
                raise ResourceCapError(f"D-order exceeds {ORDER_CAP}")
        n = len(iterates) - 1
        if n % x.k:
            return None
        i = n // x.k
        top = LocalElement(iterates[-1].scale(Fraction(1, math.factorial(n))), w.p, w.q)
        # c_i = D^n(w)/n! * (s^k / s1)^i  and  s^k / s1 = h^(-E) t^r
        coeffs[i] = L.make(top.num, top.p + x.E * i, top.q - x.r * i)
        if n == 0:
            break
        sn = L.make(s.num ** n, s.p * n, 0)
        w = L.add(w, L.mul(top, sn), Fraction(-1))
    return coeffs


def _constant(L: Localization, c: LocalElement) -> Fraction | None:
    den = L.A.nf(L.hpow(c.p) * L.tpow(c.q))
    if not c.num.terms:
        return Fraction(0)
    lam = c.num.lead()[1] / den.lead()[1]
    return lam if not L.A.nf(c.num - den.scale(lam)).terms else None


def verify_polar(x: PolarData, verified_degree: int) -> dict:
    """Check that every ``A_{jF}/f^j`` (``jF <= verified_degree``) lies in ``ker[s1]``.

    When the kernel part of ``A_(f)`` is trivial in the tested range, the
    expansion coefficients are constants and their rank must equal
    ``dim A_{jF}``, matching the graded pieces of ``k[s1]`` filtered by ``j``.
    """
    D = x.derivation
    A = D.domain
    L = x.localization()
    f = x.f
    F = f.degree()
    checks = {
        "f_in_kernel": not D(f).terms,
        "t_in_kernel": not D(x.t).terms,
        "h_in_kernel": not D(x.h).terms,
        "dg_equals_h0": not A.nf(D(x.g) - x.h0).terms,
        "h0_is_unit_times_power": not A.nf(x.h0 - (x.h ** x.l).scale(x.unit)).terms,
        "gcd_k_d": math.gcd(x.k, x.d) == 1,
        "s1_degree_zero": (x.k * (x.g.degree() - x.l * x.h.degree()) + x.E * x.h.degree()
                           - x.r * x.t.degree()) == 0,
    }
    trivial = all(len(kernel_piece(D, j * F)) == 1 for j in range(1, verified_degree // F + 1))
    expansion_ok = True
    dims_ok = True
    per_level = []
    for j in range(verified_degree // F + 1):
        basis = A.basis(j * F)
        top = 0
        span = Span()
        for a in basis:
            coeffs = _expand_in_s1(D, L, x, L.make(a, j, j))
            if coeffs is None:
                expansion_ok = False
                break
            top = max([top] + list(coeffs))
            if trivial:
                vec = {}
                for i, c in coeffs.items():
                    lam = _constant(L, c)
                    if lam is None:
                        dims_ok = False
                    elif lam:
                        vec[i] = lam
                span.add(vec)
        level = {"j": j, "dim": len(basis), "max_s1_degree": top}
        if trivial:
            level["rank_in_k_s1"] = len(span)
            dims_ok = dims_ok and len(span) == len(basis)
        per_level.append(level)
        if not expansion_ok:
            break
    checks["expansion_in_s1"] = expansion_ok
    if trivial:
        checks["dimension_count"] = dims_ok
    return {"checks": checks, "levels": per_level, "coordinate_ring_trivial": trivial}


def polar_cylinder(D: Derivation, h: Poly | None = None, g: Poly | None = None,
                   bound: int = DEFAULT_BOUND, verified_degree: int = DEFAULT_VERIFIED_DEGREE,
                   alpha_max: int = 20, require_domain_fiber: bool = True) -> PolarCylinderCertificate:
    """``f = h t`` with ``Spec A_(f)`` a cylinder over ``Spec (A_(f))^D``.

    With ``require_domain_fiber=False`` a reducible fiber ``h = 1`` is recorded
    instead of rejected; the emitted certificate is still checked directly.
    """
    deg = _require_lnd(D)
    A = D.domain
    if h is None:
        base = positive_degree_slice(D, bound, kernel_bound=0, verified_degree=0)
        g, h0 = base.g, base.h
    else:
        h0, _ = _check_kernel_element(D, h)
        g = A.nf(g) if g is not None else find_slice_partner(D, h0)
        if A.nf(D(g) - h0).terms:
            raise InputError("the designated g does not satisfy D g = h")
    if h0.degree() <= 0:
        raise ConstructionError("h must have positive degree")
    h1, l, unit = radical_root(A, h0)
    replacement = None
    if l > 1:
        replacement = {"from": str(h0), "to": str(h1), "l": l, "unit": str(unit)}
    fiber = check_fiber(A, fiber_presentation(A, h1))
    if fiber.status == "reducible" and require_domain_fiber:
        raise ConstructionError(
            f"the fiber {h1} = 1 is reducible ({fiber.note}); replace h by a root h = h1^l of a "
            "factorization or designate another h"
        )
    m = h1.degree()
    d = -deg
    k = kernel_saturation_index(D, max(bound, 2 * m)).e
    r = d % m
    t = None
    for alpha in range(alpha_max + 1):
        piece = canonical_kernel_piece(D, k + alpha * m)
        if piece:
            t = piece[0]
            break
    if t is None:
        raise ResourceCapError(f"no kernel element of degree {k} + alpha*{m} for alpha <= {alpha_max}")
    num = k * d - r * (k + alpha * m)
    if num % m:
        raise ConstructionError("s1 cannot be normalized to degree 0")
    data = PolarData(D, g, h0, h1, l, unit, t, k, m, d, r, alpha, -num // m)
    report = verify_polar(data, verified_degree)
    L = data.localization()
    F = data.f.degree()
    f = data.f
    gens = subalgebra_generators(A, lambda j: canonical_kernel_piece(D, j * F),
                                 max(1, verified_degree // F))
    coord = []
    for b, j in gens:
        if A.nf(b - (f ** j).scale(b.lead()[1] / (f ** j).lead()[1])).terms:
            coord.append(f"({b})/({f})" + (f"^{j}" if j > 1 else ""))
    cert = PolarCylinderCertificate(data, L.format(data.s1(L)), coord,
                                    report["coordinate_ring_trivial"], verified_degree, fiber,
                                    replacement, report)
    return cert


# --------------------------------------------------------------------------------------
# principal cylinders in Veronese quasicones over P^1


def _rational_function(div: QDivisor) -> str:
    """A function on P^1 with the given degree-0 integral divisor (coordinate z)."""
    factors = []
    for P, n in div.coeffs.items():
        if P == INF:
            continue
        base = "z" if P == 0 else ("(z - c)" if P == GENERIC else
                                   (f"(z - {P})" if P > 0 else f"(z + {-P})"))
        factors.append(base if n == 1 else f"{base}^{n}")
    return "*".join(factors) if factors else "1"


def _slice_at(P) -> tuple[str, QDivisor]:
    """Coordinate on P^1 minus P and its divisor."""
    if P == INF:
        return "z", QDivisor({Fraction(0): 1, INF: -1})
    name = "z" if P == 0 else ("(z - c)" if P == GENERIC else
                               (f"(z - {P})" if P > 0 else f"(z + {-P})"))
    return f"1/{name}", QDivisor({P: -1, INF: 1})


@dataclass
class VeroneseCylinder:
    H: QDivisor
    point: object
    p: int
    q: int
    D: QDivisor
    div_phi: QDivisor
    phi: str
    div_h: QDivisor
    s: str
    j: int
    div_a: QDivisor
    liendo_pH: bool

    def checks(self) -> dict[str, bool]:
        r = Fraction(self.p, self.q)
        return {
            "coprime": math.gcd(self.p, self.q) == 1,
            "D_effective": self.D.is_effective() and len(self.D.support) == 1,
            "phi_integral": self.div_phi.is_integral(),
            "phi_degree_zero": self.div_phi.degree == 0,
            "D_equals_rH_plus_div_phi": self.D == r * self.H + self.div_phi,
            "h_in_A_p": (self.q * self.div_phi + self.p * self.H).is_effective(),
            "div_h_is_qD": self.div_h == self.q * self.D,
            "slice_fraction_in_A_pj": self.div_a.is_effective(),
            "liendo_pH": self.liendo_pH,
        }

    def verify(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "kind": "veronese_cylinder",
            "H": self.H.to_json(), "point": point_label(self.point), "p": self.p, "q": self.q,
            "D": self.D.to_json(), "div_phi": self.div_phi.to_json(), "phi": self.phi,
            "h": f"phi^{self.q} * u^{self.p}", "div_h": self.div_h.to_json(),
            "s": self.s, "j": self.j, "a": f"s * h^{self.j}", "div_a": self.div_a.to_json(),
            "Z": "point", "Z_prime": "A^1_*",
            "presentation": f"(A^({self.p}))_h = k[s][h, h^-1]",
            "statement": f"D(h) is a principal cylinder A^1_* x A^1 in the Veronese quasicone V^({self.p})",
            "liendo_pH": self.liendo_pH,
        }


def veronese_cylinder(H: QDivisor, point, p: int, q: int) -> VeroneseCylinder:
    """Principal cylinder ``D(h)`` in ``V^(p)`` from ``D = (p/q deg H)[point] ~ (p/q) H``."""
    if p < 1 or q < 1:
        raise InputError("p and q must be positive")
    if math.gcd(p, q) != 1:
        raise InputError(f"p/q = {p}/{q} is not in lowest terms")
    if H.degree <= 0:
        raise InputError("H must be ample")
    P = parse_point(point)
    r = Fraction(p, q)
    D = point_divisor(P, r * H.degree)
    div_phi = D - r * H
    if not div_phi.is_integral():
        raise ConstructionError(f"D - ({r})H = {div_phi} is not integral, so D is not linearly "
                                f"equivalent to ({r})H")
    s, div_s = _slice_at(P)
    c = r * H.degree
    j = math.ceil(Fraction(1) / (q * c))
    div_a = div_s + (j * q) * D
    return VeroneseCylinder(H, P, p, q, D, div_phi, _rational_function(div_phi), q * D, s, j,
                            div_a, liendo_cylindrical(p * H))
