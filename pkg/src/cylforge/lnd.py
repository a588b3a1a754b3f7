"""Derivations of graded domains and locally nilpotent ones in particular."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ConstructionError, DerivationError, InputError, ResourceCapError
from .exactalg import Poly, groebner, normal_form, nullspace
from .graded import GradedDomain, subalgebra_generators

DEFAULT_NILPOTENCY_CAP = 200


class Derivation:
    """A derivation given by the images of the generators.

    Construct through :func:`check_derivation` to get the well-definedness
    check; the bare constructor trusts its input.
    """

    def __init__(self, domain: GradedDomain, images: Sequence[Poly]):
        if len(images) != domain.ring.nvars:
            raise InputError(f"expected {domain.ring.nvars} images, got {len(images)}")
        self.domain = domain
        self.images: tuple[Poly, ...] = tuple(domain.nf(p) for p in images)
        self._components = None

    def __call__(self, p: Poly) -> Poly:
        out = p.ring.zero()
        for i, img in enumerate(self.images):
            if img.terms:
                dp = p.diff(i)
                if dp.terms:
                    out = out + dp * img
        return self.domain.nf(out)

    def iterate(self, p: Poly, k: int) -> Poly:
        for _ in range(k):
            if not p.terms:
                break
            p = self(p)
        return p

    def __eq__(self, other):
        return (isinstance(other, Derivation) and self.domain == other.domain
                and self.images == other.images)

    def __hash__(self):
        return hash((self.domain, self.images))

    def __repr__(self):
        return f"Derivation({self.to_json()})"

    def to_json(self) -> dict:
        return {v: str(img) for v, img in zip(self.domain.variables, self.images)}

    def is_zero(self) -> bool:
        return not any(img.terms for img in self.images)

    @property
    def components(self) -> list[tuple[int, "Derivation"]]:
        """Homogeneous components ``[(degree, component), ...]`` by increasing degree."""
        if self._components is None:
            ring = self.domain.ring
            parts: dict[int, list[dict]] = {}
            for i, img in enumerate(self.images):
                for m, c in img.terms.items():
                    deg = ring.wdeg(m) - ring.weights[i]
                    slot = parts.setdefault(deg, [dict() for _ in self.images])
                    slot[i][m] = c
            self._components = [
                (deg, Derivation(self.domain, [Poly(ring, t) for t in parts[deg]]))
                for deg in sorted(parts)
            ]
        return self._components

    def is_homogeneous(self) -> bool:
        return len(self.components) == 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous derivation, else None."""
        comps = self.components
        return comps[0][0] if len(comps) == 1 else None

    def scaled(self, a: Poly) -> "Derivation":
        return Derivation(self.domain, [a * img for img in self.images])


def check_derivation(A: GradedDomain, images: Mapping[str, Poly | str] | Sequence[Poly | str]) -> Derivation:
    """Build the derivation and verify it preserves the relation ideal."""
    if isinstance(images, Mapping):
        unknown = set(images) - set(A.variables)
        if unknown:
            raise InputError(f"derivation names unknown variables {sorted(unknown)}")
        missing = [v for v in A.variables if v not in images]
        if missing:
            raise InputError(f"derivation is missing images for {missing}")
        seq = [images[v] for v in A.variables]
    else:
        seq = list(images)
    polys = [A.parse(p) if isinstance(p, str) else p for p in seq]
    D = Derivation(A, polys)
    for r in A.relations:
        image = D(r)
        if image.terms:
            raise DerivationError(r, image)
    return D


def principal_component(D: Derivation) -> Derivation:
    if D.is_zero():
        raise InputError("the zero derivation has no principal component")
    return D.components[-1][1]


# --------------------------------------------------------------------------------------
# local nilpotency


@dataclass
class NilpotencyVerdict:
    status: str                           # nilpotent | not_nilpotent | unknown
    reason: str                           # negative_degree_automatic | iteration | cap_exceeded
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason, "witness": self.witness}


def _proportional(p: Poly, q: Poly) -> Fraction | None:
    """c with p == c*q, or None."""
    if not p.terms or p.terms.keys() != q.terms.keys():
        return None
    m = next(iter(p.terms))
    c = p.terms[m] / q.terms[m]
    if all(p.terms[k] == c * q.terms[k] for k in p.terms):
        return c
    return None


def _divisibility_witness(D: Derivation) -> str | None:
    """A generator x with 0 != D(x) in xA; impossible for an LND of a domain."""
    A = D.domain
    for i, img in enumerate(D.images):
        if not img.terms:
            continue
        x = A.ring.var(i)
        if A.is_zero(x):
            continue
        gb = groebner(list(A.gb) + [x])
        if not normal_form(img, gb).terms:
            return A.variables[i]
    return None


def is_locally_nilpotent(D: Derivation, cap: int = DEFAULT_NILPOTENCY_CAP) -> NilpotencyVerdict:
    """Decide nilpotency where an exact argument exists, otherwise report ``unknown``.

    ``not_nilpotent`` is only returned with a certificate: either a generator
    whose iterates repeat up to a nonzero scalar, or a generator dividing its
    own nonzero image (for D or for its principal component).
    """
    A = D.domain
    names = A.variables
    if D.is_zero():
        return NilpotencyVerdict("nilpotent", "iteration", {"vanishing": {v: 1 for v in names}})

    deg = D.degree
    if deg is not None and deg < 0:
        counts = {}
        for i, v in enumerate(names):
            p, k = A.ring.var(i), 0
            while p.terms:
                p, k = D(p), k + 1
            counts[v] = k
        return NilpotencyVerdict("nilpotent", "negative_degree_automatic",
                                 {"degree": deg, "vanishing": counts})

    for label, E in (("derivation", D), ("principal_component", principal_component(D))):
        var = _divisibility_witness(E)
        if var is not None:
            return NilpotencyVerdict("not_nilpotent", "iteration",
                                     {"kind": "divisibility", "applied_to": label, "variable": var,
                                      "image": str(E(A.ring.var(var)))})

    counts = {}
    for i, v in enumerate(names):
        history = [A.nf(A.ring.var(i))]
        p = history[0]
        for k in range(1, cap + 1):
            p = D(p)
            if not p.terms:
                counts[v] = k
                break
            for j, q in enumerate(history):
                ratio = _proportional(p, q)
                if ratio is not None:
                    return NilpotencyVerdict("not_nilpotent", "iteration",
                                             {"kind": "eigen", "variable": v, "from": j, "to": k,
                                              "ratio": str(ratio)})
            history.append(p)
        else:
            return NilpotencyVerdict("unknown", "cap_exceeded",
                                     {"cap": cap, "variable": v, "vanishing": counts})
    return NilpotencyVerdict("nilpotent", "iteration", {"vanishing": counts})


def require_homogeneous(D: Derivation) -> int:
    if D.is_zero() or not D.is_homogeneous():
        raise InputError("a nonzero homogeneous derivation is required")
    return D.degree


# --------------------------------------------------------------------------------------
# kernels


def kernel_piece(D: Derivation, nu: int) -> list[Poly]:
    """Basis of the degree-``nu`` part of ker D."""
    require_homogeneous(D)
    A = D.domain
    if nu < 0:
        return []
    basis = A.basis(nu)
    kernel = nullspace([A.vector(D(b)) for b in basis])
    out = []
    for vec in kernel:
        out.append(A.nf(sum((basis[i].scale(c) for i, c in vec.items()), A.ring.zero())))
    return out


@dataclass
class KernelIndex:
    e: int
    certified: bool
    consistent: bool           # gcd(e, -deg D) == 1
    last_change: int           # degree at which the running gcd last moved
    bound: int
    degrees: list[int]

    def to_json(self) -> dict:
        return {"e": self.e, "certified": self.certified, "consistent": self.consistent,
                "last_change": self.last_change, "bound": self.bound,
                "kernel_degrees": self.degrees}


def kernel_saturation_index(D: Derivation, bound: int = 60) -> KernelIndex:
    """e(A^D) from kernel pieces up to ``bound`` with a stability heuristic."""
    d = -require_homogeneous(D)
    g, last, degrees = 0, 0, []
    for nu in range(1, bound + 1):
        if kernel_piece(D, nu):
            degrees.append(nu)
            new = math.gcd(g, nu)
            if new != g:
                g, last = new, nu
    if g == 0:
        raise ResourceCapError(f"no nonzero kernel element of positive degree up to {bound}; "
                               "increase the bound (the kernel is not contained in A_0 when "
                               "dim_S Y >= 1)")
    window = max(2 * abs(d), 10)
    consistent = math.gcd(g, d) == 1
    certified = consistent and bound - last >= window
    return KernelIndex(g, certified, consistent, last, bound, degrees)


def kernel_generators(D: Derivation, bound: int) -> list[tuple[Poly, int]]:
    """Algebra generators of ker D found up to degree ``bound``."""
    require_homogeneous(D)
    return subalgebra_generators(D.domain, lambda nu: kernel_piece(D, nu), bound)


@dataclass
class Replica:
    a: Poly
    j: int
    derivation: Derivation
    degree: int

    def to_json(self) -> dict:
        return {"a": str(self.a), "j": self.j, "degree": self.degree,
                "derivation": self.derivation.to_json()}


def replica(D: Derivation, m: int, bound: int = 60) -> Replica:
    """``a*D`` with a in ker D of minimal degree j such that j + deg D = 0 mod m."""
    if m < 1:
        raise InputError("m must be positive")
    deg = require_homogeneous(D)
    seen = []
    for j in range(0, bound + 1):
        piece = [D.domain.ring.one()] if j == 0 else kernel_piece(D, j)
        if piece:
            seen.append(j)
        if (j + deg) % m == 0 and piece:
            a = piece[0]
            return Replica(a, j, D.scaled(a), j + deg)
    e = 0
    for j in seen:
        e = math.gcd(e, j)
    raise ConstructionError(
        f"no kernel element of degree j <= {bound} with j + ({deg}) = 0 mod {m}: kernel degrees "
        f"found are multiples of {e}, and j = {-deg} mod {m} has no solution in {e}Z "
        f"(gcd({e}, {m}) = {math.gcd(e, m)} does not divide {deg})"
    )
