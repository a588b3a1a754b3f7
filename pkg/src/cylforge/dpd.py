"""Q-divisors on the projective line and the DPD side of cylindricity.

A graded normal domain with ``Proj A = P^1`` is ``A_nu = H^0(P^1, O(floor(nu*H)))``
for an ample Q-divisor ``H``; on ``P^1`` an integral divisor of degree
``n >= 0`` has ``n + 1`` sections, so everything reduces to exact arithmetic on
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError

INF = "inf"
GENERIC = "generic"


def parse_point(label) -> Fraction | str:
    """``"inf"``, ``"generic"`` or a rational coordinate such as ``"0"``, ``"1/2"``."""
    if isinstance(label, Fraction):
        return label
    if isinstance(label, int):
        return Fraction(label)
    if not isinstance(label, str):
        raise InputError(f"bad point label {label!r}")
    text = label.strip()
    if text in ("inf", "oo", "∞"):
        return INF
    if text == GENERIC:
        return GENERIC
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad point label {label!r}") from None


def point_label(P) -> str:
    return P if isinstance(P, str) else str(P)


def _point_key(P):
    if isinstance(P, Fraction):
        return (0, P)
    return (1, 0) if P == INF else (2, 0)


def _rational(c) -> Fraction:
    try:
        return Fraction(c)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"bad rational coefficient {c!r}") from None


class QDivisor:
    """Finite formal sum of points of P^1 with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        out: dict = {}
        for P, c in items:
            P = parse_point(P)
            c = _rational(c)
            if P in out:
                raise InputError(f"point {point_label(P)} listed twice")
            if c:
                out[P] = c
        self.coeffs = dict(sorted(out.items(), key=lambda kv: _point_key(kv[0])))

    @classmethod
    def from_json(cls, data: dict) -> "QDivisor":
        unknown = set(data) - {"points", "coeffs"}
        if unknown:
            raise InputError(f"unknown divisor keys: {sorted(unknown)}")
        points, coeffs = data.get("points", []), data.get("coeffs", [])
        if len(points) != len(coeffs):
            raise InputError("divisor needs one coefficient per point")
        return cls(zip(points, coeffs))

    def to_json(self) -> dict:
        return {"points": [point_label(P) for P in self.coeffs],
                "coeffs": [str(c) for c in self.coeffs.values()]}

    def __repr__(self):
        return f"QDivisor({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = [f"({c})[{point_label(P)}]" for P, c in self.coeffs.items()]
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, QDivisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __getitem__(self, P) -> Fraction:
        return self.coeffs.get(parse_point(P), Fraction(0))

    def __add__(self, other: "QDivisor") -> "QDivisor":
        out = dict(self.coeffs)
        for P, c in other.coeffs.items():
            out[P] = out.get(P, 0) + c
        return QDivisor(out)

    def __neg__(self):
        return QDivisor({P: -c for P, c in self.coeffs.items()})

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return self + (-other)

    def __rmul__(self, r) -> "QDivisor":
        r = Fraction(r)
        return QDivisor({P: r * c for P, c in self.coeffs.items()})

    @property
    def support(self) -> list:
        return list(self.coeffs)

    @property
    def degree(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def floor(self) -> "QDivisor":
        return QDivisor({P: math.floor(c) for P, c in self.coeffs.items()})

    def fractional_part(self) -> "QDivisor":
        return self - self.floor()


def point_divisor(P, c=1) -> QDivisor:
    return QDivisor({parse_point(P): c})


# --------------------------------------------------------------------------------------
# Pham-Brieskorn


@dataclass(frozen=True)
class PhamBrieskorn:
    a: int
    b: int
    c: int
    alpha: int
    beta: int
    gamma: int
    H: QDivisor

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.b * self.c, self.a * self.c, self.a * self.b)

    def ring_json(self) -> dict:
        return {"variables": ["x", "y", "z"], "weights": list(self.weights),
                "relations": [f"x^{self.a} + y^{self.b} + z^{self.c}"]}

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma, "H": self.H.to_json(), "degree": str(self.H.degree),
                "weights": list(self.weights)}


def _check_triple(a: int, b: int, c: int) -> None:
    if min(a, b, c) < 1:
        raise InputError("a, b, c must be positive")
    if math.gcd(a, b) != 1 or math.gcd(a, c) != 1 or math.gcd(b, c) != 1:
        raise InputError(f"({a}, {b}, {c}) is not pairwise coprime")


def pham_brieskorn(a: int, b: int, c: int) -> PhamBrieskorn:
    """Normalized ``(alpha, beta, gamma)`` with ``alpha*bc + beta*ac + gamma*ab = 1``."""
    _check_triple(a, b, c)
    alpha = pow(b * c, -1, a) if a > 1 else 0
    beta = pow(a * c, -1, b) if b > 1 else 0
    num = 1 - alpha * b * c - beta * a * c
    gamma, rem = divmod(num, a * b)
    assert rem == 0, "normalization failed to produce an integral gamma"
    H = QDivisor({Fraction(0): Fraction(alpha, a), Fraction(1): Fraction(beta, b),
                  INF: Fraction(gamma, c)})
    assert H.degree == Fraction(1, a * b * c)
    return PhamBrieskorn(a, b, c, alpha, beta, gamma, H)


def pham_brieskorn_divisor(a: int, b: int, c: int) -> QDivisor:
    return pham_brieskorn(a, b, c).H


def h0_floor(H: QDivisor, nu: int) -> int:
    """``dim H^0(P^1, O(floor(nu*H)))``."""
    if nu < 0:
        raise InputError("nu must be non-negative")
    total = sum(math.floor(nu * c) for c in H.coeffs.values())
    return max(0, total + 1)


def liendo_cylindrical(H: QDivisor) -> bool:
    """The fractional part of the ample divisor ``H`` lives on at most two points."""
    if H.degree <= 0:
        raise InputError(f"H must be ample (degree {H.degree} <= 0)")
    return len(H.fractional_part().support) <= 2


def veronese_cylindrical_pb(a: int, b: int, c: int, d: int) -> bool:
    _check_triple(a, b, c)
    if d < 1:
        raise InputError("d must be positive")
    answer = d % a == 0 or d % b == 0 or d % c == 0
    via_divisor = liendo_cylindrical(d * pham_brieskorn_divisor(a, b, c))
    assert answer == via_divisor, f"divisibility and fractional-support criteria disagree at d={d}"
    return answer


# --------------------------------------------------------------------------------------
# cylindricity spectrum


def _qlcm(values: Iterable[Fraction]) -> Fraction:
    """Generator of the intersection of the subgroups ``v*Z`` of Q."""
    num, den = 1, 0
    for v in values:
        v = abs(v)
        num = num * v.numerator // math.gcd(num, v.numerator)
        den = math.gcd(den, v.denominator)
    return Fraction(num, den or 1)


def integrality_conditions(H: QDivisor, P) -> list[Fraction]:
    """Rationals ``x`` such that ``r*H - (r*deg H)[P]`` is integral iff every ``r*x`` is."""
    out = [c for Q, c in H.coeffs.items() if Q != P]
    out.append(H[P] - H.degree if P != GENERIC else -H.degree)
    return [x for x in out if x]


def point_lattice(H: QDivisor, P) -> Fraction | None:
    """Positive generator of ``{r : r*H - (r deg H)[P] integral}``; None when that is all of Q."""
    conds = integrality_conditions(H, P)
    if not conds:
        return None
    return _qlcm(Fraction(1) / x for x in conds)


@dataclass
class SpectrumWitness:
    r: Fraction
    point: object
    D: QDivisor

    def verify(self, H: QDivisor) -> bool:
        rest = self.r * H - self.D
        return (self.r > 0 and self.D.is_effective() and len(self.D.support) == 1
                and self.D.degree == self.r * H.degree
                and rest.is_integral() and rest.degree == 0)

    def to_json(self) -> dict:
        return {"r": str(self.r), "point": point_label(self.point), "D": self.D.to_json()}


@dataclass
class SpectrumReport:
    H: QDivisor
    tested_bound: tuple[int, int]
    members: list[SpectrumWitness]
    primitive_members: list[Fraction]
    dense: bool
    point_lattices: dict = field(default_factory=dict)

    def member_values(self) -> list[Fraction]:
        return [w.r for w in self.members]

    def to_json(self) -> dict:
        return {
            "kind": "spectrum",
            "H": self.H.to_json(),
            "tested_bound": {"max_num": self.tested_bound[0], "max_den": self.tested_bound[1]},
            "members": [w.to_json() for w in self.members],
            "primitive_members": [str(r) for r in self.primitive_members],
            "primitive_count": len(self.primitive_members),
            "dense": self.dense,
            "point_lattices": {point_label(P): (str(g) if g is not None else "Q")
                               for P, g in self.point_lattices.items()},
        }


def spectrum_points(H: QDivisor) -> list:
    return list(H.support) + [GENERIC]


def cylindricity_spectrum(H: QDivisor, max_num: int = 100, max_den: int = 10) -> SpectrumReport:
    """All ``r = p/q`` (p <= max_num, q <= max_den) in the cylindricity spectrum of (P^1, H).

    A cylinder in a curve is a single point's complement, so ``r`` is a member
    iff ``r*H ~ (r deg H)[P]`` for some point ``P``; on P^1 this means the
    difference is integral (degree zero is automatic).
    """
    if H.degree <= 0:
        raise InputError(f"H must be ample (degree {H.degree} <= 0)")
    if max_num < 1 or max_den < 1:
        raise InputError("bounds must be positive")
    points = spectrum_points(H)
    lattices = {P: point_lattice(H, P) for P in points}
    candidates = sorted({Fraction(p, q) for p in range(1, max_num + 1) for q in range(1, max_den + 1)})
    members = []
    for r in candidates:
        for P in points:
            D = point_divisor(P, r * H.degree)
            w = SpectrumWitness(r, P, D)
            if w.verify(H):
                members.append(w)
                break
    values = [w.r for w in members]
    primitive = [r for r in values
                 if not any(s != r and (r / s).denominator == 1 for s in values)]
    # cross-check against the closed form: members are the union of the point lattices
    for r in values:
        assert any(g is None or (r / g).denominator == 1 for g in lattices.values())
    dense = any(g is None for g in lattices.values())
    return SpectrumReport(H, (max_num, max_den), members, primitive, dense, lattices)


def verify_spectrum_witness(H: QDivisor, data: dict) -> bool:
    w = SpectrumWitness(Fraction(data["r"]), parse_point(data["point"]), QDivisor.from_json(data["D"]))
    return w.verify(H)
