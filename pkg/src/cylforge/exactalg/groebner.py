"""Buchberger's algorithm over Q under the ring's weighted revlex order."""

from __future__ import annotations

import heapq
import os
from fractions import Fraction
from typing import Sequence

from ..errors import InputError, ResourceCapError
from .poly import Poly, mono_coprime, mono_divides, mono_lcm

DEFAULT_MAX_STEPS = 10**6
ENV_MAX_STEPS = "CYLFORGE_MAX_STEPS"


def max_steps_default() -> int:
    raw = os.environ.get(ENV_MAX_STEPS)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{ENV_MAX_STEPS} must be an integer, got {raw!r}") from None
    if value < 0:
        raise InputError(f"{ENV_MAX_STEPS} must be non-negative")
    return value


def normal_form(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Fully reduced remainder of ``p`` modulo ``basis`` (assumed a Groebner basis)."""
    if not basis or not p.terms:
        return p
    ring = p.ring
    key = ring.key
    leads = []
    for g in basis:
        if g.ring != ring:
            raise InputError("basis and polynomial live in different rings")
        lm, lc = g.lead()
        tail = [(m, c / lc) for m, c in g.terms.items() if m != lm]
        leads.append((lm, tail))

    work = dict(p.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, tail in leads:
            if mono_divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for tm, tc in tail:
                    mm = tuple(x + y for x, y in zip(tm, q))
                    v = work.get(mm, 0) - c * tc
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return Poly(ring, remainder)


def _spoly(f: Poly, g: Poly) -> Poly:
    fm, fc = f.lead()
    gm, gc = g.lead()
    lcm = mono_lcm(fm, gm)
    a = tuple(x - y for x, y in zip(lcm, fm))
    b = tuple(x - y for x, y in zip(lcm, gm))
    return f.mul_term(a, Fraction(1) / fc) - g.mul_term(b, Fraction(1) / gc)


def reduce_basis(basis: Sequence[Poly]) -> list[Poly]:
    """Minimal, inter-reduced, monic, deterministically sorted basis."""
    polys = [g.monic() for g in basis if g.terms]
    if not polys:
        return []
    ring = polys[0].ring
    key = ring.key
    polys.sort(key=lambda g: key(g.lead_monomial()))
    minimal: list[Poly] = []
    for g in polys:
        lm = g.lead_monomial()
        if any(mono_divides(h.lead_monomial(), lm) for h in minimal):
            continue
        minimal = [h for h in minimal if not mono_divides(lm, h.lead_monomial())]
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm, _ = g.lead()
        tail = Poly(ring, {m: c for m, c in g.terms.items() if m != lm})
        reduced.append((ring.monomial(lm) + normal_form(tail, others)).monic())
    reduced.sort(key=lambda g: key(g.lead_monomial()))
    return reduced


def groebner(gens: Sequence[Poly], max_steps: int | None = None) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Uses the normal selection strategy with Buchberger's coprime-leading-monomial
    criterion.  Each S-polynomial reduction counts as one step; exceeding
    ``max_steps`` (default from ``CYLFORGE_MAX_STEPS`` or 10**6) raises
    :class:`ResourceCapError`.
    """
    if max_steps is None:
        max_steps = max_steps_default()
    basis = [g.monic() for g in gens if g.terms]
    if not basis:
        return []
    ring = basis[0].ring
    if any(g.ring != ring for g in basis):
        raise InputError("generators live in different rings")
    key = ring.key
    if any(g.is_constant() for g in basis):
        return [ring.one()]

    # dedupe only: dropping generators by lead divisibility is valid for a finished basis only
    basis = list(dict.fromkeys(basis))
    pairs: list = []
    counter = 0

    def push(i: int, j: int):
        nonlocal counter
        lcm = mono_lcm(basis[i].lead_monomial(), basis[j].lead_monomial())
        heapq.heappush(pairs, (key(lcm), counter, i, j))
        counter += 1

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)

    steps = 0
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        f, g = basis[i], basis[j]
        if mono_coprime(f.lead_monomial(), g.lead_monomial()):
            continue
        steps += 1
        if steps > max_steps:
            raise ResourceCapError(f"Groebner basis computation exceeded {max_steps} "
                                   f"S-polynomial reductions (set {ENV_MAX_STEPS} to raise the cap)")
        r = normal_form(_spoly(f, g), basis)
        if not r.terms:
            continue
        r = r.monic()
        if r.is_constant():
            return [ring.one()]
        basis.append(r)
        new = len(basis) - 1
        for k in range(new):
            push(k, new)
    return reduce_basis(basis)


def ideal_member(p: Poly, gb: Sequence[Poly]) -> bool:
    return not normal_form(p, gb).terms
