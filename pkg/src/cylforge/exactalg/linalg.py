"""Gaussian elimination over Q on sparse row vectors.

Vectors are dicts ``{column: Fraction}``.  Everything here is exact; sizes are
the dimensions of graded pieces, so dense-ish pure Python is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Sequence

Vector = dict


def _axpy(target: dict, alpha: Fraction, source: dict) -> None:
    for k, v in source.items():
        s = target.get(k, 0) + alpha * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class Span:
    """Incrementally built subspace that remembers how each vector was formed.

    ``add(v, label)`` returns True if ``v`` was independent of what is already
    stored.  ``express(v)`` writes ``v`` as a combination of the *labels* of the
    independent vectors added so far, or returns None when ``v`` is outside
    the span.
    """

    def __init__(self, column_order: Sequence[Hashable] | None = None):
        self._rank = {c: i for i, c in enumerate(column_order)} if column_order else None
        self._pivots: dict = {}          # pivot column -> (row, combination)
        self.labels: list = []

    def __len__(self):
        return len(self.labels)

    def _pick(self, row: dict):
        if self._rank is None:
            return min(row, key=repr)
        return min(row, key=lambda c: self._rank.get(c, len(self._rank)))

    def reduce(self, v: dict) -> tuple[dict, dict]:
        row = dict(v)
        combo: dict = {}
        changed = True
        while changed and row:
            changed = False
            for col in list(row):
                if col in self._pivots and col in row:
                    prow, pcombo = self._pivots[col]
                    alpha = -row[col]
                    _axpy(row, alpha, prow)
                    _axpy(combo, alpha, pcombo)
                    changed = True
        return row, combo

    def add(self, v: dict, label=None) -> bool:
        row, combo = self.reduce(v)
        if not row:
            return False
        idx = len(self.labels)
        self.labels.append(label if label is not None else idx)
        _axpy(combo, Fraction(1), {idx: Fraction(1)})
        col = self._pick(row)
        inv = Fraction(1) / row[col]
        row = {k: c * inv for k, c in row.items()}
        combo = {k: c * inv for k, c in combo.items()}
        # keep pivots fully reduced so reduce() terminates in one sweep per column
        for pc, (prow, pcombo) in list(self._pivots.items()):
            if col in prow:
                alpha = -prow[col]
                prow = dict(prow)
                pcombo = dict(pcombo)
                _axpy(prow, alpha, row)
                _axpy(pcombo, alpha, combo)
                self._pivots[pc] = (prow, pcombo)
        self._pivots[col] = (row, combo)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: dict) -> dict | None:
        """Coefficients on the stored labels such that sum(coef * vector) == v."""
        row, combo = self.reduce(v)
        if row:
            return None
        return {self.labels[i]: -c for i, c in combo.items() if c}


def rank(vectors: Sequence[dict]) -> int:
    s = Span()
    for v in vectors:
        s.add(v)
    return len(s)


def nullspace(columns: Sequence[dict]) -> list[dict]:
    """Basis of {c : sum_i c_i * columns[i] == 0}, each as ``{i: coeff}``.

    Deterministic: the basis vector for a dependent column ``j`` has
    coefficient 1 at ``j`` and is supported on ``j`` and earlier pivot columns.
    """
    span = Span()
    kernel = []
    for j, col in enumerate(columns):
        expr = span.express(col)
        if expr is None:
            span.add(col, label=j)
        else:
            vec = {j: Fraction(1)}
            for i, c in expr.items():
                vec[i] = vec.get(i, 0) - c
            kernel.append({k: c for k, c in vec.items() if c})
    return kernel


def rref_basis(vectors: Sequence[dict], column_order: Sequence[Hashable]) -> list[dict]:
    """Reduced row echelon basis of the span, pivots chosen by ``column_order``."""
    span = Span(column_order)
    for v in vectors:
        span.add(v)
    rank_of = {c: i for i, c in enumerate(column_order)}
    rows = [row for _, (row, _) in sorted(span._pivots.items(), key=lambda kv: rank_of[kv[0]])]
    return rows
