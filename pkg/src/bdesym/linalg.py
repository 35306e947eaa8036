"""Exact sparse linear algebra over Q (vectors are ``{key: Fraction}`` dicts)."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List

Vector = Dict[Hashable, Fraction]


def _axpy(v: Vector, coef: Fraction, row: Vector) -> None:
    """v -= coef * row, in place."""
    for k, r in row.items():
        s = v.get(k, 0) - coef * r
        if s:
            v[k] = s
        else:
            v.pop(k, None)


class Echelon:
    """Incrementally built row-echelon basis of a subspace."""

    def __init__(self, vectors: Iterable[Vector] = ()):
        self.rows: List[tuple] = []  # (pivot, row with row[pivot] == 1)
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        out = dict(v)
        for p, row in self.rows:
            c = out.get(p)
            if c:
                _axpy(out, c, row)
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r, key=repr)
        c = r[p]
        self.rows.append((p, {k: x / c for k, x in r.items()}))
        return True


def rank(vectors: Iterable[Vector]) -> int:
    return Echelon(vectors).rank


def nullspace(rows: Iterable[Vector], columns: List[Hashable]) -> List[Vector]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given columns."""
    order = {c: i for i, c in enumerate(columns)}
    pivots: Dict[Hashable, Vector] = {}
    for row in rows:
        r = dict(row)
        for p, prow in pivots.items():
            c = r.get(p)
            if c:
                _axpy(r, c, prow)
        if not r:
            continue
        p = min(r, key=order.__getitem__)
        c = r[p]
        r = {k: x / c for k, x in r.items()}
        for q, qrow in pivots.items():
            cq = qrow.get(p)
            if cq:
                _axpy(qrow, cq, r)
        pivots[p] = r
    basis = []
    for free in columns:
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for p, prow in pivots.items():
            c = prow.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis
