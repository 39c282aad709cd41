"""Sparse exact linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` keyed by basis index with no stored
zeros. Everything here is deliberately small: the matrices that show up in
this package have at most a few hundred rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

Vector = Dict[int, Fraction]


def clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c != 0}


def axpy(a: Fraction, x: Vector, y: Vector) -> Vector:
    """Return y + a*x as a new vector."""
    out = dict(y)
    for k, c in x.items():
        s = out.get(k, 0) + a * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally row-reduced basis of a subspace.

    Each stored row has a pivot (its smallest key) with coefficient 1, and no
    other stored row has a nonzero entry in that pivot column.
    """

    def __init__(self, rows: Iterable[Vector] = ()):
        self.rows: Dict[int, Vector] = {}
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        v = dict(v)
        for k in sorted(v):
            c = v.get(k)
            if c and k in self.rows:
                v = axpy(-c, self.rows[k], v)
        return v

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def add(self, v: Vector) -> bool:
        """Add v to the span. Returns False if v was already in it."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / Fraction(v[p])
        v = {k: c * inv for k, c in v.items()}
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c:
                self.rows[q] = axpy(-c, v, row)
        self.rows[p] = v
        return True

    def basis(self) -> List[Vector]:
        return [self.rows[p] for p in sorted(self.rows)]

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e


def rank(rows: Iterable[Vector]) -> int:
    return len(Echelon(rows))


def kernel_combinations(vectors: List[Vector], modulo: Optional[Echelon] = None) -> List[Vector]:
    """Basis of {c : sum_j c_j * vectors[j] lies in span(modulo)}.

    Returned vectors are keyed by the position j in ``vectors``.
    """
    pivots: Dict[int, Tuple[Vector, Vector]] = {}
    kernel: List[Vector] = []
    for j, v in enumerate(vectors):
        w = modulo.reduce(v) if modulo is not None else dict(v)
        comb: Vector = {j: Fraction(1)}
        while w:
            p = min(w)
            if p not in pivots:
                break
            pw, pc = pivots[p]
            c = w[p] / pw[p]
            w = axpy(-c, pw, w)
            comb = axpy(-c, pc, comb)
        if w:
            pivots[min(w)] = (w, comb)
        else:
            kernel.append(comb)
    return kernel


def combine(coeffs: Vector, vectors: List[Vector]) -> Vector:
    out: Vector = {}
    for j, c in coeffs.items():
        out = axpy(c, vectors[j], out)
    return out
