"""Sparse exact Gaussian elimination over a :class:`~orbiloop.field.Field`.

Vectors are ``dict[int, raw scalar]`` with zero entries omitted.  The echelon
form is kept fully reduced, so inserting a row only needs one pass over the
row's own support.
"""

from __future__ import annotations

from typing import Iterable

from .field import Field, RawScalar

SparseVec = dict[int, RawScalar]


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Return ``vec`` minus its projection onto the current pivots."""
        f = self.field
        r = {c: v for c, v in vec.items() if v != 0}
        for c in [c for c in r if c in self.pivots]:
            coef = r.get(c, 0)
            if coef == 0:
                continue
            for cc, pv in self.pivots[c].items():
                nv = f.sub(r.get(cc, f.zero), f.mul(coef, pv))
                if nv == 0:
                    r.pop(cc, None)
                else:
                    r[cc] = nv
        return r

    def insert(self, vec: SparseVec) -> bool:
        """Add ``vec`` to the row space; return True if the rank grew."""
        f = self.field
        r = self.reduce(vec)
        if not r:
            return False
        col = min(r)
        scale = f.inv(r[col])
        r = {c: f.mul(v, scale) for c, v in r.items()}
        for row in self.pivots.values():
            coef = row.get(col)
            if coef:
                for cc, v in r.items():
                    nv = f.sub(row.get(cc, f.zero), f.mul(coef, v))
                    if nv == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
        self.pivots[col] = r
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)


def echelon(rows: Iterable[SparseVec], field: Field) -> Echelon:
    e = Echelon(field)
    for row in rows:
        e.insert(row)
    return e


def rank(rows: Iterable[SparseVec], field: Field) -> int:
    return len(echelon(rows, field))


def nullspace(rows: Iterable[SparseVec], ncols: int, field: Field) -> list[SparseVec]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``field^ncols``.

    One basis vector per free column, in increasing column order.
    """
    e = echelon(rows, field)
    basis = []
    for free in range(ncols):
        if free in e.pivots:
            continue
        vec = {free: field.one}
        for pc, row in e.pivots.items():
            v = row.get(free)
            if v:
                vec[pc] = field.neg(v)
        basis.append(vec)
    return basis


def same_span(a: Iterable[SparseVec], b: Iterable[SparseVec], field: Field) -> bool:
    a, b = list(a), list(b)
    ea, eb = echelon(a, field), echelon(b, field)
    return len(ea) == len(eb) and all(ea.contains(v) for v in b)
