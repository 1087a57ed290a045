"""The group algebra k[G] and its center Z(k[G]).

Class sums are the canonical basis of the center.  :func:`center_brute_force`
solves the commutant equations directly and exists as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import RATIONALS, Field, FieldMismatchError, RawScalar, format_scalar
from .groups import FiniteGroup
from .linalg import nullspace, same_span

Sparse = dict[int, RawScalar]


def convolve(group: FiniteGroup, field: Field, x: Sparse, y: Sparse) -> Sparse:
    """Sparse product in k[G]: ``(xy)(g) = sum_{ab=g} x(a) y(b)``."""
    out: Sparse = {}
    mult, add, mul = group.mult, field.add, field.mul
    for a, xa in x.items():
        row = mult[a]
        for b, yb in y.items():
            g = row[b]
            out[g] = add(out.get(g, field.zero), mul(xa, yb))
    return {g: v for g, v in out.items() if v != 0}


@lru_cache(maxsize=8192)
def _convolve_frozen(group, field, x, y):
    return tuple(sorted(convolve(group, field, dict(x), dict(y)).items()))


def convolve_cached(group: FiniteGroup, field: Field, x: Sparse, y: Sparse) -> Sparse:
    """:func:`convolve` memoised on the (hashable) supports of its arguments."""
    fx = tuple(sorted(x.items()))
    fy = tuple(sorted(y.items()))
    return dict(_convolve_frozen(group, field, fx, fy))


class GroupAlgebraElement:
    """Element of k[G] stored as a dense coefficient list indexed by element."""

    __slots__ = ("group", "field", "coeffs")

    def __init__(self, group: FiniteGroup, field: Field, coeffs=None):
        self.group = group
        self.field = field
        if coeffs is None:
            coeffs = [field.zero] * group.order
        elif isinstance(coeffs, dict):
            dense = [field.zero] * group.order
            for g, v in coeffs.items():
                dense[g] = field.coerce(v)
            coeffs = dense
        else:
            coeffs = [field.coerce(v) for v in coeffs]
        if len(coeffs) != group.order:
            raise ValueError("coefficient vector length must equal the group order")
        self.coeffs = coeffs

    @classmethod
    def basis(cls, group: FiniteGroup, field: Field, g: int) -> "GroupAlgebraElement":
        return cls(group, field, {g: 1})

    def sparse(self) -> Sparse:
        return {g: v for g, v in enumerate(self.coeffs) if v != 0}

    def _check(self, other: "GroupAlgebraElement") -> None:
        if other.group is not self.group:
            raise ValueError("group mismatch")
        if other.field != self.field:
            raise FieldMismatchError("field mismatch")

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return multiply(self, other)
        c = self.field.coerce(other)
        return GroupAlgebraElement(self.group, self.field,
                                   [self.field.mul(c, v) for v in self.coeffs])

    __rmul__ = __mul__

    def __add__(self, other: "GroupAlgebraElement"):
        self._check(other)
        f = self.field
        return GroupAlgebraElement(self.group, f,
                                   [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GroupAlgebraElement"):
        self._check(other)
        f = self.field
        return GroupAlgebraElement(self.group, f,
                                   [f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.group is other.group and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.group), self.field, tuple(self.coeffs)))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def __repr__(self):
        terms = [f"{format_scalar(v)}*[{self.group.labels[g]}]" for g, v in self.sparse().items()]
        return " + ".join(terms) or "0"


def multiply(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    x._check(y)
    return GroupAlgebraElement(x.group, x.field, convolve(x.group, x.field, x.sparse(), y.sparse()))


# center --------------------------------------------------------------------


def class_sums(group: FiniteGroup, field: Field) -> list[GroupAlgebraElement]:
    """One class sum per conjugacy class, ordered by class representative."""
    return [GroupAlgebraElement(group, field, {g: 1 for g in cls})
            for cls in group.classes.classes]


def center_brute_force(group: FiniteGroup, field: Field) -> list[GroupAlgebraElement]:
    """Basis of ``{x : x e_g = e_g x for all g}`` by exact elimination.

    ``(x e_g)(a) = x(a g^-1)`` and ``(e_g x)(a) = x(g^-1 a)``; one equation per
    pair (g, a).
    """
    n = group.order
    mult, inv = group.mult, group.inverse
    one, minus_one = field.one, field.neg(field.one)
    rows = []
    for g in range(n):
        gi = inv[g]
        for a in range(n):
            i, j = mult[a][gi], mult[gi][a]
            if i != j:
                rows.append({i: one, j: minus_one})
    return [GroupAlgebraElement(group, field, v) for v in nullspace(rows, n, field)]


def same_center(group: FiniteGroup, field: Field) -> bool:
    """Class sums and the brute-force commutant span the same subspace."""
    return same_span((z.sparse() for z in class_sums(group, field)),
                     (z.sparse() for z in center_brute_force(group, field)), field)


@dataclass(frozen=True)
class ClassConstants:
    """Integers ``c[C][D][E]`` with ``z_C z_D = sum_E c[C][D][E] z_E``."""

    c: tuple[tuple[tuple[int, ...], ...], ...]

    def __getitem__(self, idx):
        return self.c[idx]

    def __len__(self):
        return len(self.c)


def class_constants(group: FiniteGroup) -> ClassConstants:
    ccs = group.classes
    sums = class_sums(group, RATIONALS)
    table = []
    for zc in sums:
        row = []
        for zd in sums:
            prod = multiply(zc, zd).coeffs
            vals = []
            for rep in ccs.representatives:
                vals.append(int(prod[rep]))
            row.append(tuple(vals))
        table.append(tuple(row))
    return ClassConstants(tuple(table))


class CenterAlgebra:
    """Z(k[G]) in the class-sum basis, multiplied via class constants.

    Elements are sparse dicts ``{class index: scalar}``.
    """

    def __init__(self, group: FiniteGroup, field: Field):
        self.group = group
        self.field = field
        self.classes = group.classes
        self.constants = class_constants(group)
        # per (C, D): list of (E, c mod field) with nonzero image in the field
        self._table = [[[(e, field.coerce(v)) for e, v in enumerate(self.constants[c][d])
                         if field.coerce(v) != 0]
                        for d in range(len(self.classes))]
                       for c in range(len(self.classes))]

    @property
    def dimension(self) -> int:
        return len(self.classes)

    @property
    def unit_class(self) -> int:
        return self.classes.class_of[self.group.identity]

    def multiply(self, x: Sparse, y: Sparse) -> Sparse:
        f = self.field
        out: Sparse = {}
        for c, xc in x.items():
            for d, yd in y.items():
                s = f.mul(xc, yd)
                for e, v in self._table[c][d]:
                    out[e] = f.add(out.get(e, f.zero), f.mul(s, v))
        return {e: v for e, v in out.items() if v != 0}

    def to_group_algebra(self, x: Sparse) -> GroupAlgebraElement:
        f = self.field
        coeffs = [f.zero] * self.group.order
        for c, v in x.items():
            for g in self.classes.classes[c]:
                coeffs[g] = v
        return GroupAlgebraElement(self.group, f, coeffs)

    def splits_as_product_of_fields(self) -> bool:
        """Whether Z(k[G]) may be reported as k^c(G).

        Needs the field flagged algebraically closed and char not dividing |G|.
        """
        return self.field.alg_closed and self.field.is_coprime_to(self.group.order)


def center_report(group: FiniteGroup, field: Field) -> dict:
    ccs = group.classes
    z = CenterAlgebra(group, field)
    report = {
        "group": group.name,
        "order": group.order,
        "field": field.to_json(),
        "c_G": len(ccs),
        "dim_center": len(ccs),
        "classes": [
            {"index": i, "representative": rep, "label": group.labels[rep],
             "size": len(ccs.classes[i]), "centralizer_order": ccs.centralizer_orders[i]}
            for i, rep in enumerate(ccs.representatives)
        ],
        "class_constants": [[list(r) for r in row] for row in z.constants.c],
    }
    if z.splits_as_product_of_fields():
        report["wedderburn"] = f"k^{len(ccs)}"
    return report
