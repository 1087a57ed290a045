"""Finite groups as full multiplication tables, and their conjugacy classes."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .field import is_prime

DEFAULT_ORDER_CAP = 2000


class GroupError(ValueError):
    pass


class GroupTooLargeError(GroupError):
    def __init__(self, cap: int):
        super().__init__(f"group too large (closure exceeds cap {cap})")
        self.cap = cap


class FiniteGroup:
    """A finite group on the elements ``0..N-1``.

    ``mult[i][j]`` is the index of the product of element ``i`` and element
    ``j``.  The table is validated on construction (Latin square, identity,
    inverses, associativity).
    """

    def __init__(self, mult, labels: Sequence[str] | None = None, name: str = "",
                 validate: bool = True):
        table = np.asarray(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        self.table = table
        self.order = int(table.shape[0])
        self.mult: list[list[int]] = table.tolist()
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        if len(self.labels) != self.order:
            raise GroupError("label count does not match group order")
        ident = [i for i in range(self.order) if self.mult[i] == list(range(self.order))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        inv = [-1] * self.order
        for i, row in enumerate(self.mult):
            for j, v in enumerate(row):
                if v == self.identity:
                    inv[i] = j
                    break
        if -1 in inv:
            raise GroupError("some element has no inverse")
        self.inverse = inv
        if validate:
            self._validate()

    def _validate(self) -> None:
        n = self.order
        t = self.table
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        full = np.arange(n)
        if not (np.sort(t, axis=1) == full).all() or not (np.sort(t, axis=0) == full[:, None]).all():
            raise GroupError("multiplication table is not a Latin square")
        if not (t[:, self.identity] == full).all():
            raise GroupError("identity fails on the right")
        if not (t[full, self.inverse] == self.identity).all():
            raise GroupError("inverse table inconsistent")
        if n <= 256:
            for a in range(n):
                # (ab)c == a(bc) for all b, c
                if not (t[t[a]] == t[a][t]).all():
                    raise GroupError("multiplication is not associative")
        else:
            rng = random.Random(0)
            for _ in range(10_000):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                    raise GroupError("multiplication is not associative")

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conjugate(self, g: int, h: int) -> int:
        """``h^-1 g h``."""
        return self.mult[self.mult[self.inverse[h]][g]][h]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """The same group with old element ``i`` renamed ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        new = perm[self.table[np.ix_(inv, inv)]]
        labels = [self.labels[i] for i in inv]
        return FiniteGroup(new, labels, self.name, validate=False)

    @cached_property
    def classes(self) -> "ConjugacyClasses":
        return conjugacy_classes(self)


@dataclass(frozen=True)
class ConjugacyClasses:
    """Partition of a group into conjugacy classes.

    Classes are ordered by representative, and the representative of a class
    is its least element index.
    """

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_of: tuple[int, ...]
    centralizer_orders: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    n = group.order
    class_of = [-1] * n
    classes = []
    for g in range(n):
        if class_of[g] != -1:
            continue
        idx = len(classes)
        members = set()
        for h in range(n):
            members.add(group.conjugate(g, h))
        for m in members:
            class_of[m] = idx
        classes.append(tuple(sorted(members)))
    reps = tuple(c[0] for c in classes)
    cent = []
    for g in reps:
        row = group.mult[g]
        cent.append(sum(1 for h in range(n) if row[h] == group.mult[h][g]))
    return ConjugacyClasses(tuple(classes), reps, tuple(class_of), tuple(cent))


# construction -----------------------------------------------------------


def _perm_from_cycles(cycles, degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        pts = [int(p) for p in cyc]
        if any(p < 1 or p > degree for p in pts):
            raise GroupError(f"cycle {list(cyc)} has points outside 1..{degree}")
        if len(set(pts)) != len(pts) or seen & set(pts):
            raise GroupError(f"malformed permutation: repeated point in {list(cycles)}")
        seen |= set(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, p = [], start
        while p not in seen:
            seen.add(p)
            cyc.append(str(p + 1))
            p = perm[p]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def close_under(generators, identity, compose, cap: int = DEFAULT_ORDER_CAP):
    """Breadth-first closure of ``generators`` from ``identity``.

    Elements are listed in discovery order, expanding each element by the
    generators in the order given.  Returns ``(elements, index)``.
    """
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = compose(x, s)
            if y not in index:
                if len(elements) >= cap:
                    raise GroupTooLargeError(cap)
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    return elements, index


def _table_from(elements, index, compose):
    return [[index[compose(a, b)] for b in elements] for a in elements]


def build_from_permutations(generators, degree: int | None = None, *,
                            cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Group generated by permutations given in cycle notation on points 1..degree.

    Each generator is a list of cycles, e.g. ``[[1, 2], [3, 4, 5]]``.  The
    product ``x * y`` applies ``x`` first, then ``y``.
    """
    gens = list(generators)
    points = [int(p) for g in gens for cyc in g for p in cyc]
    if degree is None:
        degree = max(points, default=1)
    perms = [_perm_from_cycles(g, degree) for g in gens]

    def compose(x, y):
        return tuple(y[i] for i in x)

    ident = tuple(range(degree))
    elements, index = close_under(perms, ident, compose, cap)
    mult = _table_from(elements, index, compose)
    group = FiniteGroup(mult, [_cycle_label(p) for p in elements], name, validate=False)
    group.permutations = elements
    return group


def build_matrix_group(p: int, dimension: int = 2, *, name: str = "") -> FiniteGroup:
    """All 2x2 matrices of determinant 1 over F_p, in lexicographic entry order."""
    if dimension != 2:
        raise GroupError("only 2x2 matrix groups are supported")
    if not is_prime(p):
        raise GroupError(f"p must be prime, got {p}")
    if p > 31:
        raise GroupTooLargeError(31 ** 4)
    mats = [(a, b, c, d)
            for a in range(p) for b in range(p) for c in range(p) for d in range(p)
            if (a * d - b * c) % p == 1]
    index = {m: i for i, m in enumerate(mats)}

    def compose(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)

    labels = [f"[[{a},{b}],[{c},{d}]]" for a, b, c, d in mats]
    group = FiniteGroup(_table_from(mats, index, compose), labels,
                        name or f"SL(2,{p})", validate=False)
    group.matrices = mats
    return group


def from_table(mult, labels=None, name: str = "") -> FiniteGroup:
    return FiniteGroup(mult, labels, name, validate=True)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    if n == 1:
        return build_from_permutations([], 1, name="C1")
    return build_from_permutations([[list(range(1, n + 1))]], name=f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("degree must be positive")
    if n == 1:
        return build_from_permutations([], 1, name="S1")
    gens = [[[1, 2]]]
    if n > 2:
        gens.append([list(range(1, n + 1))])
    return build_from_permutations(gens, n, name=f"S{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon (order 2n)."""
    if n < 3:
        raise GroupError("dihedral groups need n >= 3")
    rot = [list(range(1, n + 1))]
    refl = [[i, n + 1 - i] for i in range(1, n // 2 + 1) if i != n + 1 - i]
    return build_from_permutations([rot, refl], n, name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    # right regular representation on 1..8 = (1, -1, i, -i, j, -j, k, -k)
    i = [[1, 3, 2, 4], [5, 8, 6, 7]]
    j = [[1, 5, 2, 6], [3, 7, 4, 8]]
    return build_from_permutations([i, j], 8, name="Q8")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return build_from_permutations([], max(n, 1), name=f"A{n}")
    gens = [[[1, 2, k]] for k in range(3, n + 1)]
    return build_from_permutations(gens, n, name=f"A{n}")


def named_group(name: str) -> FiniteGroup:
    """Look up a group from the built-in catalog.

    Accepted names: ``trivial``, ``C<n>``/``Z<n>`` (n <= 50), ``S<n>`` (n <= 5),
    ``A4``, ``A5``, ``D<n>`` (3 <= n <= 12, order 2n), ``Q8``, and
    ``SL2F5``/``binary_icosahedral``.
    """
    key = name.strip()
    low = key.lower()
    if low in ("trivial", "1", "c1", "z1"):
        return build_from_permutations([], 1, name="trivial")
    if low in ("q8", "quaternion"):
        return quaternion_group()
    if low in ("sl2f5", "sl(2,5)", "binary_icosahedral", "2i"):
        return build_matrix_group(5, name="SL(2,5)")
    if low in ("a4", "a5"):
        return alternating_group(int(low[1]))
    if low[:1] in ("c", "z", "s", "d") and low[1:].isdigit():
        n = int(low[1:])
        if low[0] in "cz" and 1 <= n <= 50:
            return cyclic_group(n)
        if low[0] == "s" and 1 <= n <= 5:
            return symmetric_group(n)
        if low[0] == "d" and 3 <= n <= 12:
            return dihedral_group(n)
    raise GroupError(f"unknown named group {name!r}")


CATALOG_NAMES = ("trivial", "C2", "C3", "C4", "C5", "C6", "S3", "S4", "D4", "D5", "D6",
                 "Q8", "A4", "SL2F5")


def group_from_json(spec: dict, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    kind = spec.get("type")
    if kind == "permutation":
        return build_from_permutations(spec.get("generators", []), spec.get("degree"),
                                       cap=cap, name=spec.get("name", ""))
    if kind == "matrix_sl2":
        return build_matrix_group(int(spec["p"]))
    if kind == "named":
        return named_group(spec["name"])
    if kind == "table":
        return from_table(spec["mult"], spec.get("labels"), spec.get("name", ""))
    raise GroupError(f"unknown group type {kind!r}")


def is_table_isomorphism(g: FiniteGroup, h: FiniteGroup, mapping: Sequence[int]) -> bool:
    """Check that ``mapping`` (element of g -> element of h) is an isomorphism."""
    if g.order != h.order or sorted(mapping) != list(range(h.order)):
        return False
    m = np.asarray(mapping)
    return bool((m[g.table] == h.table[np.ix_(m, m)]).all())
