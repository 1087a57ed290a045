"""Finite algebraic model of the loop orbifold of a global quotient [M/G].

Every twisted sector is identified with the same graded algebra A (standing
in for the loop homology ring of M), so the sector algebra is A (x) k[G]:

* :class:`SectorElement` is a sum of terms ``m (x) e_g`` (monomial m in
  sector g), multiplied sectorwise by :func:`sector_product`.
* :class:`QuotientElement` is a sum of terms ``(C, m)`` indexed by a
  conjugacy class C; these model the homology of the Borel construction.
* :func:`transfer_mu` lifts a quotient element to the sum of all of its G
  translates, :func:`projection_p` pushes sectors down to classes, and the
  orbifold product is ``x o y = p(mu(x) . mu(y))``, computed literally.

The literal product has unit ``([e], 1) / |G|^2``.  :func:`tensor_iso_phi`
rescales class C by ``|G| * |Z_C|`` (``Z_C`` the centralizer) and is then a
ring isomorphism onto A (x) Z(k[G]); :func:`verify_theorem` checks this
exhaustively inside a degree window.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field

from .field import Field, FieldMismatchError, RawScalar, format_scalar
from .graded import GradedAlgebra, GradedPresentation, Monomial, deglex_key
from .group_algebra import CenterAlgebra, convolve_cached
from .groups import FiniteGroup
from .linalg import echelon


class TransferUnavailableError(ValueError):
    """The field characteristic divides |G|."""

    def __init__(self, order: int, char: int):
        super().__init__(f"transfer unavailable: characteristic {char} divides |G| = {order}")
        self.order = order
        self.char = char


class SectorModel:
    """Shared context (group, algebra, class data) for sector computations."""

    def __init__(self, group: FiniteGroup, presentation: GradedPresentation, field: Field):
        self.group = group
        self.field = field
        self.algebra = GradedAlgebra(presentation, field)
        self.classes = group.classes
        self._center: CenterAlgebra | None = None

    @property
    def presentation(self) -> GradedPresentation:
        return self.algebra.presentation

    @property
    def center(self) -> CenterAlgebra:
        if self._center is None:
            self._center = CenterAlgebra(self.group, self.field)
        return self._center

    @property
    def coprime(self) -> bool:
        return self.field.is_coprime_to(self.group.order)

    def require_coprime(self) -> None:
        if not self.coprime:
            raise TransferUnavailableError(self.group.order, self.field.char)

    def degree(self, mono: Monomial) -> int:
        return self.presentation.degree(mono)

    # constructors
    def sector(self, terms: dict) -> "SectorElement":
        return SectorElement(self, terms)

    def quotient(self, terms: dict) -> "QuotientElement":
        return QuotientElement(self, terms)

    def tensor_element(self, terms: dict) -> "CenterTensorElement":
        return CenterTensorElement(self, terms)

    def quotient_basis(self, window: tuple[int, int]) -> list["QuotientElement"]:
        """Basis vectors ``(C, m)`` ordered by monomial (deglex), then class."""
        one = self.field.one
        return [QuotientElement(self, {(c, m): one})
                for m in self.algebra.basis(window) for c in range(len(self.classes))]


class _Linear:
    """Shared behaviour of the sparse element types below."""

    __slots__ = ("model", "terms")

    def __init__(self, model: SectorModel, terms: dict, *, trusted: bool = False):
        if trusted:
            # internal results: keys already canonical, values reduced and nonzero
            self.model = model
            self.terms = terms
            return
        f = model.field
        clean = {}
        for key, v in terms.items():
            v = f.coerce(v)
            if v != 0:
                clean[(key[0], tuple(key[1]))] = v
        self.model = model
        self.terms = clean
        self._validate_keys()

    def _validate_keys(self):
        pass

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.model.group is not self.model.group:
            raise ValueError("group mismatch")
        if other.model.presentation != self.model.presentation:
            raise ValueError("presentation mismatch")
        if other.model.field != self.model.field:
            raise FieldMismatchError("field mismatch")

    def __add__(self, other):
        self._same(other)
        f = self.model.field
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = f.add(out.get(k, f.zero), v)
        return type(self)(self.model, {k: v for k, v in out.items() if v != 0}, trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.model.field
        return type(self)(self.model, {k: f.neg(v) for k, v in self.terms.items()})

    def scale(self, c) -> "_Linear":
        f = self.model.field
        c = f.coerce(c)
        return type(self)(self.model, {k: f.mul(c, v) for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (other.model.group is self.model.group and other.model.field == self.model.field
                and other.model.presentation == self.model.presentation
                and self.terms == other.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.model.degree(m) for _, m in self.terms}

    def sparse(self, index: dict) -> dict[int, RawScalar]:
        """Coordinates in a fixed enumeration ``index: key -> column``."""
        return {index[k]: v for k, v in self.terms.items()}

    def _label(self, key) -> str:
        raise NotImplementedError

    def __repr__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (deglex_key(kv[0][1]), kv[0][0]))
        return " + ".join(f"{format_scalar(v)}*{self._label(k)}" for k, v in items)


class SectorElement(_Linear):
    """Element of the direct sum over g in G of copies of A; keys ``(g, monomial)``."""

    __slots__ = ()

    def _validate_keys(self):
        n = self.model.group.order
        pres = self.model.presentation
        for g, m in self.terms:
            if not 0 <= g < n:
                raise ValueError(f"sector {g} is not a group element")
            if not pres.is_admissible(m):
                raise ValueError(f"monomial {m} is not admissible")

    def _label(self, key):
        g, m = key
        return f"{self.model.presentation.format_monomial(m)}@[{self.model.group.labels[g]}]"

    def by_monomial(self) -> dict[Monomial, dict[int, RawScalar]]:
        out: dict[Monomial, dict[int, RawScalar]] = defaultdict(dict)
        for (g, m), v in self.terms.items():
            out[m][g] = v
        return out

    def __mul__(self, other):
        if isinstance(other, SectorElement):
            return sector_product(self, other)
        return self.scale(other)


class QuotientElement(_Linear):
    """Element of the quotient (Borel) model; keys ``(class index, monomial)``."""

    __slots__ = ()

    def _validate_keys(self):
        c = len(self.model.classes)
        pres = self.model.presentation
        for cls, m in self.terms:
            if not 0 <= cls < c:
                raise ValueError(f"class index {cls} out of range")
            if not pres.is_admissible(m):
                raise ValueError(f"monomial {m} is not admissible")

    def _label(self, key):
        c, m = key
        rep = self.model.classes.representatives[c]
        return f"({self.model.presentation.format_monomial(m)}, [{self.model.group.labels[rep]}])"

    def __mul__(self, other):
        if isinstance(other, QuotientElement):
            return orbifold_product(self, other)
        return self.scale(other)


class CenterTensorElement(_Linear):
    """Element of A (x) Z(k[G]); key ``(C, m)`` stands for ``m (x) z_C``."""

    __slots__ = ()

    _validate_keys = QuotientElement._validate_keys

    def _label(self, key):
        c, m = key
        rep = self.model.classes.representatives[c]
        return f"{self.model.presentation.format_monomial(m)}(x)z[{self.model.group.labels[rep]}]"

    def __mul__(self, other):
        if isinstance(other, CenterTensorElement):
            return tensor_product(self, other)
        return self.scale(other)

    def to_sectors(self) -> SectorElement:
        """Expand each class sum into its sector terms."""
        out = {}
        for (c, m), v in self.terms.items():
            for g in self.model.classes.classes[c]:
                out[(g, m)] = v
        return SectorElement(self.model, out)


# operations ----------------------------------------------------------------------


def sector_product(x: SectorElement, y: SectorElement) -> SectorElement:
    """``(a (x) e_g) . (b (x) e_h) = ab (x) e_gh``, extended bilinearly."""
    x._same(y)
    model = x.model
    f, alg, group = model.field, model.algebra, model.group
    out: dict = {}
    ys = y.by_monomial()
    for m1, xg in x.by_monomial().items():
        for m2, yh in ys.items():
            prod = alg.monomial_product(m1, m2)
            if not prod:
                continue
            conv = convolve_cached(group, f, xg, yh)
            for m, c in prod.items():
                for g, v in conv.items():
                    key = (g, m)
                    out[key] = f.add(out.get(key, f.zero), f.mul(c, v))
    return SectorElement(model, {k: v for k, v in out.items() if v != 0}, trusted=True)


def conjugation_action(h: int, x: SectorElement) -> SectorElement:
    """Move sector g to ``h^-1 g h``; A is acted on trivially."""
    group = x.model.group
    if not 0 <= h < group.order:
        raise ValueError(f"{h} is not a group element")
    return SectorElement(x.model, {(group.conjugate(g, h), m): v for (g, m), v in x.terms.items()})


def invariant_basis(model: SectorModel, window: tuple[int, int]) -> list[SectorElement]:
    """The invariant vectors ``m (x) z_C`` for m of degree in the window."""
    one = model.field.one
    return [CenterTensorElement(model, {(c, m): one}).to_sectors()
            for m in model.algebra.basis(window) for c in range(len(model.classes))]


def transfer_mu(x: QuotientElement) -> SectorElement:
    """Sum of all |G| translates of a lift: ``mu(C, m) = |Z_C| * m (x) z_C``."""
    model = x.model
    f = model.field
    ccs = model.classes
    out = {}
    for (c, m), v in x.terms.items():
        w = f.mul(v, f.coerce(ccs.centralizer_orders[c]))
        for g in ccs.classes[c]:
            key = (g, m)
            out[key] = f.add(out.get(key, f.zero), w)
    return SectorElement(model, {k: v for k, v in out.items() if v != 0}, trusted=True)


def transfer_by_translates(x: QuotientElement) -> SectorElement:
    """The transfer computed literally: lift to the class representative, sum over h in G.

    Independent of the centralizer-order shortcut in :func:`transfer_mu`.
    """
    model = x.model
    lifted = SectorElement(model, {(model.classes.representatives[c], m): v
                                   for (c, m), v in x.terms.items()})
    total = SectorElement(model, {})
    for h in range(model.group.order):
        total = total + conjugation_action(h, lifted)
    return total


def projection_p(x: SectorElement) -> QuotientElement:
    """``(g, m) -> (class(g), m)``."""
    model = x.model
    f = model.field
    class_of = model.classes.class_of
    out = {}
    for (g, m), v in x.terms.items():
        key = (class_of[g], m)
        out[key] = f.add(out.get(key, f.zero), v)
    return QuotientElement(model, {k: v for k, v in out.items() if v != 0}, trusted=True)


def orbifold_product(x: QuotientElement, y: QuotientElement) -> QuotientElement:
    """``x o y = p(mu(x) . mu(y))`` with no normalisation."""
    x._same(y)
    x.model.require_coprime()
    return projection_p(sector_product(transfer_mu(x), transfer_mu(y)))


def phi_scale(model: SectorModel, c: int) -> RawScalar:
    """Rescaling ``|G| * |Z_C|`` applied to class C by :func:`tensor_iso_phi`."""
    return model.field.coerce(model.group.order * model.classes.centralizer_orders[c])


def tensor_iso_phi(x: QuotientElement) -> CenterTensorElement:
    """``phi(C, m) = |G| |Z_C| * m (x) z_C``."""
    model = x.model
    model.require_coprime()
    f = model.field
    return CenterTensorElement(model, {(c, m): f.mul(v, phi_scale(model, c))
                                       for (c, m), v in x.terms.items()}, trusted=True)


def tensor_iso_phi_inverse(z: CenterTensorElement) -> QuotientElement:
    model = z.model
    model.require_coprime()
    f = model.field
    return QuotientElement(model, {(c, m): f.mul(v, f.inv(phi_scale(model, c)))
                                   for (c, m), v in z.terms.items()})


def tensor_product(x: CenterTensorElement, y: CenterTensorElement) -> CenterTensorElement:
    """Product in A (x) Z(k[G]): A-product times class-sum product (Z sits in degree 0)."""
    x._same(y)
    model = x.model
    f, alg, z = model.field, model.algebra, model.center
    out: dict = {}
    for (c, m1), a in x.terms.items():
        for (d, m2), b in y.terms.items():
            prod = alg.monomial_product(m1, m2)
            if not prod:
                continue
            classes = z.multiply({c: f.one}, {d: f.one})
            ab = f.mul(a, b)
            for m, u in prod.items():
                s = f.mul(ab, u)
                for e, w in classes.items():
                    key = (e, m)
                    out[key] = f.add(out.get(key, f.zero), f.mul(s, w))
    return CenterTensorElement(model, {k: v for k, v in out.items() if v != 0}, trusted=True)


# theorem check ---------------------------------------------------------------------


@dataclass
class TheoremReport:
    ok: bool
    window: tuple[int, int]
    group: str
    order: int
    c_G: int
    field: str
    dimensions: dict[int, dict[str, int]] = dc_field(default_factory=dict)
    pairs_checked: int = 0
    counterexample: str | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "window": list(self.window),
            "group": self.group,
            "order": self.order,
            "c_G": self.c_G,
            "field": self.field,
            "dimensions": [{"degree": d, **row} for d, row in sorted(self.dimensions.items())],
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
        }


def verify_theorem(group: FiniteGroup, presentation: GradedPresentation, field: Field,
                   window: tuple[int, int]) -> TheoremReport:
    """Exhaustive check that phi is a degreewise-bijective ring map in the window.

    For every pair of quotient basis vectors with degrees in the window,
    ``phi(x o y) == phi(x) * phi(y)``.  Per degree, the quotient dimension must
    equal ``dim A_d * c(G)`` and the phi-images must be linearly independent.
    Raises :class:`TransferUnavailableError` when char(k) divides |G|.
    """
    model = SectorModel(group, presentation, field)
    model.require_coprime()
    c_g = len(model.classes)
    report = TheoremReport(True, tuple(window), group.name, group.order, c_g, str(field))

    basis = model.quotient_basis(window)
    by_degree: dict[int, list[QuotientElement]] = defaultdict(list)
    for b in basis:
        (_, m), = b.terms
        by_degree[model.degree(m)].append(b)
    a_dims = {d: 0 for d in range(window[0], window[1] + 1)}
    for m in model.algebra.basis(window):
        a_dims[model.degree(m)] += 1
    index = {(c, m): i for i, (c, m) in enumerate(
        (c, m) for m in model.algebra.basis(window) for c in range(c_g))}
    for d, a_dim in a_dims.items():
        elems = by_degree.get(d, [])
        images = [tensor_iso_phi(b).sparse(index) for b in elems]
        rk = len(echelon(images, field))
        report.dimensions[d] = {"dim_A": a_dim, "dim_quotient": len(elems),
                                "expected": a_dim * c_g, "rank_phi": rk}
        if (len(elems) != a_dim * c_g or rk != len(elems)) and report.ok:
            report.ok = False
            report.counterexample = (f"degree {d}: dim {len(elems)}, rank of phi {rk}, "
                                     f"expected {a_dim * c_g}")

    phis = [tensor_iso_phi(b) for b in basis]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            report.pairs_checked += 1
            lhs = tensor_iso_phi(orbifold_product(x, y))
            rhs = tensor_product(phis[i], phis[j])
            if lhs != rhs:
                report.ok = False
                report.counterexample = f"phi({x} o {y}) = {lhs} but phi(x)phi(y) = {rhs}"
                return report
    return report
