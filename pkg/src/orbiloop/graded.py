"""Finitely presented graded-commutative algebras with a monomial normal form.

A presentation lists generators in a fixed order.  Each generator has an
integer degree (negative allowed) and an optional nilpotency bound ``b``;
``x^b`` is rewritten to a fixed linear combination of admissible monomials
(often zero).  Optionally a set of monomials is declared to vanish.  This
covers exterior, polynomial and truncated polynomial algebras, their tensor
products, and quotients by monomial ideals.

Monomials are exponent tuples in generator order.  Products reorder factors
into generator order with the Koszul sign and then rewrite to normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .field import Field, FieldMismatchError, RawScalar, format_scalar

Monomial = tuple[int, ...]


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    bound: int | None = None
    # x^bound == sum(coeff * monomial); empty means x^bound == 0
    top_rewrite: tuple[tuple[Fraction, Monomial], ...] = ()


@dataclass(frozen=True)
class GradedPresentation:
    generators: tuple[Generator, ...]
    zero_monomials: tuple[Monomial, ...] = ()
    name: str = ""

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        m = len(self.generators)
        for g in self.generators:
            if g.bound is not None and g.bound < 1:
                raise PresentationError(f"bound of {g.name} must be positive")
            if g.bound is None and g.top_rewrite:
                raise PresentationError(f"unbounded generator {g.name} cannot have a rewrite")
            for _, mono in g.top_rewrite:
                if len(mono) != m:
                    raise PresentationError(f"rewrite monomial {mono} has wrong length")
        for z in self.zero_monomials:
            if len(z) != m or any(e < 0 for e in z) or not any(z):
                raise PresentationError(f"bad zero monomial {z}")

    # construction helpers ------------------------------------------------

    @classmethod
    def build(cls, gens: Sequence[tuple], zero: Iterable[dict] = (), name: str = "",
              rewrites: dict | None = None) -> "GradedPresentation":
        """Convenience builder.

        ``gens`` holds ``(name, degree)`` or ``(name, degree, bound)`` tuples.
        ``zero`` holds monomials written as ``{generator: exponent}``.
        ``rewrites`` maps a generator name to ``[(coeff, {gen: exp}), ...]``.
        """
        names = [g[0] for g in gens]
        rewrites = rewrites or {}

        def mono(d):
            return tuple(int(d.get(n, 0)) for n in names)

        for d in list(zero) + [m for r in rewrites.values() for _, m in r]:
            unknown = set(d) - set(names)
            if unknown:
                raise PresentationError(f"unknown generators {sorted(unknown)}")
        generators = []
        for g in gens:
            bound = g[2] if len(g) > 2 else None
            rw = tuple((Fraction(c), mono(m)) for c, m in rewrites.get(g[0], ()))
            generators.append(Generator(g[0], int(g[1]), bound, rw))
        return cls(tuple(generators), tuple(mono(d) for d in zero), name)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def unit(self) -> Monomial:
        return (0,) * self.ngens

    def degree(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def is_admissible(self, mono: Monomial) -> bool:
        for e, g in zip(mono, self.generators):
            if e < 0 or (g.bound is not None and e >= g.bound):
                return False
        return not any(all(e >= z for e, z in zip(mono, zm)) for zm in self.zero_monomials)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for e, g in zip(mono, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) or "1"

    def exponent_bounds(self, window: tuple[int, int]) -> list[int]:
        """Largest exponent each generator can carry in a monomial of degree in window."""
        lo, hi = window
        neg = sum((g.bound - 1) * g.degree for g in self.generators
                  if g.degree < 0 and g.bound is not None)
        pos = sum((g.bound - 1) * g.degree for g in self.generators
                  if g.degree > 0 and g.bound is not None)
        caps = []
        for g in self.generators:
            if g.bound is not None:
                caps.append(g.bound - 1)
            elif g.degree > 0:
                if any(h.bound is None and h.degree < 0 for h in self.generators):
                    raise PresentationError("window enumeration is infinite "
                                            "(unbounded generators of both signs)")
                caps.append(max(0, (hi - neg) // g.degree))
            elif g.degree < 0:
                if any(h.bound is None and h.degree > 0 for h in self.generators):
                    raise PresentationError("window enumeration is infinite "
                                            "(unbounded generators of both signs)")
                caps.append(max(0, (lo - pos) // g.degree))
            else:
                raise PresentationError(f"unbounded degree-0 generator {g.name}: "
                                        "window enumeration is infinite")
        return caps

    def monomials(self, window: tuple[int, int]) -> list[Monomial]:
        """Admissible monomials with degree in ``[lo, hi]``, in deglex order."""
        lo, hi = window
        if lo > hi:
            raise ValueError("window lower bound exceeds upper bound")
        caps = self.exponent_bounds(window)
        out = [m for m in itertools.product(*(range(c + 1) for c in caps))
               if lo <= self.degree(m) <= hi and self.is_admissible(m)]
        return sorted(out, key=deglex_key)


def deglex_key(mono: Monomial):
    return (sum(mono), mono)


def poincare_series(pres: GradedPresentation, window: tuple[int, int]) -> dict[int, int]:
    """Number of admissible monomials in each degree of the window (zeros included)."""
    lo, hi = window
    dims = {d: 0 for d in range(lo, hi + 1)}
    for m in pres.monomials(window):
        dims[pres.degree(m)] += 1
    return dims


def tensor(*presentations: GradedPresentation, name: str = "") -> GradedPresentation:
    """Graded tensor product; clashing generator names get a ``_<k>`` suffix."""
    total = sum(p.ngens for p in presentations)
    seen: set[str] = set()
    gens, zero = [], []
    offset = 0
    for k, p in enumerate(presentations):
        def pad(m, offset=offset):
            return (0,) * offset + tuple(m) + (0,) * (total - offset - len(m))
        for g in p.generators:
            nm = g.name if g.name not in seen else f"{g.name}_{k}"
            seen.add(nm)
            gens.append(Generator(nm, g.degree, g.bound,
                                  tuple((c, pad(m)) for c, m in g.top_rewrite)))
        zero.extend(pad(z) for z in p.zero_monomials)
        offset += p.ngens
    return GradedPresentation(tuple(gens), tuple(zero),
                              name or " (x) ".join(p.name or "?" for p in presentations))


# algebra over a field --------------------------------------------------------


class GradedAlgebra:
    """A presentation together with a coefficient field; owns the product cache."""

    def __init__(self, presentation: GradedPresentation, field: Field):
        self.presentation = presentation
        self.field = field
        gens = presentation.generators
        self._odd = [g.degree % 2 != 0 for g in gens]
        self._rewrites = [
            {m: field.coerce(c) for c, m in g.top_rewrite if field.coerce(c) != 0}
            for g in gens
        ]
        self._mono_mul = lru_cache(maxsize=None)(self._mono_mul_uncached)
        self._normalize = lru_cache(maxsize=None)(self._normalize_uncached)

    def __repr__(self):
        return f"GradedAlgebra({self.presentation.name or 'A'}, {self.field})"

    def koszul_sign(self, m1: Monomial, m2: Monomial) -> int:
        """Sign of moving the factors of m2 left past the later-ordered factors of m1."""
        if self.field.char == 2:
            return 1
        odd = self._odd
        swaps = 0
        later_odd_in_m1 = 0
        for j in range(len(m1) - 1, -1, -1):
            if odd[j]:
                swaps += m2[j] * later_odd_in_m1
                later_odd_in_m1 += m1[j]
        return -1 if swaps % 2 else 1

    def _mono_mul_uncached(self, m1: Monomial, m2: Monomial):
        f = self.field
        raw = tuple(a + b for a, b in zip(m1, m2))
        res = self._normalize(raw)
        if self.koszul_sign(m1, m2) == -1:
            return tuple((m, f.neg(v)) for m, v in res)
        return res

    def _normalize_uncached(self, raw: Monomial):
        """Normal form of the generator-ordered product ``raw`` as ((mono, coeff), ...)."""
        pres = self.presentation
        f = self.field
        if any(all(e >= z for e, z in zip(raw, zm)) for zm in pres.zero_monomials):
            return ()
        for i, (e, g) in enumerate(zip(raw, pres.generators)):
            if g.bound is not None and e >= g.bound:
                break
        else:
            return ((raw, f.one),)
        # raw = prefix * x_i^b * suffix, already in generator order
        prefix = raw[:i] + (0,) * (len(raw) - i)
        suffix = (0,) * i + (raw[i] - g.bound,) + raw[i + 1:]
        acc: dict[Monomial, RawScalar] = {}
        for t, c in self._rewrites[i].items():
            for m1, v1 in self._mono_mul(prefix, t):
                for m2, v2 in self._mono_mul(m1, suffix):
                    acc[m2] = f.add(acc.get(m2, f.zero), f.mul(c, f.mul(v1, v2)))
        return tuple(sorted(((m, v) for m, v in acc.items() if v != 0),
                            key=lambda mv: deglex_key(mv[0])))

    def monomial_product(self, m1: Monomial, m2: Monomial) -> dict[Monomial, RawScalar]:
        return dict(self._mono_mul(m1, m2))

    def multiply_terms(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict[Monomial, RawScalar] = {}
        for m1, a in x.items():
            for m2, b in y.items():
                ab = f.mul(a, b)
                for m, v in self._mono_mul(m1, m2):
                    out[m] = f.add(out.get(m, f.zero), f.mul(ab, v))
        return {m: v for m, v in out.items() if v != 0}

    # element constructors
    def element(self, terms: dict | None = None) -> "GradedElement":
        return GradedElement(self, terms or {})

    def one(self) -> "GradedElement":
        return GradedElement(self, {self.presentation.unit: self.field.one})

    def monomial(self, mono: Monomial, coeff=1) -> "GradedElement":
        return GradedElement(self, {tuple(mono): coeff})

    def gen(self, name: str) -> "GradedElement":
        names = [g.name for g in self.presentation.generators]
        mono = tuple(1 if n == name else 0 for n in names)
        if name not in names:
            raise KeyError(name)
        return GradedElement(self, dict(self._mono_mul(self.presentation.unit, mono)))

    def basis(self, window: tuple[int, int]) -> list[Monomial]:
        return self.presentation.monomials(window)


class GradedElement:
    """Linear combination of admissible monomials with nonzero coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: dict):
        f = algebra.field
        clean = {}
        for m, v in terms.items():
            m = tuple(m)
            if not algebra.presentation.is_admissible(m):
                raise PresentationError(f"monomial {m} is not admissible")
            v = f.coerce(v)
            if v != 0:
                clean[m] = v
        self.algebra = algebra
        self.terms = clean

    def _check(self, other: "GradedElement"):
        if other.algebra.presentation != self.algebra.presentation:
            raise PresentationError("presentation mismatch")
        if other.algebra.field != self.algebra.field:
            raise FieldMismatchError("field mismatch")

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return multiply(self, other)
        f = self.algebra.field
        c = f.coerce(other)
        return GradedElement(self.algebra, {m: f.mul(c, v) for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __add__(self, other: "GradedElement"):
        self._check(other)
        f = self.algebra.field
        out = dict(self.terms)
        for m, v in other.terms.items():
            out[m] = f.add(out.get(m, f.zero), v)
        return GradedElement(self.algebra, out)

    def __neg__(self):
        f = self.algebra.field
        return GradedElement(self.algebra, {m: f.neg(v) for m, v in self.terms.items()})

    def __sub__(self, other: "GradedElement"):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return (self.algebra.presentation == other.algebra.presentation
                and self.algebra.field == other.algebra.field and self.terms == other.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.algebra.presentation.degree(m) for m in self.terms}

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def __repr__(self):
        pres = self.algebra.presentation
        if not self.terms:
            return "0"
        return " + ".join(f"{format_scalar(v)}*{pres.format_monomial(m)}"
                          for m, v in sorted(self.terms.items(), key=lambda mv: deglex_key(mv[0])))


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    a._check(b)
    return GradedElement(a.algebra, a.algebra.multiply_terms(a.terms, b.terms))


# validation --------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    window: tuple[int, int]
    char: int
    monomials: int = 0
    pairs_checked: int = 0
    triples_checked: int = 0
    violation: str | None = None
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "window": list(self.window), "char": self.char,
                "monomials": self.monomials, "pairs_checked": self.pairs_checked,
                "triples_checked": self.triples_checked, "violation": self.violation}


def _structural_problems(pres: GradedPresentation) -> list[str]:
    out = []
    for i, g in enumerate(pres.generators):
        if g.bound is None:
            continue
        top = tuple(g.bound if j == i else 0 for j in range(pres.ngens))
        for c, m in g.top_rewrite:
            if not pres.is_admissible(m):
                out.append(f"rewrite of {g.name}^{g.bound} uses inadmissible monomial "
                           f"{pres.format_monomial(m)}")
            if pres.degree(m) != g.bound * g.degree:
                out.append(f"rewrite of {g.name}^{g.bound} is not homogeneous")
            if not deglex_key(m) < deglex_key(top):
                out.append(f"rewrite of {g.name}^{g.bound} does not decrease in deglex order")
    return out


def validate_presentation(pres: GradedPresentation, window: tuple[int, int],
                          field: Field) -> ValidationReport:
    """Check the algebra laws on every admissible monomial pair/triple in the window.

    Checks unit law, graded commutativity ``xy = (-1)^{|x||y|} yx`` and
    associativity.  Violations are reported, not raised.
    """
    report = ValidationReport(True, tuple(window), field.char)
    problems = _structural_problems(pres)
    if problems:
        report.ok = False
        report.violation = problems[0]
        return report
    alg = GradedAlgebra(pres, field)
    basis = pres.monomials(window)
    report.monomials = len(basis)
    unit = pres.unit
    f = field
    degs = {m: pres.degree(m) for m in basis}
    fmt = pres.format_monomial

    for m in basis:
        if alg.monomial_product(unit, m) != {m: f.one} or alg.monomial_product(m, unit) != {m: f.one}:
            report.ok = False
            report.violation = f"unit law fails on {fmt(m)}"
            return report

    for i, x in enumerate(basis):
        for y in basis[i:]:
            report.pairs_checked += 1
            xy = alg.monomial_product(x, y)
            yx = alg.monomial_product(y, x)
            if (degs[x] * degs[y]) % 2:
                yx = {m: f.neg(v) for m, v in yx.items()}
            if xy != yx:
                report.ok = False
                report.violation = (f"graded commutativity fails: {fmt(x)} * {fmt(y)} "
                                    f"!= (-1)^(|x||y|) {fmt(y)} * {fmt(x)}")
                return report
            bad = [m for m in xy if pres.degree(m) != degs[x] + degs[y]]
            if bad:
                report.ok = False
                report.violation = f"degree not additive in {fmt(x)} * {fmt(y)}"
                return report

    for x in basis:
        for y in basis:
            xy = alg.monomial_product(x, y)
            for z in basis:
                report.triples_checked += 1
                left = alg.multiply_terms(xy, {z: f.one})
                right = alg.multiply_terms({x: f.one}, alg.monomial_product(y, z))
                if left != right:
                    report.ok = False
                    report.violation = (f"associativity fails on "
                                        f"({fmt(x)}, {fmt(y)}, {fmt(z)})")
                    return report
    return report


def presentation_from_json(data: dict) -> GradedPresentation:
    """Read ``{"generators": [{"name", "deg", "bound", "top_rewrite"}], "zero": [...]}``.

    Rewrite terms and zero monomials are written ``{"coeff": c, "mono": {gen: exp}}``
    and ``{gen: exp}`` respectively.
    """
    gens = []
    rewrites = {}
    for g in data["generators"]:
        bound = g.get("bound")
        gens.append((g["name"], int(g["deg"]), None if bound is None else int(bound)))
        rw = g.get("top_rewrite", [])
        if rw:
            rewrites[g["name"]] = [(Fraction(str(t["coeff"])), t["mono"]) for t in rw]
    return GradedPresentation.build(gens, data.get("zero", []), data.get("name", ""), rewrites)


def presentation_to_json(pres: GradedPresentation) -> dict:
    names = [g.name for g in pres.generators]

    def mono(m):
        return {n: e for n, e in zip(names, m) if e}

    return {
        "name": pres.name,
        "generators": [
            {"name": g.name, "deg": g.degree, "bound": g.bound,
             "top_rewrite": [{"coeff": format_scalar(c), "mono": mono(m)}
                             for c, m in g.top_rewrite]}
            for g in pres.generators
        ],
        "zero": [mono(z) for z in pres.zero_monomials],
    }
