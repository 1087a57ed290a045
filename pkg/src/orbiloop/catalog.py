"""Manifold and ambient-group catalogs.

Loop homology rings are input data: each manifold entry carries one or more
presentations, each guarded by a characteristic predicate such as
``"p != 2"`` (``p`` is the characteristic, 0 for Q; the entry's family
parameters such as ``n`` are also in scope).  Every presentation is run
through :func:`~orbiloop.graded.validate_presentation` when loaded.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .field import Field, is_prime
from .graded import GradedPresentation, poincare_series, presentation_from_json, validate_presentation


class CatalogError(ValueError):
    """Bad catalog or problem data; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = "", source: str | None = None):
        super().__init__(message)
        self.path = path
        self.source = source


# characteristic predicates ----------------------------------------------------

_ALLOWED = (ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not, ast.USub,
            ast.Compare, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE,
            ast.BinOp, ast.Add, ast.Sub, ast.Mult, ast.Mod, ast.FloorDiv,
            ast.Name, ast.Load, ast.Constant)


def compile_predicate(text: str):
    """Parse a characteristic predicate; ``"any"`` always holds."""
    if text.strip() == "any":
        return None
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise CatalogError(f"unsupported syntax in predicate {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise CatalogError(f"only integer constants allowed in predicate {text!r}")
    return compile(tree, "<predicate>", "eval")


def eval_predicate(code, p: int, params: dict) -> bool:
    if code is None:
        return True
    env = dict(params)
    env["p"] = p
    try:
        return bool(eval(code, {"__builtins__": {}}, env))
    except ZeroDivisionError:
        return False
    except NameError as exc:
        raise CatalogError(f"predicate refers to unknown name: {exc}") from None


# entries ------------------------------------------------------------------------


@dataclass
class LoopRing:
    char_condition: str
    presentation: GradedPresentation
    provenance: str
    _code: object = dc_field(default=None, repr=False)

    def matches(self, p: int, params: dict) -> bool:
        return eval_predicate(self._code, p, params)


@dataclass
class ManifoldEntry:
    name: str
    dim_M: int
    simply_connected: bool
    euler_characteristic: int
    loop_ring: list[LoopRing]
    family: dict = dc_field(default_factory=dict)
    rational_free: bool | None = None
    h_top_rank: list[tuple[str, int]] = dc_field(default_factory=list)
    betti: list[int] | None = None
    validation_window: tuple[int, int] | None = None

    @property
    def params(self) -> dict:
        return {k: v for k, v in self.family.items() if k != "kind"}

    def default_window(self) -> tuple[int, int]:
        return (-2 * self.dim_M, 4 * self.dim_M)

    def ring_for(self, field: Field) -> LoopRing | None:
        hits = [r for r in self.loop_ring if r.matches(field.char, self.params)]
        if len(hits) > 1:
            raise CatalogError(f"{self.name}: several loop rings match characteristic {field.char}")
        return hits[0] if hits else None

    def top_rank(self, field: Field) -> int | None:
        """rank H_dim M(LM; k): catalog value, else degree-0 dimension of the ring."""
        for cond, rank in self.h_top_rank:
            if eval_predicate(compile_predicate(cond), field.char, self.params):
                return rank
        ring = self.ring_for(field)
        if ring is None:
            return None
        return poincare_series(ring.presentation, (0, 0))[0]


@dataclass
class AmbientGroupEntry:
    name: str
    simply_connected: bool
    pi1_order: int | None  # None means infinite
    provenance: str = ""

    def __post_init__(self):
        if self.pi1_order is not None and self.pi1_order < 1:
            raise CatalogError(f"{self.name}: pi1_order must be positive or 'infinite'")
        if self.simply_connected != (self.pi1_order == 1):
            raise CatalogError(f"{self.name}: simply_connected must agree with pi1_order == 1")


CHECK_CHARS = (0,) + tuple(p for p in range(2, 200) if is_prime(p))


def _req(data: dict, key: str, where: str):
    if key not in data:
        raise CatalogError(f"missing field {key!r}", f"{where}.{key}")
    return data[key]


def manifold_from_json(data: dict, where: str = "manifold", *, validate: bool = True) -> ManifoldEntry:
    name = _req(data, "name", where)
    dim = _req(data, "dim_M", where)
    if not isinstance(dim, int) or dim < 1:
        raise CatalogError("dim_M must be a positive integer", f"{where}.dim_M")
    rings_json = data.get("loop_ring")
    if rings_json is None and "generators" in data:
        rings_json = [data]
    rings = []
    for i, r in enumerate(rings_json or []):
        rw = f"{where}.loop_ring[{i}]"
        cond = r.get("char_condition", "any")
        try:
            code = compile_predicate(cond)
            pres = presentation_from_json(r)
        except (SyntaxError, ValueError, KeyError, TypeError) as exc:
            raise CatalogError(f"{name}: bad loop ring: {exc}", rw) from None
        if not pres.name:
            pres = GradedPresentation(pres.generators, pres.zero_monomials, f"HH(L{name})")
        rings.append(LoopRing(cond, pres, r.get("provenance", ""), code))
    betti = data.get("betti")
    euler = data.get("euler_characteristic")
    if euler is None and betti is not None:
        euler = sum((-1) ** i * b for i, b in enumerate(betti))
    if euler is None:
        raise CatalogError("missing field 'euler_characteristic'", f"{where}.euler_characteristic")
    if betti is not None and sum((-1) ** i * b for i, b in enumerate(betti)) != euler:
        raise CatalogError(f"{name}: euler_characteristic disagrees with betti numbers",
                           f"{where}.euler_characteristic")
    vw = data.get("validation_window")
    entry = ManifoldEntry(
        name=name, dim_M=dim,
        simply_connected=bool(_req(data, "simply_connected", where)),
        euler_characteristic=int(euler),
        loop_ring=rings,
        family=dict(data.get("family", {})),
        rational_free=data.get("rational_free"),
        h_top_rank=[(h.get("char_condition", "any"), int(h["rank"])) for h in data.get("H_top_rank", [])],
        betti=betti,
        validation_window=tuple(vw) if vw else None,
    )
    if validate and rings:
        _validate_entry(entry, where)
    return entry


def _validate_entry(entry: ManifoldEntry, where: str) -> None:
    params = entry.params
    for p in CHECK_CHARS:
        hits = [r for r in entry.loop_ring if r.matches(p, params)]
        if len(hits) != 1:
            raise CatalogError(f"{entry.name}: {len(hits)} loop rings match characteristic {p} "
                               "(exactly one required)", f"{where}.loop_ring")
    window = entry.validation_window or entry.default_window()
    for i, ring in enumerate(entry.loop_ring):
        # first two characteristics the predicate admits
        chars = [p for p in CHECK_CHARS if ring.matches(p, params)]
        for p in chars[:2]:
            rep = validate_presentation(ring.presentation, window, Field(p))
            if not rep.ok:
                raise CatalogError(f"{entry.name}: loop ring fails validation over "
                                   f"{Field(p)}: {rep.violation}", f"{where}.loop_ring[{i}]")


def ambient_from_json(data: dict, where: str = "ambient") -> AmbientGroupEntry:
    order = _req(data, "pi1_order", where)
    if order in ("infinite", "inf", None):
        order = None
    elif not isinstance(order, int):
        raise CatalogError("pi1_order must be an integer or 'infinite'", f"{where}.pi1_order")
    return AmbientGroupEntry(_req(data, "name", where), bool(_req(data, "simply_connected", where)),
                             order, data.get("provenance", ""))


@dataclass
class Catalog:
    manifolds: dict[str, ManifoldEntry] = dc_field(default_factory=dict)
    ambient_groups: dict[str, AmbientGroupEntry] = dc_field(default_factory=dict)

    def add_document(self, doc: dict, source: str = "<catalog>", *, validate: bool = True) -> None:
        for i, m in enumerate(doc.get("manifolds", [])):
            try:
                entry = manifold_from_json(m, f"manifolds[{i}]", validate=validate)
            except CatalogError as exc:
                exc.source = source
                raise
            if entry.name in self.manifolds:
                raise CatalogError(f"duplicate manifold {entry.name!r}", f"manifolds[{i}].name", source)
            self.manifolds[entry.name] = entry
        for i, a in enumerate(doc.get("ambient_groups", [])):
            try:
                entry = ambient_from_json(a, f"ambient_groups[{i}]")
            except CatalogError as exc:
                exc.source = source
                raise
            if entry.name in self.ambient_groups:
                raise CatalogError(f"duplicate ambient group {entry.name!r}",
                                   f"ambient_groups[{i}].name", source)
            self.ambient_groups[entry.name] = entry

    def load(self, path: str | Path, *, validate: bool = True) -> None:
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"invalid JSON: {exc.msg} (line {exc.lineno})", "", str(path)) from None
        self.add_document(doc, str(path), validate=validate)

    def manifold(self, name: str) -> ManifoldEntry:
        try:
            return self.manifolds[name]
        except KeyError:
            raise CatalogError(f"unknown manifold {name!r}", "manifold") from None

    def ambient(self, name: str) -> AmbientGroupEntry:
        try:
            return self.ambient_groups[name]
        except KeyError:
            raise CatalogError(f"unknown ambient group {name!r}", "ambient") from None


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    """The shipped catalog (validated once, then cached)."""
    global _DEFAULT
    if _DEFAULT is None:
        cat = Catalog()
        for fname in ("manifolds.json", "ambient_groups.json"):
            text = resources.files("orbiloop").joinpath("data").joinpath(fname).read_text(encoding="utf-8")
            cat.add_document(json.loads(text), f"orbiloop/data/{fname}")
        _DEFAULT = cat
    return _DEFAULT
