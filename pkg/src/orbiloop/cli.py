"""Command-line front end.

    orbiloop classes  --problem P.json
    orbiloop center   --problem P.json
    orbiloop class-constants --problem P.json
    orbiloop poincare --problem P.json [--window LO HI]
    orbiloop check    --problem P.json
    orbiloop ring     --problem P.json [--window LO HI]
    orbiloop verify   --problem P.json [--window LO HI]

Exit status: 0 success/applicable, 2 hypotheses fail, 1 input or internal error.
Reports go to stdout; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .catalog import Catalog, CatalogError, ambient_from_json, default_catalog, manifold_from_json
from .conditions import OrbifoldProblem, SelfCheckError, assemble, check_coprime, \
    check_trivial_action, tncz_lookup
from .field import Field, format_scalar
from .graded import poincare_series
from .group_algebra import class_constants, center_report, same_center
from .groups import GroupError, group_from_json
from .linalg import echelon
from .sectors import (SectorModel, TransferUnavailableError, invariant_basis, projection_p,
                      transfer_mu, verify_theorem)

SCHEMA_VERSION = 1
COMMANDS = ("classes", "center", "class-constants", "ring", "check", "verify", "poincare")


class InputError(Exception):
    pass


class ProblemFile:
    """A parsed problem file; components are resolved lazily so that each
    command only demands the keys it needs."""

    def __init__(self, path: Path, catalog_paths=()):
        self.path = path
        self.catalog_paths = list(catalog_paths)
        self._catalog = None
        try:
            self.text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{path}: cannot read: {exc.strerror}") from None
        try:
            self.data = json.loads(self.text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(self.data, dict):
            raise InputError(f"{path}:1: problem file must be a JSON object")

    @property
    def catalog(self) -> Catalog:
        if self._catalog is None:
            cat = Catalog()
            base = default_catalog()
            cat.manifolds.update(base.manifolds)
            cat.ambient_groups.update(base.ambient_groups)
            for path in self.catalog_paths:
                try:
                    cat.load(path)
                except OSError as exc:
                    raise InputError(f"{path}: cannot read: {exc.strerror}") from None
            self._catalog = cat
        return self._catalog

    def fail(self, field: str, message: str):
        raise InputError(f"{self.path}:{self.locate(field)}: field '{field}': {message}")

    def locate(self, field: str) -> int:
        key = re.split(r"[.\[]", field.split(".")[-1])[0] or field
        for lineno, line in enumerate(self.text.splitlines(), 1):
            if f'"{key}"' in line:
                return lineno
        return 1

    def need(self, key: str):
        if key not in self.data:
            self.fail(key, "missing")
        return self.data[key]

    def group(self):
        spec = self.need("group")
        try:
            return group_from_json(spec)
        except (GroupError, KeyError, TypeError, ValueError) as exc:
            self.fail("group", str(exc))

    def field(self) -> Field:
        spec = self.data.get("field", {"char": 0})
        try:
            return Field.from_json(spec)
        except (KeyError, TypeError, ValueError) as exc:
            self.fail("field", f"{type(exc).__name__}: {exc}")

    def manifold(self):
        spec = self.need("manifold")
        catalog = self.catalog
        try:
            if isinstance(spec, str):
                return catalog.manifold(spec)
            return manifold_from_json(spec, "manifold")
        except CatalogError as exc:
            self.fail(exc.path or "manifold", str(exc))

    def ambient(self):
        spec = self.need("ambient")
        catalog = self.catalog
        try:
            if isinstance(spec, str):
                return catalog.ambient(spec)
            return ambient_from_json(spec, "ambient")
        except CatalogError as exc:
            self.fail(exc.path or "ambient", str(exc))

    def problem(self) -> OrbifoldProblem:
        return OrbifoldProblem(self.manifold(), self.ambient(), self.group(), self.field())

    def window(self, override):
        if override is not None:
            return tuple(override)
        if "window" in self.data:
            w = self.data["window"]
            if (not isinstance(w, list) or len(w) != 2 or not all(isinstance(v, int) for v in w)
                    or w[0] > w[1]):
                self.fail("window", "must be [lo, hi] with integers lo <= hi")
            return tuple(w)
        return self.manifold().default_window()


# commands ----------------------------------------------------------------------------


def cmd_classes(pf: ProblemFile, args) -> tuple[int, dict]:
    g = pf.group()
    ccs = g.classes
    rows = [{"index": i, "representative": rep, "label": g.labels[rep], "size": len(c),
             "centralizer_order": z}
            for i, (rep, c, z) in enumerate(zip(ccs.representatives, ccs.classes,
                                                ccs.centralizer_orders))]
    return 0, {"group": g.name, "order": g.order, "c_G": len(ccs), "classes": rows}


def cmd_center(pf: ProblemFile, args) -> tuple[int, dict]:
    return 0, center_report(pf.group(), pf.field())


def cmd_class_constants(pf: ProblemFile, args) -> tuple[int, dict]:
    g = pf.group()
    cc = class_constants(g)
    return 0, {"group": g.name, "order": g.order, "c_G": len(cc),
               "representatives": [g.labels[r] for r in g.classes.representatives],
               "constants": [[list(r) for r in row] for row in cc.c]}


def cmd_poincare(pf: ProblemFile, args) -> tuple[int, dict]:
    m, k = pf.manifold(), pf.field()
    window = pf.window(args.window)
    ring = m.ring_for(k)
    if ring is None:
        raise InputError(f"{m.name}: no catalog loop ring for characteristic {k.char}")
    dims = poincare_series(ring.presentation, window)
    return 0, {"manifold": m.name, "field": k.to_json(), "window": list(window),
               "ring": ring.presentation.name,
               "dimensions": [{"degree": d, "dim": n} for d, n in sorted(dims.items())]}


def cmd_check(pf: ProblemFile, args) -> tuple[int, dict]:
    prob = pf.problem()
    coprime = check_coprime(prob)
    verdict = check_trivial_action(prob)
    ok = coprime and verdict.value != "undetermined"
    out = {"manifold": prob.manifold.name, "ambient": prob.ambient.name,
           "group": prob.group.name, "order": prob.group.order, "field": prob.field.to_json(),
           "coprime_ok": coprime, "triviality_verdict": verdict.value,
           "tncz": tncz_lookup(prob.manifold, prob.field.char).value,
           "top_rank": prob.manifold.top_rank(prob.field),
           "hypotheses_hold": ok}
    if not coprime:
        out["reason"] = "char divides |G|"
    elif not ok:
        out["reason"] = "triviality of the action undetermined"
    return (0 if ok else 2), out


def cmd_ring(pf: ProblemFile, args) -> tuple[int, dict]:
    rep = assemble(pf.problem(), pf.window(args.window))
    return (0 if rep.applicable else 2), rep.to_json()


def cmd_verify(pf: ProblemFile, args) -> tuple[int, dict]:
    g, k, m = pf.group(), pf.field(), pf.manifold()
    window = pf.window(args.window)
    ring = m.ring_for(k)
    if ring is None:
        raise InputError(f"{m.name}: no catalog loop ring for characteristic {k.char}")
    checks = []

    def record(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})

    record("center: class sums span the brute-force commutant", same_center(g, k))
    cc = class_constants(g).c
    n = len(cc)
    sizes = [len(c) for c in g.classes.classes]
    e = g.classes.class_of[g.identity]
    record("class constants: identity, symmetry, pair counting",
           all(cc[e][d][x] == (d == x) for d in range(n) for x in range(n))
           and all(cc[a][b][x] == cc[b][a][x] for a in range(n) for b in range(n) for x in range(n))
           and all(sum(cc[a][b][x] * sizes[x] for x in range(n)) == sizes[a] * sizes[b]
                   for a in range(n) for b in range(n)))
    model = SectorModel(g, ring.presentation, k)
    basis = model.quotient_basis(window)
    order = k.coerce(g.order)
    record("transfer: p(mu(x)) = |G| x on the quotient basis",
           all(projection_p(transfer_mu(x)) == x.scale(order) for x in basis),
           f"{len(basis)} basis vectors")
    index = {}
    for s in invariant_basis(model, window):
        for key in s.terms:
            index.setdefault(key, len(index))
    images = [transfer_mu(x).sparse(index) for x in basis]
    invariants = [s.sparse(index) for s in invariant_basis(model, window)]
    e_img, e_inv = echelon(images, k), echelon(invariants, k)
    record("transfer: image of mu equals the invariant span",
           len(e_img) == len(e_inv) and all(e_img.contains(v) for v in invariants),
           f"rank {len(e_img)} vs {len(e_inv)}")
    status = 0
    try:
        rep = verify_theorem(g, ring.presentation, k, window)
        record("theorem: phi multiplicative and bijective in window", rep.ok,
               rep.counterexample or f"{rep.pairs_checked} pairs")
    except TransferUnavailableError as exc:
        record("theorem: phi multiplicative and bijective in window", False, str(exc))
        status = 2
    if status == 0 and not all(c["ok"] for c in checks):
        status = 1
    return status, {"group": g.name, "order": g.order, "field": k.to_json(), "manifold": m.name,
                    "window": list(window), "checks": checks,
                    "all_passed": all(c["ok"] for c in checks)}


HANDLERS = {
    "classes": cmd_classes,
    "center": cmd_center,
    "class-constants": cmd_class_constants,
    "poincare": cmd_poincare,
    "check": cmd_check,
    "ring": cmd_ring,
    "verify": cmd_verify,
}


# text rendering ------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return format_scalar(v) if not isinstance(v, str) else v


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["  (empty)"]
    cols = list(rows[0])
    cells = [[_fmt(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += ["  " + "  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return out


def render_text(command: str, result: dict) -> str:
    lines = [f"# {command}"]
    for key, val in result.items():
        if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            lines.append(f"{key}:")
            lines.extend(_table(val))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for k2, v2 in val.items():
                if isinstance(v2, list) and v2 and all(isinstance(r, dict) for r in v2):
                    lines.append(f"  {k2}:")
                    lines.extend("  " + ln for ln in _table(v2))
                else:
                    lines.append(f"  {k2}: {_fmt(v2)}")
        else:
            lines.append(f"{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbiloop",
        description="String-topology rings of finite quotients [M/G].")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--problem", required=True, type=Path, help="problem JSON file")
    parser.add_argument("--catalog", action="append", default=[], type=Path,
                        help="extra catalog file (repeatable)")
    parser.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"),
                        help="degree window (default [-2 dim M, 4 dim M])")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.window is not None and args.window[0] > args.window[1]:
        print("error: --window LO HI requires LO <= HI", file=sys.stderr)
        return 1
    try:
        pf = ProblemFile(args.problem, args.catalog)
        status, result = HANDLERS[args.command](pf, args)
    except CatalogError as exc:
        where = exc.source or "<catalog>"
        line = _locate_in_file(exc.source, exc.path)
        print(f"error: {where}:{line}: field '{exc.path}': {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SelfCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "exit_status": status,
               "result": result}
        sys.stdout.write(json.dumps(doc, indent=2, default=_fmt) + "\n")
    else:
        sys.stdout.write(render_text(args.command, result))
    return status


def _locate_in_file(source: str | None, path: str) -> int:
    if not source or not path:
        return 1
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError:
        return 1
    key = re.split(r"[.\[]", path.split(".")[-1])[0]
    for lineno, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return lineno
    return 1


if __name__ == "__main__":
    sys.exit(main())
