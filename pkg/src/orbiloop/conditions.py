"""Decide when the splitting theorem applies, and assemble the answer ring.

The theorem needs two things: char(k) coprime to |G|, and triviality of the
action of degree-0 loops of the ambient group on the loop homology of M.
Triviality is decided by three sufficient criteria, tried in order:

1. the ambient group is simply connected;
2. ``H_{dim M}(LM; k)`` is one-dimensional;
3. M simply connected, ``|pi_1|`` of the ambient group finite and invertible
   in k, and the free loop fibration of M is TNCZ over k.

None of them is necessary, so failure yields ``undetermined`` rather than a
negative answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .catalog import AmbientGroupEntry, ManifoldEntry
from .field import Field
from .graded import poincare_series, presentation_to_json
from .group_algebra import center_report
from .groups import FiniteGroup
from .sectors import verify_theorem


class Verdict(str, enum.Enum):
    SIMPLY_CONNECTED = "trivial_by_simply_connected"
    TOP_HOMOLOGY = "trivial_by_top_homology"
    TNCZ = "trivial_by_tncz"
    UNDETERMINED = "undetermined"


class TNCZ(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class SelfCheckError(RuntimeError):
    """Internal theorem verification failed; always an implementation bug."""


@dataclass
class OrbifoldProblem:
    manifold: ManifoldEntry
    ambient: AmbientGroupEntry
    group: FiniteGroup
    field: Field


def check_coprime(problem: OrbifoldProblem) -> bool:
    return problem.field.is_coprime_to(problem.group.order)


def _tri(flag: bool | None) -> TNCZ:
    if flag is None:
        return TNCZ.UNKNOWN
    return TNCZ.TRUE if flag else TNCZ.FALSE


def tncz_lookup(manifold: ManifoldEntry, p: int) -> TNCZ:
    """TNCZ status of the free loop fibration of ``manifold`` over a field of char ``p``.

    Rules by ``manifold.family["kind"]``:

    ``sphere``, ``CP``, ``HP``
        TNCZ iff the Euler characteristic vanishes in F_p.  In characteristic
        0 the Euler rule is used for spheres and CP^n only.
    ``SU_quotient``, ``Sp_quotient`` (SU(m+n)/SU(n), Sp(m+n)/Sp(n))
        always TNCZ for p > 0.
    ``SO_quotient`` (SO(m+n)/SO(n))
        p > 2: TNCZ iff n is odd.  p = 2: TNCZ if m <= 4 or (1 <= m <= 8 and
        n >= 43); anything else is ``unknown`` since that rule is only sufficient.
    ``U_grassmannian``, ``Sp_grassmannian``
        never TNCZ for p > 0.

    Characteristic 0 otherwise falls back to the catalog flag
    ``rational_free`` (rational cohomology free graded-commutative); a
    missing flag or family gives ``unknown``.
    """
    fam = manifold.family or {}
    kind = fam.get("kind")
    rational = _tri(manifold.rational_free)
    chi = manifold.euler_characteristic

    if kind in ("sphere", "CP", "HP"):
        if p > 0:
            return _tri(chi % p == 0)
        return _tri(chi == 0) if kind in ("sphere", "CP") else rational
    if p == 0:
        return rational
    if kind in ("SU_quotient", "Sp_quotient"):
        return TNCZ.TRUE
    if kind == "SO_quotient":
        m, n = fam.get("m"), fam.get("n")
        if m is None or n is None:
            return TNCZ.UNKNOWN
        if p > 2:
            return _tri(n % 2 == 1)
        if m <= 4 or (1 <= m <= 8 and n >= 43):
            return TNCZ.TRUE
        return TNCZ.UNKNOWN
    if kind in ("U_grassmannian", "Sp_grassmannian"):
        return TNCZ.FALSE
    return TNCZ.UNKNOWN


def check_trivial_action(problem: OrbifoldProblem) -> Verdict:
    """First sufficient triviality criterion that fires, else ``undetermined``."""
    m, amb, k = problem.manifold, problem.ambient, problem.field
    if amb.simply_connected:
        return Verdict.SIMPLY_CONNECTED
    if m.top_rank(k) == 1:
        return Verdict.TOP_HOMOLOGY
    r = amb.pi1_order
    if (m.simply_connected and r is not None and k.is_coprime_to(r)
            and tncz_lookup(m, k.char) is TNCZ.TRUE):
        return Verdict.TNCZ
    return Verdict.UNDETERMINED


@dataclass
class OrbifoldReport:
    manifold: str
    ambient: str
    group: str
    order: int
    field: Field
    window: tuple[int, int]
    coprime_ok: bool
    triviality_verdict: Verdict
    applicable: bool
    c_G: int
    reason: str | None = None
    result_ring: dict | None = None
    dimensions: list[dict] = dc_field(default_factory=list)
    self_check: dict | None = None
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "ambient": self.ambient,
            "group": self.group,
            "order": self.order,
            "field": self.field.to_json(),
            "window": list(self.window),
            "coprime_ok": self.coprime_ok,
            "triviality_verdict": self.triviality_verdict.value,
            "applicable": self.applicable,
            "reason": self.reason,
            "c_G": self.c_G,
            "result_ring": self.result_ring,
            "dimensions": self.dimensions,
            "self_check": self.self_check,
            "notes": self.notes,
        }


def assemble(problem: OrbifoldProblem, window: tuple[int, int] | None = None, *,
             self_check: bool = True) -> OrbifoldReport:
    """Run the hypothesis checks and, when they pass, build A (x) Z(k[G]).

    Every problem yields a report.  When applicable, the theorem is
    re-verified on the window as an internal self-check (skip with
    ``self_check=False``); a failure raises :class:`SelfCheckError`.
    """
    m, amb, g, k = problem.manifold, problem.ambient, problem.group, problem.field
    window = tuple(window) if window is not None else m.default_window()
    coprime = check_coprime(problem)
    verdict = check_trivial_action(problem)
    c_g = len(g.classes)
    report = OrbifoldReport(m.name, amb.name, g.name, g.order, k, window, coprime, verdict,
                            False, c_g)
    ring = m.ring_for(k)
    if not coprime:
        report.reason = "char divides |G|"
        report.notes.append(f"characteristic {k.char} divides |G| = {g.order}; "
                            "the transfer is not invertible")
    elif verdict is Verdict.UNDETERMINED:
        report.reason = "triviality of the action undetermined"
        report.notes.append("no sufficient criterion applies; the splitting is not asserted")
    elif ring is None:
        report.reason = f"no catalog loop ring for characteristic {k.char}"
    else:
        report.applicable = True
    if not report.applicable:
        return report

    pres = ring.presentation
    a_dims = poincare_series(pres, window)
    report.dimensions = [{"degree": d, "dim_A": n, "dim_result": n * c_g}
                         for d, n in sorted(a_dims.items())]
    center = center_report(g, k)
    report.result_ring = {
        "description": f"{pres.name} (x) Z(k[{g.name or 'G'}])",
        "A": presentation_to_json(pres),
        "A_provenance": ring.provenance,
        "center": center,
    }
    if k.alg_closed:
        report.result_ring["center_split"] = f"k^{c_g}"
        report.notes.append(f"k algebraically closed with char not dividing |G|: "
                            f"Z(k[G]) = k^{c_g}")
    if self_check:
        check = verify_theorem(g, pres, k, window)
        if not check.ok:
            raise SelfCheckError(f"theorem self-check failed: {check.counterexample}")
        bad = [row for row in check.dimensions.values() if row["dim_quotient"] != row["expected"]]
        if bad:
            raise SelfCheckError("dimension table mismatch in self-check")
        report.self_check = {"ok": True, "pairs_checked": check.pairs_checked}
    return report
