"""The eight acceptance criteria, each with its time budget.

Every criterion records one PASS/FAIL line, printed in the pytest summary.
"""

from __future__ import annotations

import contextlib
import itertools
import time

import pytest

from orbiloop.catalog import ManifoldEntry, default_catalog
from orbiloop.conditions import OrbifoldProblem, assemble, tncz_lookup
from orbiloop.graded import GradedAlgebra, poincare_series, validate_presentation
from orbiloop.group_algebra import center_brute_force, same_center
from orbiloop.groups import build_matrix_group, named_group
from orbiloop.field import Field
from orbiloop.linalg import echelon
from orbiloop.sectors import (SectorModel, invariant_basis, orbifold_product, projection_p,
                              transfer_mu, verify_theorem)

from conftest import ACCEPTANCE_LINES, F5, F7, Q, exterior_times_polynomial
from tncz_fixture import euler_characteristic, rows


@contextlib.contextmanager
def criterion(number: int, title: str, budget: float | None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = budget is None or elapsed < budget
        assert ok, f"took {elapsed:.2f}s, budget {budget}s"
    finally:
        elapsed = time.perf_counter() - start
        limit = f" (budget {budget:g}s)" if budget else ""
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: "
                                f"{elapsed:.2f}s{limit}")
        print(ACCEPTANCE_LINES[-1])


WINDOW = (-6, 8)


def test_1_poincare_homology_sphere():
    with criterion(1, "Poincare sphere: c(G) = 9, result 9 x dim A on [-6, 8]", 10):
        cat = default_catalog()
        s3, spin3 = cat.manifold("S3"), cat.ambient("Spin(3)")
        g = build_matrix_group(5)
        assert g.order == 120
        for k in (F7, Q):
            assert len(g.classes) == 9
            assert len(center_brute_force(g, k)) == 9
            rep = assemble(OrbifoldProblem(s3, spin3, g, k), WINDOW)
            assert rep.applicable and rep.c_G == 9
            a_dims = poincare_series(s3.ring_for(k).presentation, WINDOW)
            assert {r["degree"]: r["dim_result"] for r in rep.dimensions} == \
                {d: 9 * n for d, n in a_dims.items()}


def test_2_transfer_identities():
    with criterion(2, "transfer: p o mu = |G| id and Im mu = invariant span", 5):
        au = exterior_times_polynomial()
        for name in ("C2", "C3", "S3", "D4", "Q8"):
            for k in (F7, Q):
                g = named_group(name)
                model = SectorModel(g, au, k)
                basis = model.quotient_basis(WINDOW)
                for b in basis:
                    assert projection_p(transfer_mu(b)) == b.scale(g.order)
                keys = [(h, m) for m in au.monomials(WINDOW) for h in range(g.order)]
                index = {key: i for i, key in enumerate(keys)}
                img = echelon((transfer_mu(b).sparse(index) for b in basis), k)
                inv = echelon((v.sparse(index) for v in invariant_basis(model, WINDOW)), k)
                assert len(img) == len(inv)
                assert all(inv.contains(transfer_mu(b).sparse(index)) for b in basis)
                assert all(img.contains(v.sparse(index)) for v in invariant_basis(model, WINDOW))


def catalog_groups_up_to_24():
    return ([f"C{n}" for n in range(1, 25)] + ["trivial", "S1", "S2", "S3", "S4", "Q8", "A4"]
            + [f"D{n}" for n in range(3, 13)])


def test_3_center_oracle_equivalence():
    with criterion(3, "center: class sums span the brute-force commutant", 60):
        groups = [named_group(n) for n in catalog_groups_up_to_24()] + [build_matrix_group(5)]
        for g in groups:
            for k in (F7, Q):
                assert same_center(g, k), (g.name, str(k))
                assert len(center_brute_force(g, k)) == len(g.classes)


def test_4_theorem_verification():
    with criterion(4, "theorem: phi multiplicative on all pairs in [-6, 8]", 60):
        au = exterior_times_polynomial()
        for name in ("C2", "S3", "Q8"):
            rep = verify_theorem(named_group(name), au, F7, WINDOW)
            assert rep.ok, rep.counterexample
            assert rep.pairs_checked == (len(named_group(name).classes) * len(au.monomials(WINDOW))) ** 2


def test_5_degeneration_for_trivial_group():
    with criterion(5, "trivial G: orbifold product equals the product of A", None):
        au = exterior_times_polynomial()
        for k in (F7, Q):
            model = SectorModel(named_group("trivial"), au, k)
            alg = GradedAlgebra(au, k)
            for x, y in itertools.product(model.quotient_basis(WINDOW), repeat=2):
                (_, m1), = x.terms
                (_, m2), = y.terms
                got = orbifold_product(x, y).terms
                assert got == {(0, m): v for m, v in alg.monomial_product(m1, m2).items()}


def test_6_hypothesis_gating():
    with criterion(6, "gating: F5 rejected (char divides |G|), F7 accepted", None):
        cat = default_catalog()
        g = build_matrix_group(5)
        bad = assemble(OrbifoldProblem(cat.manifold("S3"), cat.ambient("Spin(3)"), g, F5), WINDOW)
        assert not bad.applicable and bad.reason == "char divides |G|"
        good = assemble(OrbifoldProblem(cat.manifold("S3"), cat.ambient("Spin(3)"), g, F7),
                        WINDOW, self_check=False)
        assert good.applicable


def test_7_tncz_fixture():
    with criterion(7, "TNCZ table reproduced by tncz_lookup", None):
        table = rows()
        assert len(table) > 100
        for kind, params, p, expected in table:
            entry = ManifoldEntry(name=kind, dim_M=4, simply_connected=True,
                                  euler_characteristic=euler_characteristic(kind, params),
                                  loop_ring=[], family={"kind": kind, **params})
            assert tncz_lookup(entry, p).value == expected, (kind, params, p)


def test_8_graded_law_suite():
    with criterion(8, "graded laws for every shipped presentation in chars 0, 2, 7", None):
        cat = default_catalog()
        checked = 0
        for entry in cat.manifolds.values():
            window = entry.validation_window or entry.default_window()
            for p in (0, 2, 7):
                k = Field(p)
                ring = entry.ring_for(k)
                rep = validate_presentation(ring.presentation, window, k)
                assert rep.ok, (entry.name, p, rep.violation)
                checked += 1
        assert checked == 3 * len(cat.manifolds)
