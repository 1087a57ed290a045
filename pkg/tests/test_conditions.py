from __future__ import annotations

import dataclasses

import pytest

from orbiloop.catalog import AmbientGroupEntry, ManifoldEntry, default_catalog
from orbiloop.conditions import (TNCZ, OrbifoldProblem, Verdict, assemble, check_coprime,
                                 check_trivial_action, tncz_lookup)
from orbiloop.field import Field
from orbiloop.graded import poincare_series
from orbiloop.groups import named_group

from conftest import F5, F7, Q
from tncz_fixture import euler_characteristic, rows


def family_entry(kind, params, rational_free=None):
    return ManifoldEntry(name=f"{kind}{params}", dim_M=4, simply_connected=True,
                         euler_characteristic=euler_characteristic(kind, params), loop_ring=[],
                         family={"kind": kind, **params}, rational_free=rational_free)


def problem(manifold="S3", ambient="Spin(3)", group="SL2F5", field=F7):
    cat = default_catalog()
    return OrbifoldProblem(cat.manifold(manifold), cat.ambient(ambient), named_group(group), field)


@pytest.mark.parametrize("kind,params,p,expected", rows())
def test_tncz_fixture(kind, params, p, expected):
    assert tncz_lookup(family_entry(kind, params), p).value == expected


def test_tncz_characteristic_zero():
    assert tncz_lookup(family_entry("SU_quotient", {"m": 2, "n": 1}, True), 0) is TNCZ.TRUE
    assert tncz_lookup(family_entry("U_grassmannian", {"m": 2, "n": 1}, False), 0) is TNCZ.FALSE
    assert tncz_lookup(family_entry("SO_quotient", {"m": 2, "n": 1}), 0) is TNCZ.UNKNOWN
    # chi(CP^n) = n + 1 never vanishes rationally
    assert tncz_lookup(family_entry("CP", {"n": 3}), 0) is TNCZ.FALSE
    assert tncz_lookup(default_catalog().manifold("S3"), 0) is TNCZ.TRUE


def test_tncz_missing_rule_is_unknown():
    entry = family_entry("SO_quotient", {"m": 2})
    assert tncz_lookup(entry, 3) is TNCZ.UNKNOWN
    assert tncz_lookup(dataclasses.replace(entry, family={}), 3) is TNCZ.UNKNOWN


def test_check_coprime():
    assert check_coprime(problem(field=F7))
    assert not check_coprime(problem(field=F5))
    assert check_coprime(problem(field=Q))


def test_triviality_verdicts():
    assert check_trivial_action(problem()) is Verdict.SIMPLY_CONNECTED
    # non-simply-connected ambient, but H_top(LS^3) is one-dimensional
    assert check_trivial_action(problem(ambient="SO(3)")) is Verdict.TOP_HOMOLOGY
    # SU(3): top rank 4; |pi_1 SO(3)| = 2 invertible in F3; SU quotients are TNCZ
    assert check_trivial_action(problem("SU3", "SO(3)", "C5", Field(3))) is Verdict.TNCZ
    # CP^2 over F3: top rank 2, chi = 3 vanishes
    assert check_trivial_action(problem("CP2", "SO(3)", "C5", Field(3))) is Verdict.TNCZ
    # CP^3 over F2: top rank 2, pi_1 order 2 not invertible
    assert check_trivial_action(problem("CP3", "SO(3)", "C5", Field(2))) is Verdict.UNDETERMINED
    # infinite fundamental group
    assert check_trivial_action(problem("SU3", "U(1)", "C5", Field(3))) is Verdict.UNDETERMINED


@pytest.mark.parametrize("manifold", sorted(default_catalog().manifolds))
@pytest.mark.parametrize("ambient", ["SO(3)", "U(1)", "PU(3)"])
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_top_rank_data_is_monotone(manifold, ambient, p):
    prob = problem(manifold, ambient, "C7", Field(p))
    before = check_trivial_action(prob)
    rank = prob.manifold.top_rank(prob.field)
    richer = dataclasses.replace(prob.manifold, h_top_rank=[("any", rank)])
    after = check_trivial_action(dataclasses.replace(prob, manifold=richer))
    if before is not Verdict.UNDETERMINED:
        assert after is not Verdict.UNDETERMINED


def test_assemble_poincare_sphere():
    rep = assemble(problem(field=Field(7, alg_closed=True)), (-6, 8))
    assert rep.applicable and rep.c_G == 9 and rep.reason is None
    a_dims = poincare_series(default_catalog().manifold("S3").ring_for(F7).presentation, (-6, 8))
    assert [(r["degree"], r["dim_result"]) for r in rep.dimensions] == \
        [(d, 9 * n) for d, n in sorted(a_dims.items())]
    assert rep.result_ring["center_split"] == "k^9"
    assert rep.self_check["ok"]


def test_assemble_rejects_dividing_characteristic():
    rep = assemble(problem(field=F5), (-6, 8))
    assert not rep.applicable and rep.reason == "char divides |G|"
    assert rep.result_ring is None and rep.dimensions == []


def test_assemble_trivial_group_returns_a():
    rep = assemble(problem(group="trivial", field=Q), (-6, 8))
    assert rep.applicable and rep.c_G == 1
    assert all(r["dim_result"] == r["dim_A"] for r in rep.dimensions)


def test_assemble_undetermined():
    rep = assemble(problem("CP3", "SO(3)", "C5", Field(2)))
    assert not rep.applicable and rep.reason == "triviality of the action undetermined"
    assert rep.triviality_verdict is Verdict.UNDETERMINED


def test_assemble_is_deterministic():
    a = assemble(problem(group="Q8", field=Q), (-3, 4)).to_json()
    b = assemble(problem(group="Q8", field=Q), (-3, 4)).to_json()
    assert a == b
    assert a["result_ring"] is not None and a["applicable"]


def test_ambient_entry_consistency():
    with pytest.raises(ValueError):
        AmbientGroupEntry("X", True, None)
