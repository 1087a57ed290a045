from __future__ import annotations

import json

import pytest

from orbiloop.catalog import (CHECK_CHARS, Catalog, CatalogError, ambient_from_json,
                              compile_predicate, default_catalog, eval_predicate,
                              manifold_from_json)
from orbiloop.field import Field
from orbiloop.graded import poincare_series


def integral_additive_basis(entry, window):
    """(degree, torsion order or 0 for Z) of an additive basis of the integral loop
    homology, read from the integral ring descriptions in the literature."""
    fam, lo, hi = entry.family, window[0] - 1, window[1]
    out = []
    kind, n = fam["kind"], fam.get("n")
    jmax = 4 * (hi - lo) + 8
    if kind == "sphere" and n % 2:
        # Lambda(a) (x) Z[u], |a| = -n, |u| = n - 1
        out = [(-n * e + (n - 1) * j, 0) for e in (0, 1) for j in range(jmax)]
    elif kind == "sphere":
        # Lambda(b) (x) Z[a, v] / (a^2, ab, 2av), |a| = -n, |b| = -1, |v| = 2n - 2
        v = 2 * n - 2
        out = [(v * j, 0) for j in range(jmax)] + [(-1 + v * j, 0) for j in range(jmax)]
        out += [(-n, 0)] + [(-n + v * j, 2) for j in range(1, jmax)]
    elif kind == "CP":
        # Lambda(b) (x) Z[a, v] / (a^(n+1), (n+1) a^n v, b a^n), |a| = -2, |b| = -1, |v| = 2n
        for j in range(jmax):
            for i in range(n + 1):
                tors = n + 1 if (i == n and j >= 1) else 0
                out.append((-2 * i + 2 * n * j, tors))
                if i < n:
                    out.append((-1 - 2 * i + 2 * n * j, 0))
    elif kind == "SU_quotient":
        # SU(3): Lambda(a3, a5) (x) Z[u2, u4], torsion free
        for e1 in (0, 1):
            for e2 in (0, 1):
                for j in range(jmax):
                    for k in range(jmax):
                        out.append((-3 * e1 - 5 * e2 + 2 * j + 4 * k, 0))
    else:
        raise AssertionError(kind)
    return out


def uct_dimensions(entry, p, window):
    """rank over F_p (or Q) per degree: free part + p-torsion in d + p-torsion in d - 1."""
    dims = {d: 0 for d in range(window[0], window[1] + 1)}
    for deg, tors in integral_additive_basis(entry, window):
        hit_p = p > 0 and tors and tors % p == 0
        if tors == 0 and deg in dims:
            dims[deg] += 1
        if hit_p:
            if deg in dims:
                dims[deg] += 1
            if deg + 1 in dims:
                dims[deg + 1] += 1
    return dims


@pytest.mark.parametrize("name", sorted(default_catalog().manifolds))
@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_catalog_rings_have_universal_coefficient_dimensions(name, p):
    entry = default_catalog().manifold(name)
    window = entry.validation_window or entry.default_window()
    ring = entry.ring_for(Field(p))
    assert poincare_series(ring.presentation, window) == uct_dimensions(entry, p, window)


@pytest.mark.parametrize("name", sorted(default_catalog().manifolds))
def test_exactly_one_ring_per_characteristic(name):
    entry = default_catalog().manifold(name)
    for p in CHECK_CHARS:
        assert sum(r.matches(p, entry.params) for r in entry.loop_ring) == 1


def test_euler_characteristics():
    cat = default_catalog()
    # oracle: alternating sum of Betti numbers
    expect = {"S2": 2, "S3": 0, "S4": 2, "S5": 0, "S7": 0, "CP1": 2, "CP2": 3, "CP3": 4, "SU3": 0}
    for name, chi in expect.items():
        assert cat.manifold(name).euler_characteristic == chi


def test_ambient_groups():
    cat = default_catalog()
    assert cat.ambient("Spin(3)").simply_connected
    assert cat.ambient("SO(3)").pi1_order == 2
    assert cat.ambient("U(1)").pi1_order is None
    for a in cat.ambient_groups.values():
        assert a.simply_connected == (a.pi1_order == 1)
    with pytest.raises(CatalogError):
        ambient_from_json({"name": "X", "simply_connected": True, "pi1_order": 2})
    with pytest.raises(CatalogError):
        cat.ambient("E8")


def test_predicates():
    code = compile_predicate("p > 0 and (n + 1) % p == 0")
    assert eval_predicate(code, 3, {"n": 2})
    assert not eval_predicate(code, 0, {"n": 2})
    assert eval_predicate(compile_predicate("any"), 5, {})
    for bad in ("__import__('os')", "p.real", "[p]", "p != 2.5"):
        with pytest.raises(CatalogError):
            compile_predicate(bad)
    with pytest.raises(CatalogError):
        eval_predicate(compile_predicate("q == 1"), 2, {})


def base_entry(**over):
    data = {"name": "T", "dim_M": 3, "simply_connected": True, "betti": [1, 0, 0, 1],
            "loop_ring": [{"char_condition": "any", "provenance": "test",
                           "generators": [{"name": "a", "deg": -3, "bound": 2},
                                          {"name": "u", "deg": 2}]}]}
    data.update(over)
    return data


def test_manifold_entry_parsing():
    entry = manifold_from_json(base_entry())
    assert entry.euler_characteristic == 0 and entry.default_window() == (-6, 12)
    assert entry.top_rank(Field(7)) == 1


def test_manifold_entry_errors():
    with pytest.raises(CatalogError) as err:
        manifold_from_json(base_entry(dim_M=0))
    assert err.value.path == "manifold.dim_M"
    with pytest.raises(CatalogError, match="exactly one"):
        manifold_from_json(base_entry(loop_ring=[]) | {"loop_ring": [
            {"char_condition": "p != 2", "generators": []}]})
    with pytest.raises(CatalogError, match="fails validation"):
        manifold_from_json(base_entry(loop_ring=[{"char_condition": "any", "generators": [
            {"name": "a", "deg": 3, "bound": 3}]}]))
    with pytest.raises(CatalogError, match="disagrees"):
        manifold_from_json(base_entry(euler_characteristic=2))


def test_catalog_file_loading(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"manifolds": [base_entry()],
                                "ambient_groups": [{"name": "G", "simply_connected": False,
                                                    "pi1_order": "infinite"}]}))
    cat = Catalog()
    cat.load(good)
    assert cat.manifold("T").dim_M == 3 and cat.ambient("G").pi1_order is None
    with pytest.raises(CatalogError, match="duplicate"):
        cat.load(good)
    bad = tmp_path / "bad.json"
    bad.write_text('{"manifolds": [\n  {"name": }\n]}')
    with pytest.raises(CatalogError, match="line 2") as err:
        Catalog().load(bad)
    assert err.value.source == str(bad)
