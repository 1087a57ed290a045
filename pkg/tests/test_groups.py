from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from orbiloop.groups import (CATALOG_NAMES, FiniteGroup, GroupError, GroupTooLargeError,
                             build_from_permutations, build_matrix_group, conjugacy_classes,
                             cyclic_group, dihedral_group, from_table, group_from_json,
                             is_table_isomorphism, named_group, quaternion_group,
                             symmetric_group)


def brute_force_classes(group: FiniteGroup) -> list[frozenset[int]]:
    """Independent oracle: orbits of g -> h^-1 g h straight from the table."""
    n, mult = group.order, group.mult
    inv = [next(b for b in range(n) if mult[a][b] == group.identity) for a in range(n)]
    seen, out = set(), []
    for g in range(n):
        if g in seen:
            continue
        orbit = frozenset(mult[mult[inv[h]][g]][h] for h in range(n))
        seen |= orbit
        out.append(orbit)
    return out


def test_transposition_and_three_cycle_give_order_six():
    g = build_from_permutations([[[1, 2]], [[1, 2, 3]]])
    assert g.order == 6
    # oracle: closure of the raw permutations equals all of S3
    assert sorted(g.permutations) == sorted(itertools.permutations(range(3)))


def test_empty_generators_give_trivial_group():
    g = build_from_permutations([], 1)
    assert g.order == 1 and len(g.classes) == 1


def test_five_cycle_gives_cyclic_group():
    g = build_from_permutations([[[1, 2, 3, 4, 5]]])
    assert g.order == 5 and g.is_abelian()


def test_closure_cap():
    with pytest.raises(GroupTooLargeError, match="group too large"):
        build_from_permutations([[[1, 2]], [[1, 2, 3, 4, 5, 6, 7]]], cap=100)


@pytest.mark.parametrize("bad", [[[[1, 1]]], [[[1, 2], [2, 3]]], [[[0, 2]]]])
def test_malformed_permutations(bad):
    with pytest.raises(GroupError):
        build_from_permutations(bad, 3)


@pytest.mark.parametrize("p,order", [(2, 6), (3, 24), (5, 120)])
def test_matrix_group_orders(p, order):
    g = build_matrix_group(p)
    # oracle: count determinant-one matrices directly
    count = sum(1 for a, b, c, d in itertools.product(range(p), repeat=4) if (a * d - b * c) % p == 1)
    assert g.order == count == order == p * (p * p - 1)


def test_matrix_group_rejects_large_or_composite():
    with pytest.raises(GroupError):
        build_matrix_group(4)
    with pytest.raises(GroupError):
        build_matrix_group(37)


def test_symmetric_three_classes():
    g = build_from_permutations([[[1, 2]], [[1, 2, 3]]])
    assert sorted(g.classes.sizes) == [1, 2, 3]
    assert {frozenset(c) for c in g.classes.classes} == set(brute_force_classes(g))


def test_binary_icosahedral_has_nine_classes():
    g = build_matrix_group(5)
    ccs = g.classes
    assert len(ccs) == 9
    assert sum(ccs.sizes) == 120
    # sizes from the brute-force oracle
    assert sorted(len(c) for c in brute_force_classes(g)) == [1, 1, 12, 12, 12, 12, 20, 20, 30]


@pytest.mark.parametrize("name,expected", [("trivial", 1), ("C2", 2), ("C6", 6), ("S3", 3),
                                           ("S4", 5), ("D4", 5), ("D5", 4), ("D6", 6),
                                           ("Q8", 5), ("A4", 4), ("A5", 5)])
def test_class_counts_against_oracle(name, expected):
    g = named_group(name)
    assert len(g.classes) == expected == len(brute_force_classes(g))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_class_structure_invariants(name):
    g = named_group(name)
    ccs = g.classes
    assert sorted(x for c in ccs.classes for x in c) == list(range(g.order))
    assert list(ccs.classes[ccs.class_of[g.identity]]) == [g.identity]
    for rep, cls, z in zip(ccs.representatives, ccs.classes, ccs.centralizer_orders):
        assert rep == min(cls)
        assert len(cls) * z == g.order
        assert z == sum(1 for h in range(g.order) if g.mul(h, rep) == g.mul(rep, h))
    for g_ in range(g.order):
        assert g_ in ccs.classes[ccs.class_of[g_]]


def test_table_validation_rejects_non_groups():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        from_table([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    # Latin square without associativity
    non_assoc = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
                 [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        from_table(non_assoc)


def test_from_table_roundtrip():
    s3 = symmetric_group(3)
    g = group_from_json({"type": "table", "mult": s3.mult})
    assert g.order == 6 and len(g.classes) == 3


def test_group_json_types():
    assert group_from_json({"type": "permutation", "generators": [[[1, 2]], [[1, 2, 3]]]}).order == 6
    assert group_from_json({"type": "matrix_sl2", "p": 3}).order == 24
    assert group_from_json({"type": "named", "name": "Q8"}).order == 8
    with pytest.raises(GroupError):
        group_from_json({"type": "presentation"})
    with pytest.raises(GroupError):
        named_group("S9")


def test_dihedral_and_quaternion_orders():
    for n in range(3, 13):
        d = dihedral_group(n)
        assert d.order == 2 * n
        assert len(d.classes) == (n + 3) // 2 if n % 2 else n // 2 + 3
    q = quaternion_group()
    assert q.order == 8 and not q.is_abelian()
    # exactly one element of order 2
    assert sum(1 for x in range(8) if x != q.identity and q.mul(x, x) == q.identity) == 1


def test_cyclic_catalog_range():
    for n in (1, 7, 50):
        assert cyclic_group(n).order == n
    with pytest.raises(GroupError):
        named_group("C51")


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4", "S4", "D6"]), st.randoms(use_true_random=False))
def test_class_count_invariant_under_relabeling(name, rnd):
    g = named_group(name)
    perm = list(range(g.order))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert len(h.classes) == len(g.classes)
    assert sorted(h.classes.sizes) == sorted(g.classes.sizes)
    assert is_table_isomorphism(g, h, perm)


def test_redundant_generators_leave_group_unchanged():
    base = build_from_permutations([[[1, 2]], [[1, 2, 3, 4]]])
    more = build_from_permutations([[[1, 2]], [[1, 2, 3, 4]], [[1, 3]], [[2, 4]]])
    assert base.order == more.order == 24
    # map elements through their underlying permutations
    pos = {p: i for i, p in enumerate(more.permutations)}
    mapping = [pos[p] for p in base.permutations]
    assert is_table_isomorphism(base, more, mapping)


def test_associativity_sampling_on_large_group():
    g = build_matrix_group(7)  # order 336, sampled check
    assert g.order == 336
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rng.randrange(g.order) for _ in range(3))
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_conjugacy_classes_function_matches_cached():
    g = named_group("S4")
    assert conjugacy_classes(g).classes == g.classes.classes
