import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiquandle.errors import NoIdentity, NoInverse, NotAssociative, ShapeMismatch, SizeLimitExceeded
from multiquandle.groups import (
    center,
    conjugate_subgroup,
    element_order,
    exponent,
    generated_subgroups,
    group_from_cayley,
    group_from_json,
    group_to_json,
    is_subgroup,
    left_cosets,
    perm_index,
    power,
    standard_group,
    subgroup_from_json,
    subgroup_generated,
    subgroup_to_json,
    symmetric_elements,
    transposition,
)
from oracles import brute_force_isomorphic_tables, perm_compose

CATALOG = [("cyclic", n) for n in (1, 2, 4, 6, 12)] + [
    ("dihedral", 3),
    ("dihedral", 4),
    ("symmetric", 3),
    ("symmetric", 4),
    ("quaternion8", None),
]


def group_axioms_hold(G):
    C = G.cayley.tolist()
    n, e, inv = G.order, G.identity, G.inverses.tolist()
    for a in range(n):
        assert C[e][a] == a == C[a][e]
        assert C[a][inv[a]] == e == C[inv[a]][a]
        assert sorted(C[a]) == list(range(n))
        assert sorted(C[b][a] for b in range(n)) == list(range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert C[C[a][b]][c] == C[a][C[b][c]]


@pytest.mark.parametrize("kind,n", CATALOG)
def test_catalog_groups_satisfy_axioms(kind, n):
    group_axioms_hold(standard_group(kind, n))


def test_trivial_and_cyclic_tables():
    G = group_from_cayley([[0]])
    assert G.order == 1 and G.identity == 0
    Z3 = group_from_cayley([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert Z3.order == 3 and Z3.inverses.tolist() == [0, 2, 1]


def test_rejects_non_group_tables():
    with pytest.raises((NotAssociative, NoInverse)):
        group_from_cayley([[0, 1], [1, 1]])
    with pytest.raises(NoIdentity):
        group_from_cayley([[1, 1], [0, 0]])
    with pytest.raises(ShapeMismatch):
        group_from_cayley([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(ShapeMismatch):
        group_from_cayley([[0, 5], [1, 0]])


def test_non_associative_loop_reports_witness():
    # a loop of order 5 (Latin square with identity) that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as info:
        group_from_cayley(table)
    a, b, c = info.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_non_latin_table_witness_replays():
    # identity 0 and inverses exist but row 1 repeats a value
    table = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
    with pytest.raises(NotAssociative) as info:
        group_from_cayley(table)
    a, b, c = info.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_large_group_uses_generator_check():
    G = standard_group("symmetric", 6)
    assert G.order == 720
    bad = np.array(G.cayley)
    # swap two entries of a row: destroys associativity but keeps identity row/column
    x, y = 5, 6
    bad[x, [y, y + 1]] = bad[x, [y + 1, y]]
    with pytest.raises(NotAssociative) as info:
        group_from_cayley(bad)
    a, b, c = info.value.witness
    assert bad[bad[a, b], c] != bad[a, bad[b, c]]


def test_size_guards():
    with pytest.raises(SizeLimitExceeded):
        standard_group("symmetric", 7)
    with pytest.raises(SizeLimitExceeded):
        standard_group("cyclic", 5041)


def test_cyclic_squares():
    G = standard_group("cyclic", 4)
    assert [G.mul(a, a) for a in range(4)] == [0, 2, 0, 2]


def test_symmetric_convention_matches_composition():
    perms = symmetric_elements(3)
    G = standard_group("symmetric", 3)
    for a, b in itertools.product(range(6), repeat=2):
        assert perms[G.mul(a, b)] == perm_compose(perms[a], perms[b])
    assert perm_index((1, 0, 2)) == transposition(3, 0, 1)


def test_s3_has_three_involutions():
    # brute force over the permutations themselves
    oracle = sum(1 for p in itertools.permutations(range(3)) if p != (0, 1, 2) and perm_compose(p, p) == (0, 1, 2))
    G = standard_group("symmetric", 3)
    assert oracle == 3
    assert sum(1 for v in G.elements() if element_order(G, v) == 2) == oracle


def test_dihedral3_isomorphic_to_s3():
    D3, S3 = standard_group("dihedral", 3), standard_group("symmetric", 3)
    assert brute_force_isomorphic_tables(D3.cayley.tolist(), S3.cayley.tolist()) is not None
    Z6 = standard_group("cyclic", 6)
    assert brute_force_isomorphic_tables(Z6.cayley.tolist(), S3.cayley.tolist()) is None


def test_subgroup_generated_examples():
    S3 = standard_group("symmetric", 3)
    assert subgroup_generated(S3, []).members == (S3.identity,)
    assert len(subgroup_generated(S3, [transposition(3, 0, 1)])) == 2
    three_cycle = perm_index((1, 2, 0))
    # closure by iterated multiplication
    x, closure = three_cycle, {three_cycle}
    while x != S3.identity:
        x = S3.mul(x, three_cycle)
        closure.add(x)
    assert set(subgroup_generated(S3, [three_cycle]).members) == closure
    assert len(closure) == 3


def test_center_examples():
    S3 = standard_group("symmetric", 3)
    full = subgroup_generated(S3, range(6))
    oracle = [s for s in range(6) if all(S3.mul(s, h) == S3.mul(h, s) for h in range(6))]
    assert center(S3, full).members == tuple(oracle) == (S3.identity,)
    C = subgroup_generated(S3, [perm_index((1, 2, 0))])
    assert center(S3, C) == C
    triv = subgroup_generated(S3, [])
    assert center(S3, triv) == triv
    Q8 = standard_group("quaternion8")
    assert center(Q8, subgroup_generated(Q8, range(8))).members == (0, 1)


def test_left_cosets_examples():
    S3 = standard_group("symmetric", 3)
    cs = left_cosets(S3, subgroup_generated(S3, []))
    assert cs.block_count == 6
    assert left_cosets(S3, subgroup_generated(S3, range(6))).block_count == 1
    H = subgroup_generated(S3, [transposition(3, 0, 1)])
    cs = left_cosets(S3, H)
    assert cs.block_count == 3
    assert sorted(len(cs.block(b)) for b in range(3)) == [2, 2, 2]
    for u, v in itertools.product(range(6), repeat=2):
        assert (cs.block_of[u] == cs.block_of[v]) == (S3.mul(S3.inv(u), v) in H)
    for b, r in enumerate(cs.representatives):
        assert cs.block_of[r] == b


def test_power_examples():
    Z5 = standard_group("cyclic", 5)
    assert power(Z5, 2, 3) == 1
    assert power(Z5, 3, 0) == Z5.identity
    S3 = standard_group("symmetric", 3)
    c = perm_index((1, 2, 0))
    assert power(S3, c, -1) == S3.inv(c) != c


def test_exponent_examples():
    assert exponent(standard_group("cyclic", 6)) == 6
    assert exponent(standard_group("symmetric", 3)) == 6
    Q8 = standard_group("quaternion8")
    orders = []
    for v in range(8):
        k, x = 1, v
        while x != 0:
            x, k = Q8.mul(x, v), k + 1
        orders.append(k)
    assert max(orders) == 4 == exponent(Q8)


def test_conjugate_subgroup_examples():
    S3 = standard_group("symmetric", 3)
    H = subgroup_generated(S3, [transposition(3, 0, 1)])
    assert conjugate_subgroup(S3, H, S3.identity) == H
    N = subgroup_generated(S3, [perm_index((1, 2, 0))])
    assert all(conjugate_subgroup(S3, N, g) == N for g in range(6))
    K = conjugate_subgroup(S3, H, perm_index((1, 2, 0)))
    assert K != H and len(K) == 2 and is_subgroup(S3, K.members)


@pytest.mark.parametrize("kind,n", CATALOG)
def test_subgroup_invariants(kind, n):
    G = standard_group(kind, n)
    for H in generated_subgroups(G):
        assert is_subgroup(G, H.members)
        Z = center(G, H)
        assert set(Z.members) <= set(H.members) and is_subgroup(G, Z.members)
        cs = left_cosets(G, H)
        sizes = [len(cs.block(b)) for b in range(cs.block_count)]
        assert sum(sizes) == G.order and set(sizes) == {len(H)}
        for g in range(G.order):
            assert len(conjugate_subgroup(G, H, g)) == len(H)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_power_depends_on_residue_mod_order(group, data):
    G = standard_group(*group)
    v = data.draw(st.integers(0, G.order - 1))
    k = data.draw(st.integers(-20, 20))
    assert power(G, v, k) == power(G, v, k % element_order(G, v))
    # naive repeated multiplication
    x = G.identity
    step = v if k >= 0 else G.inv(v)
    for _ in range(abs(k)):
        x = G.mul(x, step)
    assert power(G, v, k) == x


def test_group_file_round_trip():
    G = standard_group("dihedral", 4)
    text = group_to_json(G)
    assert set(json.loads(text)) == {"order", "table"}
    assert group_from_json(text) == G
    H = subgroup_generated(G, [1])
    assert subgroup_from_json(subgroup_to_json(H), G) == H
    with pytest.raises(ShapeMismatch):
        group_from_json('{"order": 3, "table": [[0]]}')
