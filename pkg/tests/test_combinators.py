import random

import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from conftest import relations
from galois_tukey import (
    CapExceeded,
    FunctionTable,
    MorphismError,
    compose,
    curry_triple,
    dual_norm,
    enumerate_relations,
    equality,
    inequality,
    norm,
    old_product,
    oldprod_from_seq,
    prod_from_oldprod,
    product,
    seq_compose,
    uncurry,
    verify,
)

NEQ3 = inequality(3)


def test_old_product_of_neq3_with_itself_has_norm_three():
    assert norm(NEQ3) == 2
    assert norm(old_product(NEQ3, NEQ3)) == 3
    assert norm(product(NEQ3, NEQ3)) == 2


def test_labels_and_provenance():
    P = product(NEQ3, equality(2))
    assert P.minus[:3] == ("L:0", "L:1", "L:2") and P.minus[3:] == ("R:0", "R:1")
    assert P.plus[0] == "(0|0)"
    assert P.provenance == "product(neq3, eq2)"
    S = seq_compose(equality(2), NEQ3).relation
    assert S.minus[0] == "(0|<0,0>)" and S.minus[1] == "(0|<0,1>)"
    assert S.plus[:2] == ("(0|0)", "(0|1)")
    assert S.provenance == "seq_compose(eq2, neq3)"


@settings(max_examples=80, deadline=None)
@given(relations(max_side=3), relations(max_side=3))
def test_seq_compose_matches_oracle_and_prop2(A, B):
    S = seq_compose(A, B).relation
    a, b = oracles.rows(A), oracles.rows(B)
    expected = oracles.seq_compose(a, b)
    assert oracles.rows(S) == expected
    assert oracles.norm(expected) == oracles.norm(a) * oracles.norm(b)
    assert oracles.dual_norm(expected) == min(oracles.dual_norm(a), oracles.dual_norm(b))
    assert norm(S) == norm(A) * norm(B)
    assert dual_norm(S) == min(dual_norm(A), dual_norm(B))


@settings(max_examples=80, deadline=None)
@given(relations(max_side=4), relations(max_side=4))
def test_product_laws(A, B):
    P, O = product(A, B), old_product(A, B)
    assert norm(P) == max(norm(A), norm(B))
    assert dual_norm(P) == min(dual_norm(A), dual_norm(B))
    assert dual_norm(O) == min(dual_norm(A), dual_norm(B))
    assert max(norm(A), norm(B)) <= norm(O) <= norm(A) * norm(B)
    a, b = oracles.rows(A), oracles.rows(B)
    assert oracles.rows(O) == [[x and y for x in ra for y in rb] for ra in a for rb in b]


def test_function_table_indexing():
    seq = seq_compose(equality(3), NEQ3)
    for idx in range(len(seq.relation.minus)):
        x, table = seq.minus_element(idx)
        assert seq.minus_index(x, table) == idx
    assert FunctionTable((2, 0, 1), 3).index() == 2 * 9 + 0 * 3 + 1
    assert FunctionTable.constant(1, 2, 3).values == (1, 1)
    with pytest.raises(ValueError):
        FunctionTable((3,), 3)


def test_seq_compose_cap():
    with pytest.raises(CapExceeded):
        seq_compose(NEQ3, NEQ3, cap=26)
    seq_compose(NEQ3, NEQ3, cap=27)


def test_max_min_triple_on_eq2():
    E = equality(2)
    # alpha constant 0, beta(c, u) = u, gamma(u, w) = w: fails at c = 1
    with pytest.raises(MorphismError) as info:
        curry_triple([0, 0], [[0, 1], [0, 1]], [[0, 1], [0, 1]], E, E, E)
    c, (u, w) = info.value.counterexample
    assert E.holds(0, u) and E.holds([0, 1][u], w) and not E.holds(c, [[0, 1], [0, 1]][u][w])
    # alpha = id, beta(c, u) = c, gamma(u, w) = w does work
    m = curry_triple([0, 1], [[0, 0], [1, 1]], [[0, 1], [0, 1]], E, E, E)
    seq = seq_compose(E, E)
    assert uncurry(m, seq) == ([0, 1], [[0, 0], [1, 1]], [[0, 1], [0, 1]])


def test_curry_rejects_partial_maps():
    E = equality(2)
    with pytest.raises(ValueError):
        curry_triple([0], [[0, 0]], [[0, 1], [0, 1]], E, E, E)
    with pytest.raises(ValueError):
        curry_triple([0, 1], [[0, 0], [1, 1]], [[0, 1]], E, E, E)


def test_chain_exhaustive_small_and_random():
    rels = list(enumerate_relations(2))
    rng = random.Random(3)
    big = list(enumerate_relations(3))
    pairs = [(a, b) for a in rels for b in rels] + [tuple(rng.sample(big, 2)) for _ in range(40)]
    for A, B in pairs:
        first = oldprod_from_seq(A, B)
        second = prod_from_oldprod(A, B, len(A.minus) - 1, 0)
        both = compose(first, second)
        assert both.target == product(A, B)
        assert verify(both.minus_map, both.plus_map, seq_compose(A, B).relation, product(A, B)).ok


def test_chain_basepoint_range():
    with pytest.raises(IndexError):
        prod_from_oldprod(NEQ3, NEQ3, 3, 0)
    with pytest.raises(IndexError):
        prod_from_oldprod(NEQ3, NEQ3, 0, -1)


def test_kronecker_layout():
    O = old_product(equality(2), NEQ3)
    assert np.array_equal(O.matrix, np.kron(np.eye(2), ~np.eye(3, dtype=bool)).astype(bool))
