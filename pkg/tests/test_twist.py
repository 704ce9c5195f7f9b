import random
from fractions import Fraction as F

import pytest
import sympy as sp

import oracle
from ggstwist.ggs import ggs_rmatrix
from ggstwist.qlaurent import QMINUS, q_power
from ggstwist.r0 import R0Inconsistent, R0Matrix, canonical_r0
from ggstwist.roots import Root
from ggstwist.tensor import build_standard, identity, pair_of_entry, plus_key, unit
from ggstwist.triples import BDTriple, cg_triple
from ggstwist.twist import (
    build_twist,
    k_combinatorial,
    k_expansion,
    k_from_skew,
    k_values,
    layer_order,
    layer_product,
    is_admissible_order,
    rj_matrix,
    skew_defect,
)
from helpers import triples
from test_ggs import to_dense

H = F(1, 2)
# frozen from oracle.k_by_skew (dense sympy, hbar^2 skew condition)
K_N4 = {
    "n=4; a1->a2": {((1, 2), (2, 3)): H},
    "n=4; a1->a3": {((1, 2), (3, 4)): 0},
    "n=4; a2->a1": {((2, 3), (1, 2)): -H},
    "n=4; a2->a3": {((2, 3), (3, 4)): H},
    "n=4; a3->a1": {((3, 4), (1, 2)): 0},
    "n=4; a3->a2": {((3, 4), (2, 3)): -H},
    "n=4; a1->a2, a2->a3": {((1, 2), (2, 3)): H, ((1, 2), (3, 4)): 1, ((1, 3), (2, 4)): 0, ((2, 3), (3, 4)): H},
    "n=4; a2->a1, a3->a2": {((2, 3), (1, 2)): -H, ((2, 4), (1, 3)): 0, ((3, 4), (1, 2)): -1, ((3, 4), (2, 3)): -H},
}


def as_roots(d):
    return {(Root(*a), Root(*b)): F(v) for (a, b), v in d.items()}


def test_k_examples():
    cg = cg_triple(3)
    assert k_combinatorial(cg, Root(1, 2), Root(2, 3)) == H
    assert k_expansion(cg) == ({(Root(1, 2), Root(2, 3)): H}, {})
    # disjoint, reversing, a ≪ b, |a| = 2
    t = BDTriple(6, {1: 5, 2: 4})
    assert k_combinatorial(t, Root(1, 3), Root(4, 6)) == -1
    # disjoint, preserving, a ⋖ b
    t = BDTriple(5, {1: 3, 2: 4})
    assert k_combinatorial(t, Root(1, 3), Root(3, 5)) == H
    with pytest.raises(ValueError):
        k_combinatorial(t, Root(3, 5), Root(1, 3))


@pytest.mark.parametrize("text", sorted(K_N4))
def test_k_frozen_n4(text):
    t = next(x for x in triples(4) if str(x) == text)
    assert k_values(t) == as_roots(K_N4[text])


def test_every_nonempty_n4_triple_is_frozen():
    assert {str(t) for t in triples(4) if not t.is_empty()} == set(K_N4)


@pytest.mark.parametrize("n", range(2, 7))
def test_k_half_integers_and_vanishing_off_pairs(n):
    for t in triples(n):
        on, off = k_expansion(t)
        assert off == {}
        assert set(on) == set(t.pairs)
        assert all((2 * v).denominator == 1 for v in on.values())


@pytest.mark.parametrize("n", range(2, 6))
def test_k_from_skew_agrees(n):
    for t in triples(n):
        assert k_from_skew(t) == k_values(t)


@pytest.mark.parametrize("n", range(3, 6))
def test_k_uniqueness_under_perturbation(n):
    rng = random.Random(1000 + n)
    pool = [t for t in triples(n) if t.pairs]
    for t in rng.sample(pool, min(3, len(pool))):
        K = k_values(t)
        assert not any(skew_defect(t, K).values())
        for p in t.pairs:
            for d in (H, -H):
                bumped = dict(K)
                bumped[p] += d
                assert skew_defect(t, bumped)[p] != 0


def test_twist_empty():
    J, Jinv, layers = build_twist(BDTriple(4))
    assert J == identity(4) and Jinv == identity(4) and layers.depth == 0


def test_twist_cg3():
    J, Jinv, layers = build_twist(cg_triple(3))
    corr = unit(3, (2, 3), (2, 1), coeff=QMINUS * q_power(H))
    assert J == identity(3) + corr
    assert Jinv == identity(3) - corr
    assert layers.to_json() == [{"layer": 1, "support": [{"alpha": "e_1 - e_2", "beta": "e_2 - e_3", "K": "1/2"}]}]


@pytest.mark.parametrize("n", range(2, 7))
def test_layers_supported_on_tau_powers(n):
    for t in triples(n):
        _, _, layers = build_twist(t)
        for i, A in enumerate(layers.corrections, start=1):
            support = {pair_of_entry(*k)[:2] for k in A.entries}
            assert support == {p for p, k in t.pairs.items() if k == i}


@pytest.mark.parametrize("n", range(2, 7))
def test_layer_product_independent_of_admissible_order(n):
    rng = random.Random(n)
    for t in triples(n):
        _, _, layers = build_twist(t)
        for i, Ji in enumerate(layers.layers, start=1):
            canonical = layer_order(t, i)
            assert is_admissible_order(t, canonical)
            assert layer_product(t, canonical) == Ji
            for _ in range(6):
                order = list(canonical)
                rng.shuffle(order)
                if is_admissible_order(t, order):
                    assert layer_product(t, order) == Ji


def test_inadmissible_order_changes_layer():
    # reversing layer: (e_a4 (x) e_-a2)(e_a5 (x) e_-a1) is nonzero
    t = BDTriple(6, {1: 5, 2: 4})
    order = layer_order(t, 1)
    bad = list(reversed(order))
    assert not is_admissible_order(t, bad)
    assert layer_product(t, bad) != layer_product(t, order)


def test_layer_order_sorting():
    t = cg_triple(5)
    order = layer_order(t, 1)
    keys = [(-b.i, -b.j) for _, b in order]
    assert keys == sorted(keys)


def test_rj_empty_and_cg3():
    assert rj_matrix(BDTriple(3), R0Matrix.zero(3)) == build_standard(3, "R_s")
    t = cg_triple(3)
    r0 = canonical_r0(t)
    assert rj_matrix(t, r0) == ggs_rmatrix(t, r0)
    with pytest.raises(R0Inconsistent):
        rj_matrix(t, R0Matrix.zero(3))


@pytest.mark.parametrize("n", [3, 4])
def test_rj_matches_dense_oracle(n):
    for t in triples(n):
        r0 = canonical_r0(t)
        K = {((a.i, a.j), (b.i, b.j)): v for (a, b), v in k_values(t).items()}
        dense = oracle.dense_rj(n, dict(t.tau), r0.c, K)
        assert sp.expand(to_dense(rj_matrix(t, r0)) - dense) == sp.zeros(n * n)


def test_k_oracle_live_n3():
    for t in triples(3):
        if t.pairs:
            got = {((a.i, a.j), (b.i, b.j)): v for (a, b), v in k_values(t).items()}
            assert oracle.k_by_skew(3, dict(t.tau)) == got


def test_plus_key_layout():
    a, b = Root(1, 2), Root(2, 3)
    assert plus_key(a, b) == ((2, 2), (3, 1))
