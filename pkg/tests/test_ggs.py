from fractions import Fraction as F

import pytest
import sympy as sp

import oracle
from ggstwist.ggs import (
    epsilon_coefficient,
    epsilon_combinatorial,
    epsilon_matrix,
    epsilon_product,
    ggs_rmatrix,
    original_ggs_form,
    tilde_a,
    transpose_invert,
)
from ggstwist.qlaurent import QMINUS, q_power
from ggstwist.r0 import R0Inconsistent, R0Matrix, canonical_r0
from ggstwist.roots import Root
from ggstwist.tensor import (
    TensorOp2,
    build_standard,
    conjugate_qr0,
    flip21,
    pair_of_entry,
    plus_key,
    unit,
    wedge_c,
)
from ggstwist.triples import BDTriple, cg_triple
from helpers import triples


def to_dense(x: TensorOp2):
    n = x.n
    m = sp.zeros(n * n)
    for (r, c), v in x.entries.items():
        m[(r[0] - 1) * n + r[1] - 1, (c[0] - 1) * n + c[1] - 1] = sum(
            sp.Rational(co.numerator, co.denominator) * oracle.q ** sp.Rational(e.numerator, e.denominator)
            for e, co in v.terms)
    return m


def test_epsilon_empty():
    assert epsilon_product(BDTriple(4)).is_zero()


def test_epsilon_cg3():
    want = (unit(3, (2, 3), (2, 1)) + unit(3, (2, 1), (2, 3))).scale(F(-1, 2))
    assert epsilon_product(cg_triple(3)) == want
    assert epsilon_combinatorial(cg_triple(3)) == want


def test_epsilon_reversing_length_two_clause():
    t = BDTriple(6, {1: 5, 2: 4})
    a, b = Root(1, 3), Root(4, 6)
    assert t.reverses(a, b) and t.sign(a, b) == -1
    # a ≪ b, so only the reversal clause 1 - |a| = -1 fires, times the sign
    assert epsilon_coefficient(t, a, b) == 1
    assert epsilon_product(t).get(*plus_key(a, b)) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_epsilon_symmetric_and_supported_on_pairs(n):
    for t in triples(n):
        eps = epsilon_product(t)
        assert flip21(eps) == eps
        for (r, c) in eps.entries:
            p = pair_of_entry(r, c)
            assert p is not None and t.prec(p[0], p[1]) is not None


@pytest.mark.parametrize("n", range(2, 5))
def test_epsilon_matches_dense_oracle(n):
    for t in triples(n):
        a = oracle.dense_a(n, dict(t.tau))
        rs = oracle.dense_rs(n)
        assert to_dense(epsilon_matrix(t)) == a * rs + rs * a + a * a


def test_ggs_empty_is_Rs():
    assert ggs_rmatrix(BDTriple(3), R0Matrix.zero(3)) == build_standard(3, "R_s")


def test_ggs_cg3_off_block():
    # frozen from the dense oracle: the correction is (q - q^-1) e_-a1 ^_{2/3} e_a2
    t = cg_triple(3)
    r0 = canonical_r0(t)
    R = ggs_rmatrix(t, r0)
    rest = R - conjugate_qr0(build_standard(3, "R_s"), r0)
    a, b = Root(1, 2), Root(2, 3)
    assert rest == wedge_c(3, a, b, F(2, 3)).scale(QMINUS)
    assert R.get((2, 2), (1, 3)) == QMINUS * q_power(F(-2, 3))


@pytest.mark.parametrize("n", [3, 4])
def test_ggs_matches_dense_oracle(n):
    for t in triples(n):
        r0 = canonical_r0(t)
        dense, _ = oracle.dense_ggs(n, dict(t.tau), r0.c)
        assert sp.expand(to_dense(ggs_rmatrix(t, r0)) - dense) == sp.zeros(n * n)


def test_ggs_rejects_wrong_r0():
    with pytest.raises(R0Inconsistent):
        ggs_rmatrix(cg_triple(3), R0Matrix.zero(3))
    with pytest.raises(ValueError):
        ggs_rmatrix(cg_triple(3), R0Matrix.zero(4))


def test_tilde_a_entries():
    t = cg_triple(3)
    ta = tilde_a(t)
    a, b = Root(1, 2), Root(2, 3)
    assert ta.get(*plus_key(a, b)) == -q_power(F(1, 2))


def test_original_form_empty():
    assert original_ggs_form(BDTriple(3), R0Matrix.zero(3)) == build_standard(3, "R_s")


@pytest.mark.parametrize("n", range(2, 6))
def test_original_form_relation(n):
    P = build_standard(n, "P")
    for t in triples(n):
        r0 = canonical_r0(t)
        R = original_ggs_form(t, r0)
        assert ggs_rmatrix(t, r0) - transpose_invert(R) == P.scale(QMINUS)


def test_transpose_invert_involution():
    x = ggs_rmatrix(cg_triple(4), canonical_r0(cg_triple(4)))
    assert transpose_invert(transpose_invert(x)) == x


def test_ggs_differs_from_exponential_of_2r():
    # n = 2, empty triple: agreement mod hbar^3 only, first gap at e_21 (x) e_12
    t = BDTriple(2)
    R = to_dense(ggs_rmatrix(t, canonical_r0(t))).subs(oracle.q, sp.exp(oracle.h))
    X = (2 * oracle.h * oracle.dense_rs(2)).exp()
    diff = sp.simplify(R - X)
    gaps = {(i, j): sp.series(diff[i, j], oracle.h, 0, 4).removeO()
            for i in range(4) for j in range(4) if diff[i, j] != 0}
    assert gaps == {(2, 1): oracle.h ** 3 / 3}
