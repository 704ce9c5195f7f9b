import pytest

from ggstwist.bijections import check_bijections, m_sets
from ggstwist.tensor import TensorOp2, plus_key
from ggstwist.triples import cg_triple
from helpers import triples

# frozen from m_sets; m1 and m2 are cross-checked against matrix products below
CG5_SIZES = {"m1": 0, "m2": 1, "m3": 0, "m4": 1, "m5": 0, "m6": 3,
             "m1p": 0, "m2p": 1, "m3p": 0, "m4p": 1, "m5p": 0, "m6p": 0}


def test_cg3_sets_empty():
    rep = check_bijections(cg_triple(3))
    assert rep.ok and not any(rep.sizes.values())


def test_cg5_sets():
    rep = check_bijections(cg_triple(5))
    assert rep.ok
    assert rep.sizes == CG5_SIZES


@pytest.mark.parametrize("n", range(2, 7))
def test_bijections_hold_and_cardinalities_match(n):
    for t in triples(n):
        rep = check_bijections(t)
        assert rep.ok, (str(t), rep.first_failure())
        s = m_sets(t)
        m1pp = len(s.m1) - len(s.m1p)
        m2pp = len(s.m2) - len(s.m2p)
        assert len(s.m1p) == len(s.m3p) and len(s.m2p) == len(s.m4p)
        assert m1pp == len(s.m5p) and m2pp == len(s.m6p)


@pytest.mark.parametrize("n", range(2, 7))
def test_m1_m2_are_the_nonzero_cross_layer_products(n):
    for t in triples(n):
        s = m_sets(t)
        want1, want2 = set(), set()
        items = list(t.pairs.items())
        for p1, x in items:
            for p2, y in items:
                if x == y:
                    continue
                u = TensorOp2(n, {plus_key(*p1): 1})
                v = TensorOp2(n, {plus_key(*p2): 1})
                if not (u * v).is_zero():
                    (want1 if x > y else want2).add((p1, p2))
        assert set(s.m1) == want1 and set(s.m2) == want2
