import itertools

import pytest

from ggstwist.roots import Rel, Root, inner_product, perp_sense, positive_roots, relation, root_from_weight, simple
from ggstwist.tensor import unit


def test_inner_products():
    assert inner_product(simple(1), simple(2)) == -1
    assert inner_product(simple(1), simple(3)) == 0
    for r in positive_roots(5):
        assert inner_product(r, r) == 2


def test_relation_examples():
    assert relation(Root(1, 2), Root(2, 3)) is Rel.LESSDOT
    assert relation(Root(1, 4), Root(2, 5)) is Rel.OVERLAP_LT
    assert relation(Root(1, 2), Root(3, 4)) is Rel.LL
    assert relation(Root(2, 3), Root(1, 2)) is Rel.GTRDOT
    assert relation(Root(1, 3), Root(1, 4)) is Rel.INCOMPARABLE
    assert relation(Root(2, 4), Root(2, 4)) is Rel.EQUAL


def test_root_rejects_non_positive():
    with pytest.raises(ValueError):
        Root(3, 3)
    with pytest.raises(ValueError):
        Root(2, 1)


def test_text_forms():
    assert str(simple(3)) == "alpha_3"
    assert Root(1, 4).text() == "e_1 - e_4"
    assert Root(1, 4).length == 3


def test_perp_sense_differs_from_orthogonality():
    assert not perp_sense(Root(1, 2), Root(2, 3))
    assert perp_sense(Root(1, 2), Root(3, 4))
    assert perp_sense(Root(3, 4), Root(1, 2))
    # orthogonal but not strictly separated
    assert inner_product(Root(1, 4), Root(2, 3)) == 0 and not perp_sense(Root(1, 4), Root(2, 3))


@pytest.mark.parametrize("n", range(2, 9))
def test_relation_mirror(n):
    for a, b in itertools.product(positive_roots(n), repeat=2):
        assert relation(b, a) is relation(a, b).mirror()


@pytest.mark.parametrize("n", range(2, 7))
def test_lessdot_matches_matrix_product(n):
    for a, b in itertools.product(positive_roots(n), repeat=2):
        # e_a e_b = e_ij e_kl is nonzero iff j = k, i.e. a ⋖ b
        prod = unit(n, (a.i, a.j), (1, 1)) * unit(n, (b.i, b.j), (1, 1))
        assert (not prod.is_zero()) == (relation(a, b) is Rel.LESSDOT)
        # e_-a e_b = e_ji e_kl is nonzero iff i = k
        prod = unit(n, (a.j, a.i), (1, 1)) * unit(n, (b.i, b.j), (1, 1))
        assert (not prod.is_zero()) == (a.i == b.i)


def test_root_from_weight():
    assert root_from_weight((0, 1, 0, -1)) == Root(2, 4)
    assert root_from_weight((0, -1, 0, 1)) is None
    assert root_from_weight((1, 1, -2, 0)) is None
