from fractions import Fraction as F

from hypothesis import given, strategies as st

from ggstwist.qlaurent import ONE, QINV, QMINUS, Q, HSeries, QScalar, hbar_expand, q_power

exps = st.fractions(min_value=-4, max_value=4, max_denominator=6)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
scalars = st.lists(st.tuples(exps, coeffs), max_size=8).map(QScalar)


def test_q_times_q_inverse_is_one():
    assert Q * QINV == ONE


def test_distributes_over_half_power():
    assert QMINUS * q_power(F(1, 2)) == QScalar({F(3, 2): 1, F(-1, 2): -1})


def test_square_of_q_minus_q_inverse():
    assert QMINUS * QMINUS == QScalar({2: 1, 0: -2, -2: 1})


def test_q_power_zero_and_half():
    assert q_power(0) == ONE
    assert q_power(F(1, 2)).terms == ((F(1, 2), F(1)),)


def test_canonical_form_drops_zeros_and_merges():
    s = QScalar([(1, 2), (1, -2), (F(2, 4), 3), (F(1, 2), 1)])
    assert s.terms == ((F(1, 2), F(4)),)
    assert QScalar([(1, 0)]).is_zero()


def test_integer_and_fraction_coercion():
    assert Q + 1 == QScalar({1: 1, 0: 1})
    assert 2 * Q == Q + Q
    assert 1 - Q == -(Q - 1)


def test_negative_power():
    assert Q ** -2 == q_power(-2)
    assert (Q + QINV) ** 2 == q_power(2) + 2 + q_power(-2)


def test_quads_round_trip():
    s = QScalar({F(-1, 3): F(2, 5), 2: -1})
    assert s.to_quads() == [[2, 5, -1, 3], [-1, 1, 2, 1]]
    assert QScalar.from_quads(s.to_quads()) == s


def test_str_form():
    assert str(QMINUS) == "q - q^(-1)"
    assert str(QScalar()) == "0"


def test_hbar_expand_examples():
    assert hbar_expand(ONE).as_tuple() == (1, 0, 0)
    assert hbar_expand(QMINUS).as_tuple() == (0, 2, 0)
    assert hbar_expand(q_power(F(1, 2))).as_tuple() == (1, F(1, 2), F(1, 8))


def test_hseries_truncates():
    x = HSeries(0, 1, 0)
    assert (x * x * x).as_tuple() == (0, 0, 0)
    assert (x * x).as_tuple() == (0, 0, 1)


@given(exps, exps)
def test_exponent_law(a, b):
    assert q_power(a) * q_power(b) == q_power(a + b)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@given(scalars, scalars)
def test_hbar_expand_is_ring_homomorphism(a, b):
    assert hbar_expand(a * b) == hbar_expand(a) * hbar_expand(b)
    assert hbar_expand(a + b) == hbar_expand(a) + hbar_expand(b)


@given(scalars)
def test_hash_follows_equality(a):
    b = QScalar(list(reversed(a.terms)))
    assert a == b and hash(a) == hash(b)


@given(scalars)
def test_invert_q_is_involution(a):
    assert a.invert_q().invert_q() == a
