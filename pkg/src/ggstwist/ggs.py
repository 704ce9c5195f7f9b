"""The GGS R-matrix of a Belavin-Drinfeld triple.

``eps = a r_s + r_s a + a^2`` is the symmetric quadratic correction; ``a~``
puts ``q^{a * eps}`` on each entry of ``a``, and

    R_GGS = q^{r0} (R_s + (q - q^-1) a~) q^{r0}.
"""
from __future__ import annotations

from fractions import Fraction

from .qlaurent import QMINUS, QScalar, q_power
from .r0 import R0Matrix, R0Inconsistent, residuals
from .roots import Rel, relation
from .tensor import (
    TensorOp2,
    build_a,
    build_standard,
    conjugate_inverse_qr0,
    conjugate_qr0,
    invert_q,
    minus_key,
    plus_key,
    transpose_legs,
)
from .triples import BDTriple

__all__ = [
    "epsilon_product",
    "epsilon_combinatorial",
    "epsilon_coefficient",
    "epsilon_matrix",
    "tilde_a",
    "ggs_bar",
    "ggs_rmatrix",
    "original_ggs_form",
    "transpose_invert",
    "check_r0",
]


def epsilon_product(t: BDTriple) -> TensorOp2:
    """``a r_s + r_s a + a^2`` by direct multiplication."""
    a = build_a(t)
    rs = build_standard(t.n, "r_s")
    return a * rs + rs * a + a * a


def epsilon_coefficient(t: BDTriple, a, b, refined: bool = False) -> Fraction:
    """The coefficient of ``e_b (x) e_-a`` (and of ``e_-a (x) e_b``) in eps.

    ``refined`` selects the corrected chain clause; see
    :meth:`BDTriple.chain_touches`.
    """
    rel = relation(a, b)
    lt, gt = t.chain_touches(a, b, refined)
    v = Fraction(0)
    if rel is Rel.LESSDOT:
        v -= Fraction(1, 2)
    if rel is Rel.GTRDOT:
        v -= Fraction(1, 2)
    v -= lt
    v -= gt
    if t.reverses(a, b):
        v += 1 - a.length
    return t.sign(a, b) * v


_EPS_CACHE: dict = {}


def epsilon_combinatorial(t: BDTriple, refined: bool = False) -> TensorOp2:
    """eps from the per-pair closed form; cached per triple."""
    hit = _EPS_CACHE.get((t, refined))
    if hit is not None:
        return hit
    ent = {}
    for (a, b) in t.pairs:
        v = epsilon_coefficient(t, a, b, refined)
        if v:
            ent[plus_key(a, b)] = QScalar.const(v)
            ent[minus_key(a, b)] = QScalar.const(v)
    out = TensorOp2(t.n, ent)
    _EPS_CACHE[(t, refined)] = out
    return out


_EPS_DEF: dict = {}


def epsilon_matrix(t: BDTriple) -> TensorOp2:
    """The eps used to build R-matrices: the defining product, cached.

    The literal closed form disagrees with the product on some triples
    (first at n = 6), so the product is authoritative.
    """
    hit = _EPS_DEF.get(t)
    if hit is None:
        hit = _EPS_DEF[t] = epsilon_product(t)
    return hit


def tilde_a(t: BDTriple, eps: TensorOp2 | None = None) -> TensorOp2:
    """``a`` with each entry ``x`` replaced by ``x q^{x * eps}``."""
    a = build_a(t)
    if eps is None:
        eps = epsilon_matrix(t)
    out = {}
    for key, v in a.entries.items():
        x = v.constant_value()
        e = eps.entries.get(key)
        ev = e.constant_value() if e is not None else Fraction(0)
        out[key] = q_power(x * ev) * x
    return TensorOp2(t.n, out)


def check_r0(t: BDTriple, r0: R0Matrix) -> None:
    if r0.n != t.n:
        raise ValueError(f"r0 is for n={r0.n}, triple has n={t.n}")
    bad = residuals(t, r0)
    if bad:
        raise R0Inconsistent(*bad[0])


def ggs_bar(t: BDTriple) -> TensorOp2:
    """``R_s + (q - q^-1) a~``."""
    return build_standard(t.n, "R_s") + tilde_a(t).scale(QMINUS)


def ggs_rmatrix(t: BDTriple, r0: R0Matrix) -> TensorOp2:
    check_r0(t, r0)
    return conjugate_qr0(ggs_bar(t), r0)


def transpose_invert(x: TensorOp2) -> TensorOp2:
    """``x^T_{q^-1}``: legwise transpose together with ``q -> q^-1``."""
    return invert_q(transpose_legs(x))


def original_ggs_form(t: BDTriple, r0: R0Matrix) -> TensorOp2:
    """``q^{-r0} (R_s + (q^-1 - q) a~^T_{q^-1}) q^{-r0}``."""
    check_r0(t, r0)
    inner = build_standard(t.n, "R_s") + transpose_invert(tilde_a(t)).scale(-QMINUS)
    return conjugate_inverse_qr0(inner, r0)
