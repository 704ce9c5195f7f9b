"""Layered twist ``J`` and the twisted R-matrix ``R_J = q^{r0} J^-1 R_s J_21 q^{r0}``.

Layer ``i`` collects the pairs ``(alpha, beta)`` with ``tau^i alpha = beta``;
each contributes ``sign (q - q^-1) q^K e_beta (x) e_-alpha`` to ``A^i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ggs import check_r0
from .qlaurent import QMINUS, QScalar, hbar_expand, q_power
from .r0 import R0Matrix
from .roots import Rel, Root, relation
from .tensor import (
    TensorOp2,
    build_a,
    build_standard,
    conjugate_qr0,
    flip21,
    identity,
    minus_key,
    pair_of_entry,
    plus_key,
    split_pm,
)
from .triples import BDTriple

__all__ = [
    "k_combinatorial",
    "k_expansion",
    "k_values",
    "k_expansion_terms",
    "k_from_skew",
    "TwistLayers",
    "build_twist",
    "layer_order",
    "layer_product",
    "is_admissible_order",
    "rj_bar",
    "rj_matrix",
]


def k_combinatorial(t: BDTriple, a: Root, b: Root, refined: bool = False) -> Fraction:
    """Closed-form exponent for the pair ``a ≺ b``.

    ``refined`` selects the corrected chain clause; see
    :meth:`BDTriple.chain_touches`.
    """
    if t.prec(a, b) is None:
        raise ValueError(f"{a} does not precede {b}")
    rel = relation(a, b)
    v = Fraction(0)
    if rel is Rel.LESSDOT:
        v += Fraction(1, 2)
    elif rel is Rel.GTRDOT:
        v -= Fraction(1, 2)
    lt, gt = t.chain_touches(a, b, refined)
    v += lt
    v -= gt
    if t.reverses(a, b):
        v += 1 - a.length
    return v


def _plus_layers(t: BDTriple, a_plus: TensorOp2) -> dict[int, TensorOp2]:
    layers: dict[int, dict] = {}
    for key, v in a_plus.entries.items():
        p = pair_of_entry(*key)
        k = t.prec(p[0], p[1]) if p else None
        if k is None:
            raise AssertionError("a_+ has an entry outside X")
        layers.setdefault(k, {})[key] = v
    return {k: TensorOp2(t.n, e) for k, e in layers.items()}


def k_expansion_terms(t: BDTriple) -> TensorOp2:
    """The bracketed quadratic expression whose ``e_b (x) e_-a`` entries give K.

    ``sum_{i>=j} a+^i a+^j - sum_{i<j} a+^i a+^j + a+ P- + a- P+ + P+ a+
    + a+ a- - a- a+``
    """
    n = t.n
    a_plus, a_minus = split_pm(build_a(t))
    p_plus, p_minus = split_pm(build_standard(n, "P"))
    layers = _plus_layers(t, a_plus)
    total = TensorOp2(n)
    for i, x in layers.items():
        for j, y in layers.items():
            prod = x * y
            total = total + prod if i >= j else total - prod
    total = total + a_plus * p_minus + a_minus * p_plus + p_plus * a_plus
    total = total + a_plus * a_minus - a_minus * a_plus
    return total


def k_expansion(t: BDTriple) -> tuple[dict, dict]:
    """K read off the quadratic expansion.

    Returns ``(on_pairs, off_pairs)``: values for every ``(alpha, beta)`` in X,
    and every nonzero coefficient at some ``e_b (x) e_-a`` with ``(a, b)``
    outside X (expected empty).
    """
    e = k_expansion_terms(t)
    on, off = {}, {}
    for key, v in e.entries.items():
        p = pair_of_entry(*key)
        if p is None or p[2] != "+":
            continue
        a, b, _ = p
        val = v.constant_value()
        if not v.is_constant():
            raise AssertionError("classical expansion produced a q-dependent entry")
        if t.prec(a, b) is None:
            if val:
                off[(a, b)] = val
        else:
            on[(a, b)] = t.sign(a, b) * val
    for pair in t.pairs:
        on.setdefault(pair, Fraction(0))
    return on, off


@dataclass
class TwistLayers:
    """``J^i = 1 + A^i`` for ``i = 1..d`` and the exponents used."""

    layers: list[TensorOp2]
    corrections: list[TensorOp2]
    K: dict

    @property
    def depth(self) -> int:
        return len(self.layers)

    def to_json(self) -> list[dict]:
        out = []
        for i, a in enumerate(self.corrections, start=1):
            support = []
            for (alpha, beta), k in self.K.items():
                if plus_key(alpha, beta) in a.entries:
                    support.append({"alpha": alpha.text(), "beta": beta.text(), "K": str(k)})
            out.append({"layer": i, "support": support})
        return out


def layer_order(t: BDTriple, i: int) -> list[tuple[Root, Root]]:
    """Pairs of layer ``i``: left endpoint of beta descending, then right endpoint descending."""
    pairs = [p for p, k in t.pairs.items() if k == i]
    return sorted(pairs, key=lambda p: (-p[1].i, -p[1].j))


def _factor(t: BDTriple, pair, K, sgn: int) -> TensorOp2:
    a, b = pair
    coeff = q_power(K[pair]) * QMINUS * (sgn * t.sign(a, b))
    return identity(t.n) + TensorOp2(t.n, {plus_key(a, b): coeff})


_K_CACHE: dict = {}


def k_values(t: BDTriple) -> dict:
    """The exponents used to build twists: the quadratic expansion, cached."""
    hit = _K_CACHE.get(t)
    if hit is None:
        hit = _K_CACHE[t] = k_expansion(t)[0]
    return hit


def build_twist(t: BDTriple, K: dict | None = None, check: bool = True):
    """``(J, J^-1, layers)``; ``K`` defaults to :func:`k_values`."""
    n = t.n
    if K is None:
        K = k_values(t)
    one = identity(n)
    layers, corrections = [], []
    J = one
    Jinv = one
    for i in range(1, t.depth + 1):
        ent = {}
        for (a, b) in layer_order(t, i):
            ent[plus_key(a, b)] = q_power(K[(a, b)]) * QMINUS * t.sign(a, b)
        A = TensorOp2(n, ent)
        corrections.append(A)
        layers.append(one + A)
        J = J * layers[-1]
    for i in range(t.depth, 0, -1):
        for pair in reversed(layer_order(t, i)):
            Jinv = Jinv * _factor(t, pair, K, -1)
    if check and J * Jinv != one:
        raise AssertionError("J * J^-1 != 1")
    return J, Jinv, TwistLayers(layers, corrections, dict(K))


def _elementary(t: BDTriple, pair, K) -> TensorOp2:
    a, b = pair
    return TensorOp2(t.n, {plus_key(a, b): q_power(K[pair]) * QMINUS * t.sign(a, b)})


def is_admissible_order(t: BDTriple, pairs, K: dict | None = None) -> bool:
    """Whether each correction times every later one vanishes, so the product is ``1 + sum``."""
    if K is None:
        K = k_values(t)
    parts = [_elementary(t, p, K) for p in pairs]
    return all((parts[x] * parts[y]).is_zero()
               for x in range(len(parts)) for y in range(x + 1, len(parts)))


def layer_product(t: BDTriple, pairs, K: dict | None = None) -> TensorOp2:
    """Product of the elementary factors ``1 + sign (q - q^-1) q^K e_b (x) e_-a`` in the given order."""
    if K is None:
        K = k_values(t)
    out = identity(t.n)
    for p in pairs:
        out = out * _factor(t, p, K, +1)
    return out


def rj_bar(t: BDTriple, K: dict | None = None) -> TensorOp2:
    """``J^-1 R_s J_21``."""
    J, Jinv, _ = build_twist(t, K, check=False)
    return Jinv * build_standard(t.n, "R_s") * flip21(J)


def rj_matrix(t: BDTriple, r0: R0Matrix, K: dict | None = None) -> TensorOp2:
    check_r0(t, r0)
    return conjugate_qr0(rj_bar(t, K), r0)


def k_from_skew(t: BDTriple) -> dict:
    """K recovered from second-order skew-symmetry of ``J^-1 R_s J_21``.

    With every exponent set to 0, the ``hbar^2`` part of ``X - X_21`` at
    ``e_b (x) e_-a`` must be cancelled by ``-4 sign(a, b) K``.
    """
    zero = {p: Fraction(0) for p in t.pairs}
    x = rj_bar(t, zero)
    out = {}
    for (a, b) in t.pairs:
        cp = hbar_expand(x.entries.get(plus_key(a, b), QScalar())).c2
        cm = hbar_expand(x.entries.get(minus_key(a, b), QScalar())).c2
        out[(a, b)] = t.sign(a, b) * (cp - cm) / 4
    return out


def skew_defect(t: BDTriple, K: dict) -> dict:
    """``d^2/dhbar^2 [X - X_21]`` at each ``e_b (x) e_-a`` for the given K (halved)."""
    x = rj_bar(t, K)
    out = {}
    for (a, b) in t.pairs:
        cp = hbar_expand(x.entries.get(plus_key(a, b), QScalar())).c2
        cm = hbar_expand(x.entries.get(minus_key(a, b), QScalar())).c2
        out[(a, b)] = cp - cm
    return out
