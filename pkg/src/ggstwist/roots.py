"""Positive roots of type A and their relative positions.

A positive root ``e_i - e_j`` (``i < j``) is a :class:`Root`.  Negative roots
never appear as values; code that needs ``e_{-alpha}`` uses the transposed
matrix unit directly.

Two distinct roots ``a = e_i - e_j`` and ``b = e_k - e_l`` with ``i < k`` are in
one of three positions: ``a`` touches ``b`` on the left (``j == k``), lies
strictly left of it (``j < k``), or overlaps it (``j > k``).  The endpoint
comparison is applied to roots of any lengths, equal or not.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = [
    "Root",
    "Rel",
    "inner_product",
    "relation",
    "perp_sense",
    "simple",
    "positive_roots",
    "root_from_weight",
]


@dataclass(frozen=True, order=True)
class Root:
    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"not a positive root: e_{self.i} - e_{self.j}")

    @property
    def length(self) -> int:
        return self.j - self.i

    @property
    def is_simple(self) -> bool:
        return self.j == self.i + 1

    def simple_indices(self) -> range:
        """Indices ``k`` of the simple roots ``alpha_k`` summing to this root."""
        return range(self.i, self.j)

    def weight(self, n: int) -> tuple[int, ...]:
        w = [0] * n
        w[self.i - 1] += 1
        w[self.j - 1] -= 1
        return tuple(w)

    def __str__(self):
        if self.is_simple:
            return f"alpha_{self.i}"
        return f"e_{self.i} - e_{self.j}"

    def text(self) -> str:
        return f"e_{self.i} - e_{self.j}"


def simple(k: int) -> Root:
    return Root(k, k + 1)


def positive_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def root_from_weight(w) -> Root | None:
    """The positive root with weight vector ``w``, or ``None``."""
    plus = [k for k, x in enumerate(w) if x]
    if len(plus) != 2:
        return None
    a, b = plus
    if w[a] == 1 and w[b] == -1:
        return Root(a + 1, b + 1)
    return None


def inner_product(a: Root, b: Root) -> int:
    """``(e_i - e_j, e_k - e_l)`` for the standard form on C^n."""
    return (a.i == b.i) - (a.i == b.j) - (a.j == b.i) + (a.j == b.j)


class Rel(enum.Enum):
    LESSDOT = "⋖"        # a = e_i-e_j, b = e_j-e_l
    GTRDOT = "⋗"
    OVERLAP_LT = "<̄"     # i < k < j
    OVERLAP_GT = ">̄"
    LL = "≪"             # j < k
    GG = "≫"
    EQUAL = "="
    INCOMPARABLE = "~"   # distinct roots with the same left endpoint

    def mirror(self) -> "Rel":
        return _MIRROR[self]


_MIRROR = {
    Rel.LESSDOT: Rel.GTRDOT,
    Rel.GTRDOT: Rel.LESSDOT,
    Rel.OVERLAP_LT: Rel.OVERLAP_GT,
    Rel.OVERLAP_GT: Rel.OVERLAP_LT,
    Rel.LL: Rel.GG,
    Rel.GG: Rel.LL,
    Rel.EQUAL: Rel.EQUAL,
    Rel.INCOMPARABLE: Rel.INCOMPARABLE,
}


def relation(a: Root, b: Root) -> Rel:
    if a == b:
        return Rel.EQUAL
    if a.i == b.i:
        return Rel.INCOMPARABLE
    if a.i > b.i:
        return relation(b, a).mirror()
    if a.j == b.i:
        return Rel.LESSDOT
    if a.j < b.i:
        return Rel.LL
    return Rel.OVERLAP_LT


def perp_sense(a: Root, b: Root) -> bool:
    """``a << b`` or ``b << a``; not the same as ``inner_product == 0``."""
    return relation(a, b) in (Rel.LL, Rel.GG)
