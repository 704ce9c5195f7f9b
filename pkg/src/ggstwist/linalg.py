"""Exact Gaussian elimination over Q on lists of Fractions."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["rref", "nullspace", "solve", "rank", "Inconsistent"]


class Inconsistent(ValueError):
    """A linear system has no solution; ``row`` is the offending equation."""

    def __init__(self, row: int):
        super().__init__(f"inconsistent linear system (equation {row})")
        self.row = row


def rref(rows: Sequence[Sequence], rhs: Sequence | None = None):
    """Reduced row echelon form.

    Returns ``(matrix, rhs, pivots, order)`` where ``order[k]`` is the input
    index of output row ``k``; ``rhs`` is ``None`` if not given.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    order = list(range(len(m)))
    t = None if rhs is None else [Fraction(x) for x in rhs]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            order[r], order[piv] = order[piv], order[r]
            if t is not None:
                t[r], t[piv] = t[piv], t[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
            if t is not None:
                t[r] /= p
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                if t is not None:
                    t[i] -= f * t[r]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, t, pivots, order


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[2])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    m, _, pivots, _ = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction]:
    """One solution of ``rows @ x = rhs`` with all free variables zero."""
    x = [Fraction(0)] * ncols
    if not rows:
        return x
    m, t, pivots, order = rref(rows, rhs)
    for i in range(len(pivots), len(m)):
        if t[i]:
            raise Inconsistent(order[i])
    for r, pc in enumerate(pivots):
        x[pc] = t[r]
    return x
