"""The continuous datum r0 in h ^ h and the symmetry space of a triple.

For every simple root ``alpha`` in Gamma_1 the constraint reads, columnwise in
the second tensor factor,

    sum_i (alpha - tau alpha)_i c[i][j] = 1/2 (alpha + tau alpha)_j,

with ``c`` antisymmetric.  Unknowns are the entries ``c[i][j]``, ``i < j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .triples import BDTriple, res

__all__ = [
    "R0Matrix",
    "R0Inconsistent",
    "constraint_system",
    "solve_r0",
    "canonical_r0",
    "trace_zero_kernel",
    "symmetry_space",
    "wedge_square",
    "gcg_r0",
]


class R0Inconsistent(ValueError):
    def __init__(self, alpha: int, column: int):
        super().__init__(f"r0 constraint for alpha_{alpha}, column {column} has no solution")
        self.alpha = alpha
        self.column = column


@dataclass(frozen=True)
class R0Matrix:
    """``sum c[i][j] e_ii (x) e_jj`` with ``c`` antisymmetric (0-based storage)."""

    n: int
    c: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        c = tuple(tuple(Fraction(x) for x in row) for row in self.c)
        object.__setattr__(self, "c", c)
        if len(c) != self.n or any(len(row) != self.n for row in c):
            raise ValueError("r0 table has the wrong shape")
        for i in range(self.n):
            if c[i][i]:
                raise ValueError("r0 must vanish on the diagonal")
            for j in range(i):
                if c[i][j] != -c[j][i]:
                    raise ValueError("r0 must be antisymmetric")

    @classmethod
    def zero(cls, n: int) -> "R0Matrix":
        return cls(n, tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def from_upper(cls, n: int, vec) -> "R0Matrix":
        c = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(_unknowns(n), vec):
            c[i][j] = Fraction(v)
            c[j][i] = -Fraction(v)
        return cls(n, tuple(map(tuple, c)))

    def upper(self) -> list[Fraction]:
        return [self.c[i][j] for i, j in _unknowns(self.n)]

    def at(self, i: int, j: int) -> Fraction:
        """Entry for 1-based indices."""
        return self.c[i - 1][j - 1]

    def __add__(self, other: "R0Matrix") -> "R0Matrix":
        return R0Matrix(self.n, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.c, other.c)))

    def scale(self, k) -> "R0Matrix":
        return R0Matrix(self.n, tuple(tuple(k * a for a in row) for row in self.c))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.c)

    def trace_zero(self) -> bool:
        return all(sum(self.c[i][j] for i in range(self.n)) == 0 for j in range(self.n))

    def satisfies(self, t: BDTriple) -> bool:
        return not residuals(t, self)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.c]

    @classmethod
    def from_json(cls, rows) -> "R0Matrix":
        return cls(len(rows), tuple(tuple(Fraction(x) for x in row) for row in rows))


@lru_cache(maxsize=None)
def _unknowns(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def _column_row(n: int, lam, j: int) -> list[Fraction]:
    """Coefficients of sum_i lam_i c[i][j] in terms of the upper unknowns."""
    row = [Fraction(0)] * len(_unknowns(n))
    for idx, (a, b) in enumerate(_unknowns(n)):
        if b == j:
            row[idx] += lam[a]          # c[a][j] = +u
        elif a == j:
            row[idx] -= lam[b]          # c[b][j] = -u
    return row


def _alpha_vectors(t: BDTriple, k: int):
    n = t.n
    a = [0] * n
    a[k - 1], a[k] = 1, -1
    ta = [0] * n
    m = t.tau_map[k]
    ta[m - 1], ta[m] = 1, -1
    return a, ta


def constraint_system(t: BDTriple, trace_zero: bool = False):
    """``(rows, rhs, labels)`` of the linear system on the upper unknowns."""
    n = t.n
    rows, rhs, labels = [], [], []
    for k in sorted(t.gamma1):
        a, ta = _alpha_vectors(t, k)
        lam = [x - y for x, y in zip(a, ta)]
        for j in range(n):
            rows.append(_column_row(n, lam, j))
            rhs.append(Fraction(a[j] + ta[j], 2))
            labels.append((k, j + 1))
    if trace_zero:
        ones = [1] * n
        for j in range(n):
            rows.append(_column_row(n, ones, j))
            rhs.append(Fraction(0))
            labels.append((0, j + 1))
    return rows, rhs, labels


def residuals(t: BDTriple, r0: R0Matrix) -> list[tuple[int, int]]:
    """Constraints ``(alpha index, column)`` violated by ``r0``."""
    rows, rhs, labels = constraint_system(t)
    x = r0.upper()
    return [lab for row, b, lab in zip(rows, rhs, labels)
            if sum(u * v for u, v in zip(row, x)) != b]


def solve_r0(t: BDTriple) -> tuple[R0Matrix, list[R0Matrix]]:
    """A trace-zero particular solution and a basis of the homogeneous kernel.

    The particular solution is the reduced-echelon one (free unknowns set to 0)
    of the system augmented with the trace-zero condition on the first factor;
    the kernel is that of the unaugmented constraint map.
    """
    n = t.n
    rows, rhs, labels = constraint_system(t, trace_zero=True)
    try:
        x = linalg.solve(rows, rhs, len(_unknowns(n)))
    except linalg.Inconsistent as exc:
        raise R0Inconsistent(*labels[exc.row]) from exc
    hrows, _, _ = constraint_system(t)
    kernel = [R0Matrix.from_upper(n, v) for v in linalg.nullspace(hrows, len(_unknowns(n)))]
    return R0Matrix.from_upper(n, x), kernel


_CANON: dict = {}


def canonical_r0(t: BDTriple) -> R0Matrix:
    """The r0 used for all verification runs (cached per triple)."""
    r = _CANON.get(t)
    if r is None:
        r = _CANON[t] = solve_r0(t)[0]
    return r


def trace_zero_kernel(t: BDTriple) -> list[R0Matrix]:
    rows, _, _ = constraint_system(t, trace_zero=True)
    return [R0Matrix.from_upper(t.n, v) for v in linalg.nullspace(rows, len(_unknowns(t.n)))]


def symmetry_space(t: BDTriple, traceless: bool = False) -> list[list[Fraction]]:
    """Basis of ``{x in h : (x, alpha) = (x, tau alpha) for alpha in Gamma_1}``."""
    n = t.n
    rows = []
    for k in sorted(t.gamma1):
        a, ta = _alpha_vectors(t, k)
        rows.append([x - y for x, y in zip(a, ta)])
    if traceless:
        rows.append([1] * n)
    return linalg.nullspace(rows, n)


def wedge_square(basis) -> list[R0Matrix]:
    """``x ^ y = x (x) y - y (x) x`` for all pairs of basis vectors."""
    out = []
    for p in range(len(basis)):
        for q in range(p + 1, len(basis)):
            x, y = basis[p], basis[q]
            n = len(x)
            out.append(R0Matrix(n, tuple(
                tuple(x[i] * y[j] - y[i] * x[j] for j in range(n)) for i in range(n))))
    return out


def same_span(a: list[R0Matrix], b: list[R0Matrix]) -> bool:
    va = [m.upper() for m in a]
    vb = [m.upper() for m in b]
    ra, rb = linalg.rank(va), linalg.rank(vb)
    return ra == rb == linalg.rank(va + vb)


def gcg_r0(n: int, m: int) -> R0Matrix:
    """Closed-form trace-zero r0 of the generalized Cremmer-Gervais triple.

    ``c[i][j] = 1/2 - Res((j - i) / m) / n`` off the diagonal, where the
    division is by ``m`` modulo ``n``.
    """
    if not 1 <= m < n or math.gcd(n, m) != 1:
        raise ValueError(f"need 1 <= m < n and gcd(n, m) = 1, got n={n}, m={m}")
    minv = pow(m, -1, n)
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                c[i - 1][j - 1] = Fraction(1, 2) - Fraction(res((j - i) * minv, n), n)
    return R0Matrix(n, tuple(map(tuple, c)))
