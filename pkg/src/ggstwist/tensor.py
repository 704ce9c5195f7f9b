"""Sparse exact operators on two or three tensor legs of C^n.

An operator is a dict from ``(row, col)`` to :class:`QScalar`; for two legs the
matrix unit ``e_ij (x) e_kl`` sits at ``row = (i, k)``, ``col = (j, l)``, and
similarly with a third pair for three legs.  Indices are 1-based.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .qlaurent import ONE, QMINUS, QScalar, q_power
from .roots import Rel, Root, relation

__all__ = [
    "TensorOp",
    "TensorOp2",
    "TensorOp3",
    "unit",
    "identity",
    "flip21",
    "embed3",
    "conjugate_qr0",
    "split_pm",
    "restrict_rel",
    "transpose_legs",
    "invert_q",
    "build_standard",
    "build_a",
    "r0_tensor",
    "wedge_c",
    "cybe",
    "entry_weight",
    "is_zero_weight",
]


def _coerce(x) -> QScalar:
    return x if isinstance(x, QScalar) else QScalar.coerce(x)


class TensorOp:
    legs = 0
    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Mapping | None = None):
        self.n = n
        clean = {}
        if entries:
            for key, v in entries.items():
                v = _coerce(v)
                if v:
                    clean[key] = v
        self.entries: dict[tuple, QScalar] = clean

    @classmethod
    def _raw(cls, n, entries):
        obj = cls.__new__(cls)
        obj.n = n
        obj.entries = entries
        return obj

    def _check(self, other: "TensorOp"):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __len__(self):
        return len(self.entries)

    def get(self, row, col) -> QScalar:
        return self.entries.get((tuple(row), tuple(col)), QScalar())

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return self._raw(self.n, out)

    def __neg__(self):
        return self._raw(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TensorOp":
        s = _coerce(s)
        if not s:
            return self._raw(self.n, {})
        out = {}
        for k, v in self.entries.items():
            w = v * s
            if w:
                out[k] = w
        return self._raw(self.n, out)

    def __mul__(self, other):
        if isinstance(other, TensorOp):
            self._check(other)
            return self._raw(self.n, _matmul(self.entries, other.entries))
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        return type(self) is type(other) and self.n == other.n and self.entries == other.entries

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries

    def map_coeffs(self, f: Callable[[QScalar], QScalar]) -> "TensorOp":
        out = {}
        for k, v in self.entries.items():
            w = f(v)
            if w:
                out[k] = w
        return self._raw(self.n, out)

    def filter(self, keep: Callable[[tuple, tuple], bool]) -> "TensorOp":
        return self._raw(self.n, {k: v for k, v in self.entries.items() if keep(*k)})

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: kv[0])

    def first_difference(self, other: "TensorOp"):
        """``((row, col), self - other)`` at the smallest differing index, or ``None``."""
        self._check(other)
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            a = self.entries.get(k, QScalar())
            b = other.entries.get(k, QScalar())
            if a != b:
                return k, a - b
        return None

    def to_records(self) -> list[dict]:
        return [{"row": list(r), "col": list(c), "coeff": v.to_quads()}
                for (r, c), v in self.sorted_items()]

    @classmethod
    def from_records(cls, n: int, records) -> "TensorOp":
        return cls(n, {(tuple(r["row"]), tuple(r["col"])): QScalar.from_quads(r["coeff"])
                       for r in records})

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {len(self.entries)} entries)"

    def pretty(self) -> str:
        lines = []
        for (r, c), v in self.sorted_items():
            units = " (x) ".join(f"e{a}{b}" for a, b in zip(r, c))
            lines.append(f"({v}) {units}")
        return "\n".join(lines) if lines else "0"


class TensorOp2(TensorOp):
    legs = 2
    __slots__ = ()


class TensorOp3(TensorOp):
    legs = 3
    __slots__ = ()


def _matmul(a: dict, b: dict) -> dict:
    by_row = defaultdict(list)
    for (r, c), v in b.items():
        by_row[r].append((c, v.terms))
    acc: dict[tuple, dict] = {}
    for (r, m), v in a.items():
        rows = by_row.get(m)
        if not rows:
            continue
        vt = v.terms
        for c, wt in rows:
            key = (r, c)
            d = acc.get(key)
            if d is None:
                d = acc[key] = {}
            for ea, ca in vt:
                for eb, cb in wt:
                    e = ea + eb
                    d[e] = d.get(e, 0) + ca * cb
    out = {}
    for key, d in acc.items():
        s = QScalar._from_dict(d)
        if s:
            out[key] = s
    return out


# constructors ------------------------------------------------------------------
def unit(n: int, *pairs, coeff=1) -> TensorOp:
    """``coeff * e_{i1 j1} (x) e_{i2 j2} [(x) e_{i3 j3}]``."""
    cls = TensorOp2 if len(pairs) == 2 else TensorOp3
    row = tuple(p[0] for p in pairs)
    col = tuple(p[1] for p in pairs)
    return cls(n, {(row, col): coeff})


def identity(n: int, legs: int = 2) -> TensorOp:
    cls = TensorOp2 if legs == 2 else TensorOp3
    ent = {}
    if legs == 2:
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                ent[((i, k), (i, k))] = ONE
    else:
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                for u in range(1, n + 1):
                    ent[((i, k, u), (i, k, u))] = ONE
    return cls._raw(n, ent)


def flip21(x: TensorOp2) -> TensorOp2:
    return TensorOp2._raw(x.n, {((r[1], r[0]), (c[1], c[0])): v for (r, c), v in x.entries.items()})


def embed3(x: TensorOp2, legs: str) -> TensorOp3:
    """Place ``x`` on legs ``"12"``, ``"13"`` or ``"23"`` with identity on the rest."""
    ent = {}
    rng = range(1, x.n + 1)
    for ((a, b), (c, d)), v in x.entries.items():
        for k in rng:
            if legs == "12":
                key = ((a, b, k), (c, d, k))
            elif legs == "13":
                key = ((a, k, b), (c, k, d))
            elif legs == "23":
                key = ((k, a, b), (k, c, d))
            else:
                raise ValueError(f"unknown leg pair {legs!r}")
            ent[key] = v
    return TensorOp3._raw(x.n, ent)


def conjugate_qr0(x: TensorOp2, r0) -> TensorOp2:
    """``q^{r0} x q^{r0}``: entry ``e_ij (x) e_kl`` gains ``q^{c[i][k] + c[j][l]}``."""
    if r0 is None or r0.is_zero():
        return x
    c = r0.c
    out = {}
    for (r, col), v in x.entries.items():
        out[(r, col)] = v.shift(c[r[0] - 1][r[1] - 1] + c[col[0] - 1][col[1] - 1])
    return TensorOp2._raw(x.n, out)


def conjugate_inverse_qr0(x: TensorOp2, r0) -> TensorOp2:
    """``q^{-r0} x q^{-r0}``."""
    return conjugate_qr0(x, None if r0 is None else r0.scale(-1))


def _sector(row, col) -> str:
    (i, k), (j, l) = row, col
    if i == j and k == l:
        return "0"
    if i < j and k > l:
        return "+"
    if i > j and k < l:
        return "-"
    return "?"


def split_pm(x: TensorOp2) -> tuple[TensorOp2, TensorOp2]:
    """``(x_+, x_-)``: upper(x)lower and lower(x)upper parts, each with half the diagonal."""
    plus, minus = {}, {}
    half = Fraction(1, 2)
    for (r, c), v in x.entries.items():
        s = _sector(r, c)
        if s == "+":
            plus[(r, c)] = v
        elif s == "-":
            minus[(r, c)] = v
        elif s == "0":
            plus[(r, c)] = v * half
            minus[(r, c)] = v * half
        else:
            raise ValueError(f"entry e{r[0]}{c[0]} (x) e{r[1]}{c[1]} lies outside the +/-/diagonal sectors")
    return TensorOp2._raw(x.n, plus), TensorOp2._raw(x.n, minus)


def pair_of_entry(row, col) -> tuple[Root, Root, str] | None:
    """``(alpha, beta, side)`` for an entry ``e_beta (x) e_-alpha`` (side ``"+"``)
    or ``e_-alpha (x) e_beta`` (side ``"-"``); ``None`` otherwise."""
    s = _sector(row, col)
    (i, k), (j, l) = row, col
    if s == "+":
        return Root(l, k), Root(i, j), "+"
    if s == "-":
        return Root(j, i), Root(k, l), "-"
    return None


def restrict_rel(x: TensorOp2, rels: Iterable[Rel]) -> TensorOp2:
    """Keep the off-diagonal entries whose pair ``(alpha, beta)`` is in ``rels``."""
    rels = frozenset(rels)

    def keep(r, c):
        p = pair_of_entry(r, c)
        return p is not None and relation(p[0], p[1]) in rels

    return x.filter(keep)


def plus_key(a: Root, b: Root):
    """Index of ``e_b (x) e_-a``."""
    return (b.i, a.j), (b.j, a.i)


def minus_key(a: Root, b: Root):
    """Index of ``e_-a (x) e_b``."""
    return (a.j, b.i), (a.i, b.j)


def transpose_legs(x: TensorOp) -> TensorOp:
    return x._raw(x.n, {(c, r): v for (r, c), v in x.entries.items()})


def invert_q(x: TensorOp) -> TensorOp:
    return x.map_coeffs(QScalar.invert_q)


def entry_weight(n: int, row, col) -> tuple[int, ...]:
    """h-weight of a matrix-unit entry: sum over legs of ``e_i - e_j``."""
    w = [0] * n
    for a, b in zip(row, col):
        w[a - 1] += 1
        w[b - 1] -= 1
    return tuple(w)


def is_zero_weight(row, col) -> bool:
    return sorted(row) == sorted(col)


# standard operators and builders ---------------------------------------------
def build_standard(n: int, which: str) -> TensorOp2:
    """``P``, ``P0``, ``r_s`` (classical) or ``R_s`` (Drinfeld-Jimbo)."""
    half = Fraction(1, 2)
    ent = {}
    rng = range(1, n + 1)
    if which == "P":
        for i in rng:
            for j in rng:
                ent[((i, j), (j, i))] = ONE
    elif which == "P0":
        for i in rng:
            ent[((i, i), (i, i))] = ONE
    elif which == "r_s":
        for i in rng:
            ent[((i, i), (i, i))] = QScalar.const(half)
        for i in rng:
            for j in rng:
                if i < j:
                    ent[((j, i), (i, j))] = ONE  # e_ji (x) e_ij
    elif which == "R_s":
        q = q_power(1)
        for i in rng:
            for j in rng:
                ent[((i, j), (i, j))] = q if i == j else ONE
                if i > j:
                    ent[((i, j), (j, i))] = QMINUS  # e_ij (x) e_ji
    else:
        raise ValueError(f"unknown standard operator {which!r}")
    return TensorOp2._raw(n, ent)


def wedge_c(n: int, a: Root, b: Root, c=0) -> TensorOp2:
    """``e_-a ^_c e_b = q^-c e_-a (x) e_b - q^c e_b (x) e_-a``."""
    c = Fraction(c)
    return TensorOp2(n, {minus_key(a, b): q_power(-c), plus_key(a, b): -q_power(c)})


def build_a(t) -> TensorOp2:
    """``a = sum_{alpha < beta} sign(alpha, beta) e_-alpha ^ e_beta``."""
    ent = {}
    for (a, b) in t.pairs:
        s = t.sign(a, b)
        ent[minus_key(a, b)] = QScalar.const(s)
        ent[plus_key(a, b)] = QScalar.const(-s)
    return TensorOp2._raw(t.n, ent)


def r0_tensor(r0) -> TensorOp2:
    ent = {}
    for i in range(r0.n):
        for j in range(r0.n):
            if r0.c[i][j]:
                ent[((i + 1, j + 1), (i + 1, j + 1))] = QScalar.const(r0.c[i][j])
    return TensorOp2._raw(r0.n, ent)


def classical_r(t, r0) -> TensorOp2:
    """``r = r0 + a + r_s``."""
    return r0_tensor(r0) + build_a(t) + build_standard(t.n, "r_s")


def cybe(r: TensorOp2) -> TensorOp3:
    """``[r12, r13] + [r12, r23] + [r13, r23]``; zero iff ``r`` solves the CYBE."""
    r12, r13, r23 = embed3(r, "12"), embed3(r, "13"), embed3(r, "23")

    def br(x, y):
        return x * y - y * x

    return br(r12, r13) + br(r12, r23) + br(r13, r23)
