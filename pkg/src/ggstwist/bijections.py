"""Pairwise cancellation in the quadratic expansion that yields K.

Products of two ``a``-terms and of ``a``-terms with ``P`` land on matrix units
``e_b (x) e_-a``.  Six index sets collect the contributing pairs:

* ``M1``/``M2``: ``(e_b (x) e_-a)(e_d (x) e_-c)`` from layers ``x > y`` / ``x < y``;
* ``M3``/``M4``: the plus-sector parts of ``a_+ a_-`` and ``a_- a_+``;
* ``M5``/``M6``: pairs of overlapping roots (``a >̄ b`` / ``a <̄ b``).

Each set splits into a primed part (a divisibility condition fails) and the
rest.  Four explicit maps ``f, g, f', g'`` pair primed and unprimed pieces so
that their contributions cancel; :func:`check_bijections` verifies this.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .roots import Rel, Root, relation, root_from_weight
from .triples import BDTriple

__all__ = ["MSets", "m_sets", "map_f", "map_g", "map_f1", "map_g1", "BijectionReport", "check_bijections"]


@dataclass
class MSets:
    m1: list = field(default_factory=list)
    m2: list = field(default_factory=list)
    m3: list = field(default_factory=list)
    m4: list = field(default_factory=list)
    m5: list = field(default_factory=list)
    m6: list = field(default_factory=list)
    # primed subsets (divisibility fails)
    m1p: list = field(default_factory=list)
    m2p: list = field(default_factory=list)
    m3p: list = field(default_factory=list)
    m4p: list = field(default_factory=list)
    m5p: list = field(default_factory=list)
    m6p: list = field(default_factory=list)

    def sizes(self) -> dict[str, int]:
        return {k: len(v) for k, v in vars(self).items()}


def _divides(d: int, m: int) -> bool:
    return d != 0 and m % d == 0


def m_sets(t: BDTriple) -> MSets:
    s = MSets()
    X = list(t.pairs.items())
    for (a, b), x in X:
        for (c, d), y in X:
            # M1/M2: first legs e_b e_d and second legs e_-a e_-c both compose
            if relation(a, c) is Rel.GTRDOT and relation(b, d) is Rel.LESSDOT and x != y:
                item = ((a, b), (c, d))
                if x > y:
                    s.m1.append(item)
                    if not _divides(x - y, y):
                        s.m1p.append(item)
                else:
                    s.m2.append(item)
                    if not _divides(y - x, x):
                        s.m2p.append(item)
            # M3: ((e_x-e_y, e_u-e_v), (e_v'-e_v, e_x-e_x')), x' < y, u < v'
            if c.j == b.j and d.i == a.i and d.j < a.j and b.i < c.i:
                item = ((a, b), (c, d))
                s.m3.append(item)
                if not _divides(a.j - d.j, a.j - a.i):
                    s.m3p.append(item)
            # M4: ((e_x-e_y, e_u-e_v), (e_u-e_u', e_y'-e_y)), x < y', u' < v
            if c.i == b.i and d.j == a.j and a.i < d.i and c.j < b.j:
                item = ((a, b), (c, d))
                s.m4.append(item)
                if not _divides(d.i - a.i, a.j - a.i):
                    s.m4p.append(item)
    for (a, b), _ in X:
        rel = relation(a, b)
        if rel is Rel.OVERLAP_GT:
            s.m5.append((a, b))
            if not _divides(a.i - b.i, a.j - a.i):
                s.m5p.append((a, b))
        elif rel is Rel.OVERLAP_LT:
            s.m6.append((a, b))
            if not _divides(b.i - a.i, a.j - a.i):
                s.m6p.append((a, b))
    return s


def _w(n, *terms):
    v = [0] * n
    for r in terms:
        if r is None:
            return None
        for k, x in enumerate(r.weight(n)):
            v[k] += x
    return v


def _root(w):
    return None if w is None else root_from_weight(w)


def _chain_sum(t: BDTriple, s: Root, powers) -> list | None:
    n = t.n
    v = [0] * n
    for p in powers:
        r = t.apply_tau(s, p)
        if r is None:
            return None
        for k, x in enumerate(r.weight(n)):
            v[k] += x
    return v


def _plus(u, v):
    if u is None or v is None:
        return None
    return [a + b for a, b in zip(u, v)]


def _spiral(t: BDTriple, base: Root, lead: Root, lead_x: int, tail_y: int):
    """Shared shape of ``f`` and ``g``.

    With ``d = lead_x - tail_y`` and ``tail_y = p d + r`` (``0 < r < d``), the
    image pair is assembled from ``tau``-powers of ``base`` stepping by ``d``
    plus one power of ``lead``.
    """
    n = t.n
    d = lead_x - tail_y
    p, r = divmod(tail_y, d)
    if r == 0:
        return None
    a_w = _plus(_chain_sum(t, base, [k * d for k in range(p + 1)]),
                _w(n, t.apply_tau(lead, (p + 1) * d)))
    b_w = _plus(_chain_sum(t, base, [r + k * d for k in range(p + 1)]),
                _w(n, t.apply_tau(lead, lead_x)))
    c_w = _plus(_chain_sum(t, base, [r + k * d for k in range(p)]),
                _w(n, t.apply_tau(lead, tail_y)))
    d_w = _plus(_chain_sum(t, base, [k * d for k in range(1, p + 1)]),
                _w(n, t.apply_tau(lead, (p + 1) * d)))
    roots = [_root(w) for w in (a_w, b_w, c_w, d_w)]
    if any(r is None for r in roots):
        return None
    A, B, C, D = roots
    return ((A, B), (C, D))


def map_f(t: BDTriple, item):
    """``f`` on ``((a, tau^x a), (b, tau^y b))`` with ``x > y``, ``(x - y) ∤ y``."""
    (a, _), (b, _) = item
    x = t.pairs[item[0]]
    y = t.pairs[item[1]]
    merged = root_from_weight(_w(t.n, a, b))
    if merged is None:
        return None
    return _spiral(t, merged, a, x, y)


def map_g(t: BDTriple, item):
    """``g`` on ``((a, tau^x a), (b, tau^y b))`` with ``x < y``, ``(y - x) ∤ x``.

    The roles of ``(a, x)`` and ``(b, y)`` swap relative to :func:`map_f`.
    """
    (a, _), (b, _) = item
    x = t.pairs[item[0]]
    y = t.pairs[item[1]]
    merged = root_from_weight(_w(t.n, a, b))
    if merged is None:
        return None
    return _spiral(t, merged, b, y, x)


def _f1_parts(item):
    # ((e_j - e_i, e_a - e_{a+i-j}), (e_k - e_j, e_{a+i-j} - e_{a+i-k}))
    (al, be), (ga, _de) = item
    j, i = al.i, al.j
    a = be.i
    k = ga.i
    return i, j, k, a


def map_f1(t: BDTriple, item):
    """``f'``: ``-> (e_{a+i-k} - e_i, e_a - e_k)``."""
    i, j, k, a = _f1_parts(item)
    try:
        return (Root(a + i - k, i), Root(a, k))
    except ValueError:
        return None


def map_g1(t: BDTriple, item):
    """``g'``: ``-> (e_k - e_a, e_i - e_{a+i-k})``."""
    i, j, k, a = _f1_parts(item)
    try:
        return (Root(k, a), Root(i, a + i - k))
    except ValueError:
        return None


def _pos_product(t, item):
    """Matrix unit ``e_r (x) e_-s`` produced by an M1/M2 item, as ``(r, s)``."""
    (a, b), (c, d) = item
    return _root(_w(t.n, b, d)), _root(_w(t.n, a, c))


def _pos_mixed(t, item):
    """Same for M3/M4 items: ``(beta - gamma, alpha - delta)``."""
    (a, b), (c, d) = item
    r = [x - y for x, y in zip(b.weight(t.n), c.weight(t.n))]
    s_ = [x - y for x, y in zip(a.weight(t.n), d.weight(t.n))]
    return _root(r), _root(s_)


def _pos_m5(t, pair):
    a, b = pair  # e_b (x) e_-a times P
    return Root(b.i, a.i), Root(b.j, a.j)


def _pos_m6(t, pair):
    a, b = pair  # P times e_b (x) e_-a
    return Root(a.j, b.j), Root(a.i, b.i)


def _a(t: BDTriple, pair) -> int:
    """Coefficient of ``e_b (x) e_-a`` in ``a``."""
    return -t.sign(*pair)


def _a_minus(t: BDTriple, pair) -> int:
    """Coefficient of ``e_-a (x) e_b`` in ``a``."""
    return t.sign(*pair)


@dataclass
class BijectionReport:
    ok: bool
    sizes: dict
    failures: list  # (map name, kind, element)

    def first_failure(self):
        return self.failures[0] if self.failures else None


def _check_map(t, name, fn, domain, codomain, identity, failures, pos_in, pos_out):
    image = {}
    cod = set(codomain)
    for item in domain:
        out = fn(t, item)
        if out is None:
            failures.append((name, "undefined", item))
            continue
        if out not in cod:
            failures.append((name, "outside codomain", (item, out)))
            continue
        if out in image:
            failures.append((name, "not injective", (image[out], item)))
            continue
        image[out] = item
        if pos_in(t, item) != pos_out(t, out):
            failures.append((name, "different matrix unit", (item, out)))
        if not identity(item, out):
            failures.append((name, "cancellation identity", (item, out)))
    for target in codomain:
        if target not in image:
            failures.append((name, "not surjective", target))


def check_bijections(t: BDTriple) -> BijectionReport:
    """Verify ``f: M1' -> M3'``, ``g: M2' -> M4'``, ``f': M1'' -> M5'`` and
    ``g': M2'' -> M6'`` are bijections whose paired terms cancel."""
    s = m_sets(t)
    failures: list = []

    def quad(item, out):
        (p1, p2), (p3, p4) = item, out
        return _a(t, p1) * _a(t, p2) + _a(t, p3) * _a_minus(t, p4) == 0

    def lin(item, out):
        p1, p2 = item
        return _a(t, p1) * _a(t, p2) + _a(t, out) == 0

    m1pp = [x for x in s.m1 if x not in set(s.m1p)]
    m2pp = [x for x in s.m2 if x not in set(s.m2p)]
    _check_map(t, "f", map_f, s.m1p, s.m3p, quad, failures, _pos_product, _pos_mixed)
    _check_map(t, "g", map_g, s.m2p, s.m4p, quad, failures, _pos_product, _pos_mixed)
    _check_map(t, "f'", map_f1, m1pp, s.m5p, lin, failures, _pos_product, _pos_m5)
    _check_map(t, "g'", map_g1, m2pp, s.m6p, lin, failures, _pos_product, _pos_m6)
    return BijectionReport(not failures, s.sizes(), failures)
