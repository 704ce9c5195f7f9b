"""Belavin-Drinfeld triples of type A_{n-1}.

A triple is stored as ``n`` plus the map ``tau`` on simple-root indices:
``tau[i] = j`` means ``tau(alpha_i) = alpha_j``.  ``gamma1`` is the domain and
``gamma2`` the image.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from . import linalg
from .roots import Rel, Root, inner_product, relation, simple

__all__ = [
    "BDTriple",
    "Violation",
    "validate",
    "enumerate_triples",
    "gcg_triple",
    "cg_triple",
    "res",
    "classify",
    "is_sub_triple",
    "decompose",
    "union",
    "tau_index",
    "in_H",
    "parse_triple",
    "EnumerationCapExceeded",
    "DEFAULT_N_CAP",
]

DEFAULT_N_CAP = 9


class EnumerationCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BDTriple:
    n: int
    tau: tuple = field(default=())

    def __post_init__(self):
        items = self.tau.items() if isinstance(self.tau, Mapping) else self.tau
        items = tuple(sorted((int(a), int(b)) for a, b in items))
        object.__setattr__(self, "tau", items)
        if self.n < 2:
            raise ValueError("n must be at least 2")
        src = [a for a, _ in items]
        dst = [b for _, b in items]
        if len(set(src)) != len(src):
            raise ValueError("tau assigns a simple root twice")
        if len(set(dst)) != len(dst):
            raise ValueError("tau is not injective")
        for k in src + dst:
            if not 1 <= k <= self.n - 1:
                raise ValueError(f"alpha_{k} is not a simple root for n={self.n}")

    # basic data ------------------------------------------------------------
    @cached_property
    def tau_map(self) -> dict[int, int]:
        return dict(self.tau)

    @cached_property
    def gamma1(self) -> frozenset[int]:
        return frozenset(self.tau_map)

    @cached_property
    def gamma2(self) -> frozenset[int]:
        return frozenset(self.tau_map.values())

    def __str__(self):
        return format_triple(self)

    def is_empty(self) -> bool:
        return not self.tau

    # additive extension of tau ----------------------------------------------
    def in_tilde_gamma1(self, a: Root) -> bool:
        return all(k in self.gamma1 for k in a.simple_indices())

    def apply_tau(self, a: Root, k: int = 1) -> Root | None:
        """``tau**k(a)``, or ``None`` when some intermediate leaves Gamma~_1."""
        cur = a
        for _ in range(k):
            if not self.in_tilde_gamma1(cur):
                return None
            imgs = [self.tau_map[s] for s in cur.simple_indices()]
            lo, hi = min(imgs), max(imgs)
            # isometry makes the image a contiguous run; anything else is a bug
            assert hi - lo + 1 == len(imgs), "tau image of a root is not a root"
            cur = Root(lo, hi + 1)
        return cur

    def extend_tau(self, a: Root) -> Root:
        if not self.in_tilde_gamma1(a):
            raise ValueError(f"{a} is not in the span of Gamma_1")
        return self.apply_tau(a)

    def tau_simple_power(self, s: int, k: int) -> int | None:
        for _ in range(k):
            if s not in self.tau_map:
                return None
            s = self.tau_map[s]
        return s

    @cached_property
    def tilde_gamma1(self) -> tuple[Root, ...]:
        out = []
        for i in range(1, self.n):
            for j in range(i + 1, self.n + 1):
                if all(k in self.gamma1 for k in range(i, j)):
                    out.append(Root(i, j))
        return tuple(out)

    @cached_property
    def pairs(self) -> dict[tuple[Root, Root], int]:
        """The set X: every ``(a, b)`` with ``tau**k a = b``, mapped to ``k``."""
        out = {}
        for a in self.tilde_gamma1:
            b, k = a, 0
            while self.in_tilde_gamma1(b):
                b = self.apply_tau(b)
                k += 1
                out[(a, b)] = k
                if k > self.n:
                    raise ValueError("tau is not nilpotent")
        return dict(sorted(out.items(), key=lambda kv: (kv[0][0], kv[1])))

    def prec(self, a: Root, b: Root) -> int | None:
        """``k`` with ``tau**k a = b`` (``k >= 1``), else ``None``."""
        return self.pairs.get((a, b))

    @cached_property
    def depth(self) -> int:
        """Number of twist layers: the largest ``k`` in X (0 if X is empty)."""
        return max(self.pairs.values(), default=0)

    def reverses(self, a: Root, b: Root) -> bool:
        k = self.pairs.get((a, b))
        if k is None:
            raise ValueError(f"{a} does not precede {b}")
        if a.length == 1:
            return False
        return self.tau_simple_power(a.i, k) == b.j - 1

    def sign(self, a: Root, b: Root) -> int:
        if self.reverses(a, b):
            return -1 if (a.length - 1) % 2 else 1
        return 1

    def orientation_sign(self, a: Root, b: Root) -> tuple[bool, int]:
        return self.reverses(a, b), self.sign(a, b)

    def between(self, a: Root, b: Root) -> list[Root]:
        """The chain ``tau**t a`` for ``0 < t < O(a, b)``."""
        k = self.pairs[(a, b)]
        return [self.apply_tau(a, t) for t in range(1, k)]

    def chain_touches(self, a: Root, b: Root, refined: bool = False) -> tuple[bool, bool]:
        """Whether some ``g`` strictly between ``a`` and ``b`` has ``a ⋖ g`` / ``a ⋗ g``.

        With ``refined``, a touching ``g = tau**t a`` only counts when
        ``tau**(O - t)`` maps the merged root ``a + g`` preserving orientation.
        """
        z = self.pairs[(a, b)]
        lt = gt = False
        for t, g in enumerate(self.between(a, b), start=1):
            rel = relation(a, g)
            if rel not in (Rel.LESSDOT, Rel.GTRDOT):
                continue
            if refined:
                merged = Root(min(a.i, g.i), max(a.j, g.j))
                img = self.apply_tau(merged, z - t)
                if img is not None and self.reverses(merged, img):
                    continue
            if rel is Rel.LESSDOT:
                lt = True
            else:
                gt = True
        return lt, gt

    # sub-structures -------------------------------------------------------
    def restrict(self, keep: Iterable[int]) -> "BDTriple":
        keep = set(keep)
        return BDTriple(self.n, {a: b for a, b in self.tau if a in keep})

    @cached_property
    def gamma1_components(self) -> tuple[tuple[int, ...], ...]:
        """Maximal runs of consecutive simple roots in Gamma_1."""
        runs, cur = [], []
        for k in sorted(self.gamma1):
            if cur and k != cur[-1] + 1:
                runs.append(tuple(cur))
                cur = []
            cur.append(k)
        if cur:
            runs.append(tuple(cur))
        return tuple(runs)


# validation -----------------------------------------------------------------
@dataclass(frozen=True)
class Violation:
    kind: str  # "isometry" | "nilpotency"
    witness: tuple

    def __str__(self):
        if self.kind == "isometry":
            a, b = self.witness
            return f"isometry violated on (alpha_{a}, alpha_{b})"
        return "nilpotency violated on cycle " + " -> ".join(f"alpha_{k}" for k in self.witness)


def validate(t: BDTriple) -> list[Violation]:
    """Violated conditions of a triple; an empty list means the triple is valid."""
    out = []
    g = sorted(t.gamma1)
    for a, b in itertools.combinations_with_replacement(g, 2):
        if inner_product(simple(a), simple(b)) != inner_product(
            simple(t.tau_map[a]), simple(t.tau_map[b])
        ):
            out.append(Violation("isometry", (a, b)))
    seen_cycles = set()
    for start in g:
        path, s = [start], t.tau_map[start]
        while s in t.tau_map and s not in path:
            path.append(s)
            s = t.tau_map[s]
        if s in path:
            cyc = path[path.index(s):]
            m = cyc.index(min(cyc))
            cyc = tuple(cyc[m:] + cyc[:m])
            if cyc not in seen_cycles:
                seen_cycles.add(cyc)
                out.append(Violation("nilpotency", cyc))
    return out


def _nilpotent(tau: Mapping[int, int]) -> bool:
    for start in tau:
        s, steps = start, 0
        while s in tau:
            s = tau[s]
            steps += 1
            if steps > len(tau):
                return False
    return True


def enumerate_triples(n: int, cap: int = DEFAULT_N_CAP) -> list[BDTriple]:
    """All Belavin-Drinfeld triples for ``n``, empty triple first.

    Order: by ``|Gamma_1|``, then the domain lexicographically, then the
    image tuple lexicographically.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > cap:
        raise EnumerationCapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    simples = list(range(1, n))
    out = []
    for size in range(len(simples)):
        for dom in itertools.combinations(simples, size):
            for img in _isometric_injections(dom, simples):
                tau = dict(zip(dom, img))
                if _nilpotent(tau):
                    out.append(BDTriple(n, tau))
    return out


def _isometric_injections(dom, simples):
    # backtracking with edge-by-edge pruning: adjacency must be preserved
    img: list[int] = []
    used: set[int] = set()

    def rec(k):
        if k == len(dom):
            yield tuple(img)
            return
        for c in simples:
            if c in used:
                continue
            ok = True
            for p in range(k):
                if (abs(dom[k] - dom[p]) == 1) != (abs(c - img[p]) == 1):
                    ok = False
                    break
            if ok:
                img.append(c)
                used.add(c)
                yield from rec(k + 1)
                img.pop()
                used.discard(c)

    yield from rec(0)


# named families -------------------------------------------------------------
def res(x: int, n: int) -> int:
    """Residue of ``x`` modulo ``n`` in ``{1, ..., n}``."""
    r = x % n
    return r if r else n


def gcg_triple(n: int, m: int) -> BDTriple:
    """Generalized Cremmer-Gervais triple: ``tau(alpha_i) = alpha_Res(i+m)``."""
    if not 1 <= m < n or math.gcd(n, m) != 1:
        raise ValueError(f"need 1 <= m < n and gcd(n, m) = 1, got n={n}, m={m}")
    return BDTriple(n, {i: res(i + m, n) for i in range(1, n) if i != n - m})


def cg_triple(n: int) -> BDTriple:
    return gcg_triple(n, 1)


def gcg_parameter(t: BDTriple) -> int | None:
    """``m`` if ``t`` is the generalized Cremmer-Gervais triple ``(n, m)``."""
    if len(t.gamma1) != t.n - 2:
        return None
    for m in range(1, t.n):
        if math.gcd(t.n, m) == 1 and gcg_triple(t.n, m) == t:
            return m
    return None


# classification -------------------------------------------------------------
def _levels(t: BDTriple, edges) -> dict[int, int] | None:
    """Integer potentials on Gamma_1 components with ``L(dst) = L(src) + 1``."""
    comp_of = {}
    for ci, comp in enumerate(t.gamma1_components):
        for k in comp:
            comp_of[k] = ci
    adj = defaultdict(list)
    for a, b in edges:
        ca, cb = comp_of[a], comp_of[b]
        adj[ca].append((cb, 1))
        adj[cb].append((ca, -1))
    level: dict[int, int] = {}
    for root in range(len(t.gamma1_components)):
        if root in level:
            continue
        level[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, w in adj[u]:
                if v not in level:
                    level[v] = level[u] + w
                    queue.append(v)
                elif level[v] != level[u] + w:
                    return None
    return level


def gd_parts(t: BDTriple, orthogonal: bool = False) -> list[frozenset[int]] | None:
    """An ordered partition witnessing (orthogonal) generalized disjointness.

    Each maximal run of Gamma_1 lies in a single part, and ``tau(alpha) in
    Gamma_1`` forces the part of ``tau(alpha)`` to be the next one, so a
    partition exists iff these "next part" constraints admit consistent levels.
    The orthogonal variant adds a constraint whenever ``tau(alpha)`` is merely
    adjacent to a root of Gamma_1.
    """
    g = t.gamma1
    if orthogonal:
        edges = [(a, b) for a in g for b in g if abs(t.tau_map[a] - b) <= 1]
    else:
        edges = [(a, t.tau_map[a]) for a in g if t.tau_map[a] in g]
    level = _levels(t, edges)
    if level is None:
        return None
    if not level:
        return []
    lo = min(level.values())
    parts: dict[int, set[int]] = defaultdict(set)
    for ci, comp in enumerate(t.gamma1_components):
        parts[level[ci] - lo].update(comp)
    return [frozenset(parts.get(i, ())) for i in range(max(parts) + 1)]


def classify(t: BDTriple) -> frozenset[str]:
    flags = set()
    if not (t.gamma1 & t.gamma2):
        flags.add("disjoint")
    if gd_parts(t) is not None:
        flags.add("generalized_disjoint")
    if gd_parts(t, orthogonal=True) is not None:
        flags.add("orthogonal_generalized_disjoint")
    m = gcg_parameter(t)
    if m is not None:
        flags.add("generalized_CG")
        if m == 1:
            flags.add("CG")
    if len(decompose(t)) >= 2:
        flags.add("decomposable")
    return frozenset(flags)


def is_sub_triple(small: BDTriple, big: BDTriple) -> bool:
    if small.n != big.n:
        raise ValueError("triples live in different dimensions")
    return all(big.tau_map.get(a) == b for a, b in small.tau)


def decompose(t: BDTriple) -> list[BDTriple]:
    """Finest tau-orthogonal decomposition into indecomposable triples."""
    parent = {k: k for k in t.gamma1}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for k in t.gamma1:
        if k + 1 in t.gamma1:
            join(k, k + 1)
        if t.tau_map[k] in t.gamma1:
            join(k, t.tau_map[k])
    blocks = defaultdict(set)
    for k in t.gamma1:
        blocks[find(k)].add(k)
    return [t.restrict(blocks[r]) for r in sorted(blocks)]


def union(parts: Iterable[BDTriple]) -> BDTriple:
    parts = list(parts)
    if not parts:
        raise ValueError("empty union")
    n = parts[0].n
    tau: dict[int, int] = {}
    for p in parts:
        if p.n != n:
            raise ValueError("triples live in different dimensions")
        for a, b in p.tau:
            if a in tau:
                raise ValueError(f"alpha_{a} appears in two components")
            tau[a] = b
    return BDTriple(n, tau)


# tau-index --------------------------------------------------------------------
def _to_simple_coords(x) -> list[int]:
    if sum(x) != 0:
        raise ValueError("not in the root lattice")
    out, acc = [], 0
    for v in x[:-1]:
        acc += v
        out.append(acc)
    return out


def _h_coefficients(t: BDTriple, x) -> list[Fraction] | None:
    y = _to_simple_coords(list(x))
    g = sorted(t.gamma1)
    if not g:
        return [] if not any(y) else None
    # column for alpha_k in Gamma_1 is tau(alpha_k) - alpha_k in simple coordinates
    rows = [[(t.tau_map[k] == r) - (k == r) for k in g] for r in range(1, t.n)]
    try:
        return linalg.solve(rows, y, len(g))
    except linalg.Inconsistent:
        return None


def in_H(t: BDTriple, x, min_terms: int = 1) -> bool:
    c = _h_coefficients(t, x)
    if c is None or any(v < 0 or v.denominator != 1 for v in c):
        return False
    return sum(c) >= min_terms


def tau_index(t: BDTriple, x) -> int:
    """Number of summands ``tau(alpha) - alpha`` making up the weight ``x``."""
    c = _h_coefficients(t, x)
    if c is None or any(v < 0 or v.denominator != 1 for v in c):
        raise ValueError("weight is not a sum of tau(alpha) - alpha terms")
    return int(sum(c))


# text forms --------------------------------------------------------------------
def format_triple(t: BDTriple) -> str:
    body = ", ".join(f"a{a}->a{b}" for a, b in t.tau)
    return f"n={t.n}; {body}" if body else f"n={t.n};"


_TEXT_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;?(.*)$")


def parse_triple(text: str, n: int | None = None) -> BDTriple:
    """Parse ``n=5; a1->a3, a2->a4`` or the JSON form ``{"n":.., "tau":{..}}``.

    With ``n`` given, the ``n=..;`` prefix may be omitted.
    """
    s = text.strip()
    if s.startswith("{"):
        obj = json.loads(s)
        return BDTriple(int(obj["n"]), {int(k): int(v) for k, v in obj.get("tau", {}).items()})
    m = _TEXT_RE.match(s)
    if m:
        n_text, body = int(m.group(1)), m.group(2)
        if n is not None and n != n_text:
            raise ValueError(f"triple text says n={n_text} but n={n} was requested")
        n = n_text
    else:
        body = s
    if n is None:
        raise ValueError("triple text lacks 'n=<int>;'")
    tau = {}
    for item in filter(None, (p.strip() for p in body.split(","))):
        mm = re.fullmatch(r"a(\d+)\s*->\s*a(\d+)", item)
        if not mm:
            raise ValueError(f"cannot parse '{item}' (expected a<i>->a<j>)")
        a, b = int(mm.group(1)), int(mm.group(2))
        if a in tau:
            raise ValueError(f"a{a} assigned twice")
        tau[a] = b
    return BDTriple(n, tau)


def triple_to_json(t: BDTriple) -> dict:
    return {"n": t.n, "gamma1": sorted(t.gamma1), "tau": {str(a): b for a, b in t.tau}}
