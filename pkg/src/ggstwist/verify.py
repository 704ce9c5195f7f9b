"""Exact verification checks for a triple and its R-matrices.

Every check returns a :class:`CheckResult`.  A failure always carries a
witness: the first differing multi-index (canonical order) with its residual,
or the first offending pair for combinatorial checks.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

from . import bijections
from .ggs import (
    epsilon_combinatorial,
    epsilon_matrix,
    original_ggs_form,
    tilde_a,
    transpose_invert,
)
from .qlaurent import ONE, QINV, QMINUS, Q, QScalar, hbar_expand, q_power
from .r0 import R0Matrix, canonical_r0, gcg_r0
from .roots import Rel, inner_product, relation
from .tensor import (
    TensorOp,
    TensorOp2,
    build_standard,
    classical_r,
    conjugate_qr0,
    cybe,
    embed3,
    entry_weight,
    flip21,
    identity,
    pair_of_entry,
    plus_key,
    restrict_rel,
    wedge_c,
)
from .triples import (
    BDTriple,
    classify,
    decompose,
    gcg_parameter,
    in_H,
    res,
    triple_to_json,
)
from .twist import (
    build_twist,
    k_combinatorial,
    k_expansion,
    k_from_skew,
    k_values,
)

__all__ = [
    "CheckResult",
    "TripleContext",
    "CHECKS",
    "CHECK_GROUPS",
    "DEFAULT_CHECKS",
    "expand_checks",
    "check_qybe",
    "check_hecke",
    "check_equal",
    "check_classical_limit",
    "check_cybe",
    "check_special_forms",
    "check_cancellation_bijections",
    "check_restriction",
    "check_union_additivity",
    "run_checks",
    "FAULTS",
]

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: dict | None = None
    detail: str = ""
    parts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        if self.parts:
            out["parts"] = self.parts
        return out


def _key_json(key) -> dict:
    row, col = key
    return {"row": list(row), "col": list(col)}


def _diff_result(name: str, lhs: TensorOp, rhs: TensorOp, detail: str = "") -> CheckResult:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckResult(name, PASS, detail=detail)
    key, resid = diff
    return CheckResult(name, FAIL, {"index": _key_json(key), "residual": str(resid),
                                    "residual_quads": resid.to_quads()}, detail)


def _zero_result(name: str, x: TensorOp, detail: str = "") -> CheckResult:
    return _diff_result(name, x, type(x)(x.n), detail)


def _pair_text(p) -> str:
    return f"({p[0].text()}, {p[1].text()})"


def _dict_result(name: str, got: dict, want: dict, detail: str = "") -> CheckResult:
    for p in sorted(set(got) | set(want)):
        g, w = got.get(p), want.get(p)
        if g != w:
            return CheckResult(name, FAIL, {"pair": _pair_text(p), "got": str(g), "expected": str(w)}, detail)
    return CheckResult(name, PASS, detail=detail)


# operator-level checks -------------------------------------------------------
def check_qybe(R: TensorOp2, name: str = "qybe") -> CheckResult:
    """``R12 R13 R23 = R23 R13 R12``."""
    r12, r13, r23 = embed3(R, "12"), embed3(R, "13"), embed3(R, "23")
    return _diff_result(name, r12 * r13 * r23, r23 * r13 * r12)


def check_hecke(R: TensorOp2, name: str = "hecke") -> CheckResult:
    """``(PR - q)(PR + q^-1) = 0``."""
    n = R.n
    one = identity(n)
    pr = build_standard(n, "P") * R
    return _zero_result(name, (pr - one.scale(Q)) * (pr + one.scale(QINV)))


def check_equal(a: TensorOp, b: TensorOp, name: str = "equal") -> CheckResult:
    return _diff_result(name, a, b)


def check_classical_limit(R: TensorOp2, r: TensorOp2, name: str = "classical-limit") -> CheckResult:
    """Every entry of ``R`` at ``q = e^hbar`` is ``1 + 2 hbar r + 2 hbar^2 r^2`` mod ``hbar^3``."""
    n = R.n
    one = identity(n)
    r2 = r * r
    keys = sorted(set(R.entries) | set(one.entries) | set(r.entries) | set(r2.entries))
    for key in keys:
        got = hbar_expand(R.entries.get(key, QScalar())).as_tuple()
        want = (
            one.entries.get(key, QScalar()).constant_value(),
            2 * r.entries.get(key, QScalar()).constant_value(),
            2 * r2.entries.get(key, QScalar()).constant_value(),
        )
        if got != want:
            return CheckResult(name, FAIL, {"index": _key_json(key), "got": [str(x) for x in got],
                                            "expected": [str(x) for x in want]})
    return CheckResult(name, PASS)


def check_cybe(r: TensorOp2, name: str = "cybe") -> CheckResult:
    """CYBE for ``r`` together with ``r + r_21 = P``."""
    res_ = _zero_result(name, cybe(r))
    if res_.failed:
        res_.detail = "CYBE bracket is nonzero"
        return res_
    return _diff_result(name, r + flip21(r), build_standard(r.n, "P"), "r + r_21 = P")


# per-triple context ------------------------------------------------------------
class TripleContext:
    """Lazily built operators for one triple; attributes can be overridden.

    Overriding (for instance ``ctx.R_J = corrupted``) is how corrupted
    fixtures are fed to the checks.
    """

    def __init__(self, t: BDTriple, r0: R0Matrix | None = None):
        self.t = t
        self.r0 = canonical_r0(t) if r0 is None else r0

    @cached_property
    def eps(self) -> TensorOp2:
        return epsilon_matrix(self.t)

    @cached_property
    def K(self) -> dict:
        return k_values(self.t)

    @cached_property
    def twist(self):
        return build_twist(self.t, self.K)

    @property
    def J(self) -> TensorOp2:
        return self.twist[0]

    @property
    def J_inv(self) -> TensorOp2:
        return self.twist[1]

    @cached_property
    def Rbar_ggs(self) -> TensorOp2:
        return build_standard(self.t.n, "R_s") + tilde_a(self.t, self.eps).scale(QMINUS)

    @cached_property
    def Rbar_J(self) -> TensorOp2:
        return self.J_inv * build_standard(self.t.n, "R_s") * flip21(self.J)

    @cached_property
    def R_ggs(self) -> TensorOp2:
        return conjugate_qr0(self.Rbar_ggs, self.r0)

    @cached_property
    def R_J(self) -> TensorOp2:
        return conjugate_qr0(self.Rbar_J, self.r0)

    @cached_property
    def r(self) -> TensorOp2:
        return classical_r(self.t, self.r0)

    @cached_property
    def Rs_conj(self) -> TensorOp2:
        return conjugate_qr0(build_standard(self.t.n, "R_s"), self.r0)


# special closed forms ----------------------------------------------------------
def _gcgr_matrix(ctx: TripleContext, m: int) -> TensorOp2:
    t = ctx.t
    out = ctx.Rs_conj
    for (a, b), O in t.pairs.items():
        out = out + wedge_c(t.n, a, b, Fraction(2 * O, t.n)).scale(QMINUS)
    return out


def _gcg_exponent_identities(ctx: TripleContext, m: int) -> CheckResult:
    """Exponent bookkeeping behind the closed form for generalized CG triples."""
    t, n = ctx.t, ctx.t.n
    name = "gcg-exponents"
    if ctx.r0 != gcg_r0(n, m):
        return CheckResult(name, FAIL, {"detail": "canonical r0 differs from the closed form",
                                        "r0": ctx.r0.to_json()})
    minv = pow(m, -1, n)

    def R(x):
        return res(x * minv, n)

    c = ctx.r0.c
    for (a, b), O in t.pairs.items():
        j, i, k = a.i, a.j, b.i
        e = ctx.eps.get(*plus_key(a, b)).constant_value()
        rr = c[j - 1][i + k - j - 1] + c[i - 1][k - 1]
        wit = {"pair": _pair_text((a, b))}
        if t.sign(a, b) * e + rr != Fraction(-2 * O, n):
            return CheckResult(name, FAIL, {**wit, "claim": "sign*eps + r = -2O/n",
                                            "got": str(t.sign(a, b) * e + rr)})
        if R(k - j) != O:
            return CheckResult(name, FAIL, {**wit, "claim": "Res((k-j)/m) = O"})
        A, B, C = i + k - 2 * j, k - i, k - j
        if A and B:
            M = (R(C) > R(A)) - (R(C) < R(B))
            lt, gt = t.chain_touches(a, b)
            if e + 1 + M != 0:
                return CheckResult(name, FAIL, {**wit, "claim": "1 + M + eps = 0"})
            if (R(C) > R(A)) != gt or (R(C) > R(B)) != lt:
                return CheckResult(name, FAIL, {**wit, "claim": "residue brackets match chain clauses"})
    return CheckResult(name, PASS)


def _disjoint_k_table(a, b, rev: bool) -> Fraction:
    rel = relation(a, b)
    L = {Rel.LESSDOT: Fraction(1, 2), Rel.GTRDOT: Fraction(-1, 2)}.get(rel, Fraction(0))
    return L + (1 - a.length if rev else 0)


def _disjoint_eps_table(a, b, rev: bool) -> Fraction:
    adjacent = relation(a, b) in (Rel.LESSDOT, Rel.GTRDOT)
    if not rev:
        return Fraction(-1, 2) if adjacent else Fraction(0)
    s = -1 if (1 - a.length) % 2 else 1
    return s * (Fraction(1, 2) - a.length if adjacent else Fraction(1 - a.length))


def _disjoint_inverse_twist(t: BDTriple, K: dict) -> TensorOp2:
    ent = {}
    for (a, b) in t.pairs:
        if t.reverses(a, b):
            L = {Rel.LESSDOT: Fraction(1, 2), Rel.GTRDOT: Fraction(-1, 2)}.get(relation(a, b), Fraction(0))
            ent[plus_key(a, b)] = q_power(a.length - 1 + L) * QMINUS * (-t.sign(a, b))
        else:
            ent[plus_key(a, b)] = q_power(K[(a, b)]) * QMINUS * (-1)
    return TensorOp2(t.n, ent)


def _rjdf(t: BDTriple) -> TensorOp2:
    out = build_standard(t.n, "R_s")
    for (a, b) in t.pairs:
        half = Fraction(-inner_product(a, b), 2)
        if t.reverses(a, b):
            s = -1 if (a.length - 1) % 2 else 1
            out = out + wedge_c(t.n, a, b, half + a.length - 1).scale(QMINUS * s)
        else:
            out = out + wedge_c(t.n, a, b, half).scale(QMINUS)
    return out


def special_form_parts(ctx: TripleContext) -> list[CheckResult]:
    t = ctx.t
    parts: list[CheckResult] = []
    flags = classify(t)
    if t.is_empty():
        return parts
    m = gcg_parameter(t)
    if m is not None:
        parts.append(_diff_result("gcg-closed-form", ctx.R_ggs, _gcgr_matrix(ctx, m)))
        parts.append(_gcg_exponent_identities(ctx, m))
    if m == 1:
        cg_k = {}
        for (a, b) in t.pairs:
            rel = relation(a, b)
            cg_k[(a, b)] = Fraction(1, 2) * (rel is Rel.LESSDOT) + (rel is Rel.LL)
        parts.append(_dict_result("cg-k", ctx.K, cg_k))
        eps_vals = {p: ctx.eps.get(*plus_key(*p)).constant_value() for p in t.pairs}
        parts.append(_dict_result("cg-eps", eps_vals, {p: -v for p, v in cg_k.items()}))
        jinv = identity(t.n)
        for p, k in cg_k.items():
            jinv = jinv + TensorOp2(t.n, {plus_key(*p): q_power(k) * (QINV - Q)})
        parts.append(_diff_result("cg-jinv", ctx.J_inv, jinv))
    if "disjoint" in flags:
        want_k = {p: _disjoint_k_table(*p, t.reverses(*p)) for p in t.pairs}
        parts.append(_dict_result("disjoint-k-table", ctx.K, want_k))
        eps_vals = {p: ctx.eps.get(*plus_key(*p)).constant_value() for p in t.pairs}
        want_e = {p: _disjoint_eps_table(*p, t.reverses(*p)) for p in t.pairs}
        parts.append(_dict_result("disjoint-eps-table", eps_vals, want_e))
        B = ctx.J_inv - identity(t.n)
        parts.append(_diff_result("disjoint-b", B, _disjoint_inverse_twist(t, ctx.K)))
        A21 = flip21(ctx.J - identity(t.n))
        jdds = (build_standard(t.n, "R_s") + B + A21
                + restrict_rel(B, [Rel.GTRDOT]).scale(Q - ONE)
                + restrict_rel(A21, [Rel.LESSDOT]).scale(QINV - ONE))
        parts.append(_diff_result("disjoint-layered", ctx.Rbar_J, jdds))
        parts.append(_diff_result("disjoint-closed-form", ctx.Rbar_J, _rjdf(t)))
    return parts


def check_special_forms(ctx: TripleContext) -> CheckResult:
    parts = special_form_parts(ctx)
    if not parts:
        return CheckResult("special-forms", SKIP, detail="no closed form applies")
    summary = {p.name: p.to_json() for p in parts}
    bad = next((p for p in parts if p.failed), None)
    if bad is not None:
        return CheckResult("special-forms", FAIL, {"form": bad.name, **(bad.witness or {})}, parts=summary)
    return CheckResult("special-forms", PASS, parts=summary)


# cancellation ------------------------------------------------------------------
def check_cancellation_bijections(t: BDTriple, maps: dict | None = None) -> CheckResult:
    """The four cancellation maps are bijections with cancelling coefficients.

    ``maps`` may replace any of ``f``, ``g``, ``f'``, ``g'`` (used by tests).
    """
    saved = {}
    if maps:
        names = {"f": "map_f", "g": "map_g", "f'": "map_f1", "g'": "map_g1"}
        for k, fn in maps.items():
            attr = names[k]
            saved[attr] = getattr(bijections, attr)
            setattr(bijections, attr, fn)
    try:
        rep = bijections.check_bijections(t)
    finally:
        for attr, fn in saved.items():
            setattr(bijections, attr, fn)
    sizes = rep.sizes
    if rep.ok:
        return CheckResult("cancellation", PASS, detail=f"sizes {sizes}")
    mapname, kind, elem = rep.failures[0]
    return CheckResult("cancellation", FAIL, {"map": mapname, "kind": kind, "element": _elem_text(elem)},
                       detail=f"{len(rep.failures)} failure(s)")


def _elem_text(x) -> str:
    from .roots import Root
    if isinstance(x, Root):
        return x.text()
    if isinstance(x, tuple):
        return "(" + ", ".join(_elem_text(y) for y in x) + ")"
    return str(x)


# restriction and union ---------------------------------------------------------
def _g_prime_keys(small: BDTriple, keys):
    out = []
    for key in keys:
        p = pair_of_entry(*key)
        if p is None:
            continue
        w = entry_weight(small.n, *key)
        # e_b (x) e_-a has weight b - a; e_-a (x) e_b the same weight
        if in_H(small, w):
            out.append(key)
    return out


def check_restriction(small: BDTriple, big: BDTriple, r0_big: R0Matrix | None = None,
                      big_ctx: TripleContext | None = None) -> CheckResult:
    """K, eps, R_J and R_GGS of a sub-triple agree with the big triple on G'."""
    name = "restriction"
    big_ctx = big_ctx or TripleContext(big, r0_big)
    small_ctx = TripleContext(small, big_ctx.r0)
    if small.is_empty():
        return CheckResult(name, PASS, detail="empty sub-triple")
    for p in small.pairs:
        if big_ctx.K.get(p) != small_ctx.K.get(p):
            return CheckResult(name, FAIL, {"clause": "K", "pair": _pair_text(p),
                                            "big": str(big_ctx.K.get(p)), "small": str(small_ctx.K.get(p))})
    for label, attr in (("eps", "eps"), ("R_J", "R_J"), ("R_GGS", "R_ggs")):
        x, y = getattr(big_ctx, attr), getattr(small_ctx, attr)
        keys = _g_prime_keys(small, sorted(set(x.entries) | set(y.entries)))
        for key in keys:
            a, b = x.entries.get(key, QScalar()), y.entries.get(key, QScalar())
            if a != b:
                return CheckResult(name, FAIL, {"clause": label, "index": _key_json(key),
                                                "residual": str(a - b)})
    return CheckResult(name, PASS)


def sub_triples(t: BDTriple):
    g = sorted(t.gamma1)
    for k in range(len(g) + 1):
        for keep in itertools.combinations(g, k):
            yield t.restrict(keep)


def check_restriction_all(ctx: TripleContext) -> CheckResult:
    for small in sub_triples(ctx.t):
        r = check_restriction(small, ctx.t, big_ctx=ctx)
        if r.failed:
            r.witness = {"sub_triple": str(small), **r.witness}
            return r
    return CheckResult("restriction", PASS)


def check_union_additivity(ctx: TripleContext, components: list[BDTriple] | None = None,
                           component_ctx: Callable | None = None) -> CheckResult:
    """``S = R - q^{r0} R_s q^{r0}`` of the union is the sum over components."""
    name = "union"
    comps = decompose(ctx.t) if components is None else components
    if len(comps) < 2:
        return CheckResult(name, SKIP, detail="single component")
    make = component_ctx or (lambda c: TripleContext(c, ctx.r0))
    cctx = [make(c) for c in comps]
    for label, attr in (("GGS", "R_ggs"), ("J", "R_J")):
        total = TensorOp2(ctx.t.n)
        for c in cctx:
            total = total + (getattr(c, attr) - c.Rs_conj)
        r = _diff_result(name, getattr(ctx, attr) - ctx.Rs_conj, total)
        if r.failed:
            r.witness = {"matrix": label, **r.witness}
            return r
    return CheckResult(name, PASS, detail=f"{len(comps)} components")


# oracle equivalences -------------------------------------------------------------
def check_epsilon(ctx: TripleContext, refined: bool = False) -> CheckResult:
    """The eps in use (by default the defining product) against the per-pair closed form."""
    name = "epsilon-eq.refined" if refined else "epsilon-eq"
    for key, v in ctx.eps.sorted_items():
        p = pair_of_entry(*key)
        if p is None or ctx.t.prec(p[0], p[1]) is None:
            return CheckResult(name, FAIL, {"index": _key_json(key), "residual": str(v),
                                            "detail": "eps has an entry outside X"})
    return _diff_result(name, ctx.eps, epsilon_combinatorial(ctx.t, refined))


def check_k(ctx: TripleContext, refined: bool = False) -> CheckResult:
    """The K in use (by default the quadratic expansion) against the per-pair closed form."""
    name = "k-eq.refined" if refined else "k-eq"
    _, off = k_expansion(ctx.t)
    if off:
        p = min(off)
        return CheckResult(name, FAIL, {"pair": _pair_text(p), "got": str(off[p]), "expected": "0",
                                        "detail": "expansion nonzero outside X"})
    comb = {p: k_combinatorial(ctx.t, *p, refined=refined) for p in ctx.t.pairs}
    return _dict_result(name, ctx.K, comb)


def check_k_skew(ctx: TripleContext) -> CheckResult:
    return _dict_result("k-skew", k_from_skew(ctx.t), ctx.K)


def check_original_form(ctx: TripleContext) -> CheckResult:
    R = original_ggs_form(ctx.t, ctx.r0)
    lhs = ctx.R_ggs - transpose_invert(R)
    return _diff_result("original-form", lhs, build_standard(ctx.t.n, "P").scale(QMINUS))


def _shift_power(t: BDTriple) -> int | None:
    """``k`` if ``tau(alpha_i) = alpha_{i+k}`` on a maximal domain."""
    if t.is_empty():
        return None
    ks = {b - a for a, b in t.tau}
    if len(ks) != 1:
        return None
    k = ks.pop()
    want = {i: i + k for i in range(1, t.n) if 1 <= i + k <= t.n - 1}
    return k if t.tau_map == want else None


def check_shifted_cg(ctx: TripleContext) -> CheckResult:
    if _shift_power(ctx.t) is None:
        return CheckResult("shifted-cg", SKIP, detail="not a shifted Cremmer-Gervais triple")
    return _diff_result("shifted-cg", ctx.R_J, ctx.R_ggs, f"tau shift {_shift_power(ctx.t)}")


# registry --------------------------------------------------------------------------
CHECKS: dict[str, Callable[[TripleContext], CheckResult]] = {
    "qybe.ggs": lambda c: check_qybe(c.R_ggs, "qybe.ggs"),
    "qybe.rj": lambda c: check_qybe(c.R_J, "qybe.rj"),
    "hecke.ggs": lambda c: check_hecke(c.R_ggs, "hecke.ggs"),
    "hecke.rj": lambda c: check_hecke(c.R_J, "hecke.rj"),
    "twist-eq": lambda c: check_equal(c.R_J, c.R_ggs, "twist-eq"),
    "classical-limit.ggs": lambda c: check_classical_limit(c.R_ggs, c.r, "classical-limit.ggs"),
    "classical-limit.rj": lambda c: check_classical_limit(c.R_J, c.r, "classical-limit.rj"),
    "cybe": lambda c: check_cybe(c.r),
    "epsilon-eq": lambda c: check_epsilon(c),
    "epsilon-eq.refined": lambda c: check_epsilon(c, refined=True),
    "k-eq": lambda c: check_k(c),
    "k-eq.refined": lambda c: check_k(c, refined=True),
    "k-skew": check_k_skew,
    "original-form": check_original_form,
    "special-forms": check_special_forms,
    "cancellation": lambda c: check_cancellation_bijections(c.t),
    "restriction": check_restriction_all,
    "union": check_union_additivity,
    "shifted-cg": check_shifted_cg,
}

CHECK_GROUPS = {
    "qybe": ["qybe.ggs", "qybe.rj"],
    "hecke": ["hecke.ggs", "hecke.rj"],
    "classical-limit": ["classical-limit.ggs", "classical-limit.rj"],
    "core": ["qybe.ggs", "qybe.rj", "hecke.ggs", "hecke.rj", "twist-eq"],
    "all": list(CHECKS),
}

DEFAULT_CHECKS = CHECK_GROUPS["core"]


def expand_checks(selection: str | list[str] | None) -> list[str]:
    """Expand a comma list of check and group names, keeping registry order."""
    if selection is None:
        names = DEFAULT_CHECKS
    else:
        items = selection.split(",") if isinstance(selection, str) else list(selection)
        names = []
        for raw in items:
            item = raw.strip()
            if not item:
                continue
            if item in CHECK_GROUPS:
                names.extend(CHECK_GROUPS[item])
            elif item in CHECKS:
                names.append(item)
            else:
                raise KeyError(item)
    wanted = set(names)
    return [n for n in CHECKS if n in wanted]


# fault injection for the falsifiability controls -----------------------------------
def _bump(x: TensorOp2) -> TensorOp2:
    """Multiply the last off-diagonal entry (canonical order) by ``q``."""
    key = max(k for k in x.entries if k[0] != k[1])
    ent = dict(x.entries)
    ent[key] = ent[key] * Q
    return TensorOp2(x.n, ent)


def _fault_R(ctx: TripleContext):
    ctx.R_ggs = _bump(ctx.R_ggs)
    ctx.R_J = _bump(ctx.R_J)


def _fault_RJ(ctx: TripleContext):
    ctx.R_J = _bump(ctx.R_J)


def _fault_r(ctx: TripleContext):
    r = ctx.r
    key = max(k for k in r.entries if k[0] != k[1])
    ent = dict(r.entries)
    ent[key] = ent[key] + 1
    ctx.r = TensorOp2(r.n, ent)


def _fault_K(ctx: TripleContext):
    K = dict(ctx.K)
    if K:
        p = max(K)
        K[p] += Fraction(1, 2)
    ctx.K = K


def _fault_eps(ctx: TripleContext):
    eps = ctx.eps
    ent = dict(eps.entries)
    if ent:
        key = max(ent)
        ent[key] = ent[key] + 1
    ctx.eps = TensorOp2(eps.n, ent)


FAULTS: dict[str, Callable[[TripleContext], None]] = {
    "R": _fault_R,
    "R_J": _fault_RJ,
    "r": _fault_r,
    "K": _fault_K,
    "eps": _fault_eps,
}


def run_checks(t: BDTriple, names: list[str], r0: R0Matrix | None = None,
               fault: str | None = None, timings: bool = False) -> dict:
    """Run the named checks on ``t`` and return a report record."""
    ctx = TripleContext(t, r0)
    if fault:
        FAULTS[fault](ctx)
    checks = {}
    times = {}
    for name in names:
        t0 = time.perf_counter()
        try:
            res_ = CHECKS[name](ctx)
        except Exception as exc:  # a crash inside a check is a failure with a witness
            res_ = CheckResult(name, FAIL, {"exception": f"{type(exc).__name__}: {exc}"})
        times[name] = round(time.perf_counter() - t0, 6)
        checks[name] = res_.to_json()
    return {
        "triple": str(t),
        "n": t.n,
        "tau": triple_to_json(t)["tau"],
        "classification": sorted(classify(t)),
        "r0": ctx.r0.to_json(),
        "checks": checks,
        "timing": times if timings else None,
    }
