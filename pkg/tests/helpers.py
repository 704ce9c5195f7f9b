"""Shared fixtures: small triple families and hypothesis strategies."""
from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from ggstwist.triples import BDTriple, enumerate_triples


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[BDTriple, ...]:
    return tuple(enumerate_triples(n))


def all_triples(n_max: int, n_min: int = 2):
    for n in range(n_min, n_max + 1):
        yield from triples(n)


def ogd_family(n: int) -> BDTriple:
    """``tau(alpha_i) = alpha_{i+3}`` for ``i`` not divisible by 3 and ``i < n - 3``."""
    return BDTriple(n, {i: i + 3 for i in range(1, n - 3) if i % 3})


def triple_strategy(n_min: int = 2, n_max: int = 5):
    return st.integers(n_min, n_max).flatmap(lambda n: st.sampled_from(triples(n)))


# (triple, fault) pairs: the clean triple passes the check, the faulted one fails it
CONTROLS = {
    "qybe.ggs": ("n=3; a1->a2", "R"),
    "qybe.rj": ("n=3; a1->a2", "R"),
    "hecke.ggs": ("n=3; a1->a2", "R"),
    "hecke.rj": ("n=3; a1->a2", "R"),
    "twist-eq": ("n=3; a1->a2", "R_J"),
    "classical-limit.ggs": ("n=3; a1->a2", "R"),
    "classical-limit.rj": ("n=3; a1->a2", "R"),
    "cybe": ("n=3; a1->a2", "r"),
    "epsilon-eq": ("n=3; a1->a2", "eps"),
    "epsilon-eq.refined": ("n=3; a1->a2", "eps"),
    "k-eq": ("n=3; a1->a2", "K"),
    "k-eq.refined": ("n=3; a1->a2", "K"),
    "k-skew": ("n=3; a1->a2", "K"),
    "original-form": ("n=3; a1->a2", "R"),
    "special-forms": ("n=5; a1->a3, a2->a4, a4->a1", "R"),
    "restriction": ("n=4; a1->a2, a2->a3", "K"),
    "union": ("n=6; a1->a2, a4->a5", "R"),
    "shifted-cg": ("n=4; a1->a3", "R_J"),
}
