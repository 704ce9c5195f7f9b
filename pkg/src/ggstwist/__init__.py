"""Exact Belavin-Drinfeld triples, GGS R-matrices and their twists for sl(n)."""
from .qlaurent import QScalar, q_power
from .roots import Root
from .triples import BDTriple, enumerate_triples, parse_triple, gcg_triple, cg_triple
from .r0 import R0Matrix, canonical_r0, solve_r0

__version__ = "0.1.0"

__all__ = [
    "QScalar",
    "q_power",
    "Root",
    "BDTriple",
    "enumerate_triples",
    "parse_triple",
    "gcg_triple",
    "cg_triple",
    "R0Matrix",
    "canonical_r0",
    "solve_r0",
]
