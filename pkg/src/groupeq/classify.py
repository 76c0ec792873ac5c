"""Singular / nonsingular / unimodular verdicts for equation systems.

A system is nonsingular when the exponent-sum rows of its unknowns are
linearly independent over Q, and unimodular when they stay independent over
F_p for every prime p.  Both conditions read off the Smith normal form of
the exponent matrix: full row rank for the first, and additionally a last
invariant factor of 1 for the second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import _prime_factors, rank_over_rationals, smith_normal_form
from .words import EquationSystem, exponent_matrix

SINGULAR = "Singular"
NONSINGULAR = "Nonsingular"
UNIMODULAR = "Unimodular"


@dataclass(frozen=True)
class Verdict:
    """kind is Unimodular, Nonsingular (with its nonempty bad-prime set), or
    Singular (no bad-prime profile exists)."""

    kind: str
    rank: int
    invariant_factors: tuple[int, ...]
    bad_primes: frozenset[int] | None

    def __post_init__(self):
        if self.kind == UNIMODULAR and self.bad_primes:
            raise ValueError("a unimodular verdict cannot carry bad primes")
        if self.kind == NONSINGULAR and not self.bad_primes:
            raise ValueError("a nonsingular (non-unimodular) verdict needs bad primes")
        if self.kind == SINGULAR and self.bad_primes is not None:
            raise ValueError("a singular verdict has no bad-prime profile")


def classify(system: EquationSystem) -> Verdict:
    """Apply the rank/invariant-factor dichotomy to a finite system."""
    m = exponent_matrix(system)
    sf = smith_normal_form(m)
    rank = rank_over_rationals(m)
    assert rank == len(sf.factors)  # two routes to the rank must agree
    k = m.rows
    if rank < k:
        return Verdict(SINGULAR, rank, sf.factors, None)
    primes = _prime_factors(sf.factors[-1]) if k else frozenset()
    if primes:
        return Verdict(NONSINGULAR, rank, sf.factors, primes)
    return Verdict(UNIMODULAR, rank, sf.factors, frozenset())
