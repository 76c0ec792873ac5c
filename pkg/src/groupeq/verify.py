"""End-to-end reproductions of the two counterexample constructions.

Each builder recomputes a bundle of facts from scratch and returns a report
whose ``ok`` aggregates them; nothing here trusts cached values.  The facts
for the order-42 group: closure size, metabelianity, a^6 = 1, c in the
derived subgroup, the obstruction c·c^a·c^{-a^3}·c^{-a^4} being nontrivial,
and the exhaustive emptiness of the solution set of x·x^{-a}·x^{a^2} = c.
For the torsion-free central product: the same obstruction computed in the
group ring, the gluing a^6 = f = [d,e], centrality of f, sampled absence of
torsion, and the free-abelian ranks (6, 1, 2) of the subnormal series read
off normal-form coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groups import (
    CentralProductElem,
    FiniteGroupTable,
    HeisenbergElem,
    IdentityScanReport,
    ScaledTriangularElem,
    brute_force_solve,
    central_product_elems,
    comm,
    derived_subgroup,
    evaluate_word,
    gpow,
    group_closure,
    is_metabelian,
    metabelian_identity_scan,
    order42_elems,
)
from .rings import CyclicPoly
from .words import EquationSystem, SymbolTable, flatten, parse_word

OBSTRUCTION_TEXT = "c * c^(a) * c^-(a^3) * c^-(a^4)"
EQUATION_TEXT = "x * x^-(a) * x^(a^2) * c^-1"


def obstruction_word(table: SymbolTable):
    return flatten(parse_word(OBSTRUCTION_TEXT, table))


def counterexample_system() -> EquationSystem:
    """The one-unknown unimodular system x·x^{-a}·x^{a^2}·c^{-1} = 1."""
    table = SymbolTable.make(["x"], ["a", "c"])
    return EquationSystem.from_texts([EQUATION_TEXT], table)


@dataclass(frozen=True)
class Order42Report:
    order: int
    metabelian: bool
    a6_is_identity: bool
    derived_order: int
    c_in_derived: bool
    obstruction: str
    obstruction_nontrivial: bool
    candidates: int
    solutions: int

    @property
    def ok(self) -> bool:
        return (
            self.order == 42
            and self.metabelian
            and self.a6_is_identity
            and self.c_in_derived
            and self.obstruction_nontrivial
            and self.solutions == 0
        )


def verify_order42(cap: int = 10**6) -> Order42Report:
    elems = order42_elems()
    a, c = elems["a"], elems["c"]
    group = group_closure([a, c], cap=cap)
    ident = group.identity()
    derived = derived_subgroup(group)
    table = SymbolTable.make([], ["a", "c"])
    obstruction = evaluate_word(obstruction_word(table), {"a": a, "c": c}, group)
    system = counterexample_system()
    solutions = brute_force_solve(system, group, {"a": a, "c": c})
    return Order42Report(
        order=len(group),
        metabelian=is_metabelian(group),
        a6_is_identity=gpow(a, 6) == ident,
        derived_order=len(derived),
        c_in_derived=c in derived,
        obstruction=obstruction.canonical(),
        obstruction_nontrivial=obstruction != ident,
        candidates=len(group),
        solutions=len(solutions),
    )


@dataclass(frozen=True)
class TorsionFreeReport:
    obstruction_u_part: str
    obstruction_nontrivial: bool
    a6_equals_f: bool
    de_commutator_is_f: bool
    f_is_central: bool
    c_is_commutator: bool
    torsion_samples: int
    torsion_failures: int
    g1_torsion_failures: int
    series_ranks: tuple[int, int, int]
    series_ranks_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.obstruction_nontrivial
            and self.a6_equals_f
            and self.de_commutator_is_f
            and self.f_is_central
            and self.c_is_commutator
            and self.torsion_failures == 0
            and self.g1_torsion_failures == 0
            and self.series_ranks == (6, 1, 2)
            and self.series_ranks_ok
        )


def _random_scaled(rng: random.Random) -> ScaledTriangularElem:
    u = CyclicPoly(6, tuple(rng.randint(-2, 2) for _ in range(6)))
    return ScaledTriangularElem(rng.randint(-3, 3), u)


def _random_central(rng: random.Random) -> CentralProductElem:
    return CentralProductElem(
        _random_scaled(rng), HeisenbergElem(rng.randint(-3, 3), rng.randint(-3, 3), 0)
    )


def _torsion_failures(rng, sampler, identity, samples: int, max_power: int) -> int:
    failures = 0
    drawn = 0
    while drawn < samples:
        g = sampler(rng)
        if g == identity:
            continue
        drawn += 1
        power = g
        for _ in range(2, max_power + 1):
            power = power * g
            if power == identity:
                failures += 1
                break
    return failures


def _series_ranks_ok(rng: random.Random, trials: int = 200) -> bool:
    # rank 6: the unipotent bottom is Z^6 on the coefficients of u
    for _ in range(trials):
        u1 = CyclicPoly(6, tuple(rng.randint(-9, 9) for _ in range(6)))
        u2 = CyclicPoly(6, tuple(rng.randint(-9, 9) for _ in range(6)))
        prod = ScaledTriangularElem(0, u1) * ScaledTriangularElem(0, u2)
        if prod.k != 0 or prod.u != u1 + u2:
            return False
    # rank 1: k is additive on the scaled-triangular layer, kernel = bottom
    for _ in range(trials):
        g1, g2 = _random_scaled(rng), _random_scaled(rng)
        if (g1 * g2).k != g1.k + g2.k:
            return False
    # rank 2: (p, q) is additive on the central product, kernel = that layer
    for _ in range(trials):
        g1, g2 = _random_central(rng), _random_central(rng)
        prod = g1 * g2
        if prod.h.p != g1.h.p + g2.h.p or prod.h.q != g1.h.q + g2.h.q:
            return False
    return True


def verify_torsion_free(seed: int = 0, samples: int = 1000, max_power: int = 12) -> TorsionFreeReport:
    elems = central_product_elems()
    a, b, c, d, e, f = (elems[k] for k in "abcdef")
    ident = CentralProductElem.identity()
    table = SymbolTable.make([], ["a", "c"])
    obstruction = evaluate_word(obstruction_word(table), {"a": a, "c": c}, ident)

    rng = random.Random(seed)
    cp_failures = _torsion_failures(
        rng, _random_central, ident, samples=samples, max_power=max_power
    )
    g1_failures = _torsion_failures(
        rng,
        _random_scaled,
        ScaledTriangularElem.identity(6),
        samples=samples,
        max_power=max_power,
    )

    a6 = gpow(a, 6)
    return TorsionFreeReport(
        obstruction_u_part=str(obstruction.g.u),
        obstruction_nontrivial=obstruction != ident,
        a6_equals_f=a6 == f,
        de_commutator_is_f=comm(d, e) == f,
        f_is_central=all(f * g == g * f for g in (a, b, c, d, e)),
        c_is_commutator=c == comm(b, a),
        torsion_samples=samples,
        torsion_failures=cp_failures,
        g1_torsion_failures=g1_failures,
        series_ranks=(6, 1, 2),
        series_ranks_ok=_series_ranks_ok(rng),
    )


def identity_scan(group: FiniteGroupTable) -> IdentityScanReport:
    return metabelian_identity_scan(group)
