"""Concrete groups for the counterexamples, plus finite-group machinery.

Element families:

* TriangularElem        ((1,u),(0,v)) over F_p or Z[y]/(y^m-1), v a unit
* ScaledTriangularElem  2^k·((1,u),(0,y^k)) over Z[y]/(y^6-1), torsion-free
* HeisenbergElem        UT3(Z) coordinates (p,q,r) with [d,e] = f
* CentralProductElem    scaled-triangular and Heisenberg glued along a^6 = f
* PermElem              permutations, for stock finite test groups

All elements are immutable values with exact arithmetic.  FiniteGroupTable
holds a finite closure and powers the brute-force equation search, derived
series, and the exhaustive scan of the metabelian commutator identity
u·u^y·u^{-y^3}·u^{-y^4} = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .rings import CyclicPoly, PrimeFieldElem, RingError
from .words import EquationSystem, FlatWord


class GroupError(ValueError):
    pass


class ClosureCapError(GroupError):
    """Closure grew past the configured element cap."""


class SearchCapError(GroupError):
    """Brute-force search would exceed its configured cap."""


class UnassignedSymbolError(GroupError):
    pass


# --- element families ---------------------------------------------------------

def _is_ring_unit(v) -> bool:
    if isinstance(v, PrimeFieldElem):
        return v.value != 0
    if isinstance(v, CyclicPoly):
        return v.is_unit()
    if isinstance(v, int):
        return abs(v) == 1
    raise TypeError(f"unsupported ring element {type(v).__name__}")


def _ring_inverse(v):
    if isinstance(v, PrimeFieldElem):
        return v.inverse()
    if isinstance(v, CyclicPoly):
        return v.inverse()
    if isinstance(v, int):
        return v  # only ±1 are units
    raise TypeError(f"unsupported ring element {type(v).__name__}")


@dataclass(frozen=True)
class TriangularElem:
    """Invertible matrix ((1,u),(0,v)) over a commutative ring; v must be a unit."""

    u: object
    v: object

    def __post_init__(self):
        if type(self.u) is not type(self.v):
            raise GroupError("u and v must come from the same ring")
        if not _is_ring_unit(self.v):
            raise GroupError(f"v = {self.v} is not a unit")

    def __mul__(self, other: "TriangularElem") -> "TriangularElem":
        return TriangularElem(other.u + self.u * other.v, self.v * other.v)

    def inverse(self) -> "TriangularElem":
        w = _ring_inverse(self.v)
        return TriangularElem(-(self.u * w), w)

    def canonical(self) -> str:
        return f"((1,{self.u}),(0,{self.v}))"

    def __str__(self):
        return self.canonical()


@dataclass(frozen=True)
class ScaledTriangularElem:
    """2^k·((1,u),(0,y^k)) with u in Z[y]/(y^6-1); the scalar makes k exact,
    so the group is torsion-free."""

    k: int
    u: CyclicPoly

    def __mul__(self, other: "ScaledTriangularElem") -> "ScaledTriangularElem":
        yk = CyclicPoly.y_power(self.u.m, other.k)
        return ScaledTriangularElem(self.k + other.k, other.u + self.u * yk)

    def inverse(self) -> "ScaledTriangularElem":
        yk = CyclicPoly.y_power(self.u.m, -self.k)
        return ScaledTriangularElem(-self.k, -(self.u * yk))

    @classmethod
    def identity(cls, m: int = 6) -> "ScaledTriangularElem":
        return cls(0, CyclicPoly.zero(m))

    def canonical(self) -> str:
        yk = CyclicPoly.y_power(self.u.m, self.k)
        return f"2^{self.k}*((1,{self.u}),(0,{yk}))"

    def __str__(self):
        return self.canonical()


@dataclass(frozen=True)
class HeisenbergElem:
    """Integer unitriangular 3x3 matrix: p, q, r are the (1,2), (2,3), (1,3)
    entries; d, e, f are the corresponding elementary matrices, [d,e] = f."""

    p: int
    q: int
    r: int

    def __mul__(self, other: "HeisenbergElem") -> "HeisenbergElem":
        return HeisenbergElem(
            self.p + other.p, self.q + other.q, self.r + other.r + self.p * other.q
        )

    def inverse(self) -> "HeisenbergElem":
        return HeisenbergElem(-self.p, -self.q, self.p * self.q - self.r)

    @classmethod
    def identity(cls) -> "HeisenbergElem":
        return cls(0, 0, 0)

    def canonical(self) -> str:
        return f"((1,{self.p},{self.r}),(0,1,{self.q}),(0,0,1))"

    def __str__(self):
        return self.canonical()


HEIS_D = HeisenbergElem(1, 0, 0)
HEIS_E = HeisenbergElem(0, 1, 0)
HEIS_F = HeisenbergElem(0, 0, 1)


@dataclass(frozen=True)
class CentralProductElem:
    """Element of the central product identifying a^6 with f.

    Normal form keeps the Heisenberg r-coordinate at 0 by trading f^r for
    a^{6r}; this makes representatives unique.
    """

    g: ScaledTriangularElem
    h: HeisenbergElem

    def __post_init__(self):
        if self.g.u.m != 6:
            raise GroupError("the central identification a^6 = f needs modulus 6")
        if self.h.r != 0:
            raise GroupError("not in normal form (use central_product_normalize)")

    def __mul__(self, other: "CentralProductElem") -> "CentralProductElem":
        return central_product_normalize(self.g * other.g, self.h * other.h)

    def inverse(self) -> "CentralProductElem":
        return central_product_normalize(self.g.inverse(), self.h.inverse())

    @classmethod
    def identity(cls) -> "CentralProductElem":
        return cls(ScaledTriangularElem.identity(6), HeisenbergElem.identity())

    @classmethod
    def from_scaled(cls, g: ScaledTriangularElem) -> "CentralProductElem":
        return cls(g, HeisenbergElem.identity())

    @classmethod
    def from_heisenberg(cls, h: HeisenbergElem) -> "CentralProductElem":
        return central_product_normalize(ScaledTriangularElem.identity(6), h)

    def canonical(self) -> str:
        return f"[{self.g.canonical()} | {self.h.canonical()}]"

    def __str__(self):
        return self.canonical()


def central_product_normalize(g: ScaledTriangularElem, h: HeisenbergElem) -> CentralProductElem:
    """Push the f-exponent into the scaled-triangular factor via a^6 = f."""
    return CentralProductElem(
        ScaledTriangularElem(g.k + 6 * h.r, g.u), HeisenbergElem(h.p, h.q, 0)
    )


@dataclass(frozen=True)
class PermElem:
    """Permutation of {0, ..., n-1}; images[i] is where i goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError("not a permutation")

    def __mul__(self, other: "PermElem") -> "PermElem":
        # left-to-right: apply self first, then other
        return PermElem(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "PermElem":
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return PermElem(tuple(out))

    @classmethod
    def identity(cls, n: int) -> "PermElem":
        return cls(tuple(range(n)))

    def canonical(self) -> str:
        return "perm[" + ",".join(map(str, self.images)) + "]"

    def __str__(self):
        return self.canonical()


GroupElem = Union[TriangularElem, ScaledTriangularElem, HeisenbergElem, CentralProductElem, PermElem]


# --- uniform group arithmetic ---------------------------------------------------

def conj(x, y):
    """x^y = y^-1 · x · y."""
    return y.inverse() * x * y


def comm(x, y):
    """[x, y] = x^-1 · y^-1 · x · y."""
    return x.inverse() * y.inverse() * x * y


def gpow(x, n: int):
    """x^n for any integer n (identity derived as x·x^-1 when n = 0)."""
    if n == 0:
        return x * x.inverse()
    if n < 0:
        return gpow(x.inverse(), -n)
    out = x
    for _ in range(n - 1):
        out = out * x
    return out


# --- finite group tables --------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroupTable:
    """Finite group as an indexed element list; products computed on demand."""

    elements: tuple[GroupElem, ...]
    _index: dict = field(repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        idx = {e.canonical(): i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise GroupError("duplicate elements in table")
        object.__setattr__(self, "_index", idx)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, elem) -> bool:
        return elem.canonical() in self._index

    def index_of(self, elem) -> int:
        try:
            return self._index[elem.canonical()]
        except KeyError:
            raise GroupError(f"{elem} is not in this group") from None

    def identity(self) -> GroupElem:
        for e in self.elements:
            if e * e == e:
                return e
        raise GroupError("table has no identity")


def group_closure(generators: Sequence[GroupElem], cap: int = 10**6) -> FiniteGroupTable:
    """Breadth-first closure of the generators under product and inverse.

    Deterministic element order: identity first, then by discovery.  Raises
    ClosureCapError if the subgroup exceeds ``cap`` elements.
    """
    if not generators:
        raise GroupError("need at least one generator")
    gens = list(generators) + [g.inverse() for g in generators]
    ident = generators[0] * generators[0].inverse()
    seen = {ident.canonical(): ident}
    order: list[GroupElem] = [ident]
    frontier = [ident]
    while frontier:
        new: list[GroupElem] = []
        for x in frontier:
            for g in gens:
                y = x * g
                key = y.canonical()
                if key not in seen:
                    if len(seen) >= cap:
                        raise ClosureCapError(f"closure exceeds cap of {cap} elements")
                    seen[key] = y
                    order.append(y)
                    new.append(y)
        frontier = new
    return FiniteGroupTable(tuple(order))


def derived_subgroup(group: FiniteGroupTable, cap: int = 10**6) -> FiniteGroupTable:
    """Subgroup generated by all commutators [x, y]."""
    seen = {}
    gens = []
    for x in group.elements:
        for y in group.elements:
            c = comm(x, y)
            key = c.canonical()
            if key not in seen:
                seen[key] = c
                gens.append(c)
    return group_closure(gens, cap=cap)


def is_metabelian(group: FiniteGroupTable) -> bool:
    """True iff the second derived subgroup is trivial."""
    return len(derived_subgroup(derived_subgroup(group))) == 1


def evaluate_word(word: FlatWord, assignment: Mapping[str, GroupElem], group=None):
    """Left-to-right product of the letter images.

    ``group`` supplies the identity for the empty word: a FiniteGroupTable or
    any group element to use as identity.  If omitted, the identity is derived
    from an assigned element.
    """
    if isinstance(group, FiniteGroupTable):
        ident = group.identity()
    elif group is not None:
        ident = group
    elif assignment:
        some = next(iter(assignment.values()))
        ident = some * some.inverse()
    else:
        raise GroupError("cannot determine the identity for an empty assignment")
    out = ident
    for name, sign in word.letters:
        if name not in assignment:
            raise UnassignedSymbolError(f"unassigned symbol {name!r}")
        img = assignment[name]
        out = out * (img if sign > 0 else img.inverse())
    return out


def brute_force_solve(
    system: EquationSystem,
    group: FiniteGroupTable,
    coeff_assignment: Mapping[str, GroupElem],
    max_unknowns: int = 3,
    cap: int = 10**6,
) -> list[dict[str, GroupElem]]:
    """All assignments of the unknowns into ``group`` solving every equation.

    Exhaustive over |G|^(number of unknowns) candidates, in element-index
    order, so the result list is deterministic.
    """
    unknowns = system.table.unknowns
    if len(unknowns) > max_unknowns:
        raise SearchCapError(f"cap exceeded: {len(unknowns)} unknowns > {max_unknowns}")
    if len(group) ** len(unknowns) > cap:
        raise SearchCapError(f"cap exceeded: {len(group)}^{len(unknowns)} candidates > {cap}")
    for name in system.table.coefficients:
        if name not in coeff_assignment:
            raise UnassignedSymbolError(f"unassigned symbol {name!r}")
    ident = group.identity()
    solutions = []
    for combo in itertools.product(group.elements, repeat=len(unknowns)):
        assignment = dict(coeff_assignment)
        assignment.update(zip(unknowns, combo))
        if all(evaluate_word(eq, assignment, ident) == ident for eq in system.equations):
            solutions.append(dict(zip(unknowns, combo)))
    return solutions


# --- exhaustive scan of the metabelian commutator identity ----------------------

@dataclass(frozen=True)
class IdentityScanReport:
    """Outcome of scanning u·u^y·u^{-y^3}·u^{-y^4} = 1 over all pairs (x, y)
    with y^6 and u in the derived subgroup.

    The scan runs twice: with u = x·x^{-y}·x^{y^2} (conjugated final factor,
    the reading the counterexamples rely on) and with the literal rendering
    u = x·x^{-y}·x·y^2, whose outcome is reported for comparison.
    """

    group_order: int
    pairs_total: int
    hypothesis_pairs: int
    violations: tuple[tuple[str, str], ...]
    literal_pairs: int
    literal_violations: int

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def literal_holds(self) -> bool:
        return self.literal_violations == 0


def metabelian_identity_scan(group: FiniteGroupTable) -> IdentityScanReport:
    """Exhaustively test the identity over a finite metabelian group."""
    if not is_metabelian(group):
        raise GroupError("identity scan requires a metabelian group")
    derived = derived_subgroup(group)
    in_derived = {e.canonical() for e in derived.elements}
    ident = group.identity()

    violations = []
    hypothesis_pairs = 0
    literal_pairs = 0
    literal_violations = 0
    for y in group.elements:
        y2 = y * y
        y3 = y2 * y
        y4 = y3 * y
        y6 = y3 * y3
        y6_ok = y6.canonical() in in_derived
        for x in group.elements:
            u = x * conj(x, y).inverse() * conj(x, y2)
            if y6_ok and u.canonical() in in_derived:
                hypothesis_pairs += 1
                lhs = u * conj(u, y) * conj(u, y3).inverse() * conj(u, y4).inverse()
                if lhs != ident:
                    violations.append((x.canonical(), y.canonical()))
            u_lit = x * conj(x, y).inverse() * x * y2
            if y6_ok and u_lit.canonical() in in_derived:
                literal_pairs += 1
                lhs = u_lit * conj(u_lit, y) * conj(u_lit, y3).inverse() * conj(u_lit, y4).inverse()
                if lhs != ident:
                    literal_violations += 1
    n = len(group)
    return IdentityScanReport(
        group_order=n,
        pairs_total=n * n,
        hypothesis_pairs=hypothesis_pairs,
        violations=tuple(violations),
        literal_pairs=literal_pairs,
        literal_violations=literal_violations,
    )


# --- stock groups ----------------------------------------------------------------

def _primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise GroupError(f"no primitive root mod {p}")


def triangular_group_elems(p: int) -> dict[str, TriangularElem]:
    """Canonical a, b, c in the full triangular group over F_p:
    a = diag(1, g) for g a primitive root, b unitriangular, c = [b, a]."""
    g = _primitive_root(p)
    a = TriangularElem(PrimeFieldElem(p, 0), PrimeFieldElem(p, g))
    b = TriangularElem(PrimeFieldElem(p, 1), PrimeFieldElem(p, 1))
    return {"a": a, "b": b, "c": comm(b, a)}


def order42_elems() -> dict[str, TriangularElem]:
    """a = ((1,0),(0,5)) and c = ((1,4),(0,1)) = [((1,1),(0,1)), a] over F_7."""
    a = TriangularElem(PrimeFieldElem(7, 0), PrimeFieldElem(7, 5))
    b = TriangularElem(PrimeFieldElem(7, 1), PrimeFieldElem(7, 1))
    return {"a": a, "b": b, "c": comm(b, a)}


def central_product_elems() -> dict[str, CentralProductElem]:
    """Generators of the torsion-free central product: a, b, c from the
    scaled-triangular side, d, e, f from the Heisenberg side (f = a^6)."""
    a1 = ScaledTriangularElem(1, CyclicPoly.zero(6))
    b1 = ScaledTriangularElem(0, CyclicPoly.one(6))
    a = CentralProductElem.from_scaled(a1)
    b = CentralProductElem.from_scaled(b1)
    return {
        "a": a,
        "b": b,
        "c": comm(b, a),
        "d": CentralProductElem.from_heisenberg(HEIS_D),
        "e": CentralProductElem.from_heisenberg(HEIS_E),
        "f": CentralProductElem.from_heisenberg(HEIS_F),
    }


def cyclic_perm_group(n: int) -> FiniteGroupTable:
    cycle = PermElem(tuple((i + 1) % n for i in range(n)))
    return group_closure([cycle])


def symmetric_perm_group(n: int) -> FiniteGroupTable:
    cycle = PermElem(tuple((i + 1) % n for i in range(n)))
    swap = PermElem((1, 0) + tuple(range(2, n)))
    return group_closure([cycle, swap])


def builtin_group(name: str, cap: int = 10**6):
    """Named stock groups for the CLI: returns (table, coefficient assignment).

    f7-42 / tri-f<p>: the group generated by a and c inside the full
    triangular group over F_p (all of it, for p = 7: order 42), with
    coefficient names a, b, c.  c<n>: cyclic of order n with generator g.
    s<n>: symmetric on n points with r = n-cycle, s = transposition.
    """
    if name == "f7-42":
        elems = order42_elems()
        return group_closure([elems["a"], elems["c"]], cap=cap), elems
    if name.startswith("tri-f"):
        p = int(name[5:])
        elems = triangular_group_elems(p)
        return group_closure([elems["a"], elems["b"]], cap=cap), elems
    if name.startswith("c") and name[1:].isdigit():
        n = int(name[1:])
        table = cyclic_perm_group(n)
        return table, {"g": table.elements[1] if n > 1 else table.elements[0]}
    if name.startswith("s") and name[1:].isdigit():
        n = int(name[1:])
        table = symmetric_perm_group(n)
        cycle = PermElem(tuple((i + 1) % n for i in range(n)))
        swap = PermElem((1, 0) + tuple(range(2, n)))
        return table, {"r": cycle, "s": swap}
    raise GroupError(f"unknown group name {name!r}")
