"""From a system over a split extension A ⋉ B to a certified system over B.

Pipeline, for A ≅ Z^n with every coefficient assigned its A-part:

1. abelianize each equation into a linear system M·X = b over A;
2. solve it exactly in Q^n (rows must be independent over Q) and shift each
   unknown by its solution value, so the induced system has the identity
   solution;
3. rescan each word, accumulating a running A-prefix; every unknown
   occurrence becomes a copy of the unknown decorated by a conjugating
   A-element, and the occurrences aggregate into a matrix over the group
   ring Z[A] — one Laurent polynomial per (equation, unknown);
4. certify: applying the augmentation Z[A] -> Z entrywise recovers the
   original exponent matrix, and if that integer matrix has full row rank,
   the Laurent rows are independent over Z[A] (a dependence would survive
   the quotient by the fundamental ideal), hence the whole A-orbit of the
   rewritten system is nonsingular over B.  A nonzero Laurent minor is
   attached as an independent witness.

Denominators of the solution are cleared by one global scale L, i.e. the
enlarged abelian group is the sub-lattice (1/L)Z^n written multiplicatively
with exponents L·α.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .intlinalg import IntMatrix, rank_over_rationals
from .rings import LaurentPoly, RingHom, apply_hom, determinant
from .words import EquationSystem, exponent_matrix

CERTIFIED = "Certified"
NOT_CERTIFIED = "NotCertified"


class ReductionError(ValueError):
    pass


class MissingImageError(ReductionError):
    pass


class SingularSystemError(ReductionError):
    pass


@dataclass(frozen=True)
class SplitExtensionSpec:
    """A ≅ Z^rank acting on an opaque B; coefficient_images give the A-part
    of every coefficient of the system's table."""

    rank: int
    coefficient_images: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        if self.rank < 1:
            raise ReductionError("rank must be >= 1")
        images = {k: tuple(v) for k, v in dict(self.coefficient_images).items()}
        for name, vec in images.items():
            if len(vec) != self.rank:
                raise ReductionError(f"image of {name!r} must have length {self.rank}")
        object.__setattr__(self, "coefficient_images", images)

    def image(self, name: str) -> tuple[int, ...]:
        try:
            return self.coefficient_images[name]
        except KeyError:
            raise MissingImageError(f"missing coefficient image for {name!r}") from None


@dataclass(frozen=True)
class AbelianSolution:
    """Exact rational solution of the induced system; denominator is the
    lcm L of all entry denominators, so L·values is integral."""

    values: Mapping[str, tuple[Fraction, ...]]
    denominator: int

    def __post_init__(self):
        object.__setattr__(
            self, "values", {k: tuple(v) for k, v in dict(self.values).items()}
        )
        if self.denominator < 1:
            raise ReductionError("denominator must be >= 1")
        for vec in self.values.values():
            for x in vec:
                if (x * self.denominator).denominator != 1:
                    raise ReductionError("denominator does not clear all entries")


@dataclass(frozen=True)
class DecoratedLetter:
    """One letter of a rewritten word: a B-coefficient or an unknown copy,
    conjugated by the A-element recorded in ``shift``."""

    kind: str  # "coeff" | "unknown"
    name: str
    sign: int
    shift: tuple[Fraction, ...]

    def render(self) -> str:
        shift = ",".join(str(x) for x in self.shift)
        caret = "" if self.sign > 0 else "^-1"
        return f"{self.name}{caret}[{shift}]"


@dataclass(frozen=True)
class RewrittenSystem:
    """The rewritten words with their Z[A] exponent matrix.

    laurent_matrix[i][j] collects ±t^(L·shift) over the occurrences of
    unknown j in equation i; applying the augmentation entrywise must give
    back the exponent matrix of the source system, which is checked here.
    """

    system: EquationSystem
    spec: SplitExtensionSpec
    solution: AbelianSolution
    words: tuple[tuple[DecoratedLetter, ...], ...]
    laurent_matrix: tuple[tuple[LaurentPoly, ...], ...]
    scale: int

    def __post_init__(self):
        expected = exponent_matrix(self.system)
        for i, row in enumerate(self.laurent_matrix):
            for j, entry in enumerate(row):
                if entry.augmentation() != expected.at(i, j):
                    raise ReductionError(
                        "internal consistency failure: augmentation of the "
                        "rewritten matrix does not match the exponent matrix"
                    )

    @property
    def nvars(self) -> int:
        return self.spec.rank


@dataclass(frozen=True)
class WitnessMinor:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    det: LaurentPoly

    @property
    def augmentation(self) -> int:
        return self.det.augmentation()


@dataclass(frozen=True)
class NonsingularityCertificate:
    """Certified means: the augmentation image has full row rank, hence the
    orbit system over B is nonsingular.  NotCertified is a valid outcome and
    coincides with the source system being singular."""

    verdict: str
    integer_matrix: IntMatrix
    integer_rank: int
    laurent_matrix: tuple[tuple[LaurentPoly, ...], ...] | None
    witness_minor: WitnessMinor | None

    def __post_init__(self):
        if self.verdict == CERTIFIED and self.integer_rank != self.integer_matrix.rows:
            raise ReductionError("a certificate requires full row rank")


@dataclass(frozen=True)
class ReductionResult:
    system: EquationSystem
    spec: SplitExtensionSpec
    solution: AbelianSolution | None
    rewritten: RewrittenSystem | None
    certificate: NonsingularityCertificate


def induced_system(
    system: EquationSystem, spec: SplitExtensionSpec
) -> tuple[IntMatrix, tuple[tuple[int, ...], ...]]:
    """Abelianization: M is the exponent matrix; b_i is the negated signed
    sum of the coefficient images occurring in equation i."""
    table = system.table
    m = exponent_matrix(system)
    b = []
    for eq in system.equations:
        total = [0] * spec.rank
        for name, sign in eq.letters:
            if not table.is_unknown(name):
                img = spec.image(name)
                for d in range(spec.rank):
                    total[d] += sign * img[d]
        b.append(tuple(-x for x in total))
    return m, tuple(b)


def solve_induced(
    m: IntMatrix,
    b: Sequence[tuple[int, ...]],
    unknowns: Sequence[str],
    rank: int | None = None,
) -> AbelianSolution:
    """Deterministic exact solution of M·X = b over Q^n: reduced row echelon
    particular solution with free unknowns set to zero."""
    k, cols = m.rows, m.cols
    n = rank if rank is not None else (len(b[0]) if b else 0)
    aug = [
        [Fraction(m.at(i, j)) for j in range(cols)] + [Fraction(x) for x in b[i]]
        for i in range(k)
    ]
    pivots: list[int] = []
    pr = 0
    for pc in range(cols):
        piv = next((i for i in range(pr, k) if aug[i][pc]), None)
        if piv is None:
            continue
        aug[pr], aug[piv] = aug[piv], aug[pr]
        scale = aug[pr][pc]
        aug[pr] = [x / scale for x in aug[pr]]
        for i in range(k):
            if i != pr and aug[i][pc]:
                factor = aug[i][pc]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[pr])]
        pivots.append(pc)
        pr += 1
    if pr < k:
        raise SingularSystemError("reduction requires a nonsingular system")
    values: dict[str, tuple[Fraction, ...]] = {}
    for j, name in enumerate(unknowns):
        if j in pivots:
            row = pivots.index(j)
            values[name] = tuple(aug[row][cols + d] for d in range(n))
        else:
            values[name] = tuple(Fraction(0) for _ in range(n))
    denoms = [x.denominator for vec in values.values() for x in vec]
    return AbelianSolution(values, lcm(*denoms) if denoms else 1)


@dataclass(frozen=True)
class AnnotatedSystem:
    """System whose unknowns carry their solved A-offsets; rewriting treats
    an occurrence of x as (offset)·(fresh unknown with trivial A-image)."""

    system: EquationSystem
    spec: SplitExtensionSpec
    offsets: Mapping[str, tuple[Fraction, ...]]


def change_variables(
    system: EquationSystem, spec: SplitExtensionSpec, sol: AbelianSolution
) -> AnnotatedSystem:
    """Validate that sol solves the induced system and record the offsets."""
    m, b = induced_system(system, spec)
    for i in range(m.rows):
        for d in range(spec.rank):
            total = sum(
                m.at(i, j) * sol.values[u][d]
                for j, u in enumerate(system.table.unknowns)
            )
            if total != b[i][d]:
                raise ReductionError("solution does not solve the induced system")
    return AnnotatedSystem(system, spec, dict(sol.values))


def rewrite_over_base(
    system: EquationSystem, spec: SplitExtensionSpec, sol: AbelianSolution
) -> RewrittenSystem:
    """Scan each word, decorating letters with the inverse of the running
    A-prefix; a letter's own A-part is consumed before the letter when the
    occurrence is positive and after it when inverted, so that x decorated by
    α stands for x conjugated by a^α."""
    annotated = change_variables(system, spec, sol)
    table = system.table
    n = spec.rank
    L = sol.denominator
    zero = tuple(Fraction(0) for _ in range(n))
    words: list[tuple[DecoratedLetter, ...]] = []
    rows: list[tuple[LaurentPoly, ...]] = []
    for eq in system.equations:
        pi = list(zero)
        letters: list[DecoratedLetter] = []
        entries: list[dict[tuple[int, ...], int]] = [dict() for _ in table.unknowns]
        for name, sign in eq.letters:
            if table.is_unknown(name):
                part = annotated.offsets[name]
                kind = "unknown"
            else:
                part = spec.image(name)
                kind = "coeff"
            if sign > 0:
                for d in range(n):
                    pi[d] -= part[d]
                shift = tuple(pi)
            else:
                shift = tuple(pi)
                for d in range(n):
                    pi[d] += part[d]
            letters.append(DecoratedLetter(kind, name, sign, shift))
            if kind == "unknown":
                scaled = [x * L for x in shift]
                if any(x.denominator != 1 for x in scaled):
                    raise ReductionError(
                        "internal consistency failure: scale does not clear a shift"
                    )
                exps = tuple(int(x) for x in scaled)
                col = table.unknowns.index(name)
                entries[col][exps] = entries[col].get(exps, 0) + sign
        if any(x != 0 for x in pi):
            raise ReductionError(
                "internal consistency failure: nonzero total A-image after rewriting"
            )
        words.append(tuple(letters))
        rows.append(tuple(LaurentPoly.from_dict(n, d) for d in entries))
    return RewrittenSystem(system, spec, sol, tuple(words), tuple(rows), L)


def orbit_shift(
    rs: RewrittenSystem, a: Sequence[int]
) -> tuple[tuple[LaurentPoly, ...], ...]:
    """Rows of the orbit translate by a ∈ Z^n: each entry times t^(L·a)."""
    exps = tuple(rs.scale * x for x in a)
    return tuple(tuple(entry.shifted(exps) for entry in row) for row in rs.laurent_matrix)


def _witness_search(
    rows: Sequence[Sequence[LaurentPoly]], int_matrix: IntMatrix, budget: int
) -> WitnessMinor | None:
    k = len(rows)
    cols = int_matrix.cols
    n_candidates = 1
    for i in range(k):
        n_candidates = n_candidates * (cols - i) // (i + 1)
    if n_candidates <= budget:
        candidates = itertools.combinations(range(cols), k)
    else:
        # fall back to the pivot columns of the integer image: their integer
        # minor is nonzero, so the Laurent minor is too
        rref_pivots: list[int] = []
        work = [[Fraction(int_matrix.at(i, j)) for j in range(cols)] for i in range(k)]
        pr = 0
        for pc in range(cols):
            piv = next((i for i in range(pr, k) if work[i][pc]), None)
            if piv is None:
                continue
            work[pr], work[piv] = work[piv], work[pr]
            for i in range(k):
                if i != pr and work[i][pc]:
                    f = work[i][pc] / work[pr][pc]
                    work[i] = [x - f * y for x, y in zip(work[i], work[pr])]
            rref_pivots.append(pc)
            pr += 1
        candidates = iter([tuple(rref_pivots)] if len(rref_pivots) == k else [])
    for sel in candidates:
        minor = determinant([[rows[i][j] for j in sel] for i in range(k)])
        if not minor.is_zero():
            return WitnessMinor(tuple(range(k)), tuple(sel), minor)
    return None


def certify_nonsingular(rs: RewrittenSystem, minor_budget: int = 500) -> NonsingularityCertificate:
    """Certify via the augmentation image; attach a nonzero Laurent minor as
    supplementary evidence when one is found within the budget."""
    image = IntMatrix.from_rows(
        [[entry.augmentation() for entry in row] for row in rs.laurent_matrix],
        cols=len(rs.system.table.unknowns),
    )
    k = image.rows
    rank = rank_over_rationals(image)
    if rank < k:
        return NonsingularityCertificate(NOT_CERTIFIED, image, rank, rs.laurent_matrix, None)
    witness = _witness_search(rs.laurent_matrix, image, minor_budget) if k else None
    return NonsingularityCertificate(CERTIFIED, image, rank, rs.laurent_matrix, witness)


def reduce_system(
    system: EquationSystem, spec: SplitExtensionSpec, minor_budget: int = 500
) -> ReductionResult:
    """Run the whole pipeline.  A rationally dependent induced system cannot
    be solved, so the pipeline short-circuits into a NotCertified certificate
    carrying the exponent matrix."""
    m, b = induced_system(system, spec)
    k = m.rows
    rank = rank_over_rationals(m)
    if rank < k:
        cert = NonsingularityCertificate(NOT_CERTIFIED, m, rank, None, None)
        return ReductionResult(system, spec, None, None, cert)
    sol = solve_induced(m, b, system.table.unknowns, rank=spec.rank)
    rs = rewrite_over_base(system, spec, sol)
    cert = certify_nonsingular(rs, minor_budget)
    return ReductionResult(system, spec, sol, rs, cert)


# --- dependence transfer under ring homomorphisms -------------------------------

@dataclass(frozen=True)
class RowDependenceReport:
    """Independent carries a nonzero witness minor; Dependent asserts that
    every maximal minor of the hom-image matrix vanishes as well (dependence
    survives any quotient of the group ring)."""

    status: str  # "Independent" | "Dependent"
    witness_cols: tuple[int, ...] | None
    witness_minor: LaurentPoly | None
    image_minors_zero: bool | None


def row_dependence_check(
    rows: Sequence[Sequence[LaurentPoly]], hom: RingHom
) -> RowDependenceReport:
    """Decide Z[A]-linear dependence of k ≤ cols Laurent rows by minors, and
    when dependent, check the image matrix under ``hom`` the same way."""
    k = len(rows)
    cols = len(rows[0]) if rows else 0
    if k > cols:
        raise ReductionError("need at most as many rows as columns")
    for sel in itertools.combinations(range(cols), k):
        minor = determinant([[row[j] for j in sel] for row in rows])
        if not minor.is_zero():
            return RowDependenceReport("Independent", tuple(sel), minor, None)
    image = [[apply_hom(hom, entry) for entry in row] for row in rows]
    all_zero = True
    for sel in itertools.combinations(range(cols), k):
        minor = determinant([[row[j] for j in sel] for row in image])
        zero = minor == 0 if isinstance(minor, int) else minor.is_zero()
        if not zero:
            all_zero = False
            break
    return RowDependenceReport("Dependent", None, None, all_zero)


# --- serialization ----------------------------------------------------------------

def _poly_names(n: int) -> tuple[str, ...] | None:
    return ("t",) if n == 1 else None


def _frac_str(x: Fraction) -> str:
    return str(x)


def certificate_document(result: ReductionResult) -> dict:
    """Stable structured document for a reduction run (the JSON surface)."""
    system, spec, cert = result.system, result.spec, result.certificate
    names = _poly_names(spec.rank)
    doc: dict = {
        "unknowns": list(system.table.unknowns),
        "coefficients": list(system.table.coefficients),
        "equations": [str(eq) for eq in system.equations],
        "coefficient_images": {k: list(v) for k, v in sorted(spec.coefficient_images.items())},
        "rank_of_a": spec.rank,
        "verdict": cert.verdict,
        "integer_matrix": cert.integer_matrix.to_rows(),
        "rank": cert.integer_rank,
        "scale": result.solution.denominator if result.solution else None,
        "solution": (
            {u: [_frac_str(x) for x in vec] for u, vec in sorted(result.solution.values.items())}
            if result.solution
            else None
        ),
        "rewritten_words": (
            [" ".join(l.render() for l in word) or "1" for word in result.rewritten.words]
            if result.rewritten
            else None
        ),
        "laurent_matrix": (
            [[entry.render(names) for entry in row] for row in cert.laurent_matrix]
            if cert.laurent_matrix is not None
            else None
        ),
        "witness_minor": (
            {
                "rows": list(cert.witness_minor.rows),
                "cols": list(cert.witness_minor.cols),
                "det": cert.witness_minor.det.render(names),
                "augmentation": cert.witness_minor.augmentation,
            }
            if cert.witness_minor
            else None
        ),
    }
    return doc
