"""Exact integer linear algebra: rank, determinants, Smith normal form.

Everything here works on arbitrary-precision Python ints.  The Smith form
carries its unimodular transforms so that U @ M @ V == S is checkable, and
the invariant factors drive the singular / nonsingular / unimodular verdicts:
a system with full row rank is degenerate exactly at the primes dividing the
last invariant factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


class SingularMatrixError(ValueError):
    """Raised when an operation needs full row rank and the matrix lacks it."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        if not all(isinstance(e, int) for e in self.entries):
            raise TypeError("entries must be ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = cols if cols is not None else 0
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> "IntMatrix":
        ents = [0] * (rows * cols)
        for i, d in enumerate(diag):
            ents[i * cols + i] = d
        return cls(rows, cols, tuple(ents))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "IntMatrix":
        ri, ci = list(row_idx), list(col_idx)
        return IntMatrix.from_rows([[self.at(i, j) for j in ci] for i in ri], cols=len(ci))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        a, b = self.to_rows(), other.to_rows()
        prod = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(prod, cols=other.cols)

    def __str__(self):
        if self.rows == 0:
            return f"(empty {self.rows}x{self.cols})"
        body = [[str(self.at(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        widths = [max(len(body[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join(
            "[ " + "  ".join(s.rjust(w) for s, w in zip(r, widths)) + " ]" for r in body
        )


@dataclass(frozen=True)
class SmithForm:
    """Diagonalization U @ M @ V == S by unimodular U, V.

    ``factors`` are the invariant factors d_1 | d_2 | ... | d_r, all positive;
    S carries exactly these on its diagonal and zeros elsewhere.
    """

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]


def _swap_rows(a, u, i, j):
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    if i != j:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Compute the Smith normal form of an integer matrix.

    Gcd-driven row/column reduction; the pivot is always an entry of smallest
    nonzero absolute value in the remaining submatrix, which keeps entry
    growth tame at desk scale.  Divisibility of the whole remaining submatrix
    by the pivot is enforced before moving on, so the diagonal comes out as a
    divisibility chain without a final sorting pass.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    t = 0
    while t < min(r, c):
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                e = abs(a[i][j])
                if e and (best is None or e < best):
                    best, pivot = e, (i, j)
        if pivot is None:
            break
        _swap_rows(a, u, t, pivot[0])
        _swap_cols(a, v, t, pivot[1])

        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            restart = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        _swap_rows(a, u, t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        _swap_cols(a, v, t, j)
                        restart = True
                        break
            if restart:
                continue
            # Row and column t are clear; force the pivot to divide the rest.
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, r) if any(x % p for x in a[i][t + 1 :])),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        t += 1

    factors = tuple(a[i][i] for i in range(t))
    s = IntMatrix.diagonal(r, c, factors)
    return SmithForm(S=s, U=IntMatrix.from_rows(u, cols=r), V=IntMatrix.from_rows(v, cols=c), factors=factors)


def _fraction_free_echelon(m: IntMatrix) -> int:
    """Bareiss elimination; returns the rank over the rationals."""
    a = m.to_rows()
    r, c = m.rows, m.cols
    prev = 1
    pr = 0
    for pc in range(c):
        if pr == r:
            break
        piv = next((i for i in range(pr, r) if a[i][pc]), None)
        if piv is None:
            continue
        a[pr], a[piv] = a[piv], a[pr]
        for i in range(pr + 1, r):
            for j in range(pc + 1, c):
                a[i][j] = (a[pr][pc] * a[i][j] - a[i][pc] * a[pr][j]) // prev
            a[i][pc] = 0
        prev = a[pr][pc]
        pr += 1
    return pr


def rank_over_rationals(m: IntMatrix) -> int:
    """Rank of the matrix over Q (equals the number of nonzero invariant factors)."""
    return _fraction_free_echelon(m)


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _prime_factors(n: int) -> frozenset[int]:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return frozenset(out)


def bad_primes(m: IntMatrix) -> frozenset[int]:
    """Primes at which rationally independent rows become dependent mod p.

    Requires the rows to be independent over Q.  The answer is the set of
    prime divisors of the last invariant factor; empty exactly when the
    system the matrix came from is unimodular.
    """
    k = m.rows
    if rank_over_rationals(m) != k:
        raise SingularMatrixError("singular matrix has no bad-prime profile")
    if k == 0:
        return frozenset()
    sf = smith_normal_form(m)
    return _prime_factors(sf.factors[k - 1])


def all_minors(m: IntMatrix, k: int) -> list[int]:
    """Every k x k minor, by brute-force enumeration (test oracle duty)."""
    return [
        det(m.submatrix(ri, ci))
        for ri in itertools.combinations(range(m.rows), k)
        for ci in itertools.combinations(range(m.cols), k)
    ]
