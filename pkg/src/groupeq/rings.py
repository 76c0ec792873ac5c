"""Exact arithmetic in the rings the counterexamples live over.

Z[A] for A ≅ Z^n is the Laurent polynomial ring in n variables; the group
ring of a cyclic group of order m is Z[y]/(y^m - 1).  Both are implemented
with sparse exponent maps and arbitrary-precision integer coefficients.
Determinants over the integral domains (Z, F_p, Laurent) use fraction-free
Bareiss elimination; the cyclic quotient ring has zero divisors, where
division-based elimination is unsound, so determinants there fall back to
cofactor expansion.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .intlinalg import IntMatrix, det as _int_det


class RingError(ValueError):
    pass


# --- Laurent polynomials ------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Element of Z[t1^±1, ..., tn^±1]: exponent vector -> nonzero coefficient.

    Terms are kept sorted lexicographically on the exponent vectors, so
    equality, hashing and printing are canonical.
    """

    nvars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise RingError("nvars must be positive")
        merged: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms:
            if len(exps) != self.nvars:
                raise RingError("exponent vector length does not match nvars")
            merged[tuple(exps)] = merged.get(tuple(exps), 0) + coeff
        canon = tuple(sorted((e, c) for e, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", canon)

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping[tuple[int, ...], int]) -> "LaurentPoly":
        return cls(nvars, tuple(d.items()))

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, ())

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.monomial(nvars, (0,) * nvars)

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(nvars, ((tuple(exps), coeff),))

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls.monomial(nvars, (0,) * nvars, c)

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise RingError("nvars mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(self.nvars, d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.nvars, tuple((e, c * other) for e, c in self.terms))
        self._check(other)
        d: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(self.nvars, d)

    def __rmul__(self, other: int) -> "LaurentPoly":
        return self * other

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise RingError("negative powers only exist for monomials; shift instead")
        out = LaurentPoly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shifted(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exps (always invertible)."""
        exps = tuple(exps)
        return LaurentPoly(
            self.nvars,
            tuple((tuple(a + b for a, b in zip(e, exps)), c) for e, c in self.terms),
        )

    def augmentation(self) -> int:
        """Image under Z[A] -> Z sending every group element to 1."""
        return sum(c for _, c in self.terms)

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        """Quotient self / d when d divides self exactly (Bareiss guarantee)."""
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        lead_e, lead_c = d.terms[-1]  # lex-largest term
        num = dict(self.terms)
        out: dict[tuple[int, ...], int] = {}
        fuel = 8 * (len(self.terms) + len(d.terms) + 4) ** 2
        while num:
            fuel -= 1
            if fuel < 0:
                raise ArithmeticError("polynomial division does not terminate; not divisible")
            e_f = max(num)
            c_f = num[e_f]
            if c_f % lead_c:
                raise ArithmeticError("polynomial division is not exact")
            e_q = tuple(a - b for a, b in zip(e_f, lead_e))
            c_q = c_f // lead_c
            out[e_q] = out.get(e_q, 0) + c_q
            for e_d, c_d in d.terms:
                e = tuple(a + b for a, b in zip(e_d, e_q))
                nv = num.get(e, 0) - c_q * c_d
                if nv:
                    num[e] = nv
                else:
                    num.pop(e, None)
        return LaurentPoly.from_dict(self.nvars, out)

    def render(self, names: Sequence[str] | None = None) -> str:
        """Canonical text: lex term order, "y" style for one variable,
        "t1^2*t2^-1" style otherwise (stable; used in golden output)."""
        if self.is_zero():
            return "0"
        if names is None:
            names = ("y",) if self.nvars == 1 else tuple(f"t{i+1}" for i in range(self.nvars))
        chunks: list[str] = []
        for i, (exps, coeff) in enumerate(self.terms):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e != 0
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            if i == 0:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(chunks)

    def __str__(self):
        return self.render()


# --- cyclic quotient ring Z[y]/(y^m - 1) --------------------------------------

@dataclass(frozen=True)
class CyclicPoly:
    """Element of Z[y]/(y^m - 1); coeffs[i] is the coefficient of y^i."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise RingError("modulus must be >= 1")
        if len(self.coeffs) != self.m:
            raise RingError("coefficient vector must have length m")

    @classmethod
    def zero(cls, m: int) -> "CyclicPoly":
        return cls(m, (0,) * m)

    @classmethod
    def one(cls, m: int) -> "CyclicPoly":
        return cls.y_power(m, 0)

    @classmethod
    def y_power(cls, m: int, k: int, coeff: int = 1) -> "CyclicPoly":
        c = [0] * m
        c[k % m] = coeff
        return cls(m, tuple(c))

    @classmethod
    def from_coeffs(cls, m: int, coeffs: Sequence[int]) -> "CyclicPoly":
        c = [0] * m
        for i, x in enumerate(coeffs):
            c[i % m] += x
        return cls(m, tuple(c))

    def _check(self, other: "CyclicPoly"):
        if self.m != other.m:
            raise RingError("modulus mismatch")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        self._check(other)
        return CyclicPoly(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclicPoly":
        return CyclicPoly(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclicPoly(self.m, tuple(a * other for a in self.coeffs))
        self._check(other)
        out = [0] * self.m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % self.m] += a * b
        return CyclicPoly(self.m, tuple(out))

    def __rmul__(self, other: int) -> "CyclicPoly":
        return self * other

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def mult_matrix(self) -> IntMatrix:
        """Matrix of multiplication by self on the basis 1, y, ..., y^(m-1)."""
        return IntMatrix.from_rows(
            [[self.coeffs[(i - j) % self.m] for j in range(self.m)] for i in range(self.m)],
            cols=self.m,
        )

    def is_unit(self) -> bool:
        return abs(_int_det(self.mult_matrix())) == 1

    def inverse(self) -> "CyclicPoly":
        """Exact inverse via Cramer's rule on the multiplication matrix."""
        mm = self.mult_matrix()
        d = _int_det(mm)
        if abs(d) != 1:
            raise RingError(f"{self} is not a unit of Z[y]/(y^{self.m}-1)")
        rows = mm.to_rows()
        sol = []
        for i in range(self.m):
            col = [[rows[r][c] if c != i else (1 if r == 0 else 0) for c in range(self.m)]
                   for r in range(self.m)]
            sol.append(_int_det(IntMatrix.from_rows(col)) // d)
        return CyclicPoly(self.m, tuple(sol))

    def render(self) -> str:
        as_laurent = LaurentPoly.from_dict(
            1, {(i,): c for i, c in enumerate(self.coeffs) if c}
        )
        return as_laurent.render(("y",))

    def __str__(self):
        return self.render()


def cyclic_project(a: LaurentPoly, m: int) -> CyclicPoly:
    """Fold a one-variable Laurent polynomial into Z[y]/(y^m - 1)."""
    if a.nvars != 1:
        raise RingError("cyclic projection needs a one-variable polynomial")
    if m < 1:
        raise RingError("modulus must be >= 1")
    out = [0] * m
    for (e,), c in a.terms:
        out[e % m] += c
    return CyclicPoly(m, tuple(out))


# --- prime fields -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@dataclass(frozen=True)
class PrimeFieldElem:
    """Element of F_p, stored as the representative in [0, p)."""

    p: int
    value: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise RingError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "PrimeFieldElem"):
        if self.p != other.p:
            raise RingError("field mismatch")

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other):
        self._check(other)
        return PrimeFieldElem(self.p, self.value + other.value)

    def __neg__(self):
        return PrimeFieldElem(self.p, -self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return PrimeFieldElem(self.p, self.value * other)
        self._check(other)
        return PrimeFieldElem(self.p, self.value * other.value)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return PrimeFieldElem(self.p, pow(self.value, -1, self.p))

    def __str__(self):
        return str(self.value)


# --- homomorphisms ------------------------------------------------------------

RingElem = Union[LaurentPoly, CyclicPoly]


@dataclass(frozen=True)
class RingHom:
    """One of: augmentation (send the group to 1), cyclic quotient by y^m - 1,
    or evaluation y -> image in F_p."""

    kind: str
    m: int | None = None
    p: int | None = None
    image: int | None = None

    AUGMENTATION = "augmentation"
    CYCLIC_QUOTIENT = "cyclic-quotient"
    EVALUATION = "evaluation"

    @classmethod
    def augmentation(cls) -> "RingHom":
        return cls(cls.AUGMENTATION)

    @classmethod
    def cyclic_quotient(cls, m: int) -> "RingHom":
        if m < 1:
            raise RingError("modulus must be >= 1")
        return cls(cls.CYCLIC_QUOTIENT, m=m)

    @classmethod
    def evaluation(cls, p: int, image: int) -> "RingHom":
        if not _is_prime(p):
            raise RingError(f"{p} is not prime")
        if image % p == 0:
            raise RingError("evaluation image is not a unit")
        return cls(cls.EVALUATION, p=p, image=image % p)


def apply_hom(h: RingHom, a: RingElem):
    """Apply a RingHom; the source kind must be compatible with the hom."""
    if h.kind == RingHom.AUGMENTATION:
        return a.augmentation()
    if h.kind == RingHom.CYCLIC_QUOTIENT:
        if not isinstance(a, LaurentPoly):
            raise RingError("cyclic quotient applies to Laurent polynomials")
        return cyclic_project(a, h.m)
    if h.kind == RingHom.EVALUATION:
        p, image = h.p, h.image
        if isinstance(a, CyclicPoly):
            if pow(image, a.m, p) != 1:
                raise RingError(
                    f"y -> {image} is not well defined on Z[y]/(y^{a.m}-1) over F_{p}"
                )
            total = sum(c * pow(image, i, p) for i, c in enumerate(a.coeffs))
            return PrimeFieldElem(p, total)
        if isinstance(a, LaurentPoly):
            if a.nvars != 1:
                raise RingError("evaluation needs a one-variable polynomial")
            inv = pow(image, -1, p)
            total = 0
            for (e,), c in a.terms:
                base = pow(image, e, p) if e >= 0 else pow(inv, -e, p)
                total += c * base
            return PrimeFieldElem(p, total)
        raise RingError(f"cannot evaluate {type(a).__name__}")
    raise RingError(f"unknown hom kind {h.kind!r}")


# --- determinants over the tower ----------------------------------------------

def _det_bareiss(rows, is_zero, div, negate):
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not is_zero(a[i][k])), None)
        if piv is None:
            return None  # structurally zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else div(num, prev)
            a[i][k] = a[i][k] - a[i][k]  # zero of the right type
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign > 0 else negate(result)


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [[rows[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = entry * _det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] - rows[0][0]  # zero of the right type
    return total


def determinant(rows: Sequence[Sequence]):
    """Exact determinant of a square matrix over Z, F_p, Z[A] or Z[y]/(y^m-1).

    Bareiss elimination for the integral domains; cofactor expansion for the
    cyclic quotient ring, whose zero divisors rule out division.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    sample = rows[0][0]
    if isinstance(sample, int):
        return _int_det(IntMatrix.from_rows(rows))
    if isinstance(sample, CyclicPoly):
        d = _det_cofactor(rows)
        return d
    if isinstance(sample, PrimeFieldElem):
        d = _det_bareiss(
            rows,
            is_zero=lambda x: x.is_zero(),
            div=lambda a, b: a * b.inverse(),
            negate=lambda x: -x,
        )
        return PrimeFieldElem(sample.p, 0) if d is None else d
    if isinstance(sample, LaurentPoly):
        d = _det_bareiss(
            rows,
            is_zero=lambda x: x.is_zero(),
            div=lambda a, b: a.exact_div(b),
            negate=lambda x: -x,
        )
        return LaurentPoly.zero(sample.nvars) if d is None else d
    raise TypeError(f"no determinant routine for {type(sample).__name__}")
