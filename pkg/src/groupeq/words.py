"""Words over a coefficient/unknown alphabet in the free product G * F(X).

An equation is a word equal to 1.  Words exist in two forms: a SurfaceWord
(the parse tree, with powers and conjugations unexpanded) and a FlatWord
(freely reduced sequence of signed letters).  Coefficients are opaque here:
only literal s·s⁻¹ pairs cancel, which is all the exponent-sum bookkeeping
needs; actual coefficient semantics live in the matrix-group layer.

Conjugation follows the convention g^h = h⁻¹gh and g^-h = h⁻¹g⁻¹h.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .intlinalg import IntMatrix

MAX_FLAT_LETTERS = 10**6


class WordError(ValueError):
    pass


class WordSyntaxError(WordError):
    """Malformed word text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UndeclaredSymbolError(WordError):
    pass


class WordSizeError(WordError):
    """Expansion would exceed the flattened-letter bound."""


@dataclass(frozen=True)
class SymbolTable:
    """Fixed alphabet: unknowns (column order of exponent matrices) and coefficients."""

    unknowns: tuple[str, ...]
    coefficients: tuple[str, ...]

    def __post_init__(self):
        names = list(self.unknowns) + list(self.coefficients)
        if any(not n for n in names):
            raise ValueError("symbol names must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError("symbol names must be unique across unknowns and coefficients")

    @classmethod
    def make(cls, unknowns: Iterable[str], coefficients: Iterable[str]) -> "SymbolTable":
        return cls(tuple(unknowns), tuple(coefficients))

    def is_declared(self, name: str) -> bool:
        return name in self.unknowns or name in self.coefficients

    def is_unknown(self, name: str) -> bool:
        return name in self.unknowns


# --- surface form (parse trees) ---------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Inv:
    base: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Conj:
    base: "Node"
    by: "Node"


@dataclass(frozen=True)
class Concat:
    parts: tuple["Node", ...]


Node = Union[Atom, Inv, Pow, Conj, Concat]


@dataclass(frozen=True)
class SurfaceWord:
    """A parse tree bound to the table its symbols live in."""

    root: Node
    table: SymbolTable


# --- flat form ---------------------------------------------------------------

@dataclass(frozen=True)
class FlatWord:
    """Freely reduced word: (symbol, ±1) letters over a SymbolTable."""

    letters: tuple[tuple[str, int], ...]
    table: SymbolTable

    def __post_init__(self):
        for name, sign in self.letters:
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign}")
            if not self.table.is_declared(name):
                raise UndeclaredSymbolError(f"symbol {name!r} not in table")
        for (n1, s1), (n2, s2) in zip(self.letters, self.letters[1:]):
            if n1 == n2 and s1 == -s2:
                raise ValueError("word is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "FlatWord":
        return FlatWord(tuple((n, -s) for n, s in reversed(self.letters)), self.table)

    def as_surface(self) -> SurfaceWord:
        parts = tuple(Atom(n) if s > 0 else Inv(Atom(n)) for n, s in self.letters)
        return SurfaceWord(Concat(parts), self.table)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(n if s > 0 else f"{n}^-1" for n, s in self.letters)


def free_reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    stack: list[tuple[str, int]] = []
    for name, sign in letters:
        if stack and stack[-1][0] == name and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((name, sign))
    return tuple(stack)


def flatten(w: SurfaceWord, max_letters: int = MAX_FLAT_LETTERS) -> FlatWord:
    """Expand powers and conjugations and freely reduce.

    Expansion is eager; a letter-count bound guards against adversarial
    exponent towers before any oversized list is built.
    """
    table = w.table

    def expand(node: Node) -> list[tuple[str, int]]:
        if isinstance(node, Atom):
            if not table.is_declared(node.name):
                raise UndeclaredSymbolError(f"symbol {node.name!r} not in table")
            return [(node.name, 1)]
        if isinstance(node, Inv):
            base = expand(node.base)
            return [(n, -s) for n, s in reversed(base)]
        if isinstance(node, Pow):
            base = expand(node.base)
            k = node.exponent
            if abs(k) * len(base) > max_letters:
                raise WordSizeError(f"power expansion exceeds {max_letters} letters")
            if k < 0:
                base = [(n, -s) for n, s in reversed(base)]
                k = -k
            return base * k
        if isinstance(node, Conj):
            base = expand(node.base)
            by = expand(node.by)
            if len(base) + 2 * len(by) > max_letters:
                raise WordSizeError(f"conjugation expansion exceeds {max_letters} letters")
            by_inv = [(n, -s) for n, s in reversed(by)]
            return by_inv + base + by
        if isinstance(node, Concat):
            out: list[tuple[str, int]] = []
            for part in node.parts:
                out.extend(expand(part))
                if len(out) > max_letters:
                    raise WordSizeError(f"word exceeds {max_letters} letters")
            return out
        raise TypeError(f"unknown node {node!r}")

    return FlatWord(free_reduce(expand(w.root)), table)


# --- parsing -----------------------------------------------------------------
#
# word     = factor { "*" factor }
# factor   = atom [ "^" exponent ]
# atom     = NAME | "(" word ")"
# exponent = INT | "-" "(" word ")" | "(" word ")"
#
# "x^(a^2)" is conjugation by a², "x^-(a)" the conjugated inverse a⁻¹x⁻¹a,
# "x^-2" an integer power.

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise WordSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or not (self.text[self.pos].isalpha()):
            raise WordSyntaxError("expected a symbol name", self.pos)
        self.pos += 1
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise WordSyntaxError("expected digits", self.pos)
        return int(self.text[start : self.pos])


def parse_word(text: str, table: SymbolTable) -> SurfaceWord:
    """Parse word text into a SurfaceWord; no expansion is performed.

    Unknown symbols and syntax errors are reported with their position in
    the input.
    """
    sc = _Scanner(text)

    def parse_atom() -> Node:
        if sc.peek() == "(":
            sc.take("(")
            inner = parse_concat()
            sc.take(")")
            return inner
        start = sc.pos
        name = sc.name()
        if not table.is_declared(name):
            raise WordSyntaxError(f"unknown symbol {name!r}", start)
        return Atom(name)

    def parse_factor() -> Node:
        base = parse_atom()
        if sc.peek() != "^":
            return base
        sc.take("^")
        ch = sc.peek()
        if ch == "(":
            sc.take("(")
            by = parse_concat()
            sc.take(")")
            return Conj(base, by)
        if ch == "-":
            # either "-(w)" (conjugated inverse) or a negative integer power
            mark = sc.pos
            sc.take("-")
            if sc.peek() == "(":
                sc.take("(")
                by = parse_concat()
                sc.take(")")
                return Conj(Inv(base), by)
            sc.pos = mark
            return Pow(base, sc.integer())
        return Pow(base, sc.integer())

    def parse_concat() -> Node:
        parts = [parse_factor()]
        while sc.peek() == "*":
            sc.take("*")
            parts.append(parse_factor())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    root = parse_concat()
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise WordSyntaxError("trailing input", sc.pos)
    return SurfaceWord(root, table)


# --- equation systems and exponent data --------------------------------------

@dataclass(frozen=True)
class EquationSystem:
    """Finite list of equations w = 1 sharing one SymbolTable."""

    table: SymbolTable
    equations: tuple[FlatWord, ...]

    def __post_init__(self):
        for eq in self.equations:
            if eq.table != self.table:
                raise ValueError("all equations must share the system's table")

    @classmethod
    def from_texts(cls, texts: Iterable[str], table: SymbolTable) -> "EquationSystem":
        return cls(table, tuple(flatten(parse_word(t, table)) for t in texts))


def exponent_sum(w: FlatWord, unknown: str) -> int:
    """Sum of the signs of the occurrences of one unknown."""
    if unknown not in w.table.unknowns:
        raise UndeclaredSymbolError(f"{unknown!r} is not a declared unknown")
    return sum(s for n, s in w.letters if n == unknown)


def exponent_matrix(sys: EquationSystem) -> IntMatrix:
    """Rows = equations in order, columns = unknowns in table order."""
    return IntMatrix.from_rows(
        [[exponent_sum(eq, u) for u in sys.table.unknowns] for eq in sys.equations],
        cols=len(sys.table.unknowns),
    )
