"""Formula AST, atoms, parsing, printing, and structural predicates.

Grammar (infix, `#` starts a line comment):

    iff     := implies ( "<->" implies )*          left-associative
    implies := or ( "->" implies )?                right-associative
    or      := and ( "|" and )*                    left-associative
    and     := not ( "&" not )*                    left-associative
    not     := "!" not | atom | "true" | "false" | "(" iff ")"
    atom    := [A-Za-z][A-Za-z0-9_]*               except reserved words

Precedence, tightest first: ! > & > | > -> > <->.
`true`, `false`, and `exists` are reserved words, not atom names.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError

_ATOM_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_RESERVED = {"true", "false", "exists"}


@total_ordering
@dataclass(frozen=True)
class Atom:
    """A propositional atom, identified by name; ordered lexicographically."""

    name: str

    def __post_init__(self):
        if not _ATOM_NAME.fullmatch(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")
        if self.name in _RESERVED:
            raise ValueError(f"reserved word cannot be an atom name: {self.name!r}")

    def __lt__(self, other: "Atom") -> bool:
        return self.name < other.name

    def __str__(self) -> str:
        return self.name


class Formula:
    """Base class for formula AST nodes; instances are immutable trees."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class AtomRef(Formula):
    atom: Atom


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)

_BINARY = (And, Or, Implies, Iff)


@total_ordering
@dataclass(frozen=True)
class Literal:
    """An atom or its negation."""

    atom: Atom
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def to_formula(self) -> Formula:
        ref = AtomRef(self.atom)
        return ref if self.positive else Not(ref)

    def __lt__(self, other: "Literal") -> bool:
        return (self.atom, not self.positive) < (other.atom, not other.positive)

    def __str__(self) -> str:
        return self.atom.name if self.positive else "!" + self.atom.name


def atoms(f: Formula) -> frozenset[Atom]:
    """The set of atoms occurring in f."""
    found: set[Atom] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, AtomRef):
            found.add(node.atom)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


def and_all(parts: Iterable[Formula], empty: Formula = TRUE) -> Formula:
    """Left-associated conjunction of parts; `empty` when parts is empty."""
    result: Formula | None = None
    for p in parts:
        result = p if result is None else And(result, p)
    return empty if result is None else result


def or_all(parts: Iterable[Formula], empty: Formula = FALSE) -> Formula:
    """Left-associated disjunction of parts; `empty` when parts is empty."""
    result: Formula | None = None
    for p in parts:
        result = p if result is None else Or(result, p)
    return empty if result is None else result


# ------------------------------------------------------------------ lexer

class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


_TOKEN_SPEC = [
    ("IFF", "<->"),
    ("IMPLIES", "->"),
    ("NOT", "!"),
    ("AND", "&"),
    ("OR", "|"),
    ("LPAREN", "("),
    ("RPAREN", ")"),
    ("DOT", "."),
    ("COMMA", ","),
]


def tokenize(text: str) -> list[Token]:
    """Split text into tokens; used by the formula, assignment, and
    quantified-formula parsers."""
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        matched = False
        for kind, lexeme in _TOKEN_SPEC:
            if text.startswith(lexeme, i):
                tokens.append(Token(kind, lexeme, line, col))
                i += len(lexeme)
                col += len(lexeme)
                matched = True
                break
        if matched:
            continue
        m = _ATOM_NAME.match(text, i)
        if m:
            word = m.group()
            if word == "true":
                kind = "TRUE"
            elif word == "false":
                kind = "FALSE"
            elif word == "exists":
                kind = "EXISTS"
            else:
                kind = "NAME"
            tokens.append(Token(kind, word, line, col))
            i = m.end()
            col += len(word)
            continue
        raise ParseError(f"unknown token {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def next(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind != "EOF":
            self._pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text if tok.kind != "EOF" else "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", tok.line, tok.column)
        return self.next()


def parse_formula_body(stream: TokenStream) -> Formula:
    """Parse one formula from the stream, leaving trailing tokens unconsumed."""
    return _parse_iff(stream)


def _parse_iff(s: TokenStream) -> Formula:
    left = _parse_implies(s)
    while s.peek().kind == "IFF":
        s.next()
        left = Iff(left, _parse_implies(s))
    return left


def _parse_implies(s: TokenStream) -> Formula:
    left = _parse_or(s)
    if s.peek().kind == "IMPLIES":
        s.next()
        return Implies(left, _parse_implies(s))
    return left


def _parse_or(s: TokenStream) -> Formula:
    left = _parse_and(s)
    while s.peek().kind == "OR":
        s.next()
        left = Or(left, _parse_and(s))
    return left


def _parse_and(s: TokenStream) -> Formula:
    left = _parse_not(s)
    while s.peek().kind == "AND":
        s.next()
        left = And(left, _parse_not(s))
    return left


def _parse_not(s: TokenStream) -> Formula:
    tok = s.peek()
    if tok.kind == "NOT":
        s.next()
        return Not(_parse_not(s))
    if tok.kind == "TRUE":
        s.next()
        return TRUE
    if tok.kind == "FALSE":
        s.next()
        return FALSE
    if tok.kind == "NAME":
        s.next()
        return AtomRef(Atom(tok.text))
    if tok.kind == "LPAREN":
        s.next()
        inner = _parse_iff(s)
        s.expect("RPAREN", "')'")
        return inner
    shown = tok.text if tok.kind != "EOF" else "end of input"
    raise ParseError(f"expected a formula, found {shown!r}", tok.line, tok.column)


def parse(text: str) -> Formula:
    """Parse a formula string into an AST.

    Raises ParseError (with line and column) on malformed input.
    """
    stream = TokenStream(tokenize(text))
    f = parse_formula_body(stream)
    stream.expect("EOF", "end of input")
    return f


# ---------------------------------------------------------------- printer

_LEVEL_IFF, _LEVEL_IMPLIES, _LEVEL_OR, _LEVEL_AND, _LEVEL_NOT, _LEVEL_ATOM = 1, 2, 3, 4, 5, 6


def _level(f: Formula) -> int:
    if isinstance(f, Iff):
        return _LEVEL_IFF
    if isinstance(f, Implies):
        return _LEVEL_IMPLIES
    if isinstance(f, Or):
        return _LEVEL_OR
    if isinstance(f, And):
        return _LEVEL_AND
    if isinstance(f, Not):
        return _LEVEL_NOT
    return _LEVEL_ATOM


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def format_formula(f: Formula) -> str:
    """Render f with minimal parentheses; parse(format_formula(f)) == f."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, AtomRef):
        return f.atom.name
    if isinstance(f, Not):
        return "!" + _paren(format_formula(f.arg), _level(f.arg) < _LEVEL_NOT)
    if isinstance(f, (And, Or)):
        op, lvl = ("&", _LEVEL_AND) if isinstance(f, And) else ("|", _LEVEL_OR)
        left = _paren(format_formula(f.left), _level(f.left) < lvl)
        # same-level right operand must be re-parenthesized to survive
        # the left-associative parse
        right = _paren(format_formula(f.right), _level(f.right) <= lvl)
        return f"{left} {op} {right}"
    if isinstance(f, Implies):
        left = _paren(format_formula(f.left), _level(f.left) <= _LEVEL_IMPLIES)
        right = _paren(format_formula(f.right), _level(f.right) < _LEVEL_IMPLIES)
        return f"{left} -> {right}"
    if isinstance(f, Iff):
        left = _paren(format_formula(f.left), _level(f.left) < _LEVEL_IFF)
        right = _paren(format_formula(f.right), _level(f.right) <= _LEVEL_IFF)
        return f"{left} <-> {right}"
    raise TypeError(f"not a formula: {f!r}")


# ----------------------------------------------------- structural queries

@dataclass(frozen=True)
class StructureReport:
    is_literal: bool
    is_clause: bool
    is_cube: bool
    is_cnf: bool
    is_tautology_free_cnf: bool


def is_literal(f: Formula) -> bool:
    return isinstance(f, AtomRef) or (isinstance(f, Not) and isinstance(f.arg, AtomRef))


def as_literal(f: Formula) -> Literal | None:
    if isinstance(f, AtomRef):
        return Literal(f.atom, True)
    if isinstance(f, Not) and isinstance(f.arg, AtomRef):
        return Literal(f.arg.atom, False)
    return None


def _flatten(f: Formula, node_type: type) -> Iterator[Formula]:
    """Leaves of a tree of `node_type` nodes, left to right, any association."""
    if isinstance(f, node_type):
        yield from _flatten(f.left, node_type)
        yield from _flatten(f.right, node_type)
    else:
        yield f


def clause_literals(f: Formula) -> list[Literal] | None:
    """The literals of a clause (any association of the Or tree), else None."""
    lits = []
    for leaf in _flatten(f, Or):
        lit = as_literal(leaf)
        if lit is None:
            return None
        lits.append(lit)
    return lits


def cube_literals(f: Formula) -> list[Literal] | None:
    """The literals of a cube (any association of the And tree), else None."""
    lits = []
    for leaf in _flatten(f, And):
        lit = as_literal(leaf)
        if lit is None:
            return None
        lits.append(lit)
    return lits


def cnf_clauses(f: Formula) -> list[Formula] | None:
    """The clauses of a CNF formula (any association), else None.

    The constants are not handled here; callers treat them separately.
    """
    clauses = []
    for leaf in _flatten(f, And):
        if clause_literals(leaf) is None:
            return None
        clauses.append(leaf)
    return clauses


def classify(f: Formula) -> StructureReport:
    """Structure report for f: literal / clause / cube / CNF / tautology-free CNF.

    The constants count as degenerate CNF (and trivially tautology-free)
    but are not literals, clauses, or cubes.
    """
    if isinstance(f, Const):
        return StructureReport(False, False, False, True, True)
    lit = is_literal(f)
    clauses = cnf_clauses(f)
    is_cnf = clauses is not None
    taut_free = is_cnf
    if is_cnf:
        for c in clauses:
            lits = clause_literals(c)
            seen = {(l.atom, l.positive) for l in lits}
            if any((a, not pos) in seen for a, pos in seen):
                taut_free = False
                break
    return StructureReport(
        is_literal=lit,
        is_clause=clause_literals(f) is not None,
        is_cube=cube_literals(f) is not None,
        is_cnf=is_cnf,
        is_tautology_free_cnf=taut_free,
    )
