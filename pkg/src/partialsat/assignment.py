"""Total and partial truth assignments.

An assignment has three interchangeable views: a map from atoms to
booleans, a set of literals, and a cube (conjunction-of-literals formula).
Text syntax for the literal-set view: comma-separated literals, e.g.
``A1, !A3``.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import InconsistentAssignmentError, ParseError
from .formula import (
    Atom,
    Formula,
    Literal,
    TRUE,
    TokenStream,
    and_all,
    cube_literals,
    tokenize,
)


class Assignment:
    """An immutable partial (or total) map from atoms to booleans."""

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[Atom, bool] = ()):
        self._bindings = dict(bindings)

    @classmethod
    def from_literals(cls, literals: Iterable[Literal]) -> "Assignment":
        bindings: dict[Atom, bool] = {}
        for lit in literals:
            old = bindings.get(lit.atom)
            if old is not None and old != lit.positive:
                raise InconsistentAssignmentError(
                    f"inconsistent literal set: both {lit.atom} and !{lit.atom}"
                )
            bindings[lit.atom] = lit.positive
        return cls(bindings)

    @property
    def domain(self) -> frozenset[Atom]:
        return frozenset(self._bindings)

    def value(self, atom: Atom) -> bool | None:
        return self._bindings.get(atom)

    def literals(self) -> tuple[Literal, ...]:
        """The set-of-literals view, atom-lexicographic order."""
        return tuple(
            Literal(a, v) for a, v in sorted(self._bindings.items())
        )

    def to_cube(self) -> Formula:
        """The cube view; the empty assignment maps to ``true``."""
        return and_all(lit.to_formula() for lit in self.literals())

    def is_total_for(self, atom_set: Iterable[Atom]) -> bool:
        return set(atom_set) <= set(self._bindings)

    def union(self, other: "Assignment") -> "Assignment":
        merged = dict(self._bindings)
        for atom, val in other._bindings.items():
            if merged.get(atom, val) != val:
                raise InconsistentAssignmentError(
                    f"conflicting bindings for {atom}"
                )
            merged[atom] = val
        return Assignment(merged)

    def bind(self, atom: Atom, val: bool) -> "Assignment":
        if self._bindings.get(atom, val) != val:
            raise InconsistentAssignmentError(f"conflicting bindings for {atom}")
        merged = dict(self._bindings)
        merged[atom] = val
        return Assignment(merged)

    def restrict(self, atom_set: Iterable[Atom]) -> "Assignment":
        keep = set(atom_set)
        return Assignment({a: v for a, v in self._bindings.items() if a in keep})

    def conflicts_with(self, other: "Assignment") -> bool:
        """True iff some atom is bound to opposite values by the two."""
        small, large = self._bindings, other._bindings
        if len(small) > len(large):
            small, large = large, small
        return any(large.get(a, v) != v for a, v in small.items())

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._bindings == other._bindings

    def __hash__(self) -> int:
        return hash(frozenset(self._bindings.items()))

    def __str__(self) -> str:
        return ", ".join(str(lit) for lit in self.literals())

    def __repr__(self) -> str:
        body = ", ".join(str(lit) for lit in self.literals())
        return f"Assignment({{{body}}})"


EMPTY_ASSIGNMENT = Assignment()


def from_cube(cube: Formula) -> Assignment:
    """Inverse of Assignment.to_cube; rejects non-cube formulas."""
    if cube == TRUE:
        return Assignment()
    lits = cube_literals(cube)
    if lits is None:
        raise ValueError(f"not a cube: {cube}")
    return Assignment.from_literals(lits)


def extensions(mu: Assignment, atom_set: Iterable[Atom]) -> Iterator[Assignment]:
    """All total assignments over atom_set extending mu, lexicographic order.

    Lazy: yields 2^(|atom_set| - |domain(mu)|) assignments, true before
    false per atom, atoms in lexicographic order.
    """
    universe = set(atom_set)
    escaped = mu.domain - universe
    if escaped:
        names = ", ".join(sorted(a.name for a in escaped))
        raise ValueError(f"assignment binds atoms outside the universe: {names}")
    unassigned = sorted(universe - mu.domain)
    for values in product((True, False), repeat=len(unassigned)):
        yield mu.union(Assignment(dict(zip(unassigned, values))))


def parse_assignment(text: str) -> Assignment:
    """Parse the literal-set syntax, e.g. ``A1, !A3``; blank means empty."""
    stream = TokenStream(tokenize(text))
    literals: list[Literal] = []
    if stream.peek().kind != "EOF":
        while True:
            positive = True
            if stream.peek().kind == "NOT":
                stream.next()
                positive = False
            tok = stream.expect("NAME", "an atom name")
            literals.append(Literal(Atom(tok.text), positive))
            if stream.peek().kind != "COMMA":
                break
            stream.next()
    tok = stream.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    return Assignment.from_literals(literals)
