"""Existentially quantified formulas: Shannon expansion and the lifted
partial-assignment checks.

A partial mu over the free atoms exists-validates `exists B . psi` when one
total delta over B makes mu ∪ delta validate psi; it exists-entails when
every total eta ⊇ mu over the free atoms admits some delta (possibly a
different one per eta) with eta ∪ delta satisfying psi.  Both agree with
the plain checks applied to the Shannon expansion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .assignment import Assignment, extensions
from .errors import ParseError, ResourceLimitError
from .formula import (
    Atom,
    FALSE,
    Formula,
    and_all,
    atoms,
    clause_literals,
    cnf_clauses,
    or_all,
    parse_formula_body,
    tokenize,
    TokenStream,
)
from .partial_sat import validates
from .semantics import residual, sat_total
from . import limits


@dataclass(frozen=True)
class ExistentialFormula:
    """A matrix with an existentially bound atom set; vacuous quantification
    is permitted."""

    matrix: Formula
    quantified: frozenset[Atom] = field(default_factory=frozenset)

    @property
    def free_atoms(self) -> frozenset[Atom]:
        return atoms(self.matrix) - self.quantified

    def __str__(self) -> str:
        if not self.quantified:
            return str(self.matrix)
        names = " ".join(a.name for a in sorted(self.quantified))
        return f"exists {names} . {self.matrix}"


def parse_existential(text: str) -> ExistentialFormula:
    """Parse `exists B1 B2 . <formula>`; without the prefix the bound set
    is empty."""
    stream = TokenStream(tokenize(text))
    quantified: frozenset[Atom] = frozenset()
    if stream.peek().kind == "EXISTS":
        stream.next()
        names = []
        while stream.peek().kind == "NAME":
            names.append(Atom(stream.next().text))
        if not names:
            tok = stream.peek()
            raise ParseError(
                "expected at least one atom name after 'exists'",
                tok.line,
                tok.column,
            )
        stream.expect("DOT", "'.' after the quantified atoms")
        quantified = frozenset(names)
    matrix = parse_formula_body(stream)
    stream.expect("EOF", "end of input")
    return ExistentialFormula(matrix=matrix, quantified=quantified)


def _check_quantified_cap(count: int, cap: int | None) -> None:
    limit = limits.expansion_cap(cap)
    if count > limit:
        raise ResourceLimitError(
            f"expanding {count} quantified atoms exceeds the cap of {limit}"
        )


def _guard_bound_domain(mu: Assignment, ef: ExistentialFormula) -> None:
    clash = sorted(a.name for a in mu.domain if a in ef.quantified)
    if clash:
        raise ValueError(
            "assignment binds quantified atom(s): " + ", ".join(clash)
        )


def _delta_sweep(ordered: list[Atom]):
    for bits in product((True, False), repeat=len(ordered)):
        yield Assignment(dict(zip(ordered, bits)))


def _tidy_disjunct(d: Formula) -> Formula:
    """Drop clauses subsumed by (or duplicating) another clause of a CNF
    disjunct; non-CNF disjuncts are left alone."""
    clauses = cnf_clauses(d)
    if clauses is None or len(clauses) < 2:
        return d
    literal_sets = []
    for clause in clauses:
        lits = clause_literals(clause)
        assert lits is not None
        literal_sets.append(frozenset(lits))
    kept = []
    for i, (clause, lits) in enumerate(zip(clauses, literal_sets)):
        subsumed = any(
            (other < lits) or (other == lits and j < i)
            for j, other in enumerate(literal_sets)
            if j != i
        )
        if not subsumed:
            kept.append(clause)
    if len(kept) == len(clauses):
        return d
    return and_all(kept)


def shannon_expand(
    ef: ExistentialFormula,
    expansion_cap: int | None = None,
    keep_bot_disjuncts: bool = False,
) -> Formula:
    """Disjoin the residuals of the matrix under every total assignment of
    the bound atoms, in lexicographic order.

    False disjuncts are dropped unless kept by flag; each remaining CNF
    disjunct has subsumed clauses removed.  An empty bound set returns the
    matrix unchanged.
    """
    if not ef.quantified:
        return ef.matrix
    _check_quantified_cap(len(ef.quantified), expansion_cap)
    ordered = sorted(ef.quantified)
    disjuncts = []
    for delta in _delta_sweep(ordered):
        d = _tidy_disjunct(residual(ef.matrix, delta))
        if d == FALSE and not keep_bot_disjuncts:
            continue
        disjuncts.append(d)
    return or_all(disjuncts)


def exists_validates(
    mu: Assignment,
    ef: ExistentialFormula,
    expansion_cap: int | None = None,
) -> tuple[bool, Assignment | None]:
    """True with the lexicographically first witnessing delta iff some total
    delta over the bound atoms makes mu ∪ delta validate the matrix."""
    _guard_bound_domain(mu, ef)
    _check_quantified_cap(len(ef.quantified), expansion_cap)
    for delta in _delta_sweep(sorted(ef.quantified)):
        if validates(mu.union(delta), ef.matrix):
            return True, delta
    return False, None


def exists_entails(
    mu: Assignment,
    ef: ExistentialFormula,
    atom_cap: int | None = None,
    expansion_cap: int | None = None,
) -> tuple[bool, Assignment | None]:
    """True iff every total eta ⊇ mu over the free atoms admits some delta
    satisfying the matrix; on failure the first counterexample eta is
    returned.

    The delta may differ per eta, so this iterates both sweeps directly
    instead of materializing the Shannon expansion.
    """
    _guard_bound_domain(mu, ef)
    _check_quantified_cap(len(ef.quantified), expansion_cap)
    universe = ef.free_atoms | mu.domain
    unassigned = len(universe - mu.domain)
    limit = limits.max_atoms(atom_cap)
    if unassigned > limit:
        raise ResourceLimitError(
            f"sweeping {unassigned} unassigned free atoms exceeds the cap "
            f"of {limit}"
        )
    ordered = sorted(ef.quantified)
    for eta in extensions(mu, universe):
        if not any(
            sat_total(ef.matrix, eta.union(delta))
            for delta in _delta_sweep(ordered)
        ):
            return False, eta
    return True, None
