"""The two notions of partial-assignment satisfiability as decision procedures.

An assignment `validates` a formula when three-valued evaluation returns
true (equivalently, the residual is the constant `true`); it `entails` the
formula when every total extension satisfies it (equivalently, the residual
is valid).  Validation implies entailment; the converse fails, e.g.
mu = {A1} entails but does not validate (A1 & A2) | (A1 & !A2).
"""
from __future__ import annotations

from dataclasses import dataclass

from .assignment import Assignment
from .formula import (
    Atom,
    AtomRef,
    FALSE,
    Formula,
    Not,
    TRUE,
    atoms,
    classify,
)
from .semantics import TruthValue3, eval3, first_falsifying, residual
from . import limits


@dataclass(frozen=True)
class SatVerdict:
    """Bundle of both checks; witness is a falsifying total extension,
    present exactly when entails is false."""

    validates: bool
    entails: bool
    witness: Assignment | None = None


def validates(mu: Assignment, f: Formula) -> bool:
    """True iff mu makes f evaluate to true under three-valued semantics.

    Polynomial in the size of f.
    """
    return eval3(f, mu) is TruthValue3.T


def _fill_false(universe: set[Atom], bound: Assignment) -> Assignment:
    rest = {a: False for a in universe if a not in bound}
    return bound.union(Assignment(rest))


def _entails_with_witness(
    mu: Assignment,
    f: Formula,
    backend: str = "auto",
    atom_cap: int | None = None,
    branch_budget: int | None = None,
) -> tuple[bool, Assignment | None]:
    if backend not in ("auto", "brute", "dpll"):
        raise ValueError(f"unknown entailment backend: {backend!r}")
    universe = set(atoms(f) | mu.domain)
    r = residual(f, mu)
    if r == TRUE:
        return True, None
    if r == FALSE:
        return False, _fill_false(universe, mu)
    r_atoms = atoms(r)
    if backend == "brute" or (
        backend == "auto" and len(r_atoms) <= limits.max_atoms(atom_cap)
    ):
        rho = first_falsifying(r, atom_cap)
        if rho is None:
            return True, None
    else:
        rho = _refute_by_dpll(r, branch_budget)
        if rho is None:
            return True, None
    return False, _fill_false(universe, mu.union(rho))


def _refute_by_dpll(r: Formula, branch_budget: int | None) -> Assignment | None:
    """Search a total assignment over atoms(r) falsifying r, via CNF-izing
    its negation; None means r is valid.

    CNF-ization only preserves satisfiability over total assignments, which
    is all this refutation needs.
    """
    from .cnfize import tseitin
    from .enumeration import dpll_first_assignment

    result = tseitin(Not(r))
    model = dpll_first_assignment(result.cnf, branch_budget)
    if model is None:
        return None
    total = _fill_false(set(atoms(result.cnf)), model)
    return total.restrict(atoms(r))


def entails(
    mu: Assignment,
    f: Formula,
    backend: str = "auto",
    atom_cap: int | None = None,
    branch_budget: int | None = None,
) -> bool:
    """True iff every total extension of mu satisfies f.

    Decided by checking validity of the residual f|mu: an exhaustive sweep
    when the residual is small enough, otherwise by refuting its negation
    with the DPLL engine.  A blown budget raises ResourceLimitError, never
    returns false.
    """
    return _entails_with_witness(mu, f, backend, atom_cap, branch_budget)[0]


def verdict(
    mu: Assignment,
    f: Formula,
    backend: str = "auto",
    atom_cap: int | None = None,
    branch_budget: int | None = None,
) -> SatVerdict:
    """Both checks at once, with a falsifying extension when entails fails."""
    v = validates(mu, f)
    e, witness = _entails_with_witness(mu, f, backend, atom_cap, branch_budget)
    assert not (v and not e), "validation must imply entailment"
    return SatVerdict(validates=v, entails=e, witness=witness)


def _atom_counts(f: Formula) -> dict[Atom, int]:
    counts: dict[Atom, int] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, AtomRef):
            counts[node.atom] = counts.get(node.atom, 0) + 1
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif hasattr(node, "left"):
            stack.append(node.left)
            stack.append(node.right)
    return counts


def most_frequent_atom(f: Formula) -> Atom | None:
    """The most frequently occurring atom of f, ties broken lexicographically."""
    counts = _atom_counts(f)
    if not counts:
        return None
    return min(counts, key=lambda a: (-counts[a], a))


def extend_to_validating(
    mu: Assignment,
    f: Formula,
    backend: str = "auto",
    atom_cap: int | None = None,
    branch_budget: int | None = None,
) -> Assignment:
    """Greedily extend an entailing mu to a validating superset.

    At each step the most frequent atom of the residual is bound, preferring
    the polarity that keeps the evaluation from going false.  The result is
    minimal only by construction (the extension stops as soon as the residual
    reaches `true`); no global minimality is attempted.
    """
    if not entails(mu, f, backend, atom_cap, branch_budget):
        raise ValueError("precondition violated: mu does not entail f")
    current = mu
    r = residual(f, current)
    while r != TRUE:
        atom = most_frequent_atom(r)
        r_true = residual(r, Assignment({atom: True}))
        if r_true != FALSE:
            current, r = current.bind(atom, True), r_true
        else:
            current, r = current.bind(atom, False), residual(r, Assignment({atom: False}))
    return current


def cnf_equivalence_check(
    mu: Assignment,
    f: Formula,
    backend: str = "auto",
    atom_cap: int | None = None,
) -> bool:
    """On tautology-free CNF the two notions coincide; check both and return
    the shared value."""
    if not classify(f).is_tautology_free_cnf:
        raise ValueError("formula must be tautology-free CNF")
    v = validates(mu, f)
    e = entails(mu, f, backend, atom_cap)
    assert v == e, "validation and entailment must coincide on tautology-free CNF"
    return v
