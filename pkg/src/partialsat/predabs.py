"""Propositional predicate abstraction enumerated as label cubes.

An abstraction problem maps a base formula over hidden atoms through a list
of labeled predicates; the abstraction is the existential formula
`exists hidden . (base ∧ ⋀ label_i <-> def_i)`.  It is enumerated as
mutually inconsistent cubes over the labels, either in validating mode
(cubes exists-validate) or in entailing mode (cubes exists-entail).
Entailing mode stops extending a cube as soon as it entails, so it never
produces more cubes than validating mode and usually produces fewer.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .assignment import Assignment
from .formula import (
    Atom,
    AtomRef,
    Formula,
    Iff,
    and_all,
    atoms,
    or_all,
    parse,
)
from .enumeration import EnumResult
from .quantified import (
    ExistentialFormula,
    exists_entails,
    exists_validates,
    shannon_expand,
)
from .semantics import brute_equivalent, brute_satisfiable, residual


@dataclass(frozen=True)
class PredAbsProblem:
    """A base formula plus an ordered list of (label atom, definition)."""

    base: Formula
    predicates: tuple[tuple[Atom, Formula], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.predicates]
        if len(set(labels)) != len(labels):
            raise ValueError("label atoms must be pairwise distinct")
        hidden = set(atoms(self.base))
        for _, definition in self.predicates:
            hidden |= atoms(definition)
        clash = sorted(label.name for label in labels if label in hidden)
        if clash:
            raise ValueError(
                "label atom(s) collide with formula atoms: " + ", ".join(clash)
            )


@dataclass(frozen=True)
class ModeComparison:
    """Cube counts and total literal counts of the two modes, plus whether
    their disjunctions are equivalent."""

    cube_count_validating: int
    cube_count_entailing: int
    total_literals_validating: int
    total_literals_entailing: int
    equivalent: bool


def problem_from_json(text: str) -> PredAbsProblem:
    """Load {base: "<formula>", predicates: [{label, def}]} from JSON text."""
    data = json.loads(text)
    if not isinstance(data, dict) or "base" not in data:
        raise ValueError("problem JSON must be an object with a 'base' key")
    base = parse(data["base"])
    predicates = []
    for entry in data.get("predicates", []):
        if not isinstance(entry, dict) or "label" not in entry or "def" not in entry:
            raise ValueError(
                "each predicate must be an object with 'label' and 'def' keys"
            )
        predicates.append((Atom(entry["label"]), parse(entry["def"])))
    return PredAbsProblem(base=base, predicates=tuple(predicates))


def to_existential(p: PredAbsProblem) -> ExistentialFormula:
    """base ∧ ⋀(label <-> def), with every non-label atom bound."""
    conjuncts: list[Formula] = [p.base]
    quantified = set(atoms(p.base))
    for label, definition in p.predicates:
        conjuncts.append(Iff(AtomRef(label), definition))
        quantified |= atoms(definition)
    return ExistentialFormula(
        matrix=and_all(conjuncts), quantified=frozenset(quantified)
    )


def enumerate_abstraction(
    p: PredAbsProblem,
    mode: str,
    expansion_cap: int | None = None,
    atom_cap: int | None = None,
) -> EnumResult:
    """Enumerate the abstraction as pairwise-inconsistent label cubes.

    DPLL over the label atoms in predicate order: a branch closes when the
    matrix is unsatisfiable under the cube, yields when the cube passes the
    mode's check (exists-validates or exists-entails), and otherwise forces
    failed literals before splitting on the next unassigned label.
    """
    if mode not in ("validating", "entailing"):
        raise ValueError(f"unknown enumeration mode: {mode!r}")
    ef = to_existential(p)
    labels = [label for label, _ in p.predicates]

    def satisfiable_with(mu: Assignment) -> bool:
        return brute_satisfiable(residual(ef.matrix, mu), atom_cap)

    def leaf_test(mu: Assignment) -> bool:
        if mode == "validating":
            return exists_validates(mu, ef, expansion_cap)[0]
        return exists_entails(mu, ef, atom_cap, expansion_cap)[0]

    collected: list[Assignment] = []

    def rec(mu: Assignment) -> None:
        while True:
            if not satisfiable_with(mu):
                return
            if leaf_test(mu):
                collected.append(mu)
                return
            forced = None
            for label in labels:
                if label in mu:
                    continue
                for value in (True, False):
                    if not satisfiable_with(mu.bind(label, value)):
                        forced = (label, not value)
                        break
                if forced:
                    break
            if forced is None:
                break
            mu = mu.bind(*forced)
        unassigned = [label for label in labels if label not in mu]
        assert unassigned, "a total open cube must pass its leaf test"
        rec(mu.bind(unassigned[0], True))
        rec(mu.bind(unassigned[0], False))

    rec(Assignment({}))
    return EnumResult(
        engine="dpll",
        mode=mode,
        formula=shannon_expand(ef, expansion_cap),
        assignments=tuple(collected),
    )


def compare_modes(
    p: PredAbsProblem,
    expansion_cap: int | None = None,
    atom_cap: int | None = None,
) -> ModeComparison:
    """Run both modes and report how much smaller the entailing result is."""
    validating = enumerate_abstraction(p, "validating", expansion_cap, atom_cap)
    entailing = enumerate_abstraction(p, "entailing", expansion_cap, atom_cap)
    equivalent = brute_equivalent(
        or_all([mu.to_cube() for mu in validating.assignments]),
        or_all([mu.to_cube() for mu in entailing.assignments]),
        atom_cap,
    )
    return ModeComparison(
        cube_count_validating=len(validating.assignments),
        cube_count_entailing=len(entailing.assignments),
        total_literals_validating=sum(
            len(mu) for mu in validating.assignments
        ),
        total_literals_entailing=sum(len(mu) for mu in entailing.assignments),
        equivalent=equivalent,
    )
