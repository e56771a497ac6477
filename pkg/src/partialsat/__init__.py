"""Partial truth assignments of propositional formulas, done precisely.

A partial assignment can satisfy a formula in two inequivalent senses:
*validating* it (three-valued evaluation returns true) or *entailing* it
(every total extension satisfies it).  This package makes the distinction
first-class: checking, residual simplification, AllSAT enumeration under
either notion, CNF-ization that reports what it loses, Shannon expansion
of existential formulas, and predicate abstraction in both modes.
"""
from .assignment import (
    Assignment,
    EMPTY_ASSIGNMENT,
    extensions,
    from_cube,
    parse_assignment,
)
from .cnfize import (
    LossCase,
    LossReport,
    TseitinResult,
    check_entailment_loss,
    check_validation_loss,
    strip_tautologies,
    to_dimacs,
    tseitin,
)
from .enumeration import (
    EnumResult,
    Obdd,
    VerificationReport,
    build_obdd,
    dpll_enumerate,
    dpll_first_assignment,
    obdd_enumerate,
    obdd_to_formula,
    tableaux_enumerate,
    verify_enumeration,
)
from .errors import (
    InconsistentAssignmentError,
    ParseError,
    PartialSatError,
    ResourceLimitError,
)
from .formula import (
    And,
    Atom,
    AtomRef,
    Const,
    FALSE,
    Formula,
    Iff,
    Implies,
    Literal,
    Not,
    Or,
    TRUE,
    and_all,
    atoms,
    classify,
    clause_literals,
    cnf_clauses,
    format_formula,
    is_literal,
    or_all,
    parse,
)
from .partial_sat import (
    SatVerdict,
    cnf_equivalence_check,
    entails,
    extend_to_validating,
    most_frequent_atom,
    validates,
    verdict,
)
from .predabs import (
    ModeComparison,
    PredAbsProblem,
    compare_modes,
    enumerate_abstraction,
    problem_from_json,
    to_existential,
)
from .quantified import (
    ExistentialFormula,
    exists_entails,
    exists_validates,
    parse_existential,
    shannon_expand,
)
from .semantics import (
    TruthValue3,
    brute_equivalent,
    brute_satisfiable,
    brute_valid,
    eval3,
    first_falsifying,
    first_satisfying,
    residual,
    sat_total,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Assignment",
    "Atom",
    "AtomRef",
    "Const",
    "EMPTY_ASSIGNMENT",
    "EnumResult",
    "ExistentialFormula",
    "FALSE",
    "Formula",
    "Iff",
    "Implies",
    "InconsistentAssignmentError",
    "Literal",
    "LossCase",
    "LossReport",
    "ModeComparison",
    "Not",
    "Obdd",
    "Or",
    "ParseError",
    "PartialSatError",
    "PredAbsProblem",
    "ResourceLimitError",
    "SatVerdict",
    "TRUE",
    "TruthValue3",
    "TseitinResult",
    "VerificationReport",
    "and_all",
    "atoms",
    "brute_equivalent",
    "brute_satisfiable",
    "brute_valid",
    "build_obdd",
    "check_entailment_loss",
    "check_validation_loss",
    "classify",
    "clause_literals",
    "cnf_clauses",
    "cnf_equivalence_check",
    "compare_modes",
    "dpll_enumerate",
    "dpll_first_assignment",
    "entails",
    "enumerate_abstraction",
    "eval3",
    "exists_entails",
    "exists_validates",
    "extend_to_validating",
    "extensions",
    "first_falsifying",
    "first_satisfying",
    "format_formula",
    "from_cube",
    "is_literal",
    "most_frequent_atom",
    "obdd_enumerate",
    "obdd_to_formula",
    "or_all",
    "parse",
    "parse_assignment",
    "parse_existential",
    "problem_from_json",
    "residual",
    "sat_total",
    "shannon_expand",
    "strip_tautologies",
    "tableaux_enumerate",
    "to_dimacs",
    "to_existential",
    "tseitin",
    "validates",
    "verdict",
    "verify_enumeration",
]
