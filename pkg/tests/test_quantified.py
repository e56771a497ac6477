"""Existential formulas: parsing, Shannon expansion, and the lifted checks."""
import random

import pytest

from partialsat import (
    Assignment,
    Atom,
    EMPTY_ASSIGNMENT,
    ExistentialFormula,
    FALSE,
    ParseError,
    ResourceLimitError,
    TRUE,
    atoms,
    brute_satisfiable,
    entails,
    exists_entails,
    exists_validates,
    parse,
    parse_assignment,
    parse_existential,
    residual,
    shannon_expand,
    validates,
)
from gen import atom_pool, random_formula, random_partial_assignment

CNF_OF_GAP = (
    "(B1 | B2) & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2)"
    " & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)"
)
GAP_EXISTENTIAL = parse_existential(f"exists B1 B2 . {CNF_OF_GAP}")


class TestParseExistential:
    def test_golden(self):
        ef = parse_existential("exists B1 B2 . (A1 & B1) | B2")
        assert ef.quantified == frozenset({Atom("B1"), Atom("B2")})
        assert ef.matrix == parse("(A1 & B1) | B2")
        assert ef.free_atoms == frozenset({Atom("A1")})

    def test_no_prefix_means_no_bound_atoms(self):
        ef = parse_existential("A1 -> A2")
        assert ef.quantified == frozenset()
        assert ef.free_atoms == atoms(ef.matrix)

    def test_str_round_trip(self):
        ef = GAP_EXISTENTIAL
        assert str(ef).startswith("exists B1 B2 . (B1 | B2)")
        assert parse_existential(str(ef)) == ef

    def test_str_without_quantifier_is_plain(self):
        assert str(parse_existential("A1 & A2")) == "A1 & A2"

    def test_duplicate_names_collapse(self):
        assert parse_existential("exists B1 B1 . B1").quantified == frozenset(
            {Atom("B1")}
        )

    def test_missing_atom_list(self):
        with pytest.raises(ParseError, match="at least one atom"):
            parse_existential("exists . A1")

    def test_missing_dot(self):
        with pytest.raises(ParseError, match=r"'\.'"):
            parse_existential("exists B1 A1")

    def test_missing_body(self):
        with pytest.raises(ParseError):
            parse_existential("exists B1 . ")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError, match="end of input"):
            parse_existential("exists B1 . B1 B1")


class TestShannonExpand:
    def test_golden_with_false_disjuncts_kept(self):
        expanded = shannon_expand(GAP_EXISTENTIAL, keep_bot_disjuncts=True)
        assert str(expanded) == "A1 & A2 & !A2 | A1 & A2 | A1 & !A2 | false"

    def test_golden_with_false_disjuncts_dropped(self):
        expanded = shannon_expand(GAP_EXISTENTIAL)
        assert str(expanded) == "A1 & A2 & !A2 | A1 & A2 | A1 & !A2"

    def test_vacuous_quantification_returns_matrix(self):
        ef = parse_existential("(A1 & A2) | A1")
        assert shannon_expand(ef) is ef.matrix

    def test_single_bound_atom_matrix(self):
        assert shannon_expand(parse_existential("exists B1 . B1")) == TRUE
        assert str(
            shannon_expand(parse_existential("exists B1 . B1"), keep_bot_disjuncts=True)
        ) == "true | false"

    def test_bound_atom_absent_from_matrix_duplicates_branches(self):
        assert str(shannon_expand(parse_existential("exists B9 . A1"))) == "A1 | A1"

    def test_unsatisfiable_matrix_collapses_to_false(self):
        ef = parse_existential("exists B1 . B1 & !B1")
        assert shannon_expand(ef) == FALSE

    def test_expansion_cap(self):
        ef = parse_existential("exists B1 B2 B3 . B1 & B2 & B3 & A1")
        assert shannon_expand(ef, expansion_cap=3) == parse("A1")
        with pytest.raises(ResourceLimitError):
            shannon_expand(ef, expansion_cap=2)

    def test_expansion_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("PARTIALSAT_EXPANSION_CAP", "2")
        with pytest.raises(ResourceLimitError):
            shannon_expand(parse_existential("exists B1 B2 B3 . B1 & B2 & B3 & A1"))


class TestExistsChecks:
    def test_entailment_survives_the_cnf_encoding_but_validation_does_not(self):
        mu = parse_assignment("A1")
        assert exists_entails(mu, GAP_EXISTENTIAL) == (True, None)
        assert exists_validates(mu, GAP_EXISTENTIAL) == (False, None)

    def test_validation_witness_is_lex_first(self):
        ok, delta = exists_validates(parse_assignment("A1, A2"), GAP_EXISTENTIAL)
        assert ok and str(delta) == "B1, !B2"

    def test_entailment_counterexample_is_lex_first(self):
        ok, eta = exists_entails(EMPTY_ASSIGNMENT, GAP_EXISTENTIAL)
        assert not ok and str(eta) == "!A1, A2"

    def test_vacuous_quantifier_reduces_to_plain_checks(self):
        ef = parse_existential("(A1 & A2) | (A1 & !A2)")
        mu = parse_assignment("A1")
        assert exists_validates(mu, ef) == (False, None)
        assert exists_entails(mu, ef) == (True, None)

    def test_rejects_assignment_binding_bound_atoms(self):
        with pytest.raises(ValueError, match="B1"):
            exists_validates(parse_assignment("B1"), GAP_EXISTENTIAL)
        with pytest.raises(ValueError, match="B1"):
            exists_entails(parse_assignment("B1"), GAP_EXISTENTIAL)

    def test_caps(self):
        ef = parse_existential("exists B1 B2 B3 . (B1 & B2 & B3) & (A1 | A2 | A3)")
        with pytest.raises(ResourceLimitError):
            exists_validates(EMPTY_ASSIGNMENT, ef, expansion_cap=2)
        with pytest.raises(ResourceLimitError):
            exists_entails(EMPTY_ASSIGNMENT, ef, expansion_cap=2)
        with pytest.raises(ResourceLimitError):
            exists_entails(EMPTY_ASSIGNMENT, ef, atom_cap=2)
        assert exists_entails(EMPTY_ASSIGNMENT, ef, atom_cap=3) == (
            False,
            parse_assignment("!A1, !A2, !A3"),
        )


class TestCorrespondenceWithExpansion:
    def _random_existential(self, rng, free_count, bound_count):
        free = atom_pool(free_count)
        bound = atom_pool(bound_count, prefix="B")
        matrix = random_formula(rng, free + bound, max_depth=4)
        return ExistentialFormula(matrix=matrix, quantified=frozenset(bound))

    def test_checks_agree_with_the_materialized_expansion(self):
        rng = random.Random(6001)
        for _ in range(150):
            ef = self._random_existential(rng, rng.randint(1, 5), rng.randint(1, 4))
            expanded = shannon_expand(ef)
            mu = random_partial_assignment(rng, sorted(ef.free_atoms))
            assert exists_validates(mu, ef)[0] == validates(mu, expanded)
            assert exists_entails(mu, ef)[0] == entails(mu, expanded)

    def test_expansion_flag_never_changes_the_verdicts(self):
        rng = random.Random(6002)
        for _ in range(100):
            ef = self._random_existential(rng, rng.randint(1, 4), rng.randint(1, 3))
            mu = random_partial_assignment(rng, sorted(ef.free_atoms))
            kept = shannon_expand(ef, keep_bot_disjuncts=True)
            assert validates(mu, kept) == validates(mu, shannon_expand(ef))
            assert entails(mu, kept) == entails(mu, shannon_expand(ef))

    def test_exists_validation_implies_exists_entailment(self):
        rng = random.Random(6003)
        gaps = 0
        for _ in range(200):
            ef = self._random_existential(rng, rng.randint(1, 5), rng.randint(1, 3))
            mu = random_partial_assignment(rng, sorted(ef.free_atoms))
            v = exists_validates(mu, ef)[0]
            e = exists_entails(mu, ef)[0]
            assert not (v and not e)
            gaps += e and not v
        assert gaps > 0

    def test_total_assignments_collapse_both_checks(self):
        rng = random.Random(6004)
        for _ in range(150):
            ef = self._random_existential(rng, rng.randint(1, 4), rng.randint(1, 3))
            mu = random_partial_assignment(rng, sorted(ef.free_atoms), bind_chance=1.0)
            expected = brute_satisfiable(residual(ef.matrix, mu))
            assert exists_validates(mu, ef)[0] == expected
            assert exists_entails(mu, ef)[0] == expected

    def test_witness_soundness(self):
        rng = random.Random(6005)
        for _ in range(150):
            ef = self._random_existential(rng, rng.randint(1, 4), rng.randint(1, 3))
            mu = random_partial_assignment(rng, sorted(ef.free_atoms))
            ok_v, delta = exists_validates(mu, ef)
            if ok_v:
                assert validates(mu.union(delta), ef.matrix)
            ok_e, eta = exists_entails(mu, ef)
            if not ok_e:
                assert eta.restrict(mu.domain) == mu
                assert not exists_validates(eta, ef)[0]
