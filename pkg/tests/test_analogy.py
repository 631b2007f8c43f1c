import json

import pytest

from fiqhkit.analogy import (
    AnalogyCase,
    direct_analogy,
    inverse_analogy,
    load_analogy_doc,
    match_formula,
    normalize_conditional_norms,
    validate_analogy,
)
from fiqhkit.datafiles import packaged_data_dir
from fiqhkit.errors import AnalogyError, LoadError
from fiqhkit.formulas import (
    Iff,
    assignments_over,
    evaluate,
    negate,
    parse_formula,
    print_formula,
)


def load_sample(name):
    path = packaged_data_dir() / name
    return load_analogy_doc(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def itikaf():
    return load_sample("itikaf.analogy.json")


@pytest.fixture(scope="module")
def parents():
    return load_sample("parents.analogy.json")


class TestMatchFormula:
    def test_variable_binds_atom(self):
        pattern = parse_formula("X -> hurt", ["X"])
        target = parse_formula("beating -> hurt")
        assert match_formula(pattern, target) == {"X": "beating"}

    def test_consistent_bindings_required(self):
        pattern = parse_formula("X & X", ["X"])
        assert match_formula(pattern, parse_formula("A & A")) == {"X": "A"}
        assert match_formula(pattern, parse_formula("A & B")) is None

    def test_variable_does_not_bind_compound(self):
        pattern = parse_formula("X", ["X"])
        assert match_formula(pattern, parse_formula("A & B")) is None


class TestDirectAnalogy:
    def test_parents_case(self, parents):
        candidate = direct_analogy(parents.primary, parents.secondary.case_formula)
        assert print_formula(candidate.derived) == "beating -> forbidden"
        assert candidate.substitution == {"X": "beating"}
        assert candidate.justification.derived
        assert candidate.justification.replay()

    def test_identity_analogy(self):
        primary = AnalogyCase(
            parse_formula("ugh -> hurt"), parse_formula("ugh -> forbidden"), "primary"
        )
        candidate = direct_analogy(primary, parse_formula("ugh -> hurt"))
        assert candidate.derived == parse_formula("ugh -> forbidden")

    def test_unrelated_reason_fails(self, parents):
        with pytest.raises(AnalogyError, match="unifying"):
            direct_analogy(parents.primary, parse_formula("eating -> nourishes"))


class TestInverseAnalogy:
    def test_itikaf_case(self, itikaf):
        candidate = inverse_analogy(itikaf.primary, itikaf.secondary)
        assert print_formula(candidate.derived) == "Fs -> Fv"
        assert candidate.substitution == {"X": "Fv"}
        assert candidate.justification.derived
        assert any(
            step.substitution == {"X": "Fv"} for step in candidate.justification.steps
        )
        assert candidate.justification.replay()

    def test_non_inverted_secondary_fails(self, itikaf):
        bad_secondary = AnalogyCase(parse_formula("Fv -> Prv"), None, "secondary")
        with pytest.raises(AnalogyError, match="opposite"):
            inverse_analogy(itikaf.primary, bad_secondary)

    def test_two_atom_toy_matches_truth_table(self):
        # Primary: given A and B together, X is not required; opposite
        # verdict schema inverse(C -> X).  Secondary establishes A & B -> D.
        primary = AnalogyCase(
            parse_formula("inverse(A & B -> X)", ["X"]),
            parse_formula("inverse(C -> X)", ["X"]),
            "primary",
        )
        secondary = AnalogyCase(parse_formula("A & B -> D"), None, "secondary")
        candidate = inverse_analogy(primary, secondary)
        assert candidate.derived == parse_formula("C -> D")

        # 16-row oracle over {A, B, C, D}: the justification premises must
        # entail the derived rule in every assignment.
        premises = candidate.justification.premises()
        conclusion = candidate.derived
        for a in assignments_over(["A", "B", "C", "D"]):
            if all(evaluate(p, a) for p in premises):
                assert evaluate(conclusion, a)

    def test_double_inverse_is_direct(self, itikaf):
        # Inverting the already-inverted case: the flipped primary carries
        # the opposite reason and verdict, and a secondary establishing the
        # original reason instance triggers it.  The outcome must coincide
        # with a plain direct transfer from the original primary.
        forward = inverse_analogy(itikaf.primary, itikaf.secondary)
        flipped_primary = AnalogyCase(
            negate(itikaf.primary.case_formula),
            negate(itikaf.primary.verdict_formula),
            "primary",
        )
        back = inverse_analogy(
            flipped_primary,
            AnalogyCase(forward.reason_formula, None, "secondary"),
        )
        direct = direct_analogy(itikaf.primary, forward.reason_formula)
        assert back.derived == direct.derived


class TestValidateAnalogy:
    def test_complete_itikaf_is_valid(self, itikaf):
        candidate = inverse_analogy(itikaf.primary, itikaf.secondary)
        validation = validate_analogy(candidate, itikaf.axioms)
        assert validation.valid
        assert validation.missing == ()

    def test_truncated_reason_is_invalid(self, itikaf):
        truncated = AnalogyCase(
            parse_formula("inverse(Fs & Pgv -> X)", ["X"]),
            parse_formula("inverse(Fs -> X)", ["X"]),
            "primary",
        )
        candidate = inverse_analogy(truncated, itikaf.secondary)
        validation = validate_analogy(candidate)
        assert not validation.valid
        assert "sufficient" in validation.missing
        assert "sufficient" in validation.countermodels
        assert "not sufficient" in validation.message

    def test_biconditional_toy_rule_set(self):
        primary = AnalogyCase(parse_formula("r"), parse_formula("v"), "primary")
        candidate = direct_analogy(primary, parse_formula("r"))
        validation = validate_analogy(candidate, [parse_formula("r <-> v")])
        assert validation.valid

    def test_direct_needs_its_link(self, parents):
        candidate = direct_analogy(parents.primary, parents.secondary.case_formula)
        with_link = validate_analogy(candidate, parents.axioms)
        assert with_link.valid
        bare = validate_analogy(candidate)
        assert not bare.valid

    def test_failed_direction_has_countermodel(self, itikaf):
        truncated = AnalogyCase(
            parse_formula("inverse(Fs & Pgv -> X)", ["X"]),
            parse_formula("inverse(Fs -> X)", ["X"]),
            "primary",
        )
        candidate = inverse_analogy(truncated, itikaf.secondary)
        validation = validate_analogy(candidate)
        for direction, model in validation.countermodels.items():
            assert direction in validation.missing
            assert isinstance(model, dict) and model


class TestNormalization:
    def test_inverted_conditional(self):
        f = parse_formula("inverse(A -> B)")
        assert normalize_conditional_norms(f) == parse_formula("A -> inverse(B)")

    def test_double_negation_collapses(self):
        f = parse_formula("inverse(A -> inverse(B))")
        assert normalize_conditional_norms(f) == parse_formula("A -> B")

    def test_untouched_shapes(self):
        f = parse_formula("inverse(A) & (B | C)")
        assert normalize_conditional_norms(f) == f


class TestLoadDoc:
    def test_primary_needs_verdict(self):
        doc = {
            "mode": "direct",
            "primary": {"reason": "a", "verdict": "b"},
            "secondary": {"reason": "a"},
        }
        parsed = load_analogy_doc(doc)
        assert parsed.primary.verdict_formula is not None

    def test_missing_field(self):
        with pytest.raises(LoadError):
            load_analogy_doc({"mode": "direct", "primary": {"reason": "a"}})

    def test_unknown_mode(self):
        with pytest.raises(LoadError, match="mode"):
            load_analogy_doc(
                {
                    "mode": "sideways",
                    "primary": {"reason": "a", "verdict": "b"},
                    "secondary": {"reason": "a"},
                }
            )

    def test_malformed_json(self):
        with pytest.raises(LoadError):
            load_analogy_doc("{not json")

    def test_primary_without_verdict_rejected(self):
        with pytest.raises(LoadError, match="established verdict"):
            AnalogyCase(parse_formula("a"), None, "primary")
