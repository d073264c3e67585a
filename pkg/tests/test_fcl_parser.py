"""Parser, validation and serializer round trips."""

import pytest

from phonolab.errors import (
    FclSemanticError,
    FclSyntaxError,
    NonMonotonePoints,
    UnknownTerm,
    UnknownVariable,
)
from phonolab.fcl import default_kb_text, parse_fcl, serialize_fcl

from fuzzy_oracle import random_system

MINIMAL = """
FUNCTION_BLOCK tiny
VAR_INPUT
    x : REAL;
END_VAR
VAR_OUTPUT
    y : REAL;
END_VAR
FUZZIFY x
    TERM low := (0, 1) (3, 0);
END_FUZZIFY
DEFUZZIFY y
    TERM small := (0, 0) (1, 1) (2, 0);
    METHOD : COG;
    DEFAULT := 0.0;
    RANGE := (0 .. 2);
END_DEFUZZIFY
RULEBLOCK main
    AND : MIN;
    ACT : MIN;
    ACCU : MAX;
    RULE 1 : IF x IS low THEN y IS small;
END_RULEBLOCK
END_FUNCTION_BLOCK
"""


class TestHappyPath:
    def test_minimal_block(self):
        system = parse_fcl(MINIMAL)
        assert system.name == "tiny"
        assert list(system.inputs) == ["x"]
        assert list(system.outputs) == ["y"]
        assert system.rule_count() == 1
        rule = system.rule_blocks[0].rules[0]
        assert rule.weight == 1.0

    def test_shipped_default_kb(self):
        system = parse_fcl(default_kb_text())
        assert len(system.inputs) == 2
        assert len(system.outputs) == 2
        assert system.rule_count() == 9

    def test_comments_and_case_insensitive_keywords(self):
        text = MINIMAL.replace("FUNCTION_BLOCK tiny",
                               "function_block tiny // inline comment")
        text = text.replace("RULEBLOCK main", "(* banner *)\nruleblock main")
        assert parse_fcl(text).name == "tiny"

    def test_with_weight_and_or_and_not(self):
        text = MINIMAL.replace(
            "RULE 1 : IF x IS low THEN y IS small;",
            "RULE 1 : IF x IS low OR x IS NOT low THEN y IS small WITH 0.25;")
        rule = parse_fcl(text).rule_blocks[0].rules[0]
        assert rule.weight == 0.25
        assert rule.antecedent.op == "OR"
        assert rule.antecedent.right.negated

    def test_singleton_terms_with_cogs(self):
        text = MINIMAL.replace(
            "    TERM small := (0, 0) (1, 1) (2, 0);\n    METHOD : COG;",
            "    TERM small := 0.5;\n    TERM big := 1.5;\n    METHOD : COGS;")
        out = parse_fcl(text).outputs["y"]
        assert out.method == "COGS"
        assert out.terms["small"].singleton == 0.5

    def test_scientific_notation_numbers(self):
        text = MINIMAL.replace("DEFAULT := 0.0;", "DEFAULT := 1e-3;")
        assert parse_fcl(text).outputs["y"].default == 1e-3

    def test_negative_range_bounds(self):
        text = MINIMAL.replace("RANGE := (0 .. 2);", "RANGE := (-2 .. 2);")
        text = text.replace("TERM small := (0, 0) (1, 1) (2, 0);",
                            "TERM small := (-2, 0) (0, 1) (2, 0);")
        assert parse_fcl(text).outputs["y"].range == (-2.0, 2.0)


class TestErrors:
    def test_unknown_term_reports_rule_line(self):
        text = MINIMAL.replace("THEN y IS small;", "THEN y IS smal;")
        with pytest.raises(UnknownTerm) as exc_info:
            parse_fcl(text)
        rule_line = MINIMAL.splitlines().index(
            "    RULE 1 : IF x IS low THEN y IS small;") + 1
        assert exc_info.value.line == rule_line

    def test_unknown_input_term_in_antecedent(self):
        text = MINIMAL.replace("IF x IS low", "IF x IS hgih")
        with pytest.raises(UnknownTerm):
            parse_fcl(text)

    def test_unknown_variable_in_rule(self):
        text = MINIMAL.replace("IF x IS low", "IF z IS low")
        with pytest.raises(UnknownVariable):
            parse_fcl(text)

    def test_syntax_error_carries_position(self):
        with pytest.raises(FclSyntaxError) as exc_info:
            parse_fcl("FUNCTION_BLOCK broken\nVAR_INPUT\n  x REAL;\nEND_VAR")
        assert exc_info.value.line == 3
        assert exc_info.value.column > 0

    def test_unterminated_comment(self):
        with pytest.raises(FclSyntaxError):
            parse_fcl("(* never closed")

    def test_non_monotone_points(self):
        text = MINIMAL.replace("TERM low := (0, 1) (3, 0);",
                               "TERM low := (3, 1) (0, 0);")
        with pytest.raises(NonMonotonePoints):
            parse_fcl(text)

    def test_membership_above_one_rejected(self):
        text = MINIMAL.replace("TERM low := (0, 1) (3, 0);",
                               "TERM low := (0, 1.5) (3, 0);")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_missing_method_rejected(self):
        text = MINIMAL.replace("    METHOD : COG;\n", "")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_missing_range_for_cog_rejected(self):
        text = MINIMAL.replace("    RANGE := (0 .. 2);\n", "")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_cog_with_singleton_terms_rejected(self):
        text = MINIMAL.replace("TERM small := (0, 0) (1, 1) (2, 0);",
                               "TERM small := 1.0;")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_unsupported_accumulation_rejected(self):
        text = MINIMAL.replace("ACCU : MAX;", "ACCU : BSUM;")
        with pytest.raises((FclSemanticError, FclSyntaxError)):
            parse_fcl(text)

    def test_configurable_or_rejected(self):
        text = MINIMAL.replace("AND : MIN;", "AND : MIN;\n    OR : MAX;")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_rule_weight_out_of_bounds(self):
        text = MINIMAL.replace("THEN y IS small;", "THEN y IS small WITH 1.5;")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_duplicate_rule_id(self):
        text = MINIMAL.replace(
            "RULE 1 : IF x IS low THEN y IS small;",
            "RULE 1 : IF x IS low THEN y IS small;\n"
            "    RULE 1 : IF x IS low THEN y IS small;")
        with pytest.raises(FclSemanticError):
            parse_fcl(text)

    def test_trailing_garbage_rejected(self):
        with pytest.raises(FclSyntaxError):
            parse_fcl(MINIMAL + "\nEND_VAR")

    def test_integer_only_variable_types_rejected(self):
        text = MINIMAL.replace("x : REAL;", "x : INT;")
        with pytest.raises(FclSyntaxError):
            parse_fcl(text)


class TestSerializerFixpoint:
    def test_default_kb_round_trip(self):
        system = parse_fcl(default_kb_text())
        text = serialize_fcl(system)
        again = parse_fcl(text)
        assert again == system
        assert serialize_fcl(again) == text

    def test_minimal_round_trip(self):
        system = parse_fcl(MINIMAL)
        assert parse_fcl(serialize_fcl(system)) == system

    @pytest.mark.parametrize("seed", range(20))
    def test_generated_system_round_trip(self, seed):
        system = random_system(seed)
        text = serialize_fcl(system)
        reparsed = parse_fcl(text)
        assert reparsed == system
        assert serialize_fcl(reparsed) == text
