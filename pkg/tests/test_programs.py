"""Tests for valuation programs: steps, value evolution, classification,
and the text format."""

from fractions import Fraction

import pytest

from lqt import (Infinite, MultiplicityClass, NEG_INF, POS_INF,
                 ProgramConsistencyError, ProgramError, ProgramFormatError,
                 ProgramStep, ValuationProgram, classify_multiplicity,
                 get_example, multiplicity_sequence, parse_program,
                 serialize_program)

F = Fraction


def two_var_program() -> ValuationProgram:
    return get_example("ex3.7-2d").source


def three_var_program() -> ValuationProgram:
    return get_example("ex3.7-3d").source


# -- infinite values ----------------------------------------------------------------

def test_infinite_repr_and_equality():
    assert str(POS_INF) == "inf"
    assert str(NEG_INF) == "-inf"
    assert POS_INF == Infinite(1)
    assert POS_INF != NEG_INF
    assert hash(POS_INF) == hash(Infinite(1))
    assert -POS_INF == NEG_INF
    assert -NEG_INF == POS_INF


def test_infinite_addition():
    assert POS_INF + 5 == POS_INF
    assert F(1, 2) + POS_INF == POS_INF
    assert NEG_INF + NEG_INF == NEG_INF
    with pytest.raises(ArithmeticError):
        POS_INF + NEG_INF


def test_infinite_scaling():
    assert POS_INF * 2 == POS_INF
    assert F(-1, 3) * POS_INF == NEG_INF
    assert NEG_INF * -1 == POS_INF
    with pytest.raises(ArithmeticError):
        POS_INF * 0


def test_infinite_ordering():
    assert NEG_INF < F(-100) < POS_INF
    assert POS_INF > 100
    assert not POS_INF < POS_INF
    assert POS_INF <= POS_INF
    assert POS_INF >= F(7)
    assert F(7) < POS_INF
    assert sorted([POS_INF, F(0), NEG_INF], key=lambda v: (v > NEG_INF, v)) \
        == [NEG_INF, F(0), POS_INF]


def test_infinite_is_immutable():
    with pytest.raises(AttributeError):
        POS_INF.sign = -1


# -- single steps -------------------------------------------------------------------

def test_step_rejects_nonpositive_factor():
    with pytest.raises(ProgramError, match="must be positive"):
        ProgramStep(0, [(1, F(1), F(0))])
    with pytest.raises(ProgramError, match="must be positive"):
        ProgramStep(0, [(1, F(1), F(-1, 2))])


def test_step_serialization():
    step = ProgramStep(0, [(1, F(1), F(1, 2))])
    assert step.serialize(("x", "y")) == "pivot=x translate y:1->1/2"
    assert ProgramStep(1).serialize(("x", "y")) == "pivot=y"


def test_step_equality_and_hash():
    a = ProgramStep(0, [(1, F(1), F(1, 2))])
    b = ProgramStep(0, [(1, F(1), F(1, 2))])
    assert a == b
    assert hash(a) == hash(b)
    assert a != ProgramStep(0, [(1, F(2), F(1, 2))])


def test_step_is_immutable():
    step = ProgramStep(0)
    with pytest.raises(AttributeError):
        step.pivot = 1


# -- value evolution ----------------------------------------------------------------

def test_next_values_translated_and_untranslated():
    bases = ("x", "y")
    step = ProgramStep(0, [(1, F(1), F(1, 2))])
    assert step.next_values((F(1), F(1)), 1, bases) == (F(1), F(1, 2))
    plain = ProgramStep(0)
    assert plain.next_values((F(1), F(3)), 1, bases) == (F(1), F(2))


def test_next_values_requires_minimal_pivot():
    step = ProgramStep(0)
    with pytest.raises(ProgramConsistencyError,
                       match="pivot value 1 is not minimal") as info:
        step.next_values((F(1), F(1, 2)), 2, ("x", "y"))
    assert info.value.stage == 2
    assert info.value.coordinate == "x"


def test_next_values_translated_must_match_pivot():
    step = ProgramStep(0, [(1, F(1), F(1, 2))])
    with pytest.raises(ProgramConsistencyError,
                       match="must equal the pivot value") as info:
        step.next_values((F(1), F(2)), 3, ("x", "y"))
    assert info.value.coordinate == "y"


def test_next_values_untranslated_must_exceed_pivot():
    step = ProgramStep(0)
    with pytest.raises(ProgramConsistencyError,
                       match="must be translated"):
        step.next_values((F(1), F(1)), 1, ("x", "y"))


def test_program_constructor_errors():
    step = ProgramStep(0)
    with pytest.raises(ProgramError, match="duplicate variable"):
        ValuationProgram(("x", "x"), [F(1), F(1)], (), (step,))
    with pytest.raises(ProgramError, match="at least one variable"):
        ValuationProgram((), [], (), (step,))
    with pytest.raises(ProgramError, match="2 variables but 1 values"):
        ValuationProgram(("x", "y"), [F(1)], (), (step,))
    with pytest.raises(ProgramError, match="must be positive"):
        ValuationProgram(("x",), [F(0)], (), (step,))
    with pytest.raises(ProgramError, match="at least one step"):
        ValuationProgram(("x",), [F(1)], (), ())
    with pytest.raises(ValueError, match="out of range"):
        ValuationProgram(("x",), [F(1)], (), (ProgramStep(1),))


def test_step_indexing_follows_preperiod_then_cycle():
    a = ProgramStep(0, [(1, F(1), F(1, 2))])
    b = ProgramStep(1)
    c = ProgramStep(0, [(1, F(2), F(1, 3))])
    program = ValuationProgram(("x", "y"), [F(1), F(1)], (a,), (b, c))
    assert [program.step_at(n) for n in (1, 2, 3, 4, 5)] == [a, b, c, b, c]
    assert program.directive_at(1) == a.directive
    with pytest.raises(ValueError, match="out of range"):
        program.step_at(0)


def test_two_var_value_vectors():
    expected = [(F(1), F(1)),
                (F(1), F(1, 2)),
                (F(1, 2), F(1, 2)),
                (F(1, 2), F(1, 4)),
                (F(1, 4), F(1, 4))]
    program = two_var_program()
    for n, want in enumerate(expected):
        assert program.value_vector_at(n) == want
    with pytest.raises(ValueError, match="out of range"):
        program.value_vector_at(-1)


def test_three_var_extra_coordinate_drains():
    program = three_var_program()
    z_values = [program.value_vector_at(n)[2] for n in range(5)]
    assert z_values == [F(4), F(3), F(5, 2), F(2), F(7, 4)]
    assert program.value_vector_at(20)[2] > F(1)


def test_multiplicity_sequence_hand_values():
    program = two_var_program()
    assert multiplicity_sequence(program, 7) == [
        F(1), F(1, 2), F(1, 2), F(1, 4), F(1, 4), F(1, 8), F(1, 8)]
    assert multiplicity_sequence(program, 0) == []
    with pytest.raises(ValueError, match="nonnegative"):
        multiplicity_sequence(program, -1)


# -- multiplicity classification ------------------------------------------------------

def test_classify_fully_scaling_pair():
    result = classify_multiplicity(two_var_program())
    assert result.kind == "Convergent"
    assert result.limit == F(3)
    assert result.detail == "pass ratio 1/2 from pass 1"
    assert result.nonscaling == ()


def test_classify_split_with_idle_coordinate():
    result = classify_multiplicity(three_var_program())
    assert result.kind == "Convergent"
    assert result.limit == F(3)
    assert result.detail == "pass ratio 1/2 on 2 coordinates from pass 1"
    assert result.nonscaling == (2,)


def test_classify_single_variable_is_divergent():
    program = parse_program("[vars]\nx\n[values]\nx = 1\n[period]\npivot=x\n")
    result = classify_multiplicity(program)
    assert result.kind == "Divergent"
    assert result.detail == "pass ratio 1 from pass 1"


def test_classify_constant_translation_is_divergent():
    program = parse_program(
        "[vars]\nx y\n[values]\nx = 1\ny = 1\n"
        "[period]\npivot=x translate y:1->1\n")
    result = classify_multiplicity(program)
    assert result.kind == "Divergent"
    assert result.detail == "pass ratio 1 from pass 1"


def test_classify_needs_enough_passes_for_close_margins():
    """An idle coordinate ending 1/1024 above the drained total separates
    from the scaled part only once the scaled values fall below that gap."""
    program = parse_program(
        "[vars]\nx y z\n[values]\nx = 1\ny = 1\nz = 3073/1024\n"
        "[period]\npivot=x translate y:1->1/2\npivot=y\n")
    tight = classify_multiplicity(program, max_passes=8)
    assert tight.kind == "Undecided"
    assert tight.detail == "no stable pass ratio within 8 passes"
    roomy = classify_multiplicity(program, max_passes=12)
    assert roomy.kind == "Convergent"
    assert roomy.limit == F(3)
    assert roomy.detail == "pass ratio 1/2 on 2 coordinates from pass 11"
    assert roomy.nonscaling == (2,)


def test_classification_equality_uses_kind_and_limit():
    a = MultiplicityClass("Convergent", F(3), detail="one")
    b = MultiplicityClass("Convergent", F(3), detail="two")
    assert a == b
    assert a != MultiplicityClass("Divergent")


# -- text format --------------------------------------------------------------------

def test_parse_serialize_round_trip():
    text = ("[vars]\nx y\n[values]\nx = 1\ny = 1\n"
            "[preperiod]\npivot=x translate y:-2->3/2\n"
            "[period]\npivot=y translate x:1->1/2\npivot=x\n")
    program = parse_program(text)
    assert len(program.preperiod) == 1
    assert program.preperiod[0].translations == ((1, F(-2), F(3, 2)),)
    out = serialize_program(program)
    again = parse_program(out)
    assert again == program
    assert serialize_program(again) == out


def test_parse_accepts_commas_and_comments():
    text = ("# leading comment\n[vars]\nx, y\n[values]\n"
            "x = 1  # unit value\ny = 2\n[period]\npivot=x\n")
    program = parse_program(text)
    assert program.bases == ("x", "y")
    assert program.initial_values == (F(1), F(2))


@pytest.mark.parametrize("text, fragment", [
    ("pivot=x\n[vars]\nx", "content before the first section"),
    ("[vars]\nx\n[vars]\ny", "duplicate section [vars]"),
    ("[vars]\nx\n[period]\npivot=x", "missing section [values]"),
    ("[vars]\nx\n[values]\nx = 1", "missing section [period]"),
    ("[vars]\nx\n[values]\nx = 1/0\n[period]\npivot=x", "bad rational '1/0'"),
    ("[vars]\nx\n[values]\nx = 1\nx = 2\n[period]\npivot=x",
     "value of x given twice"),
    ("[vars]\nx y\n[values]\nx = 1\n[period]\npivot=x", "no value given for y"),
    ("[vars]\nx\n[values]\nbogus\n[period]\npivot=x",
     "expected <var> = <value>"),
    ("[vars]\nx\n[values]\ny = 1\n[period]\npivot=x", "unknown variable 'y'"),
    ("[vars]\nx\n[values]\nx = 1\n[period]\nstep one", "expected pivot=<var>"),
    ("[vars]\nx\n[values]\nx = 1\n[period]\npivot=q",
     "unknown pivot variable 'q'"),
    ("[vars]\nx y\n[values]\nx = 1\ny = 1\n[period]\npivot=x chop y",
     "expected translate"),
    ("[vars]\nx y\n[values]\nx = 1\ny = 1\n[period]\n"
     "pivot=x translate q:1->1", "unknown variable 'q'"),
    ("[vars]\nx\n[values]\nx = 1\n[period]\npivot=x\n[junk]\nz",
     "unknown section [junk]"),
])
def test_parse_program_errors(text, fragment):
    with pytest.raises(ProgramFormatError) as info:
        parse_program(text)
    assert fragment in str(info.value)


def test_format_errors_carry_line_numbers():
    with pytest.raises(ProgramFormatError) as info:
        parse_program("[vars]\nx\n[values]\nx = oops\n[period]\npivot=x")
    assert info.value.line == 4
    assert str(info.value).startswith("line 4:")
