from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtrees.core import BLACK, WHITE, LabeledType, WeightedType, as_weight, parse_type_literal, validate_type
from wtrees.errors import EmptySide, NonPositiveWeight, SumMismatch, TypeLiteralError


@st.composite
def balanced_sides(draw):
    white = draw(st.lists(st.integers(1, 6), min_size=1, max_size=4))
    total = sum(white)
    cuts = sorted(draw(st.sets(st.integers(1, total - 1), max_size=min(3, total - 1)))) if total > 1 else []
    bounds = [0, *cuts, total]
    black = [b - a for a, b in zip(bounds, bounds[1:])]
    return draw(st.permutations(white)), draw(st.permutations(black))


def test_example_type_accessors():
    wtype = validate_type([12, 5], [9, 1, 7])
    assert wtype.white == (5, 12)
    assert wtype.black == (1, 7, 9)
    assert (wtype.s, wtype.t, wtype.v, wtype.n) == (2, 3, 5, 17)
    assert str(wtype) == "⟨5,12|1,7,9⟩"
    assert wtype.is_simple


def test_sum_mismatch():
    with pytest.raises(SumMismatch):
        validate_type([1], [2])


def test_empty_and_non_positive_sides():
    with pytest.raises(EmptySide):
        validate_type([], [1])
    with pytest.raises(NonPositiveWeight):
        validate_type([0, 2], [2])


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_weight(0.5)


@given(balanced_sides())
def test_validation_normalizes_any_order(sides):
    white, black = sides
    wtype = validate_type(white, black)
    assert list(wtype.white) == sorted(white)
    assert list(wtype.black) == sorted(black)
    assert wtype.n == sum(white)


def test_parse_literal_with_whitespace_and_fractions():
    assert parse_type_literal(" 5, 12 | 1,7,9 ") == validate_type([5, 12], [1, 7, 9])
    wtype = parse_type_literal("1/2,1|3/2")
    assert wtype.white == (Fraction(1, 2), Fraction(1))
    assert wtype.denominator == 2
    assert not wtype.is_integral
    scaled, factor = wtype.integral()
    assert factor == 2
    assert scaled == validate_type([1, 2], [3])
    assert wtype.literal() == "1/2,1|3/2"


@pytest.mark.parametrize(
    "text, column",
    [
        ("1,x|3", 3),
        ("1|2|3", 4),
        ("12", 3),
        ("1/0|1", 1),
        ("|1", 1),
        ("2|1,,1", 5),
    ],
)
def test_parse_errors_report_columns(text, column):
    with pytest.raises(TypeLiteralError) as info:
        parse_type_literal(text)
    assert info.value.column == column


def test_parse_literal_sum_mismatch():
    with pytest.raises(SumMismatch):
        parse_type_literal("1|2")


def test_classes_are_ascending_with_multiplicities():
    wtype = parse_type_literal("6,1,1,1|3,3,3")
    assert wtype.classes(WHITE) == {1: 3, 6: 1}
    assert wtype.classes(BLACK) == {3: 3}
    assert not wtype.is_simple


def test_labeled_type_is_distinguishable_and_primes_repeats():
    labeled = LabeledType.from_type(parse_type_literal("6,1,1,1|3,3,3"))
    assert labeled.v == 7
    assert [labeled.display(WHITE, i) for i in range(4)] == ["1", "1'", "1''", "6"]
    assert labeled.unlabeled() == parse_type_literal("1,1,1,6|3,3,3")
    with pytest.raises(ValueError):
        LabeledType(((0, Fraction(1)), (0, Fraction(1))), ((0, Fraction(2)),))
