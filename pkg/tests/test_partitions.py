from __future__ import annotations

from fractions import Fraction

import pytest

from wtrees.core import BLACK, WHITE, LabeledType, parse_type_literal
from wtrees.enumerator import enumerate_wtrees
from wtrees.errors import NotSimple
from wtrees.partitions import (
    Subtype,
    cardinality,
    cardinality_by_listing,
    cardinality_details,
    cardinality_simple,
    classify,
    derivative_type,
    enumerate_partitions,
    partition_summand,
    quotient_constructions,
    render_partition,
    symmetric_counts_via_quotients,
)


@pytest.mark.parametrize(
    "literal, expected",
    [
        ("5,12|1,7,9", 6),
        ("1,5,7|2,4,7", 18),
        ("1,3,11|4,5,6", 20),
        ("1,2,4|1,2,4", 11),
        ("1,2,4,5|1,2,9", 72),
        ("1,2,3|1,2,3", 7),
        ("1,2,6,10|4,5,10", 96),
        ("7,5,1|7,4,2", 18),
        ("4,2,1|4,2,1", 11),
        ("3,2,1|3,2,1", 7),
        ("6,1,1,1|3,3,3", 3),
        ("5,2,1,1|3,3,3", 4),
        ("1,2,4|2,5", 4),
        ("3|3", 1),
        ("2|1,1", 1),
    ],
)
def test_published_counts(literal, expected):
    assert cardinality(parse_type_literal(literal)) == expected


def test_third_order_symmetry_details():
    details = cardinality_details(parse_type_literal("6,1,1,1|3,3,3"))
    assert details.labeled_total == 84
    assert details.p == 36
    assert dict(details.symmetric) == {3: 1}
    assert details.nonsymmetric_labeled == 72
    assert dict(details.symmetric_labeled) == {3: 12}
    assert details.cardinality == 3


def test_no_symmetry_details():
    details = cardinality_details(parse_type_literal("5,2,1,1|3,3,3"))
    assert details.labeled_total == 48
    assert details.p == 12
    assert dict(details.symmetric) == {}
    assert details.cardinality == 4


@pytest.mark.parametrize("literal", ["1,1|1,1", "1,1,1|1,1,1", "1,1,1,1|2,2"])
def test_types_without_trees_count_zero(literal):
    assert cardinality(parse_type_literal(literal)) == 0


@pytest.mark.parametrize(
    "literal, simple, decomposable",
    [
        ("5,12|1,7,9", True, False),
        ("1,5,7|2,4,7", True, True),
        ("1,3,11|4,5,6", True, True),
        ("6,1,1,1|3,3,3", False, True),
        ("3|3", True, False),
    ],
)
def test_classify(literal, simple, decomposable):
    result = classify(parse_type_literal(literal))
    assert (result.simple, result.decomposable) == (simple, decomposable)


def test_derivative_type():
    info = derivative_type(parse_type_literal("6,1,1,1|3,3,3"))
    assert info.p == 36
    assert info.white_multiplicities == (3, 1)
    assert info.black_multiplicities == (3,)
    assert info.labeled.v == 7


def test_partitions_of_a_decomposable_type():
    labeled = LabeledType.from_type(parse_type_literal("1,5,7|2,4,7"))
    partitions = enumerate_partitions(labeled)
    assert [p.n for p in partitions] == [1, 2]
    split = partitions[1]
    assert split.parts == (Subtype((0, 1), (0, 1)), Subtype((2,), (2,)))
    assert render_partition(labeled, split) == "⟨1,5|2,4⟩ ∪ ⟨7|7⟩"
    assert partition_summand(labeled, partitions[0]) == 24
    assert partition_summand(labeled, split) == -6


def test_partitions_cover_every_vertex_with_balanced_parts():
    labeled = LabeledType.from_type(parse_type_literal("1,2,4|1,2,4"))
    for partition in enumerate_partitions(labeled):
        whites = sorted(i for part in partition.parts for i in part.white)
        blacks = sorted(j for part in partition.parts for j in part.black)
        assert whites == list(range(labeled.s))
        assert blacks == list(range(labeled.t))
        for part in partition.parts:
            assert sum(labeled.weights(WHITE)[i] for i in part.white) == sum(
                labeled.weights(BLACK)[j] for j in part.black
            )


@pytest.mark.parametrize("literal", ["1,2,4|1,2,4", "1,2,4,5|1,2,9", "6,1,1,1|3,3,3", "2,2|1,1,2", "1,1|1,1"])
def test_listing_and_class_recursion_agree(literal):
    labeled = LabeledType.from_type(parse_type_literal(literal))
    assert cardinality_by_listing(labeled) == cardinality_simple(labeled)


def test_repeated_weights_need_labels():
    with pytest.raises(NotSimple):
        cardinality_simple(parse_type_literal("2|1,1"))
    assert cardinality_simple(LabeledType.from_type(parse_type_literal("2|1,1"))) == 1


def test_rational_type_counts_like_its_scaled_copy():
    assert cardinality(parse_type_literal("1/2,1|3/2")) == cardinality(parse_type_literal("1,2|3")) == 1
    assert cardinality(parse_type_literal("1/3,1/3|2/3")) == 1


def test_quotient_constructions():
    [construction] = quotient_constructions(parse_type_literal("6,1,1,1|3,3,3"), 3)
    assert construction.center_color == WHITE
    assert construction.center_weight == 6
    assert construction.quotient == parse_type_literal("1,2|3")
    assert construction.center_weight_in_quotient == Fraction(2)
    assert quotient_constructions(parse_type_literal("6,1,1,1|3,3,3"), 2) == []


def test_rational_quotient_divides_scaled_weight():
    [construction] = quotient_constructions(parse_type_literal("1|1/2,1/2"), 2)
    assert construction.quotient == parse_type_literal("1/2|1/2")


def test_quotients_reproduce_the_census():
    assert symmetric_counts_via_quotients(parse_type_literal("6,1,1,1|3,3,3")) == {3: 1}
    assert symmetric_counts_via_quotients(parse_type_literal("2|1,1")) == {2: 1}
    assert symmetric_counts_via_quotients(parse_type_literal("5,2,1,1|3,3,3")) == {}


def test_star_with_four_equal_leaves():
    wtype = parse_type_literal("4|1,1,1,1")
    assert symmetric_counts_via_quotients(wtype) == {4: 1}
    assert cardinality(wtype) == len(enumerate_wtrees(wtype)) == 1


def test_mixed_symmetry_orders():
    wtype = parse_type_literal("4|1,1,2")
    details = cardinality_details(wtype)
    assert dict(details.symmetric) == {}
    assert details.cardinality == len(enumerate_wtrees(wtype)) == 1
    wtype = parse_type_literal("6|1,1,2,2")
    assert cardinality(wtype) == len(enumerate_wtrees(wtype))


@pytest.mark.parametrize("literal, expected", [("3,2,1|3,2,1", 6), ("5,12|1,7,9", 1), ("7,5,1|7,4,2", 2)])
def test_partition_listing_sizes(literal, expected):
    partitions = enumerate_partitions(LabeledType.from_type(parse_type_literal(literal)))
    assert len(partitions) == expected
    assert len(set(partitions)) == len(partitions)


def test_crossed_partition_is_listed():
    labeled = LabeledType.from_type(parse_type_literal("3,2,1|3,2,1"))
    rendered = [set(render_partition(labeled, p).split(" ∪ ")) for p in enumerate_partitions(labeled)]
    assert {"⟨1,2|3⟩", "⟨3|1,2⟩"} in rendered
    assert {"⟨1|1⟩", "⟨2|2⟩", "⟨3|3⟩"} in rendered
    assert {"⟨1,2,3|1,2,3⟩"} in rendered
