"""Cardinality of a type by inclusion-exclusion over matched-sum partitions.

For a simple (or labeled) type the count is the sum, over partitions into
n matched-sum subtypes, of (-1)^(n-1) (v-1)^(n-2) prod (v_part - 1)!.
Types with repeated weights are labeled first; the labeled count T relates to
the unlabeled one through the symmetry census, which is rebuilt from quotient
types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Mapping, Union

from sympy import factorint

from .core.canonical import vertex_orbit_count
from .core.weights import BLACK, COLORS, WHITE, Color, LabeledType, WeightedType, format_weight
from .enumerator import DEFAULT_BUDGET, enumerate_wtrees
from .errors import NonIntegerResult, NotSimple


@dataclass(frozen=True)
class Classification:
    simple: bool
    decomposable: bool


def _proper_subset_sums(weights: tuple[Fraction, ...]) -> set[Fraction]:
    return {sum(c, Fraction(0)) for r in range(1, len(weights)) for c in combinations(weights, r)}


def classify(wtype: WeightedType) -> Classification:
    decomposable = bool(_proper_subset_sums(wtype.white) & _proper_subset_sums(wtype.black))
    return Classification(simple=wtype.is_simple, decomposable=decomposable)


@dataclass(frozen=True)
class DerivedTypeInfo:
    labeled: LabeledType
    p: int
    white_multiplicities: tuple[int, ...]
    black_multiplicities: tuple[int, ...]


def derivative_type(wtype: WeightedType) -> DerivedTypeInfo:
    white = tuple(wtype.classes(WHITE).values())
    black = tuple(wtype.classes(BLACK).values())
    p = math.prod(math.factorial(m) for m in white + black)
    return DerivedTypeInfo(LabeledType.from_type(wtype), p, white, black)


@dataclass(frozen=True, order=True)
class Subtype:
    """Index sets I (white) and J (black) of a labeled type with equal weight sums."""

    white: tuple[int, ...]
    black: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.white) + len(self.black)


@dataclass(frozen=True)
class TypePartition:
    parts: tuple[Subtype, ...]

    @property
    def n(self) -> int:
        return len(self.parts)


def _balanced_splits(
    white_sums: dict[tuple[int, ...], Fraction],
    blacks: tuple[int, ...],
    black_weights: tuple[Fraction, ...],
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    by_sum: dict[Fraction, list[tuple[int, ...]]] = {}
    for r in range(1, len(blacks) + 1):
        for subset in combinations(blacks, r):
            by_sum.setdefault(sum((black_weights[j] for j in subset), Fraction(0)), []).append(subset)
    for whites, total in white_sums.items():
        for subset in by_sum.get(total, []):
            yield whites, subset


def iter_partitions(labeled: LabeledType) -> Iterator[TypePartition]:
    """Partitions into matched-sum subtypes; parts ordered by their smallest white index."""
    white_weights = labeled.weights(WHITE)
    black_weights = labeled.weights(BLACK)

    def split(whites: tuple[int, ...], blacks: tuple[int, ...]) -> Iterator[tuple[Subtype, ...]]:
        if not whites:
            if not blacks:
                yield ()
            return
        anchor, rest = whites[0], whites[1:]
        candidates = {
            (anchor,) + extra: white_weights[anchor] + sum((white_weights[i] for i in extra), Fraction(0))
            for r in range(len(rest) + 1)
            for extra in combinations(rest, r)
        }
        for part_white, part_black in _balanced_splits(candidates, blacks, black_weights):
            left_white = tuple(i for i in whites if i not in part_white)
            left_black = tuple(j for j in blacks if j not in part_black)
            for tail in split(left_white, left_black):
                yield (Subtype(part_white, part_black),) + tail

    for parts in split(tuple(range(labeled.s)), tuple(range(labeled.t))):
        yield TypePartition(parts)


def enumerate_partitions(labeled: LabeledType) -> list[TypePartition]:
    return sorted(iter_partitions(labeled), key=lambda p: (p.n, p.parts))


def render_subtype(labeled: LabeledType, part: Subtype) -> str:
    white = ",".join(labeled.display(WHITE, i) for i in part.white)
    black = ",".join(labeled.display(BLACK, j) for j in part.black)
    return f"⟨{white}|{black}⟩"


def render_partition(labeled: LabeledType, partition: TypePartition) -> str:
    return " ∪ ".join(render_subtype(labeled, part) for part in partition.parts)


def partition_summand(labeled: LabeledType, partition: TypePartition) -> Fraction:
    n = partition.n
    term = Fraction(labeled.v - 1) ** (n - 2) * math.prod(math.factorial(part.v - 1) for part in partition.parts)
    return term if n % 2 == 1 else -term


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise NonIntegerResult(f"{what} evaluated to {value}, not a non-negative integer")
    return int(value)


def cardinality_by_listing(labeled: LabeledType) -> int:
    """Explicit partition sum; exponential in the number of partitions."""
    total = sum((partition_summand(labeled, p) for p in iter_partitions(labeled)), Fraction(0))
    return _as_count(total, "partition sum")


def _partition_sum(labeled: LabeledType) -> Fraction:
    scaled, _ = labeled.unlabeled().integral()
    classes = [(w, m) for w, m in scaled.classes(WHITE).items()] + [(-w, m) for w, m in scaled.classes(BLACK).items()]
    signed = tuple(int(w) for w, _ in classes)
    white_classes = len(scaled.classes(WHITE))
    scale = labeled.v - 1

    # Each part contributes g = -(v-1) (|part|-1)!, so the summand of an
    # n-partition is -(v-1)^-2 prod g; the sum depends only on class counts.
    @lru_cache(maxsize=None)
    def total(state: tuple[int, ...]) -> int:
        anchor = next((c for c in range(white_classes) if state[c]), None)
        if anchor is None:
            return 0 if any(state) else 1
        acc = 0
        ranges = [range(1, m + 1) if c == anchor else range(m + 1) for c, m in enumerate(state)]
        for take in product(*ranges):
            if sum(k * w for k, w in zip(take, signed)) != 0:
                continue
            ways = math.comb(state[anchor] - 1, take[anchor] - 1)
            for c, (m, k) in enumerate(zip(state, take)):
                if c != anchor:
                    ways *= math.comb(m, k)
            size = sum(take)
            rest = tuple(m - k for m, k in zip(state, take))
            acc -= ways * scale * math.factorial(size - 1) * total(rest)
        return acc

    return Fraction(-total(tuple(m for _, m in classes)), scale * scale)


def cardinality_simple(target: Union[LabeledType, WeightedType]) -> int:
    """Number of w-trees of a simple or labeled type."""
    if isinstance(target, WeightedType):
        if not target.is_simple:
            raise NotSimple(f"{target} has repeated weights; label it or use cardinality()")
        target = LabeledType.from_type(target)
    return _as_count(_partition_sum(target), f"partition sum of {target.unlabeled()}")


@dataclass(frozen=True)
class QuotientConstruction:
    order: int
    center_color: Color
    center_weight: Fraction
    quotient: WeightedType
    center_weight_in_quotient: Fraction


def quotient_constructions(wtype: WeightedType, i: int) -> list[QuotientConstruction]:
    """Ways a tree of this type can carry an i-order rotation symmetry, one per center class."""
    if i < 2:
        raise ValueError("symmetry order must be at least 2")
    factor = wtype.denominator
    classes = [(c, w, m) for c in COLORS for w, m in wtype.classes(c).items()]
    found: list[QuotientConstruction] = []
    for color, weight, mult in classes:
        if mult % i != 1 or (weight * factor) % i != 0:
            continue
        if any(m % i for c, w, m in classes if (c, w) != (color, weight)):
            continue
        sides: dict[Color, list[Fraction]] = {WHITE: [], BLACK: []}
        for c, w, m in classes:
            count = (m - 1) // i if (c, w) == (color, weight) else m // i
            sides[c].extend([w] * count)
        sides[color].append(weight / i)
        quotient = WeightedType(tuple(sides[WHITE]), tuple(sides[BLACK]))
        found.append(QuotientConstruction(i, color, weight, quotient, weight / i))
    return found


def _mobius(k: int) -> int:
    exponents = factorint(k).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def symmetric_counts_via_quotients(wtype: WeightedType, *, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Number of isotopy classes with automorphism order exactly i, for each i >= 2 that occurs."""
    scaled, _ = wtype.integral()
    top = int(max(scaled.white + scaled.black))
    # marked[d]: trees whose symmetry order is divisible by d, i.e. isotopy
    # classes of (quotient tree, center) pairs.
    marked: dict[int, int] = {}
    for d in range(2, top + 1):
        marked[d] = sum(
            vertex_orbit_count(tree, c.center_color, c.center_weight_in_quotient)
            for c in quotient_constructions(wtype, d)
            for tree in enumerate_wtrees(c.quotient, budget=budget)
        )
    exact: dict[int, int] = {}
    for e in range(2, top + 1):
        value = sum(_mobius(k) * marked[e * k] for k in range(1, top // e + 1))
        if value < 0:
            raise NonIntegerResult(f"negative symmetric count {value} for order {e} in {wtype}")
        if value:
            exact[e] = value
    return exact


@dataclass(frozen=True)
class CardinalityDetails:
    wtype: WeightedType
    classification: Classification
    labeled_total: int
    p: int
    symmetric: Mapping[int, int] = field(default_factory=dict)
    nonsymmetric_labeled: int = 0
    symmetric_labeled: Mapping[int, int] = field(default_factory=dict)
    cardinality: int = 0


def cardinality_details(wtype: WeightedType, *, budget: int = DEFAULT_BUDGET) -> CardinalityDetails:
    info = derivative_type(wtype)
    labeled_total = cardinality_simple(info.labeled)
    symmetric = symmetric_counts_via_quotients(wtype, budget=budget) if not wtype.is_simple else {}

    value = Fraction(labeled_total, info.p) + sum(
        ((1 - Fraction(1, i)) * count for i, count in symmetric.items()), Fraction(0)
    )
    cardinality = _as_count(value, f"cardinality of {wtype}")

    symmetric_labeled = {i: _as_count(Fraction(info.p * count, i), f"M_{i} of {wtype}") for i, count in symmetric.items()}
    return CardinalityDetails(
        wtype=wtype,
        classification=classify(wtype),
        labeled_total=labeled_total,
        p=info.p,
        symmetric=symmetric,
        nonsymmetric_labeled=labeled_total - sum(symmetric_labeled.values()),
        symmetric_labeled=symmetric_labeled,
        cardinality=cardinality,
    )


def cardinality(wtype: WeightedType, *, budget: int = DEFAULT_BUDGET) -> int:
    """|Ξ| = T/p + sum_i (1 - 1/i) S_i, with T the labeled count and S_i the i-symmetric classes."""
    if wtype.is_simple:
        return cardinality_simple(wtype)
    return cardinality_details(wtype, budget=budget).cardinality


def describe_partition(labeled: LabeledType, partition: TypePartition) -> str:
    return f"{render_partition(labeled, partition)}  {format_weight(partition_summand(labeled, partition))}"
