from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Literal, Union

from ..errors import EmptySide, NonPositiveWeight, SumMismatch, TypeLiteralError


Color = Literal["white", "black"]
WHITE: Color = "white"
BLACK: Color = "black"
COLORS: tuple[Color, Color] = (WHITE, BLACK)

WeightLike = Union[int, Fraction, str]

_WEIGHT_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_weight(value: WeightLike) -> Fraction:
    """Exact weight from an int, a Fraction or a "p" / "p/q" string. Floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"weights must be exact, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"unsupported weight value: {value!r}")


def format_weight(value: Fraction) -> str:
    """Text form: plain integer when integral, "p/q" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def weight_document(value: Fraction) -> str:
    """Document form, always "p/q"."""
    return f"{value.numerator}/{value.denominator}"


def other_color(color: Color) -> Color:
    return BLACK if color == WHITE else WHITE


@dataclass(frozen=True)
class WeightedType:
    """A type: white and black weight multisets with equal sums, stored non-decreasing."""

    white: tuple[Fraction, ...]
    black: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        white = tuple(sorted(as_weight(w) for w in self.white))
        black = tuple(sorted(as_weight(w) for w in self.black))
        if not white:
            raise EmptySide("white side is empty")
        if not black:
            raise EmptySide("black side is empty")
        for side, ws in ((WHITE, white), (BLACK, black)):
            bad = [w for w in ws if w <= 0]
            if bad:
                raise NonPositiveWeight(f"{side} weight {format_weight(bad[0])} is not positive")
        if sum(white) != sum(black):
            raise SumMismatch(
                f"white weights sum to {format_weight(sum(white))}, black weights to {format_weight(sum(black))}"
            )
        object.__setattr__(self, "white", white)
        object.__setattr__(self, "black", black)

    @property
    def s(self) -> int:
        return len(self.white)

    @property
    def t(self) -> int:
        return len(self.black)

    @property
    def v(self) -> int:
        return self.s + self.t

    @property
    def n(self) -> Fraction:
        return sum(self.white, Fraction(0))

    def side(self, color: Color) -> tuple[Fraction, ...]:
        return self.white if color == WHITE else self.black

    def classes(self, color: Color) -> dict[Fraction, int]:
        """Weight -> multiplicity for one color, ascending by weight."""
        return dict(sorted(Counter(self.side(color)).items()))

    @property
    def is_simple(self) -> bool:
        return len(set(self.white)) == self.s and len(set(self.black)) == self.t

    @property
    def denominator(self) -> int:
        return reduce(math.lcm, (w.denominator for w in self.white + self.black), 1)

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1

    def scaled(self, factor: int) -> "WeightedType":
        return WeightedType(tuple(w * factor for w in self.white), tuple(w * factor for w in self.black))

    def integral(self) -> tuple["WeightedType", int]:
        """The integral type obtained by clearing denominators, and the factor used."""
        factor = self.denominator
        return (self if factor == 1 else self.scaled(factor)), factor

    def literal(self) -> str:
        return ",".join(format_weight(w) for w in self.white) + "|" + ",".join(format_weight(w) for w in self.black)

    def __str__(self) -> str:
        return f"⟨{self.literal()}⟩"


def validate_type(white: Iterable[WeightLike], black: Iterable[WeightLike]) -> WeightedType:
    return WeightedType(tuple(as_weight(w) for w in white), tuple(as_weight(w) for w in black))


def parse_type_literal(text: str) -> WeightedType:
    """Parse "k1,k2,...|l1,l2,..." (weights are integers or p/q)."""
    if text.count("|") != 1:
        column = text.find("|", text.find("|") + 1) + 1 if text.count("|") > 1 else len(text) + 1
        raise TypeLiteralError("expected exactly one '|' between white and black weights", column=column)

    sides: list[list[Fraction]] = []
    offset = 0
    for chunk in text.split("|"):
        weights: list[Fraction] = []
        pos = offset
        for token in chunk.split(","):
            column = pos + (len(token) - len(token.lstrip())) + 1
            match = _WEIGHT_RE.match(token)
            if match is None:
                shown = token.strip() or "<empty>"
                raise TypeLiteralError(f"invalid weight {shown!r}", column=column)
            numerator = int(match.group(1))
            denominator = int(match.group(2)) if match.group(2) is not None else 1
            if denominator == 0:
                raise TypeLiteralError("zero denominator", column=column)
            weights.append(Fraction(numerator, denominator))
            pos += len(token) + 1
        sides.append(weights)
        offset += len(chunk) + 1
    return validate_type(sides[0], sides[1])


@dataclass(frozen=True)
class LabeledType:
    """A type whose vertices carry labels, which makes it simple."""

    white: tuple[tuple[int, Fraction], ...]
    black: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        for side, entries in ((WHITE, self.white), (BLACK, self.black)):
            labels = [label for label, _ in entries]
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate {side} labels in labeled type")
        # Validates emptiness, positivity and sums.
        self.unlabeled()

    @classmethod
    def from_type(cls, wtype: WeightedType) -> "LabeledType":
        return cls(tuple(enumerate(wtype.white)), tuple(enumerate(wtype.black)))

    @property
    def s(self) -> int:
        return len(self.white)

    @property
    def t(self) -> int:
        return len(self.black)

    @property
    def v(self) -> int:
        return self.s + self.t

    def weights(self, color: Color) -> tuple[Fraction, ...]:
        return tuple(w for _, w in (self.white if color == WHITE else self.black))

    def unlabeled(self) -> WeightedType:
        return WeightedType(self.weights(WHITE), self.weights(BLACK))

    def display(self, color: Color, index: int) -> str:
        """Weight of the index-th vertex of a color, primed by its rank among equal weights."""
        weights = self.weights(color)
        rank = sum(1 for w in weights[:index] if w == weights[index])
        return format_weight(weights[index]) + "'" * rank
