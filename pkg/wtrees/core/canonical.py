"""Canonical codes of plane trees.

A code is the token sequence of a depth-first walk started on a directed
edge (a dart) and turning counterclockwise. Each visited vertex contributes
its color and weight, each traversed edge a DOWN marker and its weight, and
each return an UP marker. All codes of a tree have the same length and the
grammar fixes the token category at every position, so plain tuple order is
the alphabet order DOWN < UP < white < black < weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .tree import Edge, PlaneTree, Vertex
from .weights import BLACK, WHITE, Color

DOWN = 0
UP = 1
WHITE_TOKEN = 2
BLACK_TOKEN = 3

Token = Union[int, Fraction]

_COLOR_TOKEN = {WHITE: WHITE_TOKEN, BLACK: BLACK_TOKEN}


def _weight_token(w: Fraction) -> Token:
    return w.numerator if w.denominator == 1 else w


def _weight_bytes(token: Token) -> bytes:
    w = Fraction(token)
    return b"\x04" + f"{w.numerator}/{w.denominator};".encode("ascii")


@dataclass(frozen=True, order=True)
class CanonicalCode:
    tokens: tuple[Token, ...]

    def to_bytes(self) -> bytes:
        t = self.tokens
        out = bytearray([t[0]])
        out += _weight_bytes(t[1])
        i = 2
        while i < len(t):
            if t[i] == DOWN:
                out.append(DOWN)
                out += _weight_bytes(t[i + 1])
                out.append(t[i + 2])
                out += _weight_bytes(t[i + 3])
                i += 4
            else:
                out.append(UP)
                i += 1
        return bytes(out)

    def hex(self) -> str:
        return self.to_bytes().hex()


class RotationSystem:
    """Index-based view of a plane tree used by every canonical-form routine.

    `adjacency[x]` lists the neighbours of vertex x counterclockwise and
    `edge_weights[x][j]` is the weight of the edge to `adjacency[x][j]`.
    """

    __slots__ = ("colors", "weights", "adjacency", "edge_weights", "_labels", "_tokens", "_position")

    def __init__(
        self,
        colors: Sequence[Color],
        weights: Sequence[Fraction],
        adjacency: Sequence[Sequence[int]],
        edge_weights: Sequence[Sequence[Fraction]],
    ):
        self.colors = tuple(colors)
        self.weights = tuple(weights)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self.edge_weights = tuple(tuple(w) for w in edge_weights)
        self._labels = tuple((_COLOR_TOKEN[c], _weight_token(w)) for c, w in zip(self.colors, self.weights))
        self._tokens = tuple(tuple(_weight_token(w) for w in ws) for ws in self.edge_weights)
        self._position = tuple({y: j for j, y in enumerate(nbrs)} for nbrs in self.adjacency)

    @classmethod
    def from_tree(cls, tree: PlaneTree) -> "RotationSystem":
        index = {x.id: i for i, x in enumerate(tree.vertices)}
        edges = {e.id: e for e in tree.edges}
        adjacency: list[list[int]] = []
        edge_weights: list[list[Fraction]] = []
        for x in tree.vertices:
            eids = tree.rotation[x.id]
            adjacency.append([index[edges[eid].other(x.id)] for eid in eids])
            edge_weights.append([edges[eid].weight for eid in eids])
        return cls([x.color for x in tree.vertices], [x.weight for x in tree.vertices], adjacency, edge_weights)

    def code_at(self, root: int, first: int) -> tuple[Token, ...]:
        labels, adjacency, tokens, position = self._labels, self.adjacency, self._tokens, self._position
        out: list[Token] = list(labels[root])

        def visit(x: int, start: int, count: int) -> None:
            nbrs = adjacency[x]
            d = len(nbrs)
            for k in range(count):
                j = (start + k) % d
                y = nbrs[j]
                out.append(DOWN)
                out.append(tokens[x][j])
                out.extend(labels[y])
                visit(y, position[y][x] + 1, len(adjacency[y]) - 1)
                out.append(UP)

        visit(root, first, len(adjacency[root]))
        return tuple(out)

    def _candidate_darts(self) -> list[tuple[int, int]]:
        smallest = min(self._labels)
        return [
            (x, j)
            for x, label in enumerate(self._labels)
            if label == smallest
            for j in range(len(self.adjacency[x]))
        ]

    def minimal_darts(self) -> tuple[tuple[Token, ...], list[tuple[int, int]]]:
        """The minimal code and every dart that attains it."""
        best: tuple[Token, ...] | None = None
        roots: list[tuple[int, int]] = []
        for x, j in self._candidate_darts():
            code = self.code_at(x, j)
            if best is None or code < best:
                best, roots = code, [(x, j)]
            elif code == best:
                roots.append((x, j))
        assert best is not None
        return best, roots

    def canonical_code(self) -> CanonicalCode:
        return CanonicalCode(self.minimal_darts()[0])

    def automorphism_order(self) -> int:
        # Automorphisms act freely on darts and equal codes mark one orbit.
        return len(self.minimal_darts()[1])

    def vertex_code(self, x: int) -> tuple[Token, ...]:
        return min(self.code_at(x, j) for j in range(len(self.adjacency[x])))

    def to_tree(self, root: int, first: int) -> PlaneTree:
        """Relabel in walk order from a dart: DFS ids, each rotation starting at the parent edge."""
        new_id: dict[int, int] = {root: 0}
        vertices: list[Vertex] = [Vertex(0, self.colors[root], self.weights[root])]
        edges: list[Edge] = []
        rotation: dict[int, list[int]] = {0: []}

        def visit(x: int, start: int, count: int) -> None:
            nbrs = self.adjacency[x]
            d = len(nbrs)
            for k in range(count):
                j = (start + k) % d
                y = nbrs[j]
                vid = len(vertices)
                new_id[y] = vid
                vertices.append(Vertex(vid, self.colors[y], self.weights[y]))
                eid = len(edges)
                edges.append(Edge(eid, new_id[x], vid, self.edge_weights[x][j]))
                rotation[new_id[x]].append(eid)
                rotation[vid] = [eid]
                visit(y, self._position[y][x] + 1, len(self.adjacency[y]) - 1)

        visit(root, first, len(self.adjacency[root]))
        return PlaneTree(tuple(vertices), tuple(edges), rotation)

    def canonical_tree(self) -> tuple[CanonicalCode, PlaneTree]:
        code, roots = self.minimal_darts()
        return CanonicalCode(code), self.to_tree(*roots[0])


def canonical_code(tree: PlaneTree) -> CanonicalCode:
    return RotationSystem.from_tree(tree).canonical_code()


def are_isotopic(a: PlaneTree, b: PlaneTree) -> bool:
    if len(a.vertices) != len(b.vertices):
        return False
    return canonical_code(a) == canonical_code(b)


def automorphism_order(tree: PlaneTree) -> int:
    return RotationSystem.from_tree(tree).automorphism_order()


def canonical_form(tree: PlaneTree) -> PlaneTree:
    return RotationSystem.from_tree(tree).canonical_tree()[1]


def vertex_orbit_count(tree: PlaneTree, color: Color, weight: Fraction) -> int:
    """Number of automorphism orbits among the vertices of one (color, weight) class."""
    system = RotationSystem.from_tree(tree)
    codes = {
        system.vertex_code(i)
        for i, x in enumerate(tree.vertices)
        if x.color == color and x.weight == weight
    }
    return len(codes)
