from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional, Sequence

import networkx as nx

from ..errors import InvalidTree, NonPositiveEdge, ResidualMismatch
from .weights import BLACK, WHITE, Color, WeightedType, WeightLike, as_weight


@dataclass(frozen=True)
class Vertex:
    id: int
    color: Color
    weight: Fraction


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: Fraction

    def other(self, vertex_id: int) -> int:
        return self.v if vertex_id == self.u else self.u


@dataclass(frozen=True)
class PlaneTree:
    """A w-tree: bipartite tree with vertex and edge weights and a counterclockwise rotation system."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    rotation: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(
            self, "rotation", MappingProxyType({vid: tuple(eids) for vid, eids in self.rotation.items()})
        )
        self._check()

    def __reduce__(self):
        return (PlaneTree, (self.vertices, self.edges, dict(self.rotation)))

    def _check(self) -> None:
        by_id = {x.id: x for x in self.vertices}
        if len(by_id) != len(self.vertices):
            raise InvalidTree("vertex ids are not unique")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InvalidTree("edge ids are not unique")
        if len(self.edges) != len(self.vertices) - 1:
            raise InvalidTree(f"{len(self.vertices)} vertices need {len(self.vertices) - 1} edges, got {len(self.edges)}")

        graph = nx.Graph()
        graph.add_nodes_from(by_id)
        incident: dict[int, list[int]] = {vid: [] for vid in by_id}
        for e in self.edges:
            if e.u not in by_id or e.v not in by_id:
                raise InvalidTree(f"edge {e.id} has an unknown endpoint")
            if by_id[e.u].color == by_id[e.v].color:
                raise InvalidTree(f"edge {e.id} joins two {by_id[e.u].color} vertices")
            if e.weight <= 0:
                raise InvalidTree(f"edge {e.id} has non-positive weight {e.weight}")
            graph.add_edge(e.u, e.v)
            incident[e.u].append(e.id)
            incident[e.v].append(e.id)
        if graph.number_of_edges() != len(self.edges) or not nx.is_tree(graph):
            raise InvalidTree("vertices and edges do not form a tree")

        edge_weight = {e.id: e.weight for e in self.edges}
        for x in self.vertices:
            if x.weight <= 0:
                raise InvalidTree(f"vertex {x.id} has non-positive weight")
            total = sum((edge_weight[eid] for eid in incident[x.id]), Fraction(0))
            if total != x.weight:
                raise InvalidTree(f"vertex {x.id} has weight {x.weight} but its edges sum to {total}")

        if set(self.rotation) != set(by_id):
            raise InvalidTree("rotation must list every vertex exactly once")
        for vid, eids in self.rotation.items():
            if Counter(eids) != Counter(incident[vid]):
                raise InvalidTree(f"rotation at vertex {vid} does not list its incident edges exactly once")

    def vertex(self, vertex_id: int) -> Vertex:
        for x in self.vertices:
            if x.id == vertex_id:
                return x
        raise KeyError(vertex_id)

    def edge(self, edge_id: int) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def degree(self, vertex_id: int) -> int:
        return len(self.rotation[vertex_id])

    def wtype(self) -> WeightedType:
        return WeightedType(
            tuple(x.weight for x in self.vertices if x.color == WHITE),
            tuple(x.weight for x in self.vertices if x.color == BLACK),
        )


def _peel(
    weights: Sequence[Fraction],
    pairs: Sequence[tuple[int, int]],
    pick: Callable[[list[int]], int],
) -> list[Fraction]:
    size = len(weights)
    if len(pairs) != size - 1:
        raise InvalidTree(f"{size} vertices need {size - 1} edges, got {len(pairs)}")
    residual = list(weights)
    incident: list[set[int]] = [set() for _ in range(size)]
    for k, (a, b) in enumerate(pairs):
        incident[a].add(k)
        incident[b].add(k)

    result: list[Fraction] = [Fraction(0)] * len(pairs)
    leaves = [x for x in range(size) if len(incident[x]) == 1]
    remaining = len(pairs)
    last = 0
    while remaining:
        if not leaves:
            raise InvalidTree("edges do not form a tree")
        x = pick(leaves)
        if len(incident[x]) != 1:
            continue
        (k,) = incident[x]
        a, b = pairs[k]
        y = b if x == a else a
        w = residual[x]
        if w <= 0:
            raise NonPositiveEdge(f"derived weight {w} on edge {k}", edge_id=k)
        result[k] = w
        residual[x] = Fraction(0)
        residual[y] -= w
        incident[x].discard(k)
        incident[y].discard(k)
        remaining -= 1
        last = y
        if len(incident[y]) == 1:
            leaves.append(y)
    if residual[last] != 0:
        raise ResidualMismatch(f"final residual {residual[last]} at vertex {last}")
    return result


def peel_edge_weights(
    weights: Sequence[Fraction],
    pairs: Sequence[tuple[int, int]],
    *,
    rng: Optional[random.Random] = None,
) -> list[Fraction]:
    """Edge weights (indexed like `pairs`) forced by the vertex weights on vertices 0..len-1."""
    if rng is None:
        return _peel(weights, pairs, lambda leaves: leaves.pop())
    return _peel(weights, pairs, lambda leaves: leaves.pop(rng.randrange(len(leaves))))


def derive_edge_weights(
    vertices: Sequence[Vertex],
    edges: Sequence[tuple[int, int, int]],
    *,
    rng: Optional[random.Random] = None,
) -> dict[int, Fraction]:
    """Unique edge weights of a colored weighted tree given as (edge_id, u, v) triples.

    Leaves are peeled one at a time; `rng` randomizes the peeling order.
    Raises NonPositiveEdge when some edge would get weight <= 0.
    """
    position = {x.id: i for i, x in enumerate(vertices)}
    pairs: list[tuple[int, int]] = []
    for eid, u, v in edges:
        if u not in position or v not in position:
            raise InvalidTree(f"edge {eid} has an unknown endpoint")
        if vertices[position[u]].color == vertices[position[v]].color:
            raise InvalidTree(f"edge {eid} joins two {vertices[position[u]].color} vertices")
        pairs.append((position[u], position[v]))
    for x in vertices:
        if x.weight <= 0:
            raise InvalidTree(f"vertex {x.id} has non-positive weight")
    try:
        derived = peel_edge_weights([x.weight for x in vertices], pairs, rng=rng)
    except NonPositiveEdge as exc:
        eid = edges[exc.edge_id][0] if exc.edge_id is not None else None
        raise NonPositiveEdge(f"derived weight is not positive on edge {eid}", edge_id=eid) from exc
    return {edges[k][0]: w for k, w in enumerate(derived)}


def build_plane_tree(
    vertices: Iterable[tuple[int, Color, WeightLike]],
    pairs: Iterable[tuple[int, int]],
    rotation: Optional[Mapping[int, Sequence[int]]] = None,
) -> PlaneTree:
    """Plane tree from vertex triples and endpoint pairs; edge ids follow `pairs` order.

    `rotation` maps a vertex id to its neighbours' ids in counterclockwise order;
    when omitted, incident edges are taken in id order.
    """
    vs = tuple(Vertex(vid, color, as_weight(w)) for vid, color, w in vertices)
    triples = [(k, u, v) for k, (u, v) in enumerate(pairs)]
    weights = derive_edge_weights(vs, triples)
    edges = tuple(Edge(k, u, v, weights[k]) for k, u, v in triples)

    incident: dict[int, list[int]] = {x.id: [] for x in vs}
    between: dict[tuple[int, int], int] = {}
    for e in edges:
        incident[e.u].append(e.id)
        incident[e.v].append(e.id)
        between[(e.u, e.v)] = e.id
        between[(e.v, e.u)] = e.id

    if rotation is None:
        rot = {vid: tuple(eids) for vid, eids in incident.items()}
    else:
        try:
            rot = {vid: tuple(between[(vid, nb)] for nb in rotation[vid]) for vid in incident}
        except KeyError as exc:
            raise InvalidTree(f"rotation refers to a non-adjacent or missing vertex: {exc}") from exc
    return PlaneTree(vs, edges, rot)
