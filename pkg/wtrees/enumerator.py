"""Exhaustive generation of w-trees up to isotopy.

Labeled spanning trees of K_{s,t} are generated with per-vertex degree caps,
edge weights are forced by leaf peeling, and every plane embedding of a
surviving tree is canonicalized. Deduplication happens on canonical codes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product, repeat
from typing import Iterator, Mapping, Optional, Sequence

from sympy.utilities.iterables import multiset_permutations, partitions

from .core.canonical import CanonicalCode, RotationSystem
from .core.tree import PlaneTree, peel_edge_weights
from .core.weights import BLACK, WHITE, Color, WeightedType
from .errors import NonPositiveEdge, ResourceBudget

DEFAULT_BUDGET = 10**8

LabeledTree = tuple[tuple[int, int], ...]


def enumerate_labeled_bipartite_trees(
    s: int,
    t: int,
    *,
    degree_caps: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> Iterator[LabeledTree]:
    """Spanning trees of K_{s,t}, each once, as (white index, black index) edge lists.

    `degree_caps` bounds the degree of white vertices 0..s-1 followed by black
    vertices 0..t-1. Without caps there are s^(t-1) * t^(s-1) trees.
    """
    if s < 1 or t < 1:
        raise ValueError("both colors need at least one vertex")
    size = s + t
    caps = list(degree_caps) if degree_caps is not None else [size] * size
    if len(caps) != size:
        raise ValueError(f"expected {size} degree caps, got {len(caps)}")
    need = size - 1
    if min(caps) < 1 or sum(caps[:s]) < need or sum(caps[s:]) < need:
        return

    pairs = [(i, j) for i in range(s) for j in range(t)]
    degree = [0] * size
    chosen: list[tuple[int, int]] = []
    produced = 0

    def extend(k: int, component: tuple[int, ...]) -> Iterator[LabeledTree]:
        nonlocal produced
        if len(chosen) == need:
            produced += 1
            if budget is not None and produced > budget:
                raise ResourceBudget(f"more than {budget} labeled trees", limit=budget)
            yield tuple(chosen)
            return
        if len(pairs) - k < need - len(chosen):
            return
        i, j = pairs[k]
        a, b = i, s + j
        if degree[a] < caps[a] and degree[b] < caps[b] and component[a] != component[b]:
            keep, drop = component[a], component[b]
            merged = tuple(keep if c == drop else c for c in component)
            degree[a] += 1
            degree[b] += 1
            chosen.append((i, j))
            yield from extend(k + 1, merged)
            chosen.pop()
            degree[a] -= 1
            degree[b] -= 1
        # (i, t-1) is the last pair touching white i, (s-1, j) the last touching black j.
        if (j == t - 1 and degree[a] == 0) or (i == s - 1 and degree[b] == 0):
            return
        yield from extend(k + 1, component)

    yield from extend(0, tuple(range(size)))


def _cyclic_orders(neighbours: Sequence[int], keys: Optional[Sequence[int]]) -> list[tuple[int, ...]]:
    if len(neighbours) <= 2:
        return [tuple(neighbours)]
    first, rest = neighbours[0], list(neighbours[1:])
    if keys is None:
        return [(first,) + p for p in permutations(rest)]
    pools: dict[int, list[int]] = {}
    for y, key in zip(rest, keys[1:]):
        pools.setdefault(key, []).append(y)
    orders: list[tuple[int, ...]] = []
    for arrangement in multiset_permutations(list(keys[1:])):
        taken = {key: iter(pool) for key, pool in pools.items()}
        orders.append((first,) + tuple(next(taken[key]) for key in arrangement))
    return orders


def plane_embeddings(
    adjacency: Sequence[Sequence[int]],
    *,
    twin_keys: Optional[Sequence[Sequence[int]]] = None,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every counterclockwise neighbour order per vertex.

    Without `twin_keys` this yields prod (deg(v)-1)! rotation systems. With
    them, neighbours sharing a key at a vertex are treated as interchangeable.
    """
    per_vertex = [
        _cyclic_orders(nbrs, None if twin_keys is None else twin_keys[x]) for x, nbrs in enumerate(adjacency)
    ]
    yield from product(*per_vertex)


def embedding_count(adjacency: Sequence[Sequence[int]]) -> int:
    return math.prod(math.factorial(max(len(nbrs) - 1, 0)) for nbrs in adjacency)


@dataclass(frozen=True)
class EnumeratedTree:
    code: CanonicalCode
    tree: PlaneTree
    automorphism_order: int


@dataclass(frozen=True)
class SymmetryCensus:
    total_unlabeled: int
    by_order: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "by_order", dict(sorted(self.by_order.items())))
        if sum(self.by_order.values()) != self.total_unlabeled:
            raise ValueError("census buckets do not add up to the total")

    def labeled_counts(self, p: int) -> tuple[int, dict[int, int]]:
        """N (nonsymmetric labeled trees) and M_i (labeled trees with i-order symmetry)."""
        nonsymmetric = self.by_order.get(1, 0) * p
        symmetric = {i: count * p // i for i, count in self.by_order.items() if i >= 2}
        return nonsymmetric, symmetric

    def to_document(self) -> dict[str, object]:
        return {"total": self.total_unlabeled, "byOrder": {str(i): c for i, c in self.by_order.items()}}


def _vertex_layout(wtype: WeightedType) -> tuple[list[Color], list[Fraction], list[int]]:
    colors: list[Color] = [WHITE] * wtype.s + [BLACK] * wtype.t
    weights = list(wtype.white + wtype.black)
    scaled, _ = wtype.integral()
    caps = [int(w) for w in scaled.white + scaled.black]
    return colors, weights, caps


def _canonical_batch(
    colors: Sequence[Color],
    weights: Sequence[Fraction],
    s: int,
    batch: Sequence[tuple[LabeledTree, list[Fraction]]],
) -> dict[tuple, EnumeratedTree]:
    size = len(colors)
    class_ids: dict[tuple[Color, Fraction], int] = {}
    found: dict[tuple, EnumeratedTree] = {}
    for edges, edge_weight in batch:
        neighbours: list[list[int]] = [[] for _ in range(size)]
        between: dict[tuple[int, int], Fraction] = {}
        for (i, j), w in zip(edges, edge_weight):
            a, b = i, s + j
            neighbours[a].append(b)
            neighbours[b].append(a)
            between[(a, b)] = between[(b, a)] = w
        keys = [
            [
                class_ids.setdefault((colors[y], weights[y]), len(class_ids))
                if len(neighbours[y]) == 1
                else -1 - y
                for y in nbrs
            ]
            for nbrs in neighbours
        ]
        for rotation in plane_embeddings(neighbours, twin_keys=keys):
            system = RotationSystem(
                colors,
                weights,
                rotation,
                [[between[(x, y)] for y in nbrs] for x, nbrs in enumerate(rotation)],
            )
            code, roots = system.minimal_darts()
            if code not in found:
                found[code] = EnumeratedTree(CanonicalCode(code), system.to_tree(*roots[0]), len(roots))
    return found


def enumerate_wtree_records(
    wtype: WeightedType,
    *,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[EnumeratedTree]:
    """All w-trees of a type up to isotopy with their codes and symmetry orders, sorted by code."""
    colors, weights, caps = _vertex_layout(wtype)
    s, t = wtype.s, wtype.t

    work: list[tuple[LabeledTree, list[Fraction]]] = []
    raw_embeddings = 0
    for edges in enumerate_labeled_bipartite_trees(s, t, degree_caps=caps, budget=budget):
        pairs = [(i, s + j) for i, j in edges]
        try:
            edge_weight = peel_edge_weights(weights, pairs)
        except NonPositiveEdge:
            continue
        degree = [0] * (s + t)
        for a, b in pairs:
            degree[a] += 1
            degree[b] += 1
        raw_embeddings += math.prod(math.factorial(d - 1) for d in degree)
        if raw_embeddings > budget:
            raise ResourceBudget(f"{wtype} needs more than {budget} plane embeddings", limit=budget)
        work.append((edges, edge_weight))

    found: dict[tuple, EnumeratedTree] = {}
    if jobs > 1 and len(work) >= 2 * jobs:
        size = -(-len(work) // (jobs * 4))
        chunks = [work[k : k + size] for k in range(0, len(work), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_canonical_batch, repeat(colors), repeat(weights), repeat(s), chunks):
                for code, record in part.items():
                    found.setdefault(code, record)
    else:
        found = _canonical_batch(colors, weights, s, work)
    return [found[code] for code in sorted(found)]


def enumerate_wtrees(wtype: WeightedType, *, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[PlaneTree]:
    return [record.tree for record in enumerate_wtree_records(wtype, budget=budget, jobs=jobs)]


def census_of(records: Sequence[EnumeratedTree]) -> SymmetryCensus:
    by_order: dict[int, int] = {}
    for record in records:
        by_order[record.automorphism_order] = by_order.get(record.automorphism_order, 0) + 1
    return SymmetryCensus(len(records), by_order)


def symmetric_census(wtype: WeightedType, *, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> SymmetryCensus:
    return census_of(enumerate_wtree_records(wtype, budget=budget, jobs=jobs))


def integer_partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as non-decreasing tuples, in lexicographic order."""
    found = [tuple(sorted(k for k, m in p.items() for _ in range(m))) for p in partitions(n)]
    return sorted(found)


def enumerate_types(n: int) -> list[WeightedType]:
    """Every type of total weight n: all (white partition, black partition) pairs."""
    if n < 1:
        raise ValueError("total weight must be at least 1")
    parts = integer_partitions(n)
    return [WeightedType(white, black) for white in parts for black in parts]
