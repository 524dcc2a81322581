from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wtrees.core import (
    BLACK,
    WHITE,
    Edge,
    PlaneTree,
    Vertex,
    are_isotopic,
    automorphism_order,
    build_plane_tree,
    canonical_code,
    canonical_form,
    vertex_orbit_count,
)
from wtrees.enumerator import enumerate_types, enumerate_wtree_records


def symmetric_tree() -> PlaneTree:
    """○6 at the center with three arms ●3 - ○1."""
    vertices = [(0, WHITE, 6)]
    pairs = []
    for k in range(3):
        black, white = 1 + 2 * k, 2 + 2 * k
        vertices += [(black, BLACK, 3), (white, WHITE, 1)]
        pairs += [(0, black), (black, white)]
    return build_plane_tree(vertices, pairs)


def star(order: list[int]) -> PlaneTree:
    leaves = [(k + 1, BLACK, w) for k, w in enumerate(order)]
    return build_plane_tree([(0, WHITE, sum(order))] + leaves, [(0, k + 1) for k in range(len(order))])


def relabel(tree: PlaneTree, shift: int, turn: int) -> PlaneTree:
    """Same plane tree with new vertex and edge ids and every rotation started elsewhere."""
    n, m = len(tree.vertices), len(tree.edges)
    vid = {x.id: (x.id + shift) % n + 100 for x in tree.vertices}
    eid = {e.id: (e.id + shift) % m + 500 for e in tree.edges}
    vertices = tuple(Vertex(vid[x.id], x.color, x.weight) for x in reversed(tree.vertices))
    edges = tuple(Edge(eid[e.id], vid[e.v], vid[e.u], e.weight) for e in tree.edges)
    rotation = {}
    for x, eids in tree.rotation.items():
        k = turn % len(eids)
        rotation[vid[x]] = tuple(eid[e] for e in eids[k:] + eids[:k])
    return PlaneTree(vertices, edges, rotation)


@given(st.integers(0, 20), st.integers(0, 20))
def test_code_ignores_ids_and_rotation_start(shift, turn):
    tree = symmetric_tree()
    assert canonical_code(relabel(tree, shift, turn)) == canonical_code(tree)


def test_mirror_images_are_distinct():
    assert not are_isotopic(star([1, 2, 3]), star([1, 3, 2]))
    assert are_isotopic(star([1, 2, 3]), star([2, 3, 1]))


def test_automorphism_orders():
    assert automorphism_order(symmetric_tree()) == 3
    assert automorphism_order(star([1, 1])) == 2
    assert automorphism_order(star([1, 1, 1, 1])) == 4
    assert automorphism_order(star([1, 2, 1, 2])) == 2
    assert automorphism_order(star([1, 1, 2])) == 1


def test_single_edge_has_no_symmetry():
    assert automorphism_order(build_plane_tree([(0, WHITE, 4), (1, BLACK, 4)], [(0, 1)])) == 1


def test_vertex_orbits():
    tree = symmetric_tree()
    assert vertex_orbit_count(tree, WHITE, Fraction(1)) == 1
    assert vertex_orbit_count(tree, WHITE, Fraction(6)) == 1
    assert vertex_orbit_count(tree, BLACK, Fraction(3)) == 1
    assert vertex_orbit_count(star([1, 1, 2]), BLACK, Fraction(1)) == 2
    assert vertex_orbit_count(star([1, 1, 2]), WHITE, Fraction(7)) == 0


def test_canonical_form_is_a_fixed_point():
    tree = relabel(symmetric_tree(), 3, 1)
    form = canonical_form(tree)
    assert canonical_code(form) == canonical_code(tree)
    again = canonical_form(form)
    assert again.vertices == form.vertices
    assert again.edges == form.edges
    assert dict(again.rotation) == dict(form.rotation)
    assert [x.id for x in form.vertices] == list(range(len(form.vertices)))


def test_hex_rendering():
    code = canonical_code(star([1, 2, 3]))
    text = code.hex()
    assert text == text.lower()
    assert bytes.fromhex(text) == code.to_bytes()
    assert code.hex() != canonical_code(star([1, 3, 2])).hex()


def test_codes_order_totally():
    codes = sorted({canonical_code(star(order)) for order in ([1, 2, 3], [1, 3, 2], [2, 2, 2], [6])})
    assert len(codes) == 4
    assert all(a < b for a, b in zip(codes, codes[1:]))


@pytest.mark.parametrize("n", range(2, 7))
def test_symmetric_trees_have_one_center_class(n):
    """A symmetry of order i splits every (color, weight) class into i-cycles except the center's class."""
    for wtype in enumerate_types(n):
        for record in enumerate_wtree_records(wtype):
            order = record.automorphism_order
            if order < 2:
                continue
            classes = Counter((x.color, x.weight) for x in record.tree.vertices)
            residues = sorted(m % order for m in classes.values())
            assert residues == [0] * (len(residues) - 1) + [1], (str(wtype), order, classes)
