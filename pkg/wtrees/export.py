"""Renderers for trees and censuses: JSON documents, JSON lines, DOT and plain text."""

from __future__ import annotations

import json
from typing import Optional, Sequence, Union

from .core.canonical import CanonicalCode
from .core.tree import Edge, PlaneTree, Vertex
from .core.weights import WHITE, as_weight, format_weight, weight_document
from .enumerator import EnumeratedTree, SymmetryCensus
from .schemas import CensusDocument, EdgeDocument, TreeDocument, VertexDocument

_SYMBOL = {"white": "○", "black": "●"}


def tree_to_document(tree: PlaneTree, code: Optional[CanonicalCode] = None) -> TreeDocument:
    return TreeDocument(
        vertices=[VertexDocument(id=x.id, color=x.color, weight=weight_document(x.weight)) for x in tree.vertices],
        edges=[EdgeDocument(id=e.id, u=e.u, v=e.v, weight=weight_document(e.weight)) for e in tree.edges],
        rotation={str(x.id): list(tree.rotation[x.id]) for x in tree.vertices},
        code=code.hex() if code is not None else None,
    )


def document_to_tree(document: Union[TreeDocument, dict]) -> PlaneTree:
    """Rebuild a PlaneTree; the tree's own invariants are re-checked on construction."""
    doc = document if isinstance(document, TreeDocument) else TreeDocument.model_validate(document)
    return PlaneTree(
        tuple(Vertex(x.id, x.color, as_weight(x.weight)) for x in doc.vertices),
        tuple(Edge(e.id, e.u, e.v, as_weight(e.weight)) for e in doc.edges),
        {int(vid): tuple(eids) for vid, eids in doc.rotation.items()},
    )


def _document_json(record: EnumeratedTree) -> str:
    return tree_to_document(record.tree, record.code).model_dump_json(exclude_none=True)


def render_jsonl(records: Sequence[EnumeratedTree]) -> str:
    return "".join(_document_json(r) + "\n" for r in records)


def render_json(records: Sequence[EnumeratedTree]) -> str:
    documents = [tree_to_document(r.tree, r.code).model_dump(exclude_none=True) for r in records]
    return json.dumps(documents, ensure_ascii=False, indent=2) + "\n"


def render_dot(tree: PlaneTree, name: str = "wtree") -> str:
    """Graphviz source; white vertices unfilled, black filled, edges labeled by weight."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for x in tree.vertices:
        style = 'style=solid, fillcolor=white' if x.color == WHITE else 'style=filled, fillcolor=black, fontcolor=white'
        lines.append(f'  v{x.id} [label="{format_weight(x.weight)}", {style}];')
    for e in tree.edges:
        lines.append(f'  v{e.u} -- v{e.v} [label="{format_weight(e.weight)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_dot_all(records: Sequence[EnumeratedTree]) -> str:
    return "".join(render_dot(r.tree, f"wtree_{k}") for k, r in enumerate(records))


def render_text(tree: PlaneTree) -> str:
    """One line per vertex: its label, then neighbours counterclockwise with edge weights."""
    lines = []
    for x in tree.vertices:
        around = []
        for eid in tree.rotation[x.id]:
            e = tree.edge(eid)
            y = tree.vertex(e.other(x.id))
            around.append(f"{format_weight(e.weight)}→{_SYMBOL[y.color]}{format_weight(y.weight)}#{y.id}")
        lines.append(f"{_SYMBOL[x.color]}{format_weight(x.weight)}#{x.id}: " + ", ".join(around))
    return "\n".join(lines) + "\n"


def render_text_all(records: Sequence[EnumeratedTree]) -> str:
    blocks = [f"# {k + 1} code={r.code.hex()} aut={r.automorphism_order}\n{render_text(r.tree)}" for k, r in enumerate(records)]
    return "\n".join(blocks)


def census_document(census: SymmetryCensus) -> CensusDocument:
    return CensusDocument.model_validate(census.to_document())
