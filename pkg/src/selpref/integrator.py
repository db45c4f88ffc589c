"""Materialize class-to-class preferences as relation edges over the taxonomy.

Edges live in an overlay file next to the taxonomy rather than inside it, so
the hierarchy stays pristine.  Edge file format (tab-separated)::

    verb_class <TAB> rel <TAB> noun_class <TAB> score

Scores are written with 17 significant digits, which round-trips doubles
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

from selpref.corpus import CountTable, RELATIONS
from selpref.estimator import Estimator
from selpref.models import class_to_class
from selpref.pruner import prune_classes, prune_pairs
from selpref.taxonomy import NOUN, VERB, Taxonomy


@dataclass(frozen=True)
class RelationEdge:
    verb_class: str
    rel: str
    noun_class: str
    score: float


def build_edges(
    taxonomy: Taxonomy,
    counts: CountTable,
    rel: str,
    verb_classes: Iterable[str] | None = None,
    prune: bool = False,
    est: Estimator | None = None,
) -> list[RelationEdge]:
    """One edge per (verb class, noun class) pair with a positive class-to-class score.

    ``verb_classes`` defaults to every verb concept in the taxonomy.  With
    ``prune`` set, each class's table is first reduced to its antichain and
    the pooled pairs are then pruned under the product order.
    """
    est = est or Estimator(taxonomy, counts)
    if verb_classes is None:
        verb_classes = taxonomy.ids(VERB)
    pairs: list[tuple[str, str, float]] = []
    for cv in sorted(verb_classes):
        table = class_to_class(taxonomy, counts, cv, rel, est=est)
        if not table.trained:
            continue
        entries = prune_classes(taxonomy, table).kept if prune else table.sorted_entries()
        pairs.extend((cv, cn, score) for cn, score in entries if score > 0.0)
    if prune:
        pairs = prune_pairs(taxonomy, pairs, rel).kept_pairs
    return [RelationEdge(cv, rel, cn, score) for cv, cn, score in pairs]


def export_edges(edges: Iterable[RelationEdge], sink: IO[str]) -> int:
    """Write edges sorted by (verb_class, rel, descending score, noun_class)."""
    ordered = sorted(edges, key=lambda e: (e.verb_class, e.rel, -e.score, e.noun_class))
    n = 0
    for e in ordered:
        sink.write(f"{e.verb_class}\t{e.rel}\t{e.noun_class}\t{e.score:.17g}\n")
        n += 1
    return n


def load_edges(source: IO[str] | Iterable[str], taxonomy: Taxonomy) -> list[RelationEdge]:
    """Read an edge file back, validating ids, pos, and score positivity."""
    edges: list[RelationEdge] = []
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ValueError(f"line {lineno}: expected 4 tab-separated fields, got {len(fields)}")
        cv, rel, cn, score_text = fields
        if rel not in RELATIONS:
            raise ValueError(f"line {lineno}: bad rel {rel!r}")
        if taxonomy.concept(cv).pos != VERB:
            raise ValueError(f"line {lineno}: {cv!r} is not a verb concept")
        if taxonomy.concept(cn).pos != NOUN:
            raise ValueError(f"line {lineno}: {cn!r} is not a noun concept")
        score = float(score_text)
        if not score > 0.0:
            raise ValueError(f"line {lineno}: edge score must be positive, got {score_text}")
        edges.append(RelationEdge(cv, rel, cn, score))
    return edges


def index_edges(edges: Iterable[RelationEdge]) -> dict[tuple[str, str], list[tuple[str, float]]]:
    """Combined view: (verb_class, rel) -> [(noun_class, score)] by descending score."""
    out: dict[tuple[str, str], list[tuple[str, float]]] = {}
    for e in edges:
        out.setdefault((e.verb_class, e.rel), []).append((e.noun_class, e.score))
    for v in out.values():
        v.sort(key=lambda ns: (-ns[1], ns[0]))
    return out
