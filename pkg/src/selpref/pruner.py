"""Reduce preference tables to their most informative concepts.

Scanning entries from the strongest down, a concept is kept only if no
previously kept concept lies above or below it in the hierarchy, so the kept
concepts of each branch collapse to the single strongest one and the result
is an antichain.  The same scheme extends to (verb class, noun class) pairs
under the coordinate-wise order.  Ties are broken by ascending concept id,
making the output deterministic; a pair pruned by an equal-scoring comparable
pair therefore loses only to the tie-break winner.
"""

from __future__ import annotations

from dataclasses import dataclass

from selpref.models import PreferenceTable
from selpref.taxonomy import Taxonomy


@dataclass
class PrunedTable:
    base: PreferenceTable
    kept: list[tuple[str, float]]  # descending score, then ascending id


@dataclass
class PrunedPairSet:
    rel: str
    kept_pairs: list[tuple[str, str, float]]  # (verb_class, noun_class, score)


def prune_classes(taxonomy: Taxonomy, table: PreferenceTable) -> PrunedTable:
    """Keep, per branch, only the strongest concept; zero scores are dropped first."""
    entries = [(c, s) for c, s in table.scores.items() if s > 0.0]
    entries.sort(key=lambda cs: (-cs[1], cs[0]))
    kept: list[tuple[str, float]] = []
    for c, s in entries:
        comparable = any(
            taxonomy.subsumes(k, c) or taxonomy.subsumes(c, k)
            for k, _ in kept
        )
        if not comparable:
            kept.append((c, s))
    return PrunedTable(table, kept)


def prune_pairs(taxonomy: Taxonomy, pairs: list[tuple[str, str, float]], rel: str = "") -> PrunedPairSet:
    """Antichain of (verb class, noun class) pairs under the product order.

    A pair is dropped when an earlier-kept pair subsumes it on both
    coordinates or is subsumed by it on both.
    """
    ordered = sorted(pairs, key=lambda p: (-p[2], p[0], p[1]))
    kept: list[tuple[str, str, float]] = []
    for cv, cn, s in ordered:
        if s <= 0.0:
            continue
        comparable = any(
            (taxonomy.subsumes(kv, cv) and taxonomy.subsumes(kn, cn))
            or (taxonomy.subsumes(cv, kv) and taxonomy.subsumes(cn, kn))
            for kv, kn, _ in kept
        )
        if not comparable:
            kept.append((cv, cn, s))
    return PrunedPairSet(rel, kept)
