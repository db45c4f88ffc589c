"""Concept taxonomy: noun and verb concept DAGs with word-sense attachments.

A taxonomy is a set of concepts, each belonging to one part of speech, linked
by an acyclic parent (hypernym) relation.  Word senses are attached to
concepts as ``lemma#sense_number`` pairs; sense numbers rank a lemma's senses
by frequency, so sense 1 is the most frequent reading.  Subsumption is
reflexive: every concept subsumes itself, and ``classes_count`` (the number
of subsuming classes) therefore counts the concept as well.

File format: tab-separated, one concept per line, ``#``-prefixed comment
lines and blank lines ignored::

    concept_id <TAB> pos <TAB> parent_ids <TAB> attachments

``pos`` is ``noun`` or ``verb``; ``parent_ids`` is comma-separated (empty for
roots); ``attachments`` is a comma-separated list of ``lemma#sense_number``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable

NOUN = "noun"
VERB = "verb"
POS_VALUES = (NOUN, VERB)


class TaxonomyError(ValueError):
    """Malformed or inconsistent taxonomy input."""


@dataclass(frozen=True)
class Concept:
    id: str
    pos: str
    parents: frozenset[str]
    attachments: tuple[tuple[str, int], ...]  # (lemma, sense_number)


class Taxonomy:
    """Immutable concept hierarchy with precomputed transitive closures.

    All validation happens in the constructor; afterwards every query is a
    pure lookup, safe to call from any number of threads.
    """

    def __init__(self, concepts: Iterable[Concept], lines: dict[str, int] | None = None):
        self._concepts: dict[str, Concept] = {}
        lines = lines or {}
        for c in concepts:
            if c.id in self._concepts:
                raise TaxonomyError(self._at(lines, c.id, f"duplicate concept id {c.id!r}"))
            self._concepts[c.id] = c

        self._children: dict[str, set[str]] = {cid: set() for cid in self._concepts}
        for c in self._concepts.values():
            for p in c.parents:
                parent = self._concepts.get(p)
                if parent is None:
                    raise TaxonomyError(self._at(lines, c.id, f"unknown parent id {p!r} for concept {c.id!r}"))
                if parent.pos != c.pos:
                    raise TaxonomyError(
                        self._at(lines, c.id, f"mixed-pos parentage: {c.id!r} ({c.pos}) under {p!r} ({parent.pos})")
                    )
                self._children[p].add(c.id)

        order = self._toposort(lines)

        # Reflexive transitive closures, parents first.  Sorted tuples give a
        # deterministic iteration order for all downstream float accumulation.
        anc: dict[str, frozenset[str]] = {}
        for cid in order:
            s = {cid}
            for p in self._concepts[cid].parents:
                s |= anc[p]
            anc[cid] = frozenset(s)
        desc: dict[str, frozenset[str]] = {}
        for cid in reversed(order):
            s = {cid}
            for ch in self._children[cid]:
                s |= desc[ch]
            desc[cid] = frozenset(s)
        self._ancestors = anc
        self._descendants = desc
        self._ancestors_sorted = {cid: tuple(sorted(v)) for cid, v in anc.items()}
        self._descendants_sorted = {cid: tuple(sorted(v)) for cid, v in desc.items()}

        self._sense_index: dict[tuple[str, str], list[tuple[int, str]]] = {}
        seen_attachments: dict[tuple[str, str, int], str] = {}
        for cid in sorted(self._concepts):
            c = self._concepts[cid]
            for lemma, num in c.attachments:
                key = (lemma, c.pos, num)
                if key in seen_attachments:
                    raise TaxonomyError(
                        self._at(lines, cid,
                                 f"duplicate sense attachment {lemma}#{num} ({c.pos}) "
                                 f"on {cid!r} and {seen_attachments[key]!r}")
                    )
                seen_attachments[key] = cid
                self._sense_index.setdefault((lemma, c.pos), []).append((num, cid))
        for senses in self._sense_index.values():
            senses.sort()

        self._ids_by_pos = {
            pos: tuple(sorted(cid for cid, c in self._concepts.items() if c.pos == pos))
            for pos in POS_VALUES
        }

    @staticmethod
    def _at(lines: dict[str, int], cid: str, msg: str) -> str:
        return f"line {lines[cid]}: {msg}" if cid in lines else msg

    def _toposort(self, lines: dict[str, int]) -> list[str]:
        indeg = {cid: len(c.parents) for cid, c in self._concepts.items()}
        queue = deque(sorted(cid for cid, d in indeg.items() if d == 0))
        order = []
        while queue:
            cid = queue.popleft()
            order.append(cid)
            for ch in sorted(self._children[cid]):
                indeg[ch] -= 1
                if indeg[ch] == 0:
                    queue.append(ch)
        if len(order) < len(self._concepts):
            cycle = self._find_cycle({cid for cid, d in indeg.items() if d > 0})
            raise TaxonomyError(
                self._at(lines, cycle[0], "cycle detected: " + " -> ".join(cycle + [cycle[0]]))
            )
        return order

    def _find_cycle(self, remaining: set[str]) -> list[str]:
        # Every remaining node sits on or above a cycle; walk parent links
        # (restricted to remaining nodes) until one repeats.
        start = sorted(remaining)[0]
        path, at = [], start
        seen: dict[str, int] = {}
        while at not in seen:
            seen[at] = len(path)
            path.append(at)
            at = sorted(p for p in self._concepts[at].parents if p in remaining)[0]
        return path[seen[at]:]

    # -- queries -----------------------------------------------------------

    def concept(self, cid: str) -> Concept:
        try:
            return self._concepts[cid]
        except KeyError:
            raise KeyError(f"unknown concept id: {cid!r}") from None

    def __contains__(self, cid: str) -> bool:
        return cid in self._concepts

    def __len__(self) -> int:
        return len(self._concepts)

    @property
    def concepts(self) -> dict[str, Concept]:
        return dict(self._concepts)

    def ids(self, pos: str) -> tuple[str, ...]:
        """All concept ids with the given pos, sorted."""
        return self._ids_by_pos[pos]

    def roots(self, pos: str) -> tuple[str, ...]:
        return tuple(cid for cid in self._ids_by_pos[pos] if not self._concepts[cid].parents)

    def children_of(self, cid: str) -> frozenset[str]:
        self.concept(cid)
        return frozenset(self._children[cid])

    def ancestors(self, cid: str) -> frozenset[str]:
        """Reflexive: cid is among its own ancestors."""
        self.concept(cid)
        return self._ancestors[cid]

    def descendants(self, cid: str) -> frozenset[str]:
        """Reflexive: cid is among its own descendants."""
        self.concept(cid)
        return self._descendants[cid]

    def ancestors_sorted(self, cid: str) -> tuple[str, ...]:
        self.concept(cid)
        return self._ancestors_sorted[cid]

    def descendants_sorted(self, cid: str) -> tuple[str, ...]:
        self.concept(cid)
        return self._descendants_sorted[cid]

    def subsumes(self, upper: str, lower: str) -> bool:
        """True iff lower is (reflexively) below upper."""
        self.concept(upper)
        self.concept(lower)
        return upper in self._ancestors[lower]

    def classes_count(self, cid: str) -> int:
        """Number of classes the concept belongs to: its reflexive ancestor count."""
        self.concept(cid)
        return len(self._ancestors[cid])

    def senses_of(self, lemma: str, pos: str) -> list[tuple[int, str]]:
        """(sense_number, concept_id) pairs for a lemma, ascending by sense number.

        Unknown lemmas yield an empty list.
        """
        return list(self._sense_index.get((lemma, pos), ()))

    def sense_concepts(self, lemma: str, pos: str) -> list[str]:
        return [cid for _, cid in self.senses_of(lemma, pos)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return self._concepts == other._concepts

    def __repr__(self) -> str:
        n = len(self._ids_by_pos[NOUN])
        v = len(self._ids_by_pos[VERB])
        return f"Taxonomy({n} noun / {v} verb concepts)"


def _parse_attachment(token: str, lineno: int) -> tuple[str, int]:
    lemma, sep, num = token.rpartition("#")
    if not sep or not lemma:
        raise TaxonomyError(f"line {lineno}: bad attachment {token!r} (expected lemma#sense_number)")
    try:
        sense = int(num)
    except ValueError:
        raise TaxonomyError(f"line {lineno}: bad sense number in {token!r}") from None
    if sense < 1:
        raise TaxonomyError(f"line {lineno}: sense number must be positive in {token!r}")
    return lemma, sense


def load_taxonomy(source: IO[str] | Iterable[str]) -> Taxonomy:
    """Parse and validate a taxonomy from a line stream.

    Raises TaxonomyError (with the offending line number where known) on
    syntax errors, unknown parents, cycles, duplicate sense attachments, or
    parents of a different pos.
    """
    concepts: list[Concept] = []
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2 or len(fields) > 4:
            raise TaxonomyError(f"line {lineno}: expected 2-4 tab-separated fields, got {len(fields)}")
        fields += [""] * (4 - len(fields))
        cid, pos, parents_field, attach_field = (f.strip() for f in fields)
        if not cid:
            raise TaxonomyError(f"line {lineno}: empty concept id")
        if pos not in POS_VALUES:
            raise TaxonomyError(f"line {lineno}: bad pos {pos!r} (expected noun or verb)")
        parents = frozenset(p for p in (s.strip() for s in parents_field.split(",")) if p)
        attachments = tuple(
            _parse_attachment(tok, lineno)
            for tok in (s.strip() for s in attach_field.split(","))
            if tok
        )
        if cid in lines:
            raise TaxonomyError(f"line {lineno}: duplicate concept id {cid!r} (first seen line {lines[cid]})")
        lines[cid] = lineno
        concepts.append(Concept(cid, pos, parents, tuple(sorted(attachments))))
    return Taxonomy(concepts, lines)


def dump_taxonomy(taxonomy: Taxonomy, sink: IO[str]) -> int:
    """Serialize in the load format; loading the output reproduces the taxonomy."""
    n = 0
    for pos in POS_VALUES:
        for cid in taxonomy.ids(pos):
            c = taxonomy.concept(cid)
            parents = ",".join(sorted(c.parents))
            attachments = ",".join(f"{lemma}#{num}" for lemma, num in sorted(c.attachments))
            sink.write(f"{cid}\t{c.pos}\t{parents}\t{attachments}\n")
            n += 1
    return n
