"""Sense-tagged dependency triples and the raw frequency tallies built from them.

Triple file format (tab-separated, ``#``-prefixed comment lines and blank
lines ignored)::

    verb_lemma <TAB> verb_concept_or_dash <TAB> rel <TAB> noun_lemma <TAB> noun_concept

``rel`` is ``subj`` or ``obj``.  A ``-`` in the verb-concept column marks a
record without a verb sense tag; such records still train the word-conditioned
model but carry no information for the sense- or class-conditioned ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

from selpref.taxonomy import NOUN, VERB, Taxonomy

REL_SUBJ = "subj"
REL_OBJ = "obj"
RELATIONS = (REL_SUBJ, REL_OBJ)


class TriplesError(ValueError):
    """Malformed or taxonomy-inconsistent triples input."""


@dataclass(frozen=True)
class TripleRecord:
    verb_lemma: str
    verb_concept: str | None
    rel: str
    noun_lemma: str
    noun_concept: str


@dataclass
class CountTable:
    """Raw corpus frequencies; a pure multiset summary of the records.

    Keys of the relation tables: (noun_concept, rel, verb_lemma) and
    (noun_concept, rel, verb_concept).  Treated as immutable once built.
    """

    fr_noun: dict[str, int] = field(default_factory=dict)
    fr_verb_sense: dict[str, int] = field(default_factory=dict)
    fr_noun_rel_verb: dict[tuple[str, str, str], int] = field(default_factory=dict)
    fr_noun_rel_vclass: dict[tuple[str, str, str], int] = field(default_factory=dict)
    fr_rel_verb: dict[tuple[str, str], int] = field(default_factory=dict)

    def total_records(self) -> int:
        return sum(self.fr_noun.values())


def load_triples(source: IO[str] | Iterable[str], taxonomy: Taxonomy) -> list[TripleRecord]:
    """Parse and validate triples against the taxonomy, preserving file order."""
    records: list[TripleRecord] = []
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise TriplesError(f"line {lineno}: expected 5 tab-separated fields, got {len(fields)}")
        verb_lemma, verb_concept, rel, noun_lemma, noun_concept = (f.strip() for f in fields)
        if rel not in RELATIONS:
            raise TriplesError(f"line {lineno}: bad rel {rel!r} (expected subj or obj)")
        if noun_concept not in taxonomy:
            raise TriplesError(f"line {lineno}: unknown concept id {noun_concept!r}")
        if noun_concept not in taxonomy.sense_concepts(noun_lemma, NOUN):
            raise TriplesError(
                f"line {lineno}: concept {noun_concept!r} is not a sense of noun {noun_lemma!r}"
            )
        vc: str | None = None
        if verb_concept != "-":
            if verb_concept not in taxonomy:
                raise TriplesError(f"line {lineno}: unknown concept id {verb_concept!r}")
            if verb_concept not in taxonomy.sense_concepts(verb_lemma, VERB):
                raise TriplesError(
                    f"line {lineno}: concept {verb_concept!r} is not a sense of verb {verb_lemma!r}"
                )
            vc = verb_concept
        records.append(TripleRecord(verb_lemma, vc, rel, noun_lemma, noun_concept))
    return records


def tally(records: Iterable[TripleRecord]) -> CountTable:
    """Count record occurrences; duplicates each count (token, not type, frequencies).

    Records without a verb sense tag contribute to fr_noun, fr_noun_rel_verb
    and fr_rel_verb only.
    """
    t = CountTable()
    for r in records:
        t.fr_noun[r.noun_concept] = t.fr_noun.get(r.noun_concept, 0) + 1
        key_v = (r.noun_concept, r.rel, r.verb_lemma)
        t.fr_noun_rel_verb[key_v] = t.fr_noun_rel_verb.get(key_v, 0) + 1
        key_rv = (r.rel, r.verb_lemma)
        t.fr_rel_verb[key_rv] = t.fr_rel_verb.get(key_rv, 0) + 1
        if r.verb_concept is not None:
            t.fr_verb_sense[r.verb_concept] = t.fr_verb_sense.get(r.verb_concept, 0) + 1
            key_c = (r.noun_concept, r.rel, r.verb_concept)
            t.fr_noun_rel_vclass[key_c] = t.fr_noun_rel_vclass.get(key_c, 0) + 1
    return t


def dump_triples(records: Iterable[TripleRecord], sink: IO[str]) -> int:
    n = 0
    for r in records:
        vc = r.verb_concept if r.verb_concept is not None else "-"
        sink.write(f"{r.verb_lemma}\t{vc}\t{r.rel}\t{r.noun_lemma}\t{r.noun_concept}\n")
        n += 1
    return n
