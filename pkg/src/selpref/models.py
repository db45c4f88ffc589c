"""The three selectional-preference models as scored tables over noun concepts.

All three models share one shape: for a conditioning verb unit (a lemma, a
verb sense concept, or a verb class) and a relation, they assign every noun
concept a score built from two ingredients — how typical the concept is of
each class above it, and how strongly that class co-occurs with the
conditioner in the given relation.

* word-to-class conditions on a verb lemma and uses the lemma's triple counts.
* sense-to-class conditions on a verb sense concept and restricts the counts
  to triples tagged with exactly that concept.
* class-to-class conditions on a verb class and additionally sums over all
  classes above it, weighting each by how much of its mass the conditioned
  sense carries.  A verb sense with no corpus mass at all inherits each
  ancestor class's preference outright (weight 1), which is what makes the
  model informative for verbs never seen in training.

Word- and sense-conditioned tables are probability-normalized in the sense
that the scores of the mass-bearing sense concepts sum to 1 whenever those
concepts are mutually incomparable.  Class-to-class scores are a ranking
function, not a distribution; only their order is consumed downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

from selpref.corpus import CountTable, RELATIONS
from selpref.estimator import Estimator
from selpref.taxonomy import NOUN, VERB, Taxonomy

KIND_WORD = "verb_word"
KIND_SENSE = "verb_sense"
KIND_CLASS = "verb_class"
KINDS = (KIND_WORD, KIND_SENSE, KIND_CLASS)

# CLI / report spellings.
KIND_BY_NAME = {"word2class": KIND_WORD, "sense2class": KIND_SENSE, "class2class": KIND_CLASS}
NAME_BY_KIND = {v: k for k, v in KIND_BY_NAME.items()}


@dataclass(frozen=True)
class Conditioner:
    kind: str  # one of KINDS
    key: str   # verb lemma for KIND_WORD, verb concept id otherwise


@dataclass
class PreferenceTable:
    """Scores for one conditioner and relation; zero-score concepts are omitted.

    ``trained`` distinguishes a conditioner with no usable training mass from
    one whose scores merely happen to be empty; the disambiguation layer
    abstains on untrained tables, which lowers coverage.
    """

    rel: str
    conditioner: Conditioner
    scores: dict[str, float] = field(default_factory=dict)
    trained: bool = True
    provenance: str = ""

    def sorted_entries(self) -> list[tuple[str, float]]:
        """Entries by descending score, ties by ascending concept id."""
        return sorted(self.scores.items(), key=lambda kv: (-kv[1], kv[0]))

    @classmethod
    def untrained(cls, rel: str, conditioner: Conditioner, provenance: str = "") -> "PreferenceTable":
        return cls(rel, conditioner, {}, trained=False, provenance=provenance)


def _check_rel(rel: str) -> None:
    if rel not in RELATIONS:
        raise ValueError(f"bad rel {rel!r} (expected one of {RELATIONS})")


def _score_nouns(taxonomy: Taxonomy, est: Estimator, weight_by_class: dict[str, float]) -> dict[str, float]:
    # score(c) = class_freq(c) * sum over ancestors a of weight(a) / class_freq(a).
    # class_freq never decreases toward ancestors, so the denominators are
    # positive whenever class_freq(c) is.
    scores: dict[str, float] = {}
    for cn_i in taxonomy.ids(NOUN):
        base = est.class_freq(cn_i)
        if base == 0.0:
            continue
        s = 0.0
        for cn in taxonomy.ancestors_sorted(cn_i):
            w = weight_by_class.get(cn, 0.0)
            if w:
                s += (base / est.class_freq(cn)) * w
        if s > 0.0:
            scores[cn_i] = s
    return scores


def word_to_class(
    taxonomy: Taxonomy,
    counts: CountTable,
    verb_lemma: str,
    rel: str,
    est: Estimator | None = None,
    provenance: str = "",
) -> PreferenceTable:
    """Preferences of a verb lemma for noun classes in the given relation."""
    _check_rel(rel)
    cond = Conditioner(KIND_WORD, verb_lemma)
    est = est or Estimator(taxonomy, counts)
    fr_rv = counts.fr_rel_verb.get((rel, verb_lemma), 0)
    if fr_rv == 0:
        return PreferenceTable.untrained(rel, cond, provenance)
    rel_map = est.class_rel_verb_map(rel, verb_lemma)
    weights = {cn: num / fr_rv for cn, num in rel_map.items()}
    return PreferenceTable(rel, cond, _score_nouns(taxonomy, est, weights), True, provenance)


def sense_to_class(
    taxonomy: Taxonomy,
    counts: CountTable,
    verb_concept: str,
    rel: str,
    est: Estimator | None = None,
    provenance: str = "",
) -> PreferenceTable:
    """Preferences of one verb sense, from the triples tagged with exactly it."""
    _check_rel(rel)
    concept = taxonomy.concept(verb_concept)
    if concept.pos != VERB:
        raise ValueError(f"verb concept required: {verb_concept!r}")
    if not concept.attachments:
        raise ValueError(f"{verb_concept!r} has no lemma attachments and cannot key a sense model")
    cond = Conditioner(KIND_SENSE, verb_concept)
    est = est or Estimator(taxonomy, counts)
    total = est.sense_rel_total(rel, verb_concept)
    if total == 0:
        return PreferenceTable.untrained(rel, cond, provenance)
    rel_map = est.sense_rel_map(rel, verb_concept)
    weights = {cn: num / total for cn, num in rel_map.items()}
    return PreferenceTable(rel, cond, _score_nouns(taxonomy, est, weights), True, provenance)


def class_to_class(
    taxonomy: Taxonomy,
    counts: CountTable,
    verb_concept: str,
    rel: str,
    est: Estimator | None = None,
    provenance: str = "",
) -> PreferenceTable:
    """Preferences of a verb class, pooling relation mass from every class above it.

    Untrained only when no class above the conditioner carries any relation
    mass.  A conditioner with zero occurrence mass of its own inherits each
    ancestor's preference with full weight instead of a frequency ratio.
    """
    _check_rel(rel)
    if taxonomy.concept(verb_concept).pos != VERB:
        raise ValueError(f"verb concept required: {verb_concept!r}")
    cond = Conditioner(KIND_CLASS, verb_concept)
    est = est or Estimator(taxonomy, counts)

    efr_j = est.class_freq(verb_concept)
    active: list[tuple[str, float, float]] = []
    for cv in taxonomy.ancestors_sorted(verb_concept):
        denom_rel = est.rel_class_total(rel, cv)
        if denom_rel == 0.0:
            continue
        # denom_rel > 0 implies some verb sense below cv has mass, so
        # class_freq(cv) > 0.
        verb_factor = (efr_j / est.class_freq(cv)) if efr_j > 0.0 else 1.0
        active.append((cv, verb_factor, denom_rel))
    if not active:
        return PreferenceTable.untrained(rel, cond, provenance)

    weights: dict[str, float] = {}
    for cv, verb_factor, denom_rel in active:
        for cn, num in est.class_rel_class_map(rel, cv).items():
            weights[cn] = weights.get(cn, 0.0) + verb_factor * num / denom_rel
    # Rebuild in sorted-key order so the float accumulation above cannot leak
    # map-construction order into the scores.
    weights = {cn: weights[cn] for cn in sorted(weights)}
    return PreferenceTable(rel, cond, _score_nouns(taxonomy, est, weights), True, provenance)


def dump_table(table: PreferenceTable, sink: IO[str]) -> int:
    """Write entries as `rel kind key concept score`, 17 significant digits."""
    n = 0
    for concept, score in table.sorted_entries():
        sink.write(
            f"{table.rel}\t{table.conditioner.kind}\t{table.conditioner.key}\t{concept}\t{score:.17g}\n"
        )
        n += 1
    return n


def load_table(source: IO[str] | Iterable[str]) -> PreferenceTable:
    """Read a table dump back; the inverse of dump_table for non-empty tables."""
    rel = None
    cond = None
    scores: dict[str, float] = {}
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise ValueError(f"line {lineno}: expected 5 tab-separated fields, got {len(fields)}")
        r, kind, key, concept, score = fields
        if kind not in KINDS:
            raise ValueError(f"line {lineno}: bad conditioner kind {kind!r}")
        if rel is None:
            rel, cond = r, Conditioner(kind, key)
        elif (r, kind, key) != (rel, cond.kind, cond.key):
            raise ValueError(f"line {lineno}: mixed conditioners in one table dump")
        scores[concept] = float(score)
    if rel is None:
        raise ValueError("empty table dump")
    return PreferenceTable(rel, cond, scores, trained=True)
