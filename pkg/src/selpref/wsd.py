"""Noun word-sense disambiguation driven by selectional preferences.

For an occurrence of a noun as subject or object of a verb, the candidate
senses are the noun's sense concepts.  The preference table for the verb (or
verb sense, or the pooled tables of all the verb's sense classes) is scanned
from the strongest class down; the first class subsuming at least one
candidate decides, and every candidate below it is selected with equal
weight.  No subsuming class, or an untrained table, means abstention, which
costs coverage but not precision.

Evaluation reports precision over decided instances, coverage, and recall
(their product), with analytic random and most-frequent-sense baselines, and
supports seeded k-fold cross-validation or an explicit train/test split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import IO, Iterable

from selpref.corpus import CountTable, TripleRecord, load_triples, tally
from selpref.estimator import Estimator
from selpref.models import (
    KIND_CLASS,
    KIND_SENSE,
    KIND_WORD,
    KINDS,
    NAME_BY_KIND,
    PreferenceTable,
    class_to_class,
    sense_to_class,
    word_to_class,
)
from selpref.taxonomy import NOUN, VERB, Taxonomy


@dataclass(frozen=True)
class WsdInstance:
    verb_lemma: str
    verb_concept: str | None
    rel: str
    noun_lemma: str
    gold_noun_concept: str

    def as_triple(self) -> TripleRecord:
        return TripleRecord(self.verb_lemma, self.verb_concept, self.rel,
                            self.noun_lemma, self.gold_noun_concept)


@dataclass(frozen=True)
class Decision:
    selected: frozenset[str]
    deciding_class: str | None
    weight: float  # 1/|selected| when non-empty, else 0

    @property
    def decided(self) -> bool:
        return bool(self.selected)


ABSTAIN = Decision(frozenset(), None, 0.0)


@dataclass
class WsdReport:
    model_name: str
    precision: float
    coverage: float
    recall: float
    n_total: int
    n_decided: int
    folds: list["WsdReport"] = field(default_factory=list)
    groups: dict[str, "WsdReport"] = field(default_factory=dict)

    @property
    def zero_decided(self) -> bool:
        return self.n_decided == 0

    def to_dict(self) -> dict:
        d = {
            "precision": self.precision,
            "coverage": self.coverage,
            "recall": self.recall,
            "n_total": self.n_total,
            "n_decided": self.n_decided,
            "zero_decided": self.zero_decided,
        }
        if self.folds:
            d["folds"] = [f.to_dict() for f in self.folds]
        if self.groups:
            d["groups"] = {k: g.to_dict() for k, g in sorted(self.groups.items())}
        return d


def load_instances(source: IO[str] | Iterable[str], taxonomy: Taxonomy) -> list[WsdInstance]:
    """Same TSV format as triples; the noun concept column is the gold sense."""
    return [
        WsdInstance(r.verb_lemma, r.verb_concept, r.rel, r.noun_lemma, r.noun_concept)
        for r in load_triples(source, taxonomy)
    ]


class TrainedModel:
    """Preference tables of one model kind over one training count table.

    Tables are computed lazily per conditioner and cached; the estimator is
    shared across them, so cross-validation folds stay cheap.
    """

    def __init__(self, taxonomy: Taxonomy, counts: CountTable, kind: str, provenance: str = ""):
        if kind not in KINDS:
            raise ValueError(f"bad model kind {kind!r}")
        self.taxonomy = taxonomy
        self.counts = counts
        self.kind = kind
        self.provenance = provenance
        self.estimator = Estimator(taxonomy, counts)
        self._tables: dict[tuple[str, str], PreferenceTable] = {}

    @property
    def name(self) -> str:
        return NAME_BY_KIND[self.kind]

    def table(self, key: str, rel: str) -> PreferenceTable:
        cached = self._tables.get((key, rel))
        if cached is None:
            if self.kind == KIND_WORD:
                cached = word_to_class(self.taxonomy, self.counts, key, rel,
                                       est=self.estimator, provenance=self.provenance)
            elif self.kind == KIND_SENSE:
                cached = sense_to_class(self.taxonomy, self.counts, key, rel,
                                        est=self.estimator, provenance=self.provenance)
            else:
                cached = class_to_class(self.taxonomy, self.counts, key, rel,
                                        est=self.estimator, provenance=self.provenance)
            self._tables[(key, rel)] = cached
        return cached

    def entries_for(self, instance: WsdInstance) -> list[tuple[str, float]] | None:
        """Scan-ordered (concept, score) entries for an instance, or None if untrained.

        For the class-conditioned kind the tables of all sense concepts of the
        verb lemma are pooled (a concept keeps its maximum score across them).
        """
        if self.kind == KIND_WORD:
            table = self.table(instance.verb_lemma, instance.rel)
            return table.sorted_entries() if table.trained else None
        if self.kind == KIND_SENSE:
            if instance.verb_concept is None:
                return None
            table = self.table(instance.verb_concept, instance.rel)
            return table.sorted_entries() if table.trained else None
        merged: dict[str, float] = {}
        any_trained = False
        for cv in self.taxonomy.sense_concepts(instance.verb_lemma, VERB):
            table = self.table(cv, instance.rel)
            if not table.trained:
                continue
            any_trained = True
            for c, s in table.scores.items():
                if s > merged.get(c, 0.0):
                    merged[c] = s
        if not any_trained:
            return None
        return sorted(merged.items(), key=lambda kv: (-kv[1], kv[0]))


def decide(taxonomy: Taxonomy, candidates: Iterable[str], entries: Iterable[tuple[str, float]]) -> Decision:
    """First entry whose concept subsumes a candidate decides; else abstain.

    ``entries`` must already be in scan order (descending score, ascending id).
    """
    cands = list(candidates)
    for concept, _score in entries:
        selected = frozenset(c for c in cands if taxonomy.subsumes(concept, c))
        if selected:
            return Decision(selected, concept, 1.0 / len(selected))
    return ABSTAIN


def disambiguate(taxonomy: Taxonomy, instance: WsdInstance, model: TrainedModel) -> Decision:
    """Decision for one instance; abstains when the model is untrained for its verb."""
    candidates = taxonomy.sense_concepts(instance.noun_lemma, NOUN)
    if not candidates:
        return ABSTAIN
    entries = model.entries_for(instance)
    if entries is None:
        return ABSTAIN
    return decide(taxonomy, candidates, entries)


def kfold_split(n: int, k: int, seed: int) -> list[list[int]]:
    """k disjoint index lists covering range(n); sizes differ by at most one.

    Deterministic for a given (n, k, seed).
    """
    if not 2 <= k <= n:
        raise ValueError(f"fold count must satisfy 2 <= k <= n, got k={k}, n={n}")
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    folds: list[list[int]] = []
    start = 0
    for i in range(k):
        size = n // k + (1 if i < n % k else 0)
        folds.append(sorted(indices[start:start + size]))
        start += size
    return folds


def _score_decisions(model_name: str, results: list[tuple[Decision, str]]) -> WsdReport:
    n_total = len(results)
    n_decided = sum(1 for d, _ in results if d.decided)
    credit = sum(d.weight for d, gold in results if d.decided and gold in d.selected)
    precision = credit / n_decided if n_decided else 0.0
    coverage = n_decided / n_total if n_total else 0.0
    recall = credit / n_total if n_total else 0.0
    return WsdReport(model_name, precision, coverage, recall, n_total, n_decided)


def evaluate_split(
    taxonomy: Taxonomy,
    train_records: list[TripleRecord],
    instances: list[WsdInstance],
    kind: str,
    model_name: str | None = None,
) -> WsdReport:
    """Train on explicit records, test on the instances (the all-files protocol)."""
    model = TrainedModel(taxonomy, tally(train_records), kind)
    results = [(disambiguate(taxonomy, inst, model), inst.gold_noun_concept) for inst in instances]
    return _score_decisions(model_name or model.name, results)


def _evaluate_folds(taxonomy, instances, kind, folds, seed, model_name):
    fold_indices = kfold_split(len(instances), folds, seed)
    fold_reports = []
    pooled: list[tuple[Decision, str]] = []
    for fold in fold_indices:
        in_fold = set(fold)
        train = [instances[i].as_triple() for i in range(len(instances)) if i not in in_fold]
        model = TrainedModel(taxonomy, tally(train), kind)
        results = [
            (disambiguate(taxonomy, instances[i], model), instances[i].gold_noun_concept)
            for i in fold
        ]
        fold_reports.append(_score_decisions(model_name, results))
        pooled.extend(results)
    report = _score_decisions(model_name, pooled)
    report.folds = fold_reports
    return report


def evaluate(
    taxonomy: Taxonomy,
    instances: list[WsdInstance],
    kind: str,
    folds: int,
    seed: int = 0,
    group_by_noun: bool = False,
    train_records: list[TripleRecord] | None = None,
) -> WsdReport:
    """Cross-validated evaluation of one model kind.

    With ``folds >= 2`` the instances are split by a seeded shuffle and each
    fold is disambiguated with tables trained on the remaining folds only.
    ``folds == 0`` uses the caller-supplied ``train_records`` instead.  With
    ``group_by_noun`` the fold protocol runs separately per noun lemma (each
    lemma needs at least ``folds`` instances); headline numbers always pool
    instance-level credit, and per-group reports are attached.
    """
    if kind not in KINDS:
        raise ValueError(f"bad model kind {kind!r}")
    model_name = NAME_BY_KIND[kind]
    if folds == 0:
        if train_records is None:
            raise ValueError("folds=0 requires explicit train_records")
        return evaluate_split(taxonomy, train_records, instances, kind, model_name)
    if folds < 2:
        raise ValueError(f"fold count must be 0 or >= 2, got {folds}")
    if not group_by_noun:
        return _evaluate_folds(taxonomy, instances, kind, folds, seed, model_name)

    by_noun: dict[str, list[WsdInstance]] = {}
    for inst in instances:
        by_noun.setdefault(inst.noun_lemma, []).append(inst)
    groups = {}
    pooled_credit = 0.0
    pooled_decided = 0
    pooled_total = 0
    for lemma in sorted(by_noun):
        sub = _evaluate_folds(taxonomy, by_noun[lemma], kind, folds, seed, model_name)
        groups[lemma] = sub
        pooled_credit += sub.recall * sub.n_total
        pooled_decided += sub.n_decided
        pooled_total += sub.n_total
    precision = pooled_credit / pooled_decided if pooled_decided else 0.0
    coverage = pooled_decided / pooled_total if pooled_total else 0.0
    recall = pooled_credit / pooled_total if pooled_total else 0.0
    report = WsdReport(model_name, precision, coverage, recall, pooled_total, pooled_decided)
    report.groups = groups
    return report


def baseline_random(taxonomy: Taxonomy, instances: list[WsdInstance]) -> WsdReport:
    """Expected score of picking a sense uniformly at random, computed analytically."""
    n_total = len(instances)
    credit = 0.0
    n_decided = 0
    for inst in instances:
        senses = taxonomy.sense_concepts(inst.noun_lemma, NOUN)
        if not senses:
            continue
        n_decided += 1
        credit += 1.0 / len(senses)
    precision = credit / n_decided if n_decided else 0.0
    coverage = n_decided / n_total if n_total else 0.0
    recall = credit / n_total if n_total else 0.0
    return WsdReport("random", precision, coverage, recall, n_total, n_decided)


def baseline_mfs(taxonomy: Taxonomy, instances: list[WsdInstance]) -> WsdReport:
    """Always pick the lowest-numbered (most frequent) sense of the noun."""
    results: list[tuple[Decision, str]] = []
    for inst in instances:
        senses = taxonomy.senses_of(inst.noun_lemma, NOUN)
        if not senses:
            results.append((ABSTAIN, inst.gold_noun_concept))
            continue
        _, concept = senses[0]
        results.append((Decision(frozenset({concept}), concept, 1.0), inst.gold_noun_concept))
    return _score_decisions("mfs", results)
