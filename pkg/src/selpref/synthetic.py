"""Seeded generators for synthetic taxonomies and corpora.

Used by the property-test suite and the experiment scripts.  Everything here
is deterministic given its seed: taxonomies are built parent-before-child (so
they are acyclic by construction), lemmas receive sense numbers in frequency-
rank order, and records are drawn with a private random.Random.
"""

from __future__ import annotations

import random

from selpref.corpus import REL_OBJ, REL_SUBJ, TripleRecord
from selpref.taxonomy import NOUN, VERB, Concept, Taxonomy
from selpref.wsd import WsdInstance


def random_taxonomy(
    seed: int,
    n_nouns: int = 25,
    n_verbs: int = 15,
    max_parents: int = 2,
    lemmas_per_pos: int | None = None,
    max_senses: int = 3,
) -> Taxonomy:
    """A random DAG per pos with random lemma attachments.

    Concept ids are ``n00..`` / ``v00..``; parents are drawn among
    earlier-numbered concepts, occasionally zero (extra roots).
    """
    rng = random.Random(seed)
    concepts: list[Concept] = []
    for pos, prefix, n in ((NOUN, "n", n_nouns), (VERB, "v", n_verbs)):
        ids = [f"{prefix}{i:02d}" for i in range(n)]
        attach: dict[str, list[tuple[str, int]]] = {cid: [] for cid in ids}
        n_lemmas = lemmas_per_pos if lemmas_per_pos is not None else max(2, n // 2)
        for j in range(n_lemmas):
            lemma = f"{pos}_lemma{j}"
            hosts = rng.sample(ids, k=min(len(ids), rng.randint(1, max_senses)))
            for rank, host in enumerate(hosts, 1):
                attach[host].append((lemma, rank))
        for i, cid in enumerate(ids):
            if i == 0 or (i > 1 and rng.random() < 0.08):
                parents: frozenset[str] = frozenset()
            else:
                k = min(i, 1 if rng.random() < 0.75 else rng.randint(2, max_parents))
                parents = frozenset(rng.sample(ids[:i], k))
            concepts.append(Concept(cid, pos, parents, tuple(sorted(attach[cid]))))
    return Taxonomy(concepts)


def random_records(
    taxonomy: Taxonomy,
    seed: int,
    n_records: int = 100,
    untagged_share: float = 0.0,
    rels: tuple[str, ...] = (REL_SUBJ, REL_OBJ),
) -> list[TripleRecord]:
    """Random sense-consistent triples; a share of them may omit the verb tag."""
    rng = random.Random(seed)
    noun_senses = _sense_pairs(taxonomy, NOUN)
    verb_senses = _sense_pairs(taxonomy, VERB)
    records = []
    for _ in range(n_records):
        v_lemma, v_concept = rng.choice(verb_senses)
        n_lemma, n_concept = rng.choice(noun_senses)
        rel = rng.choice(rels)
        vc = None if rng.random() < untagged_share else v_concept
        records.append(TripleRecord(v_lemma, vc, rel, n_lemma, n_concept))
    return records


def _sense_pairs(taxonomy: Taxonomy, pos: str) -> list[tuple[str, str]]:
    pairs = []
    for cid in taxonomy.ids(pos):
        for lemma, _num in taxonomy.concept(cid).attachments:
            pairs.append((lemma, cid))
    if not pairs:
        raise ValueError(f"taxonomy has no {pos} sense attachments")
    return sorted(pairs)


def planted_taxonomy(n_classes: int = 2, leaves_per_class: int = 4) -> Taxonomy:
    """Three-level noun and verb hierarchies with class-level preferences baked in.

    Noun side: one root, ``n_classes`` class nodes, ``leaves_per_class`` sense
    leaves under each.  Every noun lemma is two-ways ambiguous: its sense 1
    lives in its home class, its sense 2 in the next class around.  Verb side
    mirrors the classes; under each verb class sit two sibling senses, a
    ``*_train`` verb that appears in the corpus and a ``*_test`` verb that
    never does.
    """
    concepts = [Concept("n_root", NOUN, frozenset(), ())]
    for k in range(n_classes):
        concepts.append(Concept(f"n_class{k}", NOUN, frozenset({"n_root"}), ()))
    for k in range(n_classes):
        for m in range(leaves_per_class):
            other = (k + 1) % n_classes
            attachments = (
                (f"noun_{k}_{m}", 1),
                (f"noun_{other}_{m}", 2),
            )
            concepts.append(
                Concept(f"n_{k}_{m}", NOUN, frozenset({f"n_class{k}"}), tuple(sorted(attachments)))
            )
    concepts.append(Concept("v_root", VERB, frozenset(), ()))
    for k in range(n_classes):
        concepts.append(Concept(f"v_class{k}", VERB, frozenset({"v_root"}), ()))
        concepts.append(
            Concept(f"v_{k}_train", VERB, frozenset({f"v_class{k}"}), ((f"verb_{k}_train", 1),))
        )
        concepts.append(
            Concept(f"v_{k}_test", VERB, frozenset({f"v_class{k}"}), ((f"verb_{k}_test", 1),))
        )
    return Taxonomy(concepts)


def planted_split(
    n_classes: int = 2,
    leaves_per_class: int = 4,
    copies: int = 3,
) -> tuple[Taxonomy, list[TripleRecord], list[WsdInstance]]:
    """Training records for the ``*_train`` verbs and held-out test instances
    whose verbs are the unseen ``*_test`` siblings.

    Gold senses follow the planted preference: the test verb of class ``k``
    takes the class-``k`` sense of each ambiguous noun.
    """
    taxonomy = planted_taxonomy(n_classes, leaves_per_class)
    train: list[TripleRecord] = []
    test: list[WsdInstance] = []
    for k in range(n_classes):
        for m in range(leaves_per_class):
            leaf = f"n_{k}_{m}"
            lemma = f"noun_{k}_{m}"
            train.extend(
                TripleRecord(f"verb_{k}_train", f"v_{k}_train", REL_OBJ, lemma, leaf)
                for _ in range(copies)
            )
            test.append(
                WsdInstance(f"verb_{k}_test", f"v_{k}_test", REL_OBJ, lemma, leaf)
            )
    return taxonomy, train, test
