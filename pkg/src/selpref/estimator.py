"""Propagated class-frequency estimates over the taxonomy.

Raw counts live on the concepts that sense-tagged records name directly.  A
class's estimated frequency spreads every count below it over the bearer's
reflexive ancestor set: each occurrence of concept ``c`` contributes
``fr(c) / classes_count(c)`` to every class subsuming ``c``.  Dividing by the
ancestor count conserves totals, so summing an estimate over *all* classes of
a pos recovers the raw total exactly.

Two implementations are provided.  The ``naive_*`` functions evaluate the
defining sums by walking the graph on every call and are kept free of any
caching; they are the reference the memoized :class:`Estimator` is tested
against.
"""

from __future__ import annotations

from selpref.corpus import CountTable
from selpref.taxonomy import NOUN, VERB, Taxonomy


# -- naive enumeration (reference implementation, no caching) ---------------

def _walk_up(taxonomy: Taxonomy, cid: str) -> set[str]:
    seen = {cid}
    stack = [cid]
    while stack:
        for p in taxonomy.concept(stack.pop()).parents:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def _walk_down(taxonomy: Taxonomy, cid: str) -> set[str]:
    seen = {cid}
    stack = [cid]
    while stack:
        for ch in taxonomy.children_of(stack.pop()):
            if ch not in seen:
                seen.add(ch)
                stack.append(ch)
    return seen


def naive_classes_count(taxonomy: Taxonomy, cid: str) -> int:
    return len(_walk_up(taxonomy, cid))


def naive_class_freq(taxonomy: Taxonomy, counts: CountTable, cid: str) -> float:
    """Estimated occurrence frequency of the class rooted at cid."""
    table = counts.fr_noun if taxonomy.concept(cid).pos == NOUN else counts.fr_verb_sense
    return sum(
        table.get(d, 0) / naive_classes_count(taxonomy, d)
        for d in _walk_down(taxonomy, cid)
    )


def naive_cond_freq(taxonomy: Taxonomy, counts: CountTable, lower: str, upper: str) -> float:
    """Estimated frequency of `lower` within class `upper`; 0 unless lower is below upper."""
    if taxonomy.concept(lower).pos != taxonomy.concept(upper).pos:
        raise ValueError(f"pos mismatch: {lower!r} vs {upper!r}")
    if upper not in _walk_up(taxonomy, lower):
        return 0.0
    return naive_class_freq(taxonomy, counts, lower)


def naive_class_rel_verb(taxonomy: Taxonomy, counts: CountTable, cn: str, rel: str, verb_lemma: str) -> float:
    """Estimated count of (class-member, rel, verb_lemma) triples."""
    if taxonomy.concept(cn).pos != NOUN:
        raise ValueError(f"noun concept required: {cn!r}")
    return sum(
        counts.fr_noun_rel_verb.get((d, rel, verb_lemma), 0) / naive_classes_count(taxonomy, d)
        for d in _walk_down(taxonomy, cn)
    )


def naive_class_rel_class(taxonomy: Taxonomy, counts: CountTable, cn: str, rel: str, cv: str) -> float:
    """Estimated count of (noun-class-member, rel, verb-class-member) triples."""
    if taxonomy.concept(cn).pos != NOUN or taxonomy.concept(cv).pos != VERB:
        raise ValueError(f"need noun and verb concepts: {cn!r}, {cv!r}")
    total = 0.0
    for dn in _walk_down(taxonomy, cn):
        for dv in _walk_down(taxonomy, cv):
            k = counts.fr_noun_rel_vclass.get((dn, rel, dv), 0)
            if k:
                total += k / (naive_classes_count(taxonomy, dn) * naive_classes_count(taxonomy, dv))
    return total


def naive_rel_class_total(taxonomy: Taxonomy, counts: CountTable, rel: str, cv: str) -> float:
    """Estimated count of rel-triples whose verb falls in the class rooted at cv."""
    if taxonomy.concept(cv).pos != VERB:
        raise ValueError(f"verb concept required: {cv!r}")
    total = 0.0
    for dv in _walk_down(taxonomy, cv):
        raw = sum(
            k for (nc, r, vc), k in counts.fr_noun_rel_vclass.items()
            if r == rel and vc == dv
        )
        if raw:
            total += raw / naive_classes_count(taxonomy, dv)
    return total


# -- memoized engine ---------------------------------------------------------

class Estimator:
    """Memoized class-frequency estimates for one (taxonomy, counts) pair.

    Instead of summing over descendants per query, each raw count is scattered
    once to all ancestors of its bearer; subsequent queries are dict lookups.
    Pure over immutable inputs: concurrent use may duplicate work but always
    stores identical values, so results never depend on call interleaving.
    """

    def __init__(self, taxonomy: Taxonomy, counts: CountTable):
        self.taxonomy = taxonomy
        self.counts = counts
        self._freq_maps: dict[str, dict[str, float]] = {}
        self._rel_verb_maps: dict[tuple[str, str], dict[str, float]] = {}
        self._rel_class_total_maps: dict[str, dict[str, float]] = {}
        self._pair_maps: dict[tuple[str, str], dict[str, float]] = {}
        self._sense_rel_maps: dict[tuple[str, str], dict[str, float]] = {}

        # One pass over the count tables to group entries by the keys the
        # scatter steps need.
        by_rel_verb: dict[tuple[str, str], list[tuple[str, int]]] = {}
        for (nc, rel, v), k in counts.fr_noun_rel_verb.items():
            by_rel_verb.setdefault((rel, v), []).append((nc, k))
        by_rel_vclass: dict[tuple[str, str], list[tuple[str, int]]] = {}
        by_rel: dict[str, list[tuple[str, str, int]]] = {}
        raw_rel_vclass: dict[tuple[str, str], int] = {}
        for (nc, rel, vc), k in counts.fr_noun_rel_vclass.items():
            by_rel_vclass.setdefault((rel, vc), []).append((nc, k))
            by_rel.setdefault(rel, []).append((nc, vc, k))
            raw_rel_vclass[(rel, vc)] = raw_rel_vclass.get((rel, vc), 0) + k
        self._by_rel_verb = by_rel_verb
        self._by_rel_vclass = by_rel_vclass
        self._by_rel = by_rel
        self._raw_rel_vclass = raw_rel_vclass

    def _scatter(self, items) -> dict[str, float]:
        t = self.taxonomy
        out: dict[str, float] = {}
        for cid, weight in items:
            share = weight / t.classes_count(cid)
            for a in t.ancestors_sorted(cid):
                out[a] = out.get(a, 0.0) + share
        return out

    def _freq_map(self, pos: str) -> dict[str, float]:
        m = self._freq_maps.get(pos)
        if m is None:
            table = self.counts.fr_noun if pos == NOUN else self.counts.fr_verb_sense
            m = self._scatter(table.items())
            self._freq_maps[pos] = m
        return m

    def class_freq(self, cid: str) -> float:
        """Estimated occurrence frequency of the class rooted at cid."""
        pos = self.taxonomy.concept(cid).pos
        return self._freq_map(pos).get(cid, 0.0)

    def cond_freq(self, lower: str, upper: str) -> float:
        """class_freq(lower) when lower is below upper, else 0."""
        t = self.taxonomy
        if t.concept(lower).pos != t.concept(upper).pos:
            raise ValueError(f"pos mismatch: {lower!r} vs {upper!r}")
        if upper not in t.ancestors(lower):
            return 0.0
        return self.class_freq(lower)

    def class_rel_verb_map(self, rel: str, verb_lemma: str) -> dict[str, float]:
        """Noun concept -> estimated (class, rel, verb_lemma) count; zero entries absent."""
        key = (rel, verb_lemma)
        m = self._rel_verb_maps.get(key)
        if m is None:
            m = self._scatter(self._by_rel_verb.get(key, ()))
            self._rel_verb_maps[key] = m
        return m

    def class_rel_verb(self, cn: str, rel: str, verb_lemma: str) -> float:
        if self.taxonomy.concept(cn).pos != NOUN:
            raise ValueError(f"noun concept required: {cn!r}")
        return self.class_rel_verb_map(rel, verb_lemma).get(cn, 0.0)

    def rel_class_total_map(self, rel: str) -> dict[str, float]:
        """Verb concept -> estimated count of rel-triples in that verb class."""
        m = self._rel_class_total_maps.get(rel)
        if m is None:
            raw = [(vc, k) for (r, vc), k in self._raw_rel_vclass.items() if r == rel]
            m = self._scatter(raw)
            self._rel_class_total_maps[rel] = m
        return m

    def rel_class_total(self, rel: str, cv: str) -> float:
        if self.taxonomy.concept(cv).pos != VERB:
            raise ValueError(f"verb concept required: {cv!r}")
        return self.rel_class_total_map(rel).get(cv, 0.0)

    def class_rel_class_map(self, rel: str, cv: str) -> dict[str, float]:
        """Noun concept -> estimated (noun class, rel, verb class) count for a fixed cv."""
        key = (rel, cv)
        m = self._pair_maps.get(key)
        if m is None:
            t = self.taxonomy
            items = []
            for nc, vc, k in self._by_rel.get(rel, ()):
                if cv in t.ancestors(vc):
                    items.append((nc, k / t.classes_count(vc)))
            m = self._scatter(items)
            self._pair_maps[key] = m
        return m

    def class_rel_class(self, cn: str, rel: str, cv: str) -> float:
        if self.taxonomy.concept(cn).pos != NOUN or self.taxonomy.concept(cv).pos != VERB:
            raise ValueError(f"need noun and verb concepts: {cn!r}, {cv!r}")
        return self.class_rel_class_map(rel, cv).get(cn, 0.0)

    def sense_rel_map(self, rel: str, cv: str) -> dict[str, float]:
        """Like class_rel_verb_map, but restricted to triples tagged with exactly cv."""
        key = (rel, cv)
        m = self._sense_rel_maps.get(key)
        if m is None:
            m = self._scatter(self._by_rel_vclass.get(key, ()))
            self._sense_rel_maps[key] = m
        return m

    def sense_rel_total(self, rel: str, cv: str) -> int:
        """Raw number of rel-triples tagged with exactly cv."""
        return self._raw_rel_vclass.get((rel, cv), 0)
