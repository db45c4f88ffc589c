"""End-to-end demo on the bundled toy fixture.

Trains all three models for the verbs in the corpus, shows the pruned
preference classes, exports relation edges, and runs a small cross-validated
disambiguation report with baselines.

Usage: python scripts/toy_pipeline.py [--folds 5] [--seed 0]
"""

import argparse
import io
import sys
from pathlib import Path

from selpref.corpus import load_triples, tally
from selpref.estimator import Estimator
from selpref.integrator import build_edges, export_edges
from selpref.models import KIND_BY_NAME, class_to_class, sense_to_class, word_to_class
from selpref.pruner import prune_classes
from selpref.taxonomy import VERB, load_taxonomy
from selpref.wsd import baseline_mfs, baseline_random, evaluate, load_instances

DATA = Path(__file__).resolve().parent.parent / "data"


def show_table(label, table):
    status = "" if table.trained else "  [untrained]"
    print(f"\n{label}{status}")
    for concept, score in table.sorted_entries():
        print(f"  {concept:16s} {score:.4f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--folds", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    with open(DATA / "toy_taxonomy.tsv", encoding="utf-8") as fh:
        taxonomy = load_taxonomy(fh)
    with open(DATA / "toy_triples.tsv", encoding="utf-8") as fh:
        records = load_triples(fh, taxonomy)
    counts = tally(records)
    est = Estimator(taxonomy, counts)
    print(f"{taxonomy!r}, {len(records)} training records")

    for lemma in sorted({r.verb_lemma for r in records}):
        show_table(f"word-to-class: {lemma} (obj)",
                   word_to_class(taxonomy, counts, lemma, "obj", est=est))
    for cv in taxonomy.ids(VERB):
        show_table(f"sense-to-class: {cv} (obj)",
                   sense_to_class(taxonomy, counts, cv, "obj", est=est))
        table = class_to_class(taxonomy, counts, cv, "obj", est=est)
        show_table(f"class-to-class: {cv} (obj)", table)
        kept = prune_classes(taxonomy, table).kept
        print("  pruned to:", ", ".join(f"{c}={s:.4f}" for c, s in kept) or "(nothing)")

    edges = build_edges(taxonomy, counts, "obj", prune=True, est=est)
    buf = io.StringIO()
    export_edges(edges, buf)
    print("\npruned relation edges (obj):")
    print(buf.getvalue().rstrip() or "(none)")

    with open(DATA / "toy_triples.tsv", encoding="utf-8") as fh:
        instances = load_instances(fh, taxonomy)
    print(f"\n{args.folds}-fold disambiguation over {len(instances)} instances (seed {args.seed}):")
    print(f"  {'model':12s} {'prec':>6s} {'cov':>6s} {'rec':>6s}")
    for rep in (baseline_random(taxonomy, instances), baseline_mfs(taxonomy, instances)):
        print(f"  {rep.model_name:12s} {rep.precision:6.3f} {rep.coverage:6.3f} {rep.recall:6.3f}")
    for name, kind in KIND_BY_NAME.items():
        rep = evaluate(taxonomy, instances, kind, args.folds, seed=args.seed)
        print(f"  {name:12s} {rep.precision:6.3f} {rep.coverage:6.3f} {rep.recall:6.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
