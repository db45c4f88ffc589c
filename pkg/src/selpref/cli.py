"""Command-line pipeline: validate, train, prune, export, query, wsd.

All file formats are owned by the library modules; every subcommand loads and
validates its inputs fully before creating any output file, and identical
configurations produce byte-identical outputs (seeds default to 0).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict, dataclass, field

from selpref.corpus import RELATIONS, TriplesError, load_triples, tally
from selpref.estimator import Estimator
from selpref.integrator import build_edges, export_edges
from selpref.models import (
    KIND_BY_NAME,
    KIND_CLASS,
    KIND_WORD,
    NAME_BY_KIND,
    class_to_class,
    dump_table,
    load_table,
    sense_to_class,
    word_to_class,
)
from selpref.pruner import prune_classes
from selpref.taxonomy import NOUN, VERB, TaxonomyError, load_taxonomy
from selpref.wsd import baseline_mfs, baseline_random, evaluate, load_instances

MODEL_NAMES = tuple(KIND_BY_NAME)


@dataclass
class RunConfig:
    """Reproducibility envelope echoed into evaluation reports."""

    taxonomy_path: str
    instances_path: str
    models: list[str]
    rel: str | None
    folds: int
    seed: int = 0
    group_by_noun: bool = False
    train_path: str | None = None


class CliError(Exception):
    """One-line fatal diagnostic; maps to exit status 1."""


def _load_taxonomy(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_taxonomy(fh)
    except OSError as e:
        raise CliError(f"cannot read taxonomy {path}: {e.strerror}") from e
    except TaxonomyError as e:
        raise CliError(f"{path}: {e}") from e


def _load_triples(path: str, taxonomy):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_triples(fh, taxonomy)
    except OSError as e:
        raise CliError(f"cannot read triples {path}: {e.strerror}") from e
    except TriplesError as e:
        raise CliError(f"{path}: {e}") from e


def _load_instances(path: str, taxonomy):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_instances(fh, taxonomy)
    except OSError as e:
        raise CliError(f"cannot read instances {path}: {e.strerror}") from e
    except TriplesError as e:
        raise CliError(f"{path}: {e}") from e


def _emit(text: str, out_path: str | None) -> None:
    # Outputs are fully rendered before the file is opened, so a failed run
    # never leaves a partial file behind.
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _conditioner_table(args, taxonomy, counts, est):
    kind = KIND_BY_NAME[args.model]
    if kind == KIND_WORD:
        if not args.verb:
            raise CliError("--model word2class requires --verb LEMMA")
        return word_to_class(taxonomy, counts, args.verb, args.rel, est=est,
                             provenance=args.triples)
    if not args.verb_concept:
        raise CliError(f"--model {args.model} requires --verb-concept ID")
    try:
        if kind == KIND_CLASS:
            return class_to_class(taxonomy, counts, args.verb_concept, args.rel, est=est,
                                  provenance=args.triples)
        return sense_to_class(taxonomy, counts, args.verb_concept, args.rel, est=est,
                              provenance=args.triples)
    except (KeyError, ValueError) as e:
        raise CliError(str(e)) from e


def cmd_train(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    counts = tally(_load_triples(args.triples, taxonomy))
    table = _conditioner_table(args, taxonomy, counts, Estimator(taxonomy, counts))
    if not table.trained:
        print(f"untrained: no {args.rel} mass for {args.model} conditioner "
              f"{args.verb or args.verb_concept!r}", file=sys.stderr)
    buf = io.StringIO()
    dump_table(table, buf)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_prune(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    try:
        with open(args.table, encoding="utf-8") as fh:
            table = load_table(fh)
    except OSError as e:
        raise CliError(f"cannot read table {args.table}: {e.strerror}") from e
    except ValueError as e:
        raise CliError(f"{args.table}: {e}") from e
    for concept in table.scores:
        if concept not in taxonomy:
            raise CliError(f"{args.table}: unknown concept id {concept!r}")
    pruned = prune_classes(taxonomy, table)
    buf = io.StringIO()
    for concept, score in pruned.kept:
        buf.write(f"{table.rel}\t{table.conditioner.kind}\t{table.conditioner.key}"
                  f"\t{concept}\t{score:.17g}\n")
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_export(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    counts = tally(_load_triples(args.triples, taxonomy))
    verb_classes = None
    if args.verb_classes:
        verb_classes = [v.strip() for v in args.verb_classes.split(",") if v.strip()]
        for cv in verb_classes:
            if cv not in taxonomy:
                raise CliError(f"unknown concept id {cv!r} in --verb-classes")
            if taxonomy.concept(cv).pos != VERB:
                raise CliError(f"{cv!r} is not a verb concept")
    edges = build_edges(taxonomy, counts, args.rel, verb_classes, prune=args.prune)
    buf = io.StringIO()
    n = export_edges(edges, buf)
    _emit(buf.getvalue(), args.out)
    print(f"{n} edges", file=sys.stderr)
    return 0


def cmd_query(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    counts = tally(_load_triples(args.triples, taxonomy))
    est = Estimator(taxonomy, counts)
    if args.noun_concept not in taxonomy:
        raise CliError(f"unknown concept id {args.noun_concept!r}")
    if taxonomy.concept(args.noun_concept).pos != NOUN:
        raise CliError(f"{args.noun_concept!r} is not a noun concept")
    table = _conditioner_table(args, taxonomy, counts, est)
    score = table.scores.get(args.noun_concept, 0.0)
    lines = []
    if args.dump_intermediate:
        cn = args.noun_concept
        for anc in taxonomy.ancestors_sorted(cn):
            lines.append(f"class_freq\t{anc}\t{est.class_freq(anc):.17g}")
            if args.verb:
                lines.append(f"class_rel_verb\t{anc}\t{args.rel}\t{args.verb}"
                             f"\t{est.class_rel_verb(anc, args.rel, args.verb):.17g}")
        if args.verb_concept:
            for cv in taxonomy.ancestors_sorted(args.verb_concept):
                lines.append(f"class_freq\t{cv}\t{est.class_freq(cv):.17g}")
                lines.append(f"rel_class_total\t{args.rel}\t{cv}"
                             f"\t{est.rel_class_total(args.rel, cv):.17g}")
                lines.append(f"class_rel_class\t{cn}\t{args.rel}\t{cv}"
                             f"\t{est.class_rel_class(cn, args.rel, cv):.17g}")
        if args.verb:
            frv = counts.fr_rel_verb.get((args.rel, args.verb), 0)
            lines.append(f"fr_rel_verb\t{args.rel}\t{args.verb}\t{frv}")
    lines.append(f"score\t{score:.17g}" if table.trained else "score\tuntrained")
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def cmd_wsd(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    instances = _load_instances(args.instances, taxonomy)
    if args.rel:
        instances = [i for i in instances if i.rel == args.rel]
    if not instances:
        raise CliError("no instances to evaluate (check --rel filter and input file)")
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    for m in models:
        if m not in KIND_BY_NAME:
            raise CliError(f"unknown model {m!r} (choose from {', '.join(MODEL_NAMES)})")
    train_records = None
    if args.folds == 0:
        if not args.train:
            raise CliError("--folds 0 requires --train TRIPLES for the explicit split")
        train_records = _load_triples(args.train, taxonomy)

    config = RunConfig(args.taxonomy, args.instances, models, args.rel or None,
                       args.folds, args.seed, args.group_by_noun, args.train)
    reports = {}
    for name in models:
        try:
            reports[name] = evaluate(
                taxonomy, instances, KIND_BY_NAME[name], args.folds, seed=args.seed,
                group_by_noun=args.group_by_noun, train_records=train_records,
            )
        except ValueError as e:
            raise CliError(str(e)) from e
    baselines = {
        "random": baseline_random(taxonomy, instances),
        "mfs": baseline_mfs(taxonomy, instances),
    }
    doc = {
        "config": asdict(config),
        "n_instances": len(instances),
        "models": {name: rep.to_dict() for name, rep in reports.items()},
        "baselines": {name: rep.to_dict() for name, rep in baselines.items()},
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.report)
    if args.tsv:
        rows = ["model\tprecision\tcoverage\trecall\tn_total\tn_decided"]
        for name, rep in list(baselines.items()) + [(n, reports[n]) for n in models]:
            rows.append(f"{name}\t{rep.precision:.4f}\t{rep.coverage:.4f}"
                        f"\t{rep.recall:.4f}\t{rep.n_total}\t{rep.n_decided}")
        _emit("".join(r + "\n" for r in rows), args.tsv)
    return 0


def cmd_validate(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    lines = [
        f"concepts\tnoun\t{len(taxonomy.ids(NOUN))}",
        f"concepts\tverb\t{len(taxonomy.ids(VERB))}",
        f"roots\tnoun\t{len(taxonomy.roots(NOUN))}",
        f"roots\tverb\t{len(taxonomy.roots(VERB))}",
        f"senses\tnoun\t{sum(len(taxonomy.concept(c).attachments) for c in taxonomy.ids(NOUN))}",
        f"senses\tverb\t{sum(len(taxonomy.concept(c).attachments) for c in taxonomy.ids(VERB))}",
    ]
    if args.triples:
        records = _load_triples(args.triples, taxonomy)
        counts = tally(records)
        tagged = sum(1 for r in records if r.verb_concept is not None)
        lines.append(f"records\ttotal\t{len(records)}")
        lines.append(f"records\tverb_tagged\t{tagged}")
        for rel in RELATIONS:
            n = sum(k for (r, _v), k in counts.fr_rel_verb.items() if r == rel)
            lines.append(f"records\t{rel}\t{n}")
        lines.append(f"lexicon\tverb_lemmas\t{len({r.verb_lemma for r in records})}")
        lines.append(f"lexicon\tnoun_lemmas\t{len({r.noun_lemma for r in records})}")
    print("\n".join(lines))
    return 0


def _add_table_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--taxonomy", required=True, help="taxonomy file")
    p.add_argument("--triples", required=True, help="training triples file")
    p.add_argument("--rel", required=True, choices=RELATIONS)
    p.add_argument("--model", required=True, choices=MODEL_NAMES)
    p.add_argument("--verb", help="verb lemma (word2class)")
    p.add_argument("--verb-concept", help="verb concept id (sense2class / class2class)")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selpref",
        description="Learn, prune, export, and evaluate class-based selectional preferences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="emit a preference table for one conditioner")
    _add_table_args(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("prune", help="reduce a dumped preference table to its antichain")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--table", required=True, help="table dump produced by train")
    p.add_argument("--out")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("export", help="build and write class-to-class relation edges")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--triples", required=True)
    p.add_argument("--rel", required=True, choices=RELATIONS)
    p.add_argument("--prune", action="store_true", help="keep only antichain pairs")
    p.add_argument("--verb-classes", help="comma-separated verb concept ids (default: all)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("query", help="score one (conditioner, rel, noun concept) lookup")
    _add_table_args(p)
    p.add_argument("--noun-concept", required=True)
    p.add_argument("--dump-intermediate", action="store_true",
                   help="also print the propagated frequency estimates behind the score")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("wsd", help="cross-validated disambiguation report with baselines")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--instances", required=True, help="gold-tagged instance file (triples format)")
    p.add_argument("--models", default=",".join(MODEL_NAMES),
                   help="comma-separated model list (default: all)")
    p.add_argument("--rel", choices=RELATIONS, help="evaluate one relation only")
    p.add_argument("--folds", type=int, default=10,
                   help="cross-validation folds; 0 = explicit split via --train")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train", help="training triples for --folds 0")
    p.add_argument("--group-by-noun", action="store_true",
                   help="run the fold protocol separately per noun lemma")
    p.add_argument("--report", help="JSON report path (default stdout)")
    p.add_argument("--tsv", help="also write a flat per-model TSV")
    p.set_defaults(func=cmd_wsd)

    p = sub.add_parser("validate", help="check taxonomy (and triples) and print a count summary")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--triples")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"selpref: {e}", file=sys.stderr)
        return 1
    except KeyError as e:
        print(f"selpref: {e.args[0] if e.args else e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
