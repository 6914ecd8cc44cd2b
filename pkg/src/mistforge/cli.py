"""Command-line entry point.

Subcommands: style build | attack | eval metrics | eval topsis | eval rq3
| dataset augment | model train-ref | model serve-check. Every run writes
a run-manifest.json next to its primary artifact holding the fully
resolved configuration and seed; runs with identical manifests produce
byte-identical artifacts. MISTFORGE_SEED overrides the default seed, an
explicit --seed overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from .code_model import Language
from .corpus import CorpusSample, load_corpus, read_jsonl, save_corpus, write_jsonl
from .engine import AttackOutcome, AttackResources, EngineConfig, select_training_sample
from .errors import ConfigurationError, InputError, MistforgeError, ProtocolError, TransportError
from .evaluation import (
    ASR_PRIORITY_WEIGHTS,
    EQUAL_WEIGHTS,
    TopsisInput,
    attack_samples,
    build_augmented_set,
    filter_subset_x,
    metrics_from_records,
    rq3_protocol,
    topsis_rank,
)
from .identifier_attack import DEFAULT_TOP_K, FrequencyCandidateProvider, HttpCandidateProvider
from .model_interface import ReferenceClassifier, RemoteModel, TrainConfig, classify_remote, train_reference
from .objectives import HttpEmbedder, TrigramEmbedder
from .style_profile import StyleTable, build_style_table

log = logging.getLogger("mistforge")

DEFAULT_SEED = 7


def default_seed() -> int:
    env = os.environ.get("MISTFORGE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigurationError(f"MISTFORGE_SEED must be an integer: {env!r}") from exc
    return DEFAULT_SEED


def resolve_model(spec: str):
    if spec.startswith("builtin:"):
        path = spec[len("builtin:"):]
        if not Path(path).exists():
            raise ConfigurationError(f"model file not found: {path}")
        return ReferenceClassifier.load(path)
    if spec.startswith(("http://", "https://")):
        return RemoteModel(endpoint=spec.rstrip("/") + "/classify"
                           if not spec.endswith("/classify") else spec)
    raise ConfigurationError(f"model spec must be builtin:<path> or http(s)://...: {spec!r}")


def resolve_embedder(spec: str):
    if spec == "builtin-trigram":
        return TrigramEmbedder()
    if spec.startswith(("http://", "https://")):
        return HttpEmbedder(spec.rstrip("/") + "/embed"
                            if not spec.endswith("/embed") else spec)
    raise ConfigurationError(f"embedder spec must be builtin-trigram or http(s)://...: {spec!r}")


def resolve_providers(spec: str, corpus: list[CorpusSample], top_k: int):
    """Per-language candidate providers."""
    if spec == "builtin-frequency":
        snippets = [s.snippet() for s in corpus]
        return {lang: FrequencyCandidateProvider(snippets, lang, top_k)
                for lang in Language}
    if spec.startswith(("http://", "https://")):
        endpoint = spec.rstrip("/") + "/predict_identifiers" \
            if not spec.endswith("/predict_identifiers") else spec
        provider = HttpCandidateProvider(endpoint=endpoint, top_k=top_k)
        return {lang: provider for lang in Language}
    raise ConfigurationError(
        f"provider spec must be builtin-frequency or http(s)://...: {spec!r}")


def write_manifest(out_path: Path, subcommand: str, config: dict, seed: int) -> None:
    manifest = {"subcommand": subcommand, "config": config, "seed": seed}
    target = out_path.parent / "run-manifest.json"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                      encoding="utf-8")


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def cmd_style_build(args) -> int:
    corpus = load_corpus(args.corpus)
    pairs = []
    n_bad = 0
    for sample in corpus:
        snippet = sample.snippet()
        if not snippet.parse_ok:
            n_bad += 1
            continue
        pairs.append((snippet, sample.label))
    table = build_style_table(pairs)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    table.save(out)
    write_manifest(out, "style build",
                   {"corpus": str(args.corpus), "out": str(out),
                    "skipped_unparsed": n_bad}, args.seed)
    log.info("style table over %d samples -> %s (%d unparsed skipped)",
             len(pairs), out, n_bad)
    return 0


def outcome_record(sample: CorpusSample, outcome: AttackOutcome) -> dict:
    chosen = select_training_sample(outcome)
    record = {
        "id": sample.id,
        "language": sample.language.value,
        "label": sample.label.value,
        "skipped": False,
        "success": outcome.success,
        "n_var": outcome.n_var,
        "queries_to_first_success": outcome.queries_to_first_success,
        "total_queries": outcome.total_queries,
        "best_confidence_drop": outcome.best_confidence_drop,
        "iterations": outcome.iterations,
        "adversarial_code": outcome.adversarial.source if outcome.adversarial else None,
        "chosen_code": chosen.snippet.source if chosen else None,
    }
    if outcome.success:
        ind = outcome.first_success_individual
        record["changed_identifiers"] = ind.gene.changed_count
        record["icr"] = ind.gene.changed_count / outcome.n_var
        record["sd"] = ind.objectives.f2_semantic_distance
        record["ed"] = ind.objectives.f3_edit_distance
    return record


def cmd_attack(args) -> int:
    corpus = load_corpus(args.input)
    model = resolve_model(args.model)
    style = StyleTable.load(args.style) if args.style else StyleTable.empty()
    provider_corpus = load_corpus(args.style_corpus) if args.style_corpus else corpus
    providers = resolve_providers(args.provider, provider_corpus, args.top_k)
    embedder = resolve_embedder(args.embedder)
    resources = {lang: AttackResources(model, style, providers[lang], embedder)
                 for lang in Language}
    cfg = EngineConfig(population_size=args.population, max_iter=args.max_iter,
                       rename_rate=args.rename_rate, top_k=args.top_k,
                       rng_seed=args.seed,
                       stop_on_first_success=not args.pool_mode)
    pairs = [(s, s.snippet()) for s in corpus]
    if args.filter_subset_x:
        kept, excluded = filter_subset_x(pairs, model)
    else:
        kept, excluded = pairs, []
    outcomes, skipped = attack_samples(kept, cfg, resources, args.seed,
                                       jobs=args.jobs)
    records = {s.id: outcome_record(s, o) for s, o in outcomes}
    for exc in list(excluded) + list(skipped):
        records[exc.sample_id] = {"id": exc.sample_id, "skipped": True,
                                  "reason": exc.reason}
    ordered = [records[s.id] for s in corpus if s.id in records]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_jsonl(ordered, out)
    write_manifest(out, "attack", {
        "input": str(args.input), "model": args.model,
        "style": args.style or "", "provider": args.provider,
        "embedder": args.embedder, "population": args.population,
        "max_iter": args.max_iter, "rename_rate": args.rename_rate,
        "top_k": args.top_k, "pool_mode": args.pool_mode,
        "filter_subset_x": args.filter_subset_x, "out": str(out),
    }, args.seed)
    n_success = sum(1 for r in ordered if r.get("success"))
    n_attacked = sum(1 for r in ordered if not r["skipped"])
    log.info("attacked %d samples (%d skipped): %d successes -> %s",
             n_attacked, len(ordered) - n_attacked, n_success, out)
    return 0


def cmd_eval_metrics(args) -> int:
    records = read_jsonl(args.outcomes)
    report = metrics_from_records(records)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
                   encoding="utf-8")
    write_manifest(out, "eval metrics",
                   {"outcomes": str(args.outcomes), "out": str(out)}, args.seed)
    log.info("ASR %.3f AMQ %.1f ICR %.3f over %d samples -> %s",
             report.asr, report.amq, report.icr, report.n_samples, out)
    return 0


def parse_weights(text: str) -> tuple[float, ...]:
    try:
        weights = tuple(float(w) for w in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad weights: {text!r}") from exc
    return weights


def cmd_eval_topsis(args) -> int:
    alternatives = []
    with open(args.input, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            alternatives.append((
                row["name"], float(row["asr"]), float(row["icr"]),
                float(row["sd"]), float(row["ed"]), float(row["amq"]),
            ))
    weights = parse_weights(args.weights)
    ranking = topsis_rank(TopsisInput(alternatives=alternatives, weights=weights))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "score", "rank"])
    for name, score, rank in ranking:
        writer.writerow([name, f"{score:.9f}", rank])
    out.write_text(buf.getvalue(), encoding="utf-8")
    write_manifest(out, "eval topsis",
                   {"input": str(args.input), "weights": list(weights),
                    "out": str(out)}, args.seed)
    log.info("TOPSIS over %d alternatives -> %s", len(alternatives), out)
    return 0


def parse_attacker_spec(text: str) -> tuple[str, dict]:
    """name[:key=value,...] with keys r, N, k, max_iter."""
    name, _, rest = text.partition(":")
    overrides = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if key == "r":
                overrides["rename_rate"] = float(value)
            elif key == "N":
                overrides["population_size"] = int(value)
            elif key == "k":
                overrides["top_k"] = int(value)
            elif key == "max_iter":
                overrides["max_iter"] = int(value)
            else:
                raise InputError(f"unknown attacker option {key!r}")
    return name, overrides


def cmd_eval_rq3(args) -> int:
    corpus = load_corpus(args.input)
    model = resolve_model(args.model)
    if not isinstance(model, ReferenceClassifier):
        raise ConfigurationError("eval rq3 fine-tunes the model and needs builtin:<path>")
    style = StyleTable.load(args.style) if args.style else StyleTable.empty()
    provider_corpus = load_corpus(args.style_corpus) if args.style_corpus else corpus
    providers = resolve_providers(args.provider, provider_corpus, args.top_k)
    embedder = resolve_embedder(args.embedder)
    attackers: dict[str, EngineConfig] = {}
    for spec in args.attacker or ["mist"]:
        name, overrides = parse_attacker_spec(spec)
        attackers[name] = EngineConfig(rng_seed=args.seed, **overrides)

    def resources_for(cfg: EngineConfig):
        return {lang: AttackResources(model, style, providers[lang], embedder)
                for lang in Language}

    pairs = [(s, s.snippet()) for s in corpus]
    kept, _ = filter_subset_x(pairs, model)
    matrix = rq3_protocol([s for s, _ in kept], attackers, model,
                          resources_for, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(matrix.to_csv(), encoding="utf-8")
    write_manifest(out, "eval rq3", {
        "input": str(args.input), "model": args.model,
        "style": args.style or "", "attackers": sorted(attackers),
        "eval_sizes": matrix.eval_sizes, "out": str(out),
    }, args.seed)
    log.info("robustness matrix (%s) -> %s", ", ".join(matrix.attackers), out)
    return 0


def cmd_dataset_augment(args) -> int:
    corpus = load_corpus(args.input)
    model = resolve_model(args.model)
    style = StyleTable.load(args.style) if args.style else StyleTable.empty()
    providers = resolve_providers(args.provider, corpus, args.top_k)
    embedder = resolve_embedder(args.embedder)
    resources = {lang: AttackResources(model, style, providers[lang], embedder)
                 for lang in Language}
    mix = parse_weights(args.mix)
    if len(mix) != 2 or mix[1] == 0:
        raise InputError(f"--mix must be two ratios like 0.7,0.3: {args.mix!r}")
    cfg = EngineConfig(population_size=args.population, max_iter=args.max_iter,
                       rename_rate=args.rename_rate, top_k=args.top_k,
                       rng_seed=args.seed)
    augmented = build_augmented_set(corpus, cfg, resources, args.seed,
                                    attack_fraction=args.fraction,
                                    original_per_adversarial=mix[0] / mix[1])
    if augmented.warning:
        log.warning("%s", augmented.warning)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_corpus(augmented.samples, out)
    write_manifest(out, "dataset augment", {
        "input": str(args.input), "model": args.model,
        "style": args.style or "", "fraction": args.fraction,
        "mix": list(mix), "n_adversarial": augmented.n_adversarial,
        "n_original": augmented.n_original, "out": str(out),
    }, args.seed)
    log.info("augmented set: %d adversarial + %d original -> %s",
             augmented.n_adversarial, augmented.n_original, out)
    return 0


def cmd_model_train_ref(args) -> int:
    corpus = load_corpus(args.corpus)
    pairs = [(s.snippet(), s.label) for s in corpus]
    pairs = [(snippet, label) for snippet, label in pairs if snippet.parse_ok]
    config = TrainConfig(learning_rate=args.lr, epochs=args.epochs,
                         batch_size=args.batch_size, l2=args.l2,
                         seed=args.seed)
    model, report = train_reference(pairs, config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    model.save(out)
    write_manifest(out, "model train-ref", {
        "corpus": str(args.corpus), "lr": args.lr, "epochs": args.epochs,
        "batch_size": args.batch_size, "l2": args.l2,
        "train_accuracy": report.accuracy, "out": str(out),
    }, args.seed)
    log.info("trained on %d samples: accuracy %.4f, loss %.4f -> %s",
             report.n_samples, report.accuracy, report.loss, out)
    return 0


SERVE_CHECK_SNIPPET = "def probe(value):\n    return value + 1\n"


def cmd_model_serve_check(args) -> int:
    base = args.endpoint.rstrip("/")
    verdict = classify_remote(f"{base}/classify", Language.PYTHON,
                              SERVE_CHECK_SNIPPET)
    log.info("/classify ok: prob_human=%.4f prob_llm=%.4f predicted=%s",
             verdict.prob_human, verdict.prob_llm, verdict.predicted.value)
    if args.full:
        provider = HttpCandidateProvider(endpoint=f"{base}/predict_identifiers")
        masked = SERVE_CHECK_SNIPPET.replace("value", "<extra_id_0>")
        candidates = provider.predict(masked, 5)
        if not candidates:
            raise ProtocolError(f"{base}/predict_identifiers returned no candidates")
        log.info("/predict_identifiers ok: %s", ", ".join(candidates[:5]))
        embedder = HttpEmbedder(endpoint=f"{base}/embed")
        vector = embedder.embed("count")
        again = embedder.embed("count")
        if vector.shape != again.shape or not (vector == again).all():
            raise ProtocolError(f"{base}/embed is not deterministic")
        log.info("/embed ok: dimension %d, deterministic", vector.size)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_attack_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True,
                        help="builtin:<ref.json> or http(s)://host:port")
    parser.add_argument("--style", default=None, help="style-table.json")
    parser.add_argument("--style-corpus", default=None,
                        help="corpus for the frequency provider (defaults to --input)")
    parser.add_argument("--provider", default="builtin-frequency",
                        help="builtin-frequency or http(s)://host:port")
    parser.add_argument("--embedder", default="builtin-trigram",
                        help="builtin-trigram or http(s)://host:port")
    parser.add_argument("--population", type=int, default=30)
    parser.add_argument("--max-iter", type=int, default=None,
                        help="default: 5 x identifier count per sample")
    parser.add_argument("--rename-rate", type=float, default=0.5)
    parser.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mistforge",
        description="Adversarial robustness toolkit for code-origin classifiers",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default {DEFAULT_SEED}, env MISTFORGE_SEED)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    style = sub.add_parser("style", help="style reference table")
    style_sub = style.add_subparsers(dest="subcommand", required=True)
    style_build = style_sub.add_parser("build", parents=[common])
    style_build.add_argument("--corpus", required=True)
    style_build.add_argument("--out", required=True)
    style_build.set_defaults(func=cmd_style_build)

    attack_p = sub.add_parser("attack", help="run attacks over a corpus", parents=[common])
    attack_p.add_argument("--input", required=True)
    attack_p.add_argument("--out", required=True)
    _add_attack_flags(attack_p)
    attack_p.add_argument("--pool-mode", action="store_true",
                          help="run the full budget instead of stopping at the first flip")
    attack_p.add_argument("--no-filter", dest="filter_subset_x",
                          action="store_false", default=True,
                          help="skip subset-X pre-filtering")
    attack_p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    attack_p.set_defaults(func=cmd_attack)

    eval_p = sub.add_parser("eval", help="aggregate and rank")
    eval_sub = eval_p.add_subparsers(dest="subcommand", required=True)
    metrics_p = eval_sub.add_parser("metrics", parents=[common])
    metrics_p.add_argument("--outcomes", required=True)
    metrics_p.add_argument("--out", required=True)
    metrics_p.set_defaults(func=cmd_eval_metrics)
    topsis_p = eval_sub.add_parser("topsis", parents=[common])
    topsis_p.add_argument("--input", required=True,
                          help="CSV with name,asr,icr,sd,ed,amq")
    topsis_p.add_argument("--weights",
                          default=",".join(str(w) for w in EQUAL_WEIGHTS),
                          help=f"e.g. {','.join(str(w) for w in ASR_PRIORITY_WEIGHTS)}")
    topsis_p.add_argument("--out", required=True)
    topsis_p.set_defaults(func=cmd_eval_topsis)
    rq3_p = eval_sub.add_parser("rq3", parents=[common])
    rq3_p.add_argument("--input", required=True)
    rq3_p.add_argument("--out", required=True)
    _add_attack_flags(rq3_p)
    rq3_p.add_argument("--attacker", action="append",
                       help="name[:r=0.5,N=30,k=40,max_iter=NN], repeatable")
    rq3_p.set_defaults(func=cmd_eval_rq3)

    dataset = sub.add_parser("dataset", help="training-set construction")
    dataset_sub = dataset.add_subparsers(dest="subcommand", required=True)
    augment_p = dataset_sub.add_parser("augment", parents=[common])
    augment_p.add_argument("--input", required=True)
    augment_p.add_argument("--out", required=True)
    _add_attack_flags(augment_p)
    augment_p.add_argument("--fraction", type=float, default=0.1)
    augment_p.add_argument("--mix", default="0.7,0.3")
    augment_p.set_defaults(func=cmd_dataset_augment)

    model_p = sub.add_parser("model", help="reference model utilities")
    model_sub = model_p.add_subparsers(dest="subcommand", required=True)
    train_p = model_sub.add_parser("train-ref", parents=[common])
    train_p.add_argument("--corpus", required=True)
    train_p.add_argument("--out", required=True)
    train_p.add_argument("--lr", type=float, default=0.5)
    train_p.add_argument("--epochs", type=int, default=60)
    train_p.add_argument("--batch-size", type=int, default=8)
    train_p.add_argument("--l2", type=float, default=1e-4)
    train_p.set_defaults(func=cmd_model_train_ref)
    check_p = model_sub.add_parser("serve-check", parents=[common])
    check_p.add_argument("--endpoint", required=True)
    check_p.add_argument("--full", action="store_true",
                         help="also check /predict_identifiers and /embed")
    check_p.set_defaults(func=cmd_model_serve_check)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")
    if args.seed is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except TransportError as exc:
        log.error("transport failure: %s", exc)
        return 3
    except MistforgeError as exc:
        log.error("%s", exc)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
