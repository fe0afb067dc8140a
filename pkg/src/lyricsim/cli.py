"""Command-line front door: ingest -> train/fit -> vectors -> metrics ->
study -> reports -> recommendations.

Every command takes explicit ``--seed``-style flags (no wall-clock
randomness), writes machine-readable output to a file, prints a short human
summary, and records provenance (input hashes, seeds) in a manifest.

Exit codes: 0 success, 1 usage error, 2 data/contract error, 3 numeric
failure.
"""

import json
import os
import sys
from typing import Optional

import click
import numpy as np
from click.core import ParameterSource

from . import corpus as corpus_mod
from . import embeddings as emb
from . import util
from .config import DEFAULTS, load_config
from .errors import DataError, LyricsimError, NumericError
from .phonetics import (feature_pairs, fit_pca, load_feature_table, load_pca,
                        save_pca)
from .study import (METRIC_NAMES, MetricProviders, PairRecord, Query,
                    default_metric_specs, evaluate_pairs, group_by_metric,
                    metric_correlation_matrix, metric_rank_correlation,
                    pair_metrics, read_rankings, recommend, resolve_specs,
                    sample_pairs, select_triples, specs_from_dict,
                    specs_to_dict)
from .study.triples import Triple
from .topics import load_topic_model, save_topic_model, train_lda

MANIFEST_VERSION = 1


# -- plumbing -----------------------------------------------------------------

def _from_config(ctx: click.Context, param: str, key: Optional[str] = None):
    """Flag value unless it was left at its default and the config overrides."""
    value = ctx.params[param]
    if ctx.get_parameter_source(param) == ParameterSource.DEFAULT:
        config = ctx.obj["config"]
        return config.values.get(key or param, value)
    return value


def _record_manifest(manifest_path: str, name: str, out_path: str,
                     inputs: dict[str, str], params: dict) -> None:
    manifest = {"format_version": MANIFEST_VERSION, "artifacts": {}}
    if os.path.exists(manifest_path):
        manifest = util.read_json(manifest_path)
    manifest.setdefault("artifacts", {})[name] = {
        "path": out_path,
        "sha256": util.sha256_file(out_path) if os.path.isfile(out_path) else None,
        "inputs": {label: util.sha256_file(p) for label, p in sorted(inputs.items())
                   if p and os.path.isfile(p)},
        "params": params,
    }
    util.write_json(manifest_path, manifest)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _load_vectors_if(path: Optional[str], kind: str, explicit: bool):
    if path is None:
        return None
    if not os.path.isfile(path):
        if explicit:
            raise DataError(f"{kind} vector file not found: {path}")
        return None
    return emb.load_vectors_file(path, kind)


def provider_options(fn):
    options = [
        click.option("--store", "store_dir", default="store",
                     show_default=True, help="Ingested corpus directory."),
        click.option("--topic-model", default="models/topics.json",
                     show_default=True, help="Trained topic model path."),
        click.option("--pca-model", default="models/pca.json",
                     show_default=True, help="Fitted phonetic PCA model path."),
        click.option("--feature-table", default=None,
                     help="Phoneme feature table (default: packaged table)."),
        click.option("--semantic-vectors", default="vectors/semantic.jsonl",
                     show_default=True, help="Semantic vector file."),
        click.option("--audio-vectors", default="vectors/audio.jsonl",
                     show_default=True, help="Audio vector file."),
        click.option("--mood-vectors", default="vectors/mood.jsonl",
                     show_default=True,
                     help="Mood vector file (overrides corpus metadata)."),
        click.option("--seed", default=DEFAULTS["seed"], show_default=True,
                     help="Base seed for topic inference."),
        click.option("--burn-in", default=DEFAULTS["infer_burn_in"],
                     show_default=True, help="Fold-in burn-in sweeps."),
        click.option("--samples", default=DEFAULTS["infer_samples"],
                     show_default=True, help="Fold-in averaged samples."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _build_providers(ctx: click.Context) -> MetricProviders:
    params = ctx.params
    explicit = {name: ctx.get_parameter_source(name) != ParameterSource.DEFAULT
                for name in ("topic_model", "pca_model", "semantic_vectors",
                             "audio_vectors", "mood_vectors")}
    store = corpus_mod.load_store(params["store_dir"])

    topic_model = None
    if os.path.isfile(params["topic_model"]):
        topic_model = load_topic_model(params["topic_model"])
    elif explicit["topic_model"]:
        raise DataError(f"topic model not found: {params['topic_model']}")

    pca_model = None
    if os.path.isfile(params["pca_model"]):
        pca_model = load_pca(params["pca_model"])
    elif explicit["pca_model"]:
        raise DataError(f"PCA model not found: {params['pca_model']}")

    table = load_feature_table(params["feature_table"])

    semantic = _load_vectors_if(params["semantic_vectors"], "semantic",
                                explicit["semantic_vectors"])
    audio = _load_vectors_if(params["audio_vectors"], "audio",
                             explicit["audio_vectors"])

    mood = emb.mood_store_from_corpus(store)
    mood_file = _load_vectors_if(params["mood_vectors"], "mood",
                                 explicit["mood_vectors"])
    if mood_file is not None:
        conflicts = sum(
            1 for tid, vec in mood_file.vectors.items()
            if tid in mood.vectors and not np.array_equal(vec, mood.vectors[tid]))
        if conflicts:
            click.echo(f"warning: {conflicts} mood conflicts; "
                       "vector file wins", err=True)
        mood.vectors.update(mood_file.vectors)
    if not mood.vectors:
        mood = None

    return MetricProviders(
        corpus=store, topic_model=topic_model, pca_model=pca_model,
        feature_table=table, semantic=semantic, audio=audio, mood=mood,
        seed=_from_config(ctx, "seed"),
        burn_in=_from_config(ctx, "burn_in", "infer_burn_in"),
        samples=_from_config(ctx, "samples", "infer_samples"))


# -- command tree ---------------------------------------------------------------

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", default=None,
              help="Key-value config file overriding defaults.")
@click.pass_context
def cli(ctx, config_path):
    """Lyric similarity metrics, experiment pipeline, and recommender."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_path)


@cli.command()
@click.option("--records", "records_path", required=True,
              help="Line-delimited track records (JSON object per line).")
@click.option("--lexicon", "lexicon_path", required=True,
              help="CMU-style pronunciation lexicon.")
@click.option("--store", "store_dir", default="store", show_default=True,
              help="Output corpus directory.")
@click.option("--manifest", default="manifest.json", show_default=True)
@click.pass_context
def ingest(ctx, records_path, lexicon_path, store_dir, manifest):
    """Build the immutable corpus store from track records."""
    with open(lexicon_path, encoding="utf-8", errors="replace") as fh:
        lexicon, errors = corpus_mod.parse_lexicon(fh)
    if errors:
        click.echo(f"lexicon: skipped {len(errors)} malformed lines", err=True)
    with open(records_path, encoding="utf-8") as fh:
        store = corpus_mod.ingest_corpus(corpus_mod.read_track_records(fh),
                                         lexicon)
    corpus_mod.save_store(store, store_dir)
    _record_manifest(manifest, "store", f"{store_dir}/manifest.json",
                     {"records": records_path, "lexicon": lexicon_path}, {})
    stats = store.ingest_stats
    click.echo(f"ingested {stats.track_count} tracks, "
               f"{stats.lyric_set_count} lyric sets "
               f"(mean {stats.mean_sections_per_track:.2f} sections/track, "
               f"mean phoneme coverage {stats.mean_phoneme_coverage:.3f})")
    for key, count in sorted(store.warnings.items()):
        if count:
            click.echo(f"warning: {key} = {count}", err=True)


@cli.command("lexicon-check")
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--feature-table", default=None,
              help="Validate phonemes against this table's inventory.")
@click.option("--out", default=None, help="Write a JSON report here.")
def lexicon_check(lexicon_path, feature_table, out):
    """Parse a lexicon and report entry and error counts."""
    symbols = load_feature_table(feature_table).symbols if feature_table else None
    with open(lexicon_path, encoding="utf-8", errors="replace") as fh:
        lexicon, errors = corpus_mod.parse_lexicon(fh, valid_symbols=symbols)
    report = {
        "entries": len(lexicon),
        "error_count": len(errors),
        "errors": [{"line": e.line_number, "message": e.message}
                   for e in errors],
    }
    if out:
        _ensure_parent(out)
        util.write_json(out, report)
    click.echo(f"{len(lexicon)} entries, {len(errors)} malformed lines")


@cli.command("lda-train")
@click.option("--store", "store_dir", default="store", show_default=True)
@click.option("--k", default=DEFAULTS["lda_k"], show_default=True,
              help="Number of topics.")
@click.option("--alpha", default=DEFAULTS["lda_alpha"], show_default=True,
              help="Symmetric document-topic prior.")
@click.option("--beta", default=DEFAULTS["lda_beta"], show_default=True,
              help="Symmetric topic-word prior.")
@click.option("--iterations", default=DEFAULTS["lda_iterations"],
              show_default=True, help="Gibbs sweeps.")
@click.option("--min-df", default=DEFAULTS["lda_min_df"], show_default=True,
              help="Drop words in fewer documents than this.")
@click.option("--seed", default=DEFAULTS["seed"], show_default=True)
@click.option("--out", default="models/topics.json", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
@click.pass_context
def lda_train(ctx, store_dir, k, alpha, beta, iterations, min_df, seed, out,
              manifest):
    """Train the topic model on the corpus's lyric sections."""
    k = _from_config(ctx, "k", "lda_k")
    alpha = _from_config(ctx, "alpha", "lda_alpha")
    beta = _from_config(ctx, "beta", "lda_beta")
    iterations = _from_config(ctx, "iterations", "lda_iterations")
    min_df = _from_config(ctx, "min_df", "lda_min_df")
    seed = _from_config(ctx, "seed")
    store = corpus_mod.load_store(store_dir)
    docs = [store.lyric_sets[sid].tokens for sid in store.sorted_set_ids()]
    model = train_lda(docs, k=k, alpha=alpha, beta=beta,
                      iterations=iterations, seed=seed, min_df=min_df)
    _ensure_parent(out)
    save_topic_model(model, out)
    _record_manifest(manifest, "topic_model", out,
                     {"store": f"{store_dir}/lyric_sets.jsonl"},
                     {"k": k, "alpha": alpha, "beta": beta,
                      "iterations": iterations, "min_df": min_df,
                      "seed": seed})
    click.echo(f"trained {k} topics over {model.vocab_size} words "
               f"({iterations} sweeps, seed {seed}) -> {out}")


@cli.command("pca-fit")
@click.option("--store", "store_dir", default="store", show_default=True)
@click.option("--feature-table", default=None,
              help="Phoneme feature table (default: packaged table).")
@click.option("--dims", default=DEFAULTS["pca_dims"], show_default=True,
              help="Components to extract.")
@click.option("--seed", default=DEFAULTS["seed"], show_default=True)
@click.option("--out", default="models/pca.json", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
@click.pass_context
def pca_fit(ctx, store_dir, feature_table, dims, seed, out, manifest):
    """Fit the phonetic PCA on the corpus's feature-pair histograms."""
    dims = _from_config(ctx, "dims", "pca_dims")
    seed = _from_config(ctx, "seed")
    store = corpus_mod.load_store(store_dir)
    table = load_feature_table(feature_table)
    histograms = [feature_pairs(store.lyric_sets[sid].phonemes, table)
                  for sid in store.sorted_set_ids()]
    model = fit_pca(histograms, dims=dims, seed=seed)
    _ensure_parent(out)
    save_pca(model, out)
    _record_manifest(manifest, "pca_model", out,
                     {"store": f"{store_dir}/lyric_sets.jsonl"},
                     {"dims": dims, "seed": seed})
    click.echo(f"fit {dims} components over {len(model.pair_index)} feature "
               f"pairs -> {out}")


@cli.command("vectors-load")
@click.option("--in", "in_path", required=True, help="Vector file to validate.")
@click.option("--kind", required=True,
              type=click.Choice(sorted(emb.KIND_DIMS)))
@click.option("--out", default=None, help="Write a JSON summary here.")
def vectors_load(in_path, kind, out):
    """Validate a vector file against its kind's dimension contract."""
    store = emb.load_vectors_file(in_path, kind)
    summary = {"kind": kind, "dim": store.dim, "count": len(store),
               "ids_sha256": util.sha256_file(in_path)}
    if out:
        _ensure_parent(out)
        util.write_json(out, summary)
    click.echo(f"{in_path}: {len(store)} {kind} vectors of dim {store.dim}")


@cli.group()
def metrics():
    """Direct metric computations."""


@metrics.command("pair")
@click.option("--a", "id_a", required=True, help="First lyric-set id.")
@click.option("--b", "id_b", required=True, help="Second lyric-set id.")
@click.option("--out", default=None, help="Write the metric JSON here.")
@provider_options
@click.pass_context
def metrics_pair(ctx, id_a, id_b, out, **_):
    """Evaluate all six metrics for one pair of lyric sets."""
    providers = _build_providers(ctx)
    for sid in (id_a, id_b):
        if sid not in providers.corpus.lyric_sets:
            raise DataError(f"unknown lyric set {sid!r}")
    if (providers.corpus.lyric_sets[id_a].track_id
            == providers.corpus.lyric_sets[id_b].track_id):
        raise DataError("pair must span two different tracks")
    mv = pair_metrics(providers, id_a, id_b)
    a, b = sorted((id_a, id_b))
    payload = {"set_id_a": a, "set_id_b": b, **mv.as_dict()}
    if out:
        _ensure_parent(out)
        util.write_json(out, payload)
    for name in METRIC_NAMES:
        value = mv.get(name)
        click.echo(f"{name:>13}: "
                   + ("unavailable" if value is None else f"{value:.6f}"))


@cli.group()
def pairs():
    """Pair sampling, evaluation, and grouping."""


@pairs.command("sample")
@click.option("--store", "store_dir", default="store", show_default=True)
@click.option("--n", required=True, type=int, help="Pairs to draw.")
@click.option("--seed", default=DEFAULTS["seed"], show_default=True)
@click.option("--out", default="pairs/sample.jsonl", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
@click.pass_context
def pairs_sample(ctx, store_dir, n, seed, out, manifest):
    """Sample cross-track lyric-set pairs uniformly."""
    seed = _from_config(ctx, "seed")
    store = corpus_mod.load_store(store_dir)
    sampled = sample_pairs(store, n, seed)
    _ensure_parent(out)
    util.write_jsonl(out, ({"set_id_a": a, "set_id_b": b} for a, b in sampled))
    _record_manifest(manifest, "pair_sample", out,
                     {"store": f"{store_dir}/lyric_sets.jsonl"},
                     {"n": n, "seed": seed})
    click.echo(f"sampled {len(sampled)} pairs -> {out}")


@pairs.command("evaluate")
@click.option("--pairs", "pairs_path", default="pairs/sample.jsonl",
              show_default=True)
@click.option("--jobs", default=DEFAULTS["jobs"], show_default=True)
@click.option("--out", default="pairs/evaluated.jsonl", show_default=True)
@click.option("--specs-out", default="pairs/specs.json", show_default=True,
              help="Resolved metric ranges for the sample.")
@click.option("--manifest", default="manifest.json", show_default=True)
@provider_options
@click.pass_context
def pairs_evaluate(ctx, pairs_path, jobs, out, specs_out, manifest, **_):
    """Evaluate all six metrics over a sampled pair list."""
    jobs = _from_config(ctx, "jobs")
    providers = _build_providers(ctx)
    pair_list = [(rec["set_id_a"], rec["set_id_b"])
                 for rec in util.read_jsonl(pairs_path)]
    records, unavailable = evaluate_pairs(pair_list, providers, jobs=jobs)
    _ensure_parent(out)
    util.write_jsonl(out, (rec.as_dict() for rec in records))
    specs = resolve_specs(default_metric_specs(), records)
    _ensure_parent(specs_out)
    util.write_json(specs_out, specs_to_dict(specs))
    _record_manifest(manifest, "pair_metrics", out, {"pairs": pairs_path},
                     {"jobs": jobs})
    click.echo(f"evaluated {len(records)} pairs -> {out}")
    skipped = {k: v for k, v in unavailable.items() if v}
    if skipped:
        click.echo("unavailable: " + ", ".join(f"{k}={v}" for k, v
                                               in sorted(skipped.items())),
                   err=True)


@pairs.command("group")
@click.option("--evaluated", default="pairs/evaluated.jsonl", show_default=True)
@click.option("--specs", "specs_path", default="pairs/specs.json",
              show_default=True)
@click.option("--metric", "metric_names", multiple=True,
              type=click.Choice(METRIC_NAMES),
              help="Restrict to these metrics (default: all six).")
@click.option("--out", default="pairs/groups.json", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
def pairs_group(evaluated, specs_path, metric_names, out, manifest):
    """Assign H/M/L labels around mean +/- sigma, per metric."""
    records = [PairRecord.from_dict(rec) for rec in util.read_jsonl(evaluated)]
    specs = specs_from_dict(util.read_json(specs_path))
    names = metric_names or METRIC_NAMES
    result = {}
    for name in names:
        rows = [(rec.set_id_a, rec.set_id_b, rec.metrics.get(name))
                for rec in records if rec.metrics.get(name) is not None]
        if len(rows) < 2:
            result[name] = {"degenerate": True, "reason": "too few values"}
            continue
        labels, (lo, hi) = group_by_metric([v for _, _, v in rows], specs[name])
        result[name] = {
            "boundaries": [lo, hi],
            "labels": [[a, b, label] for (a, b, _), label in zip(rows, labels)],
        }
    _ensure_parent(out)
    util.write_json(out, {"metrics": result})
    _record_manifest(manifest, "groups", out, {"evaluated": evaluated}, {})
    for name in names:
        info = result[name]
        if "boundaries" in info:
            counts = {"H": 0, "M": 0, "L": 0}
            for _, _, label in info["labels"]:
                counts[label] += 1
            click.echo(f"{name:>13}: H={counts['H']} M={counts['M']} "
                       f"L={counts['L']} boundaries="
                       f"[{info['boundaries'][0]:.4f}, {info['boundaries'][1]:.4f}]")
        else:
            click.echo(f"{name:>13}: degenerate")


@cli.group()
def triples():
    """Variable-controlled triple selection."""


@triples.command("select")
@click.option("--evaluated", default="pairs/evaluated.jsonl", show_default=True)
@click.option("--specs", "specs_path", default="pairs/specs.json",
              show_default=True)
@click.option("--groups", "groups_path", default="pairs/groups.json",
              show_default=True)
@click.option("--reference", "references", multiple=True, required=True,
              help="Reference lyric-set id (repeatable).")
@click.option("--target", required=True, type=click.Choice(METRIC_NAMES),
              help="Metric whose H/M/L levels the triple spans.")
@click.option("--threshold", default=DEFAULTS["closeness_threshold"],
              show_default=True)
@click.option("--group-cap", default=DEFAULTS["group_cap"], show_default=True,
              help="Candidates kept per group, nearest the group centroid.")
@click.option("--out", default="triples/triples.jsonl", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
@click.pass_context
def triples_select(ctx, evaluated, specs_path, groups_path, references,
                   target, threshold, group_cap, out, manifest):
    """Select one H/M/L triple per reference on the target metric."""
    threshold = _from_config(ctx, "threshold", "closeness_threshold")
    group_cap = _from_config(ctx, "group_cap")
    records = [PairRecord.from_dict(rec) for rec in util.read_jsonl(evaluated)]
    specs = specs_from_dict(util.read_json(specs_path))
    groups = util.read_json(groups_path)["metrics"]
    if target not in groups or "labels" not in groups[target]:
        raise DataError(f"no group labels for metric {target!r}")
    label_of = {(a, b): label for a, b, label in groups[target]["labels"]}

    rows = []
    for reference in references:
        pool, labels = [], []
        for rec in records:
            if reference not in (rec.set_id_a, rec.set_id_b):
                continue
            label = label_of.get((rec.set_id_a, rec.set_id_b))
            if label is None:
                continue
            pool.append(rec)
            labels.append(label)
        triple = select_triples(pool, reference, target, labels, specs,
                                threshold=threshold, group_cap=group_cap)
        if triple is None:
            click.echo(f"{reference}: no feasible triple", err=True)
            continue
        rows.append({"question_id": f"{target}:{reference}",
                     **triple.as_dict()})
        click.echo(f"{reference}: min closeness {triple.min_closeness:.4f} "
                   f"({', '.join(m.set_id for m in triple.members.values())})")
    _ensure_parent(out)
    util.write_jsonl(out, rows)
    _record_manifest(manifest, "triples", out, {"evaluated": evaluated},
                     {"target": target, "threshold": threshold,
                      "group_cap": group_cap})
    click.echo(f"{len(rows)} triples -> {out}")


@cli.group()
def correlate():
    """Correlation analyses."""


@correlate.command("matrix")
@click.option("--evaluated", default="pairs/evaluated.jsonl", show_default=True)
@click.option("--out", default="reports/matrix.json", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
def correlate_matrix(evaluated, out, manifest):
    """Cross-metric Pearson correlation matrix over a pair sample."""
    records = [PairRecord.from_dict(rec) for rec in util.read_jsonl(evaluated)]
    matrix = metric_correlation_matrix(records)
    _ensure_parent(out)
    util.write_json(out, matrix.as_dict())
    _record_manifest(manifest, "correlation_matrix", out,
                     {"evaluated": evaluated}, {})
    width = max(len(n) for n in matrix.names)
    for i, name in enumerate(matrix.names):
        cells = " ".join("   -- " if np.isnan(matrix.r[i, j])
                         else f"{matrix.r[i, j]:+.3f}"
                         for j in range(len(matrix.names)))
        click.echo(f"{name:>{width}} {cells}")


@correlate.command("rankings")
@click.option("--ranks", "ranks_path", required=True,
              help="CSV: question_id, rater_id, group_label, rank.")
@click.option("--triples", "triples_path", default="triples/triples.jsonl",
              show_default=True)
@click.option("--out", default="reports/rank_correlation.json",
              show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
def correlate_rankings(ranks_path, triples_path, out, manifest):
    """Correlate each metric's triple values with human ranks.

    Sign follows rank-1-is-most-similar: similarity metrics come out
    negative, difference metrics positive.
    """
    with open(ranks_path, encoding="utf-8") as fh:
        rank_records = read_rankings(fh)
    triples_by_id = {}
    for row in util.read_jsonl(triples_path):
        triples_by_id[row["question_id"]] = Triple.from_dict(row)
    joined: dict[str, list[tuple[float, int]]] = {}
    unmatched = 0
    for rec in rank_records:
        triple = triples_by_id.get(rec.question_id)
        if triple is None:
            unmatched += 1
            continue
        value = triple.members[rec.group].metrics.get(triple.target)
        joined.setdefault(triple.target, []).append((value, rec.rank))
    results = metric_rank_correlation(joined)
    payload = {name: (None if res is None
                      else {"r": res.r, "p": res.p, "n": res.n})
               for name, res in results.items()}
    _ensure_parent(out)
    util.write_json(out, payload)
    _record_manifest(manifest, "rank_correlation", out,
                     {"ranks": ranks_path, "triples": triples_path}, {})
    if unmatched:
        click.echo(f"warning: {unmatched} rank rows without a matching triple",
                   err=True)
    for name in METRIC_NAMES:
        res = results.get(name)
        if res is None:
            click.echo(f"{name:>13}: --")
        else:
            click.echo(f"{name:>13}: r={res.r:+.3f} p={res.p:.4f} n={res.n}")


@cli.command("recommend")
@click.option("--text", default=None, help="Query lyric text.")
@click.option("--query-set", default=None,
              help="Use this corpus lyric set as the query anchor.")
@click.option("--query-vec-file", "query_vec_files", multiple=True,
              help="Vector file supplying the query's own vector "
                   "(repeatable; kind read from header).")
@click.option("--query-vec-id", default="query", show_default=True,
              help="Record id of the query vector inside those files.")
@click.option("--weight", "weight_args", multiple=True,
              help="Override one metric weight, e.g. semantic_sim=1.0 "
                   "(repeatable).")
@click.option("--top-k", default=DEFAULTS["top_k"], show_default=True)
@click.option("--lexicon", "lexicon_path", default=None,
              help="Lexicon for phonemizing --text queries.")
@click.option("--jobs", default=DEFAULTS["jobs"], show_default=True)
@click.option("--out", default="reports/recommendations.json",
              show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
@provider_options
@click.pass_context
def recommend_cmd(ctx, text, query_set, query_vec_files, query_vec_id,
                  weight_args, top_k, lexicon_path, jobs, out, manifest, **_):
    """Rank corpus lyric sets against a query by weighted metrics."""
    top_k = _from_config(ctx, "top_k")
    jobs = _from_config(ctx, "jobs")
    if not text and not query_set:
        raise click.UsageError("provide --text and/or --query-set")
    providers = _build_providers(ctx)
    config = ctx.obj["config"]
    weights = {name: config.values[f"weight_{name}"] for name in METRIC_NAMES}
    for arg in weight_args:
        name, _, value = arg.partition("=")
        if name not in METRIC_NAMES:
            raise click.UsageError(f"unknown metric {name!r}")
        try:
            weights[name] = float(value)
        except ValueError:
            raise click.UsageError(f"bad weight {arg!r}") from None

    vectors = {}
    for path in query_vec_files:
        with open(path, encoding="utf-8") as fh:
            header = json.loads(fh.readline())
        kind = header.get("kind")
        store = emb.load_vectors_file(path, kind)
        if query_vec_id not in store:
            raise DataError(f"{path} has no record {query_vec_id!r}")
        vectors[kind] = store.get(query_vec_id)

    lexicon = None
    if lexicon_path:
        with open(lexicon_path, encoding="utf-8", errors="replace") as fh:
            lexicon, _errs = corpus_mod.parse_lexicon(fh)

    query = Query(text=text or "", set_id=query_set, vectors=vectors)
    results = recommend(providers, query, weights=weights, k=top_k,
                        lexicon=lexicon, jobs=jobs)
    payload = {
        "query": {"text": text, "set_id": query_set,
                  "vector_kinds": sorted(vectors)},
        "weights": weights,
        "k": top_k,
        "results": [{"set_id": r.set_id, "score": r.score,
                     **r.metrics.as_dict()} for r in results],
    }
    _ensure_parent(out)
    util.write_json(out, payload)
    _record_manifest(manifest, "recommendations", out, {}, {"k": top_k})
    for rank, rec in enumerate(results, start=1):
        click.echo(f"{rank:2d}. {rec.set_id}  score={rec.score:+.4f}")


@cli.command("report")
@click.option("--matrix", "matrix_path", default="reports/matrix.json",
              show_default=True)
@click.option("--groups", "groups_path", default="pairs/groups.json",
              show_default=True)
@click.option("--specs", "specs_path", default="pairs/specs.json",
              show_default=True)
@click.option("--rank-correlation", "rank_corr_path",
              default="reports/rank_correlation.json", show_default=True)
@click.option("--triples", "triples_path", default="triples/triples.jsonl",
              show_default=True)
@click.option("--recommendations", "recs_path",
              default="reports/recommendations.json", show_default=True)
@click.option("--out", default="reports/report.json", show_default=True)
@click.option("--manifest", default="manifest.json", show_default=True)
def report(matrix_path, groups_path, specs_path, rank_corr_path, triples_path,
           recs_path, out, manifest):
    """Assemble pipeline artifacts into one structured report document."""
    def maybe(path, loader):
        return loader(path) if os.path.isfile(path) else None

    doc = {
        "format_version": 1,
        "metric_ranges": maybe(specs_path, util.read_json),
        "group_boundaries": None,
        "correlation_matrix": maybe(matrix_path, util.read_json),
        "rank_correlation": maybe(rank_corr_path, util.read_json),
        "triples": maybe(triples_path, lambda p: list(util.read_jsonl(p))),
        "recommendations": maybe(recs_path, util.read_json),
    }
    groups = maybe(groups_path, util.read_json)
    if groups:
        doc["group_boundaries"] = {
            name: info.get("boundaries")
            for name, info in sorted(groups["metrics"].items())}
        doc["group_counts"] = {}
        for name, info in sorted(groups["metrics"].items()):
            if "labels" in info:
                counts = {"H": 0, "M": 0, "L": 0}
                for _, _, label in info["labels"]:
                    counts[label] += 1
                doc["group_counts"][name] = counts
    _ensure_parent(out)
    util.write_json(out, doc)
    _record_manifest(manifest, "report", out, {
        "matrix": matrix_path, "groups": groups_path, "specs": specs_path,
        "rank_correlation": rank_corr_path, "triples": triples_path,
        "recommendations": recs_path}, {})
    present = [k for k, v in doc.items() if v is not None and k != "format_version"]
    click.echo(f"report with {', '.join(sorted(present))} -> {out}")


# -- entry point ----------------------------------------------------------------

def main(argv: Optional[list[str]] = None) -> int:
    """Run the CLI, mapping exceptions to documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except NumericError as exc:
        click.echo(str(exc), err=True)
        return 3
    except LyricsimError as exc:
        click.echo(str(exc), err=True)
        return 2
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        click.echo(f"DataError: {exc}", err=True)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
