import os
import pathlib
import shutil

import pytest

from lyricsim.corpus import ingest_corpus, parse_lexicon, read_track_records
from lyricsim.embeddings import load_vectors_file, mood_store_from_corpus
from lyricsim.phonetics import feature_pairs, fit_pca, load_feature_table
from lyricsim.study import MetricProviders
from lyricsim.topics import train_lda

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def lexicon():
    with open(FIXTURES / "lexicon.txt", encoding="utf-8") as fh:
        lex, errors = parse_lexicon(fh)
    assert not errors
    return lex


@pytest.fixture(scope="session")
def corpus_store(lexicon):
    with open(FIXTURES / "corpus.jsonl", encoding="utf-8") as fh:
        return ingest_corpus(read_track_records(fh), lexicon)


@pytest.fixture(scope="session")
def feature_table():
    return load_feature_table()


@pytest.fixture(scope="session")
def semantic_store():
    return load_vectors_file(str(FIXTURES / "semantic.jsonl"), "semantic")


@pytest.fixture(scope="session")
def audio_store():
    return load_vectors_file(str(FIXTURES / "audio.jsonl"), "audio")


@pytest.fixture(scope="session")
def mood_store():
    return load_vectors_file(str(FIXTURES / "mood.jsonl"), "mood")


@pytest.fixture(scope="session")
def topic_model(corpus_store):
    docs = [corpus_store.lyric_sets[sid].tokens
            for sid in corpus_store.sorted_set_ids()]
    return train_lda(docs, k=10, iterations=150, seed=11)


@pytest.fixture(scope="session")
def pca_model(corpus_store, feature_table):
    hists = [feature_pairs(corpus_store.lyric_sets[sid].phonemes, feature_table)
             for sid in corpus_store.sorted_set_ids()]
    return fit_pca(hists, dims=50, seed=5)


@pytest.fixture(scope="session")
def providers(corpus_store, topic_model, pca_model, feature_table,
              semantic_store, audio_store, mood_store):
    mood = mood_store_from_corpus(corpus_store)
    mood.vectors.update(mood_store.vectors)
    return MetricProviders(
        corpus=corpus_store, topic_model=topic_model, pca_model=pca_model,
        feature_table=feature_table, semantic=semantic_store,
        audio=audio_store, mood=mood, seed=17, burn_in=20, samples=5)


PIPELINE_SEED = 5
PIPELINE_PAIRS = 250


def run_pipeline(project: pathlib.Path, fixtures: pathlib.Path,
                 n_pairs: int = PIPELINE_PAIRS,
                 seed: int = PIPELINE_SEED) -> None:
    """Drive the full CLI chain inside ``project`` off the fixture inputs."""
    from lyricsim.cli import main

    project.mkdir(parents=True, exist_ok=True)
    vectors = project / "vectors"
    vectors.mkdir(exist_ok=True)
    for kind in ("semantic", "audio", "mood"):
        shutil.copy(fixtures / f"{kind}.jsonl", vectors / f"{kind}.jsonl")

    steps = [
        ["ingest", "--records", str(fixtures / "corpus.jsonl"),
         "--lexicon", str(fixtures / "lexicon.txt")],
        ["lda-train", "--seed", str(seed), "--iterations", "150"],
        ["pca-fit", "--seed", str(seed)],
        ["vectors-load", "--in", "vectors/semantic.jsonl",
         "--kind", "semantic", "--out", "reports/semantic_check.json"],
        ["pairs", "sample", "--n", str(n_pairs), "--seed", str(seed)],
        ["pairs", "evaluate", "--seed", str(seed)],
        ["pairs", "group"],
        ["correlate", "matrix"],
        ["recommend", "--query-set", "t00:000", "--seed", str(seed),
         "--top-k", "5"],
        ["report"],
    ]
    previous = os.getcwd()
    os.chdir(project)
    try:
        for argv in steps:
            code = main(argv)
            assert code == 0, f"{argv} exited {code}"
    finally:
        os.chdir(previous)


@pytest.fixture(scope="session")
def pipeline_dir(tmp_path_factory, fixture_dir) -> pathlib.Path:
    project = tmp_path_factory.mktemp("pipeline")
    run_pipeline(project, fixture_dir)
    return project
