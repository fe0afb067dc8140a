import copy

import numpy as np
import pytest

from lyricsim.embeddings import EmbeddingStore
from lyricsim.errors import MissingObjective, MissingProvider
from lyricsim.study import MetricProviders, Query, recommend


def semantic_only(providers, query_vec):
    return providers, Query(text="", set_id=None,
                            vectors={"semantic": query_vec})


def test_exact_duplicate_ranks_first(providers, lexicon):
    # query text duplicates set t03:001 (another track's section); its
    # semantic fixture vector equals that set's vector exactly
    target = providers.corpus.lyric_sets["t03:001"]
    query = Query(text="\n".join(target.lines),
                  vectors={"semantic": providers.semantic.get("t03:001")})
    results = recommend(providers, query, weights={"semantic_sim": 1.0}, k=5,
                        lexicon=lexicon)
    assert results[0].set_id == "t03:001"
    assert results[0].metrics.semantic_sim == pytest.approx(1.0, abs=1e-12)


def test_k_larger_than_candidates(providers, lexicon):
    query = Query(set_id="t00:000")
    results = recommend(providers, query, weights={"musical_diff": 1.0},
                        k=10_000, lexicon=lexicon)
    # anchor excluded, all other sets ranked
    assert len(results) == len(providers.corpus.lyric_sets) - 1
    assert all(r.set_id != "t00:000" for r in results)


def test_all_zero_weights_rejected(providers):
    with pytest.raises(MissingObjective):
        recommend(providers, Query(set_id="t00:000"),
                  weights={name: 0.0 for name in ("semantic_sim",
                                                  "audio_sim")})


def test_weight_on_unavailable_provider(providers, lexicon):
    # text query with no explicit semantic vector: semantic weight must fail
    query = Query(text="gold gold gold")
    with pytest.raises(MissingProvider):
        recommend(providers, query, weights={"semantic_sim": 1.0},
                  lexicon=lexicon)


def test_anchored_query_uses_track_vectors(providers):
    results = recommend(providers, Query(set_id="t00:000"),
                        weights={"audio_sim": 1.0}, k=3)
    assert len(results) == 3
    scores = [r.score for r in results]
    assert scores == sorted(scores, reverse=True)


def test_default_weights_activate_three_metrics(providers):
    results = recommend(providers, Query(set_id="t00:000"), k=4)
    for rec in results:
        assert rec.metrics.semantic_sim is not None
        assert rec.metrics.audio_sim is not None
        assert rec.metrics.musical_diff is not None


def test_raising_semantic_similarity_never_lowers_rank(providers, lexicon):
    query_vec = providers.semantic.get("t05:002").copy()
    base_sem = copy.deepcopy(providers.semantic)
    boosted_sem = copy.deepcopy(providers.semantic)
    victim = "t09:001"
    # move the victim's vector toward the query: cosine strictly increases
    boosted_sem.vectors[victim] = (0.2 * boosted_sem.vectors[victim]
                                   + 0.8 * query_vec)

    def rank_of(store):
        local = MetricProviders(
            corpus=providers.corpus, topic_model=providers.topic_model,
            pca_model=providers.pca_model,
            feature_table=providers.feature_table, semantic=store,
            audio=providers.audio, mood=providers.mood, seed=providers.seed,
            burn_in=providers.burn_in, samples=providers.samples)
        results = recommend(local, Query(text="gold and diamond chains",
                                         vectors={"semantic": query_vec}),
                            weights={"semantic_sim": 0.8, "musical_diff": 0.4},
                            k=10_000, lexicon=lexicon)
        return [r.set_id for r in results].index(victim)

    assert rank_of(boosted_sem) <= rank_of(base_sem)


def test_deterministic(providers, lexicon):
    query = Query(set_id="t02:001")
    first = recommend(providers, query, k=5)
    second = recommend(providers, query, k=5)
    assert [(r.set_id, r.score) for r in first] == [
        (r.set_id, r.score) for r in second]
