import json
import os

import click
import pytest
from click.testing import CliRunner

from lyricsim import util
from lyricsim.cli import cli, main
from lyricsim.config import DEFAULTS
from lyricsim.errors import ConvergenceFailure
from lyricsim.study import MetricVector
from lyricsim.study.triples import Triple, TripleMember


@pytest.fixture()
def in_pipeline(pipeline_dir, monkeypatch):
    monkeypatch.chdir(pipeline_dir)
    return pipeline_dir


class TestMetricsPair:
    def test_matches_direct_operations(self, in_pipeline, tmp_path):
        out = tmp_path / "pair.json"
        code = main(["metrics", "pair", "--a", "t00:000", "--b", "t01:002",
                     "--seed", "5", "--out", str(out)])
        assert code == 0
        payload = util.read_json(str(out))

        from lyricsim.corpus import load_store
        from lyricsim.embeddings import load_vectors_file, mood_store_from_corpus
        from lyricsim.phonetics import load_feature_table, load_pca
        from lyricsim.study import MetricProviders, pair_metrics
        from lyricsim.topics import load_topic_model

        store = load_store("store")
        mood = mood_store_from_corpus(store)
        mood.vectors.update(
            load_vectors_file("vectors/mood.jsonl", "mood").vectors)
        providers = MetricProviders(
            corpus=store,
            topic_model=load_topic_model("models/topics.json"),
            pca_model=load_pca("models/pca.json"),
            feature_table=load_feature_table(),
            semantic=load_vectors_file("vectors/semantic.jsonl", "semantic"),
            audio=load_vectors_file("vectors/audio.jsonl", "audio"),
            mood=mood, seed=5,
            burn_in=DEFAULTS["infer_burn_in"],
            samples=DEFAULTS["infer_samples"])
        direct = pair_metrics(providers, "t00:000", "t01:002")
        for name, value in direct.as_dict().items():
            assert payload[name] == value

    def test_same_track_rejected(self, in_pipeline):
        assert main(["metrics", "pair", "--a", "t00:000",
                     "--b", "t00:001"]) == 2

    def test_unknown_set_rejected(self, in_pipeline):
        assert main(["metrics", "pair", "--a", "t00:000",
                     "--b", "nope"]) == 2


class TestPairsSample:
    def test_same_seed_identical_files(self, in_pipeline, tmp_path):
        out1 = tmp_path / "s1.jsonl"
        out2 = tmp_path / "s2.jsonl"
        for out in (out1, out2):
            assert main(["pairs", "sample", "--n", "5", "--seed", "7",
                         "--out", str(out),
                         "--manifest", str(tmp_path / "m.json")]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_not_enough_pairs_is_data_error(self, in_pipeline, tmp_path):
        assert main(["pairs", "sample", "--n", "99999999",
                     "--out", str(tmp_path / "s.jsonl"),
                     "--manifest", str(tmp_path / "m.json")]) == 2


class TestCorrelateRankings:
    @staticmethod
    def write_fixture(tmp_path):
        metrics = {
            "H": MetricVector(semantic_sim=0.9, topic_sim=0.5, mood_diff=1.0,
                              audio_sim=0.5, phonetic_sim=0.5,
                              musical_diff=1.0),
            "M": MetricVector(semantic_sim=0.5, topic_sim=0.5, mood_diff=1.0,
                              audio_sim=0.5, phonetic_sim=0.5,
                              musical_diff=1.0),
            "L": MetricVector(semantic_sim=0.1, topic_sim=0.5, mood_diff=1.0,
                              audio_sim=0.5, phonetic_sim=0.5,
                              musical_diff=1.0),
        }
        triple = Triple(
            reference_id="ref1", target="semantic_sim", threshold=0.9,
            members={lab: TripleMember(set_id=f"cand_{lab}", metrics=mv)
                     for lab, mv in metrics.items()},
            pairwise_closeness={}, min_closeness=1.0)
        triples_path = tmp_path / "triples.jsonl"
        util.write_jsonl(str(triples_path),
                         [{"question_id": "semantic_sim:ref1",
                           **triple.as_dict()}])
        ranks_path = tmp_path / "ranks.csv"
        rows = ["question_id,rater_id,group_label,rank"]
        for rater in ("r1", "r2"):
            rows += [f"semantic_sim:ref1,{rater},H,1",
                     f"semantic_sim:ref1,{rater},M,2",
                     f"semantic_sim:ref1,{rater},L,3"]
        ranks_path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        return ranks_path, triples_path

    def test_perfect_order_gives_minus_one(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        ranks_path, triples_path = self.write_fixture(tmp_path)
        out = tmp_path / "rankcorr.json"
        code = main(["correlate", "rankings", "--ranks", str(ranks_path),
                     "--triples", str(triples_path), "--out", str(out)])
        assert code == 0
        payload = util.read_json(str(out))
        assert payload["semantic_sim"]["r"] == pytest.approx(-1.0, abs=1e-12)
        assert payload["semantic_sim"]["n"] == 6
        assert payload["topic_sim"] is None

    def test_malformed_ranks_rejected(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        _, triples_path = self.write_fixture(tmp_path)
        bad = tmp_path / "bad.csv"
        bad.write_text("question_id,rater_id,group_label,rank\nq,r,H,9\n",
                       encoding="utf-8")
        assert main(["correlate", "rankings", "--ranks", str(bad),
                     "--triples", str(triples_path),
                     "--out", str(tmp_path / "o.json")]) == 2


class TestTriplesSelect:
    def test_writes_verifiable_certificates(self, in_pipeline, tmp_path):
        out = tmp_path / "triples.jsonl"
        code = main(["triples", "select", "--target", "semantic_sim",
                     "--reference", "t00:000", "--reference", "t01:000",
                     "--threshold", "0.2", "--out", str(out),
                     "--manifest", str(tmp_path / "m.json")])
        assert code == 0
        from lyricsim.study import specs_from_dict, verify_triple
        specs = specs_from_dict(util.read_json("pairs/specs.json"))
        rows = list(util.read_jsonl(str(out)))
        for row in rows:
            triple = Triple.from_dict(row)
            assert verify_triple(triple, specs)
            assert triple.min_closeness >= 0.2


class TestConfigPrecedence:
    def test_config_overrides_default_flags_override_config(
            self, in_pipeline, tmp_path):
        config = tmp_path / "project.cfg"
        config.write_text("seed = 123\n", encoding="utf-8")
        manifest = str(tmp_path / "m.json")

        def sample(args, out):
            assert main(["--config", str(config), "pairs", "sample",
                         "--n", "6", "--out", str(out),
                         "--manifest", manifest] + args) == 0
            return out.read_bytes()

        from_config = sample([], tmp_path / "a.jsonl")
        explicit_123 = sample(["--seed", "123"], tmp_path / "b.jsonl")
        explicit_9 = sample(["--seed", "9"], tmp_path / "c.jsonl")
        assert from_config == explicit_123
        assert from_config != explicit_9

    def test_unknown_config_key_rejected(self, in_pipeline, tmp_path):
        config = tmp_path / "bad.cfg"
        config.write_text("nope = 1\n", encoding="utf-8")
        assert main(["--config", str(config), "pairs", "sample", "--n", "1",
                     "--out", str(tmp_path / "s.jsonl"),
                     "--manifest", str(tmp_path / "m.json")]) == 2


class TestExitCodes:
    def test_usage_error_is_one(self):
        assert main(["no-such-command"]) == 1

    def test_missing_required_flag_is_one(self):
        assert main(["ingest"]) == 1

    def test_contract_violation_is_two(self, in_pipeline, tmp_path):
        assert main(["vectors-load", "--in", "vectors/mood.jsonl",
                     "--kind", "semantic"]) == 2

    def test_numeric_failure_is_three(self):
        @click.command("numeric-boom")
        def boom():
            raise ConvergenceFailure("synthetic")

        cli.add_command(boom)
        try:
            assert main(["numeric-boom"]) == 3
        finally:
            del cli.commands["numeric-boom"]

    def test_help_is_zero(self):
        assert main(["--help"]) == 0
        assert main(["pairs", "--help"]) == 0


# flag name -> configuration key, for the help-text defaults assertion
PARAM_CONFIG_KEYS = {
    "seed": "seed",
    "jobs": "jobs",
    "k": "lda_k",
    "alpha": "lda_alpha",
    "beta": "lda_beta",
    "iterations": "lda_iterations",
    "min_df": "lda_min_df",
    "burn_in": "infer_burn_in",
    "samples": "infer_samples",
    "dims": "pca_dims",
    "threshold": "closeness_threshold",
    "group_cap": "group_cap",
    "top_k": "top_k",
}


def walk_commands(group, path=()):
    for name, command in group.commands.items():
        if isinstance(command, click.Group):
            yield from walk_commands(command, path + (name,))
        else:
            yield path + (name,), command


class TestHelpDefaults:
    def test_every_mapped_flag_shows_config_default(self):
        runner = CliRunner()
        checked = 0
        for path, command in walk_commands(cli):
            result = runner.invoke(cli, list(path) + ["--help"])
            assert result.exit_code == 0
            for param in command.params:
                key = PARAM_CONFIG_KEYS.get(param.name)
                if key is None:
                    continue
                expected = DEFAULTS[key]
                assert param.default == expected, (path, param.name)
                assert f"default: {expected}" in result.output, (
                    path, param.name)
                checked += 1
        assert checked >= 15  # the mapping is actually exercised

    def test_every_subcommand_has_help(self):
        runner = CliRunner()
        for path, _ in walk_commands(cli):
            result = runner.invoke(cli, list(path) + ["--help"])
            assert result.exit_code == 0
            assert "--help" in result.output


class TestPipelineArtifacts:
    def test_expected_files_exist(self, pipeline_dir):
        for rel in ("store/manifest.json", "models/topics.json",
                    "models/pca.json", "pairs/sample.jsonl",
                    "pairs/evaluated.jsonl", "pairs/specs.json",
                    "pairs/groups.json", "reports/matrix.json",
                    "reports/recommendations.json", "reports/report.json",
                    "manifest.json"):
            assert (pipeline_dir / rel).is_file(), rel

    def test_report_structure(self, pipeline_dir):
        report = util.read_json(str(pipeline_dir / "reports" / "report.json"))
        assert report["format_version"] == 1
        assert set(report["group_boundaries"]) == {
            "topic_sim", "semantic_sim", "mood_diff", "audio_sim",
            "phonetic_sim", "musical_diff"}
        assert report["correlation_matrix"]["names"]
        assert report["recommendations"]["results"]

    def test_manifest_tracks_provenance(self, pipeline_dir):
        manifest = util.read_json(str(pipeline_dir / "manifest.json"))
        assert "pair_sample" in manifest["artifacts"]
        entry = manifest["artifacts"]["pair_sample"]
        assert entry["params"]["seed"] == 5
        assert entry["sha256"]

    def test_downstream_reuse_reproduces_reports(self, pipeline_dir,
                                                 monkeypatch, tmp_path):
        # feeding the evaluated pairs back through correlate reproduces the
        # stored matrix byte for byte
        monkeypatch.chdir(pipeline_dir)
        out = tmp_path / "matrix2.json"
        assert main(["correlate", "matrix", "--out", str(out),
                     "--manifest", str(tmp_path / "m.json")]) == 0
        original = (pipeline_dir / "reports" / "matrix.json").read_bytes()
        assert out.read_bytes() == original
