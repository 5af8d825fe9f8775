import json

import pytest

from seqval.board import BoardConfig, parse_sequence
from seqval.corpus import (
    PATTERN_GENERATORS,
    REGULAR_CORPUS,
    corpus_sequences,
    generate_pattern,
)
from seqval.experiments import (
    FEATURE_SET_CHAINS,
    ExperimentReport,
    FeatureSetChoice,
    run_ablation,
    run_example,
    run_memory_curve,
    run_random_study,
    run_stability_probe,
)
from seqval.featurebank import GeneralSequenceConfig, PoolConfig

BOARD = BoardConfig()
FAST_POOL = PoolConfig(pool_size=40, seed=0)
FAST_GENERAL = GeneralSequenceConfig(length=400, seed=0)
DIAG = parse_sequence("A1 B2 C3 D4 E5 F6", BOARD)


def test_corpus_well_formed():
    assert len(REGULAR_CORPUS) >= 10
    for name, base, conts in corpus_sequences(BOARD):
        assert len(base) >= 2
        assert len(conts) >= 1


def test_pattern_generators():
    for name in PATTERN_GENERATORS:
        seq = generate_pattern(name, 30, BOARD)
        assert len(seq) == 30
        n = BOARD.size
        assert all(0 <= p.col < n and 0 <= p.row < n for p in seq)


def test_generate_pattern_unknown_name():
    with pytest.raises(ValueError):
        generate_pattern("nope", 10, BOARD)


def test_report_formats_roundtrip():
    report = ExperimentReport(
        "demo", {"a": 1}, [{"x": 1, "y": 2.5}], {"m": 3.0}, notes=("n1",)
    )
    parsed = json.loads(report.to_json())
    assert parsed["experiment"] == "demo"
    assert parsed["rows"] == [{"x": 1, "y": 2.5}]
    assert parsed["notes"] == ["n1"]
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == "x,y"
    text = report.to_text()
    assert text.startswith("experiment: demo")
    assert "note: n1" in text
    assert report.render("json") == report.to_json()
    assert report.render("csv") == report.to_csv()
    assert report.render("text") == report.to_text()


def _small_corpus():
    full = corpus_sequences(BOARD)
    return [entry for entry in full if entry[0] in ("diag-up", "row")]


def test_ablation_smoke_and_determinism():
    corpus = _small_corpus()
    sets = [FeatureSetChoice.CONV_DIFF, FeatureSetChoice.FULL]
    a = run_ablation(corpus, sets, [0], FAST_POOL, FAST_GENERAL)
    b = run_ablation(corpus, sets, [0], FAST_POOL, FAST_GENERAL)
    assert a.to_json() == b.to_json()
    assert set(a.summary["mean_rank"]) == {"diff", "full"}
    steps = sum(len(conts) for _, _, conts in corpus)
    assert len(a.rows) == len(sets) * steps
    assert all(r["rank"] >= 1 for r in a.rows)


def test_ablation_rejects_empty_corpus():
    with pytest.raises(ValueError):
        run_ablation([], [FeatureSetChoice.FULL], [0], FAST_POOL, FAST_GENERAL)


def test_feature_set_chains_cover_modes():
    assert FEATURE_SET_CHAINS[FeatureSetChoice.CONV_ONLY] == ("",)
    assert set(FEATURE_SET_CHAINS[FeatureSetChoice.FULL]) == {
        "D",
        "DD",
        "QD",
        "DQD",
        "QQD",
    }


def test_random_study_smoke():
    report = run_random_study(5, 6, 2, seed=0, pool=FAST_POOL, general=FAST_GENERAL)
    assert len(report.rows) == 5
    assert len(report.summary["top"]) == 2
    tops = [t["best_value"] for t in report.summary["top"]]
    assert tops == sorted(tops, reverse=True)
    assert report.summary["min_best_value"] <= report.summary["mean_best_value"]
    assert report.summary["mean_best_value"] <= report.summary["max_best_value"]
    assert "diagram" in report.summary["top"][0]


def test_random_study_validates_args():
    with pytest.raises(ValueError):
        run_random_study(2, 6, 5, seed=0, pool=FAST_POOL, general=FAST_GENERAL)


def test_stability_probe_smoke():
    report = run_stability_probe(DIAG, 4, 0, FAST_POOL, FAST_GENERAL)
    assert len(report.rows) == 4
    assert 0 < report.summary["agreement"] <= 1
    assert report.summary["modal_field"] in {r["best_field"] for r in report.rows}
    assert report.notes


def test_stability_probe_needs_two_pools():
    with pytest.raises(ValueError):
        run_stability_probe(DIAG, 1, 0, FAST_POOL, FAST_GENERAL)


def test_memory_curve_smoke():
    report = run_memory_curve("ring", [20], 5, [0], FAST_POOL, FAST_GENERAL)
    assert report.rows == [
        {"pattern": "ring", "length": 20, "seed": 0, "deviations": report.rows[0]["deviations"]}
    ]
    assert "20" in report.summary["mean_deviations"]


def test_memory_curve_validates_lengths():
    with pytest.raises(ValueError):
        run_memory_curve("ring", [], 5, [0], FAST_POOL, FAST_GENERAL)


def test_example_smoke():
    report = run_example(DIAG, 2, 3, FAST_POOL, FAST_GENERAL)
    assert len(report.rows) == 2 * 3
    assert report.rows[0]["rank"] == 1
    final = report.summary["final_sequence"].split()
    assert len(final) == len(DIAG) + 2
    assert "diagram" in report.summary


def test_example_validates_horizon():
    with pytest.raises(ValueError):
        run_example(DIAG, 0, 2, FAST_POOL, FAST_GENERAL)
