"""Experiment harness: ablation, scoring study, random-sequence study,
stability probe, memory curve, worked examples.

Every run is deterministic for fixed seeds and serializes to text, JSON or
CSV through :class:`ExperimentReport`.
"""

from __future__ import annotations

import enum
import io
import csv as csv_mod
import json
import random
from dataclasses import dataclass, field, replace

from .board import (
    BoardConfig,
    Position,
    PositionSequence,
    format_position,
    render_board,
)
from .corpus import generate_pattern
from .featurebank import GeneralSequenceConfig, PoolConfig
from .transform import STANDARD_CHAINS
from .valuation import build_model, rank_continuations


class FeatureSetChoice(enum.Enum):
    CONV_ONLY = "conv"
    CONV_DIFF = "diff"
    CONV_QUOT = "quot"
    FULL = "full"


# Chain restriction per feature set.  The empty chain (projection straight
# after convolution) is permitted only in the CONV_ONLY experiment mode.
FEATURE_SET_CHAINS = {
    FeatureSetChoice.CONV_ONLY: ("",),
    FeatureSetChoice.CONV_DIFF: ("D", "DD"),
    FeatureSetChoice.CONV_QUOT: ("QD", "DQD", "QQD"),
    FeatureSetChoice.FULL: STANDARD_CHAINS,
}


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    rows: list[dict]
    summary: dict
    notes: tuple[str, ...] = ()

    def to_json(self) -> str:
        obj = {
            "experiment": self.experiment,
            "config": self.config,
            "rows": self.rows,
            "summary": self.summary,
            "notes": list(self.notes),
        }
        return json.dumps(obj, sort_keys=True, indent=2)

    def to_csv(self) -> str:
        out = io.StringIO()
        if self.rows:
            writer = csv_mod.DictWriter(out, fieldnames=list(self.rows[0].keys()))
            writer.writeheader()
            writer.writerows(self.rows)
        return out.getvalue()

    def to_text(self) -> str:
        lines = [f"experiment: {self.experiment}"]
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"config: {json.dumps(self.config, sort_keys=True)}")
        if self.rows:
            keys = list(self.rows[0].keys())
            lines.append("  ".join(keys))
            for row in self.rows:
                lines.append("  ".join(_fmt(row.get(k)) for k in keys))
        lines.append(f"summary: {json.dumps(self.summary, sort_keys=True)}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def _config_echo(pool: PoolConfig, general: GeneralSequenceConfig) -> dict:
    return {
        "board_size": general.board.size,
        "pool_size": pool.pool_size,
        "pool_seed": pool.seed,
        "max_conv_len": pool.max_conv_len,
        "bins_k": pool.bins_k,
        "epsilon": pool.epsilon,
        "scoring": pool.scoring.value,
        "general_seed": general.seed,
        "general_length": general.length,
    }


def _random_sequence(rng: random.Random, length: int, board: BoardConfig) -> PositionSequence:
    n = board.size
    return PositionSequence(
        tuple(Position(rng.randrange(n), rng.randrange(n)) for _ in range(length)), board
    )


def run_ablation(
    corpus,
    sets,
    seeds,
    pool: PoolConfig | None = None,
    general: GeneralSequenceConfig | None = None,
) -> ExperimentReport:
    """Rank designated continuations under restricted feature sets.

    ``corpus`` is a list of (name, base sequence, continuation positions);
    the model is rebuilt after each adopted continuation, mirroring the
    step-by-step tables of the worked examples.
    """
    if not corpus:
        raise ValueError("ablation corpus is empty")
    pool = pool or PoolConfig()
    general = general or GeneralSequenceConfig()
    rows = []
    sums: dict = {}
    for fs in sets:
        chains = FEATURE_SET_CHAINS[fs]
        for seed in seeds:
            pool_seed = replace(pool, seed=seed)
            for name, base, conts in corpus:
                seq = base
                for step, cont in enumerate(conts):
                    model = build_model(seq, pool_seed, general, chains=chains)
                    ranking = rank_continuations(model, seq)
                    rank = next(r.rank for r in ranking if r.position == cont)
                    rows.append(
                        {
                            "set": fs.value,
                            "seed": seed,
                            "sequence": name,
                            "step": step,
                            "continuation": format_position(cont),
                            "rank": rank,
                        }
                    )
                    sums.setdefault((fs.value, seed), []).append(rank)
                    seq = seq.append(cont)
    mean_by_set_seed = {
        f"{fs}:{seed}": sum(v) / len(v) for (fs, seed), v in sorted(sums.items())
    }
    mean_by_set: dict = {}
    for (fs, _seed), v in sums.items():
        mean_by_set.setdefault(fs, []).extend(v)
    mean_by_set = {fs: sum(v) / len(v) for fs, v in sorted(mean_by_set.items())}
    return ExperimentReport(
        "ablation",
        {**_config_echo(pool, general), "seeds": list(seeds), "sets": [fs.value for fs in sets]},
        rows,
        {"mean_rank": mean_by_set, "mean_rank_by_seed": mean_by_set_seed},
    )


def run_random_study(
    trials: int,
    length: int,
    top: int,
    seed: int,
    pool: PoolConfig | None = None,
    general: GeneralSequenceConfig | None = None,
) -> ExperimentReport:
    """Best-continuation values of random sequences; reports the top scorers."""
    if not trials >= top >= 1:
        raise ValueError(f"need trials >= top >= 1, got trials={trials}, top={top}")
    pool = pool or PoolConfig()
    general = general or GeneralSequenceConfig()
    rng = random.Random(seed)
    rows = []
    for trial in range(trials):
        seq = _random_sequence(rng, length, general.board)
        model = build_model(seq, pool, general)
        best = rank_continuations(model, seq)[0]
        rows.append(
            {
                "trial": trial,
                "sequence": seq.notation(),
                "best_field": format_position(best.position),
                "best_value": best.value,
            }
        )
    values = [r["best_value"] for r in rows]
    top_rows = sorted(rows, key=lambda r: (-r["best_value"], r["trial"]))[:top]
    board = general.board
    diagrams = {
        r["trial"]: render_board(
            PositionSequence(
                tuple(
                    p
                    for p in _parse_back(r["sequence"], board)
                ),
                board,
            )
        )
        for r in top_rows
    }
    return ExperimentReport(
        "random-study",
        {
            **_config_echo(pool, general),
            "trials": trials,
            "length": length,
            "top": top,
            "sequence_seed": seed,
        },
        rows,
        {
            "mean_best_value": sum(values) / len(values),
            "min_best_value": min(values),
            "max_best_value": max(values),
            "top": [
                {
                    "trial": r["trial"],
                    "sequence": r["sequence"],
                    "best_field": r["best_field"],
                    "best_value": r["best_value"],
                    "diagram": diagrams[r["trial"]],
                }
                for r in top_rows
            ],
        },
    )


def _parse_back(notation: str, board: BoardConfig):
    from .board import parse_sequence

    return parse_sequence(notation, board)


def run_stability_probe(
    sequence: PositionSequence,
    pools: int,
    seed: int,
    pool: PoolConfig | None = None,
    general: GeneralSequenceConfig | None = None,
) -> ExperimentReport:
    """Agreement of the top-ranked continuation across freshly sampled pools."""
    if pools < 2:
        raise ValueError(f"need pools >= 2, got {pools}")
    pool = pool or PoolConfig()
    general = general or GeneralSequenceConfig()
    rows = []
    counts: dict = {}
    for i in range(pools):
        cfg = replace(pool, seed=seed + i)
        model = build_model(sequence, cfg, general)
        best = rank_continuations(model, sequence)[0]
        f = format_position(best.position)
        rows.append({"pool_seed": seed + i, "best_field": f, "best_value": best.value})
        counts[f] = counts.get(f, 0) + 1
    modal_field, modal_count = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
    return ExperimentReport(
        "stability",
        {
            **_config_echo(pool, general),
            "sequence": sequence.notation(),
            "pools": pools,
            "pool_seed_base": seed,
        },
        rows,
        {"agreement": modal_count / pools, "modal_field": modal_field},
        notes=(
            "Stability probe is a declared interpretation: regularity is read "
            "off the agreement of top-ranked continuations across "
            "independently sampled operator pools.",
        ),
    )


def run_memory_curve(
    pattern: str,
    lengths,
    prefix: int,
    seeds,
    pool: PoolConfig | None = None,
    general: GeneralSequenceConfig | None = None,
) -> ExperimentReport:
    """Reconstruction deviations of a generated regular sequence vs length."""
    from .valuation import reconstruct

    if not lengths:
        raise ValueError("lengths must be nonempty")
    pool = pool or PoolConfig()
    general = general or GeneralSequenceConfig()
    rows = []
    for length in lengths:
        seq = generate_pattern(pattern, length, general.board)
        for seed in seeds:
            cfg = replace(pool, seed=seed)
            model = build_model(seq, cfg, general)
            if prefix >= length:
                deviations = 0
            else:
                _, deviations = reconstruct(model, prefix)
            rows.append({"pattern": pattern, "length": length, "seed": seed, "deviations": deviations})
    by_length: dict = {}
    for r in rows:
        by_length.setdefault(r["length"], []).append(r["deviations"])
    return ExperimentReport(
        "memory",
        {
            **_config_echo(pool, general),
            "pattern": pattern,
            "lengths": list(lengths),
            "prefix": prefix,
            "seeds": list(seeds),
        },
        rows,
        {"mean_deviations": {str(k): sum(v) / len(v) for k, v in sorted(by_length.items())}},
    )


def run_example(
    sequence: PositionSequence,
    horizon: int,
    top: int,
    pool: PoolConfig | None = None,
    general: GeneralSequenceConfig | None = None,
) -> ExperimentReport:
    """Step-by-step example: top continuations per step, rank 1 adopted.

    The model is rebuilt on the grown sequence before each step, so each
    column of values reflects everything adopted so far.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    pool = pool or PoolConfig()
    general = general or GeneralSequenceConfig()
    rows = []
    seq = sequence
    for step in range(horizon):
        model = build_model(seq, pool, general)
        ranking = rank_continuations(model, seq)
        for rc in ranking[:top]:
            rows.append(
                {
                    "step": step,
                    "rank": rc.rank,
                    "field": format_position(rc.position),
                    "value": rc.value,
                }
            )
        seq = seq.append(ranking[0].position)
    return ExperimentReport(
        "example",
        {
            **_config_echo(pool, general),
            "sequence": sequence.notation(),
            "horizon": horizon,
            "top": top,
        },
        rows,
        {"final_sequence": seq.notation(), "diagram": render_board(seq)},
    )
