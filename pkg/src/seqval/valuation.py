"""Valuation models: build from a special sequence, rank continuations, measure
similarity, continue iteratively, reconstruct from a prefix.

A model holds one feature table per pooled operator.  The prolongation value
of a candidate is the mean interval score over all applicable operators,
each applied to the shortest tail window that contains the new last point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .board import (
    BoardConfig,
    Position,
    PositionSequence,
    all_fields,
    format_position,
    parse_position,
    parse_sequence,
)
from .featurebank import (
    Bins,
    FeatureTable,
    GeneralSequenceConfig,
    PoolConfig,
    ScoringMode,
    build_bins,
    estimate_probs,
    generate_general_sequence,
    sample_operator_pool,
    score,
)
from .transform import STANDARD_CHAINS, OperatorSpec, apply_operator


@dataclass(frozen=True)
class ValuationModel:
    """Immutable valuation state: special sequence, feature tables, configs."""

    special: PositionSequence
    tables: tuple[FeatureTable, ...]
    pool: PoolConfig
    general: GeneralSequenceConfig
    chains: tuple[str, ...] = STANDARD_CHAINS


@dataclass(frozen=True)
class RankedContinuation:
    position: Position
    value: float
    rank: int


# The general side (transformed values, bins, baseline probabilities) depends
# only on (general config, operator, k); cache it across model builds.
_GENERAL_CACHE: dict = {}
_GENERAL_SEQ_CACHE: dict = {}


def _general_complexes(cfg: GeneralSequenceConfig) -> np.ndarray:
    key = (cfg.length, cfg.seed, cfg.board.size)
    if key not in _GENERAL_SEQ_CACHE:
        _GENERAL_SEQ_CACHE[key] = generate_general_sequence(cfg).complexes()
    return _GENERAL_SEQ_CACHE[key]


def _general_side(cfg: GeneralSequenceConfig, op: OperatorSpec, k: int):
    key = (cfg.length, cfg.seed, cfg.board.size, op, k)
    if key not in _GENERAL_CACHE:
        gvals = apply_operator(op, _general_complexes(cfg))
        bins = build_bins(gvals, k)
        p_g = tuple(estimate_probs(gvals, bins))
        _GENERAL_CACHE[key] = (bins, p_g)
    return _GENERAL_CACHE[key]


def build_model(
    special: PositionSequence,
    pool_cfg: PoolConfig | None = None,
    general_cfg: GeneralSequenceConfig | None = None,
    chains: tuple[str, ...] = STANDARD_CHAINS,
) -> ValuationModel:
    """Build the valuation model for a special sequence.

    Bins and baseline probabilities come from the general sequence; special
    probabilities use all full-length windows of the special sequence.
    Operators too long for the special sequence are retained with a zero
    special vector and skipped during valuation.
    """
    pool_cfg = pool_cfg or PoolConfig()
    general_cfg = general_cfg or GeneralSequenceConfig(board=special.board)
    if len(special) < 2:
        raise ValueError("special sequence too short: need at least 2 positions")
    if special.board.size != general_cfg.board.size:
        raise ValueError("special and general sequences must share a board size")
    if general_cfg.length < 10 * pool_cfg.bins_k:
        raise ValueError(
            f"general sequence length {general_cfg.length} too short for "
            f"k={pool_cfg.bins_k} bins (need >= {10 * pool_cfg.bins_k})"
        )
    s_arr = special.complexes()
    tables = []
    for op in sample_operator_pool(pool_cfg, chains):
        bins, p_g = _general_side(general_cfg, op, pool_cfg.bins_k)
        s_vals = apply_operator(op, s_arr)
        p_s = tuple(estimate_probs(s_vals, bins))
        tables.append(FeatureTable(op, bins, p_g, p_s))
    return ValuationModel(special, tuple(tables), pool_cfg, general_cfg, tuple(chains))


def _applicable(model: ValuationModel, length: int):
    return [
        t
        for t in model.tables
        if t.has_special and t.op.min_length <= length
    ]


def value_prolongation(model: ValuationModel, prolonged: PositionSequence) -> float:
    """Mean interval score over applicable operators on the tail window.

    Each operator reads exactly its shortest usable window ending at the new
    last point, yielding one real value and one interval score.
    """
    arr = prolonged.complexes()
    tables = _applicable(model, len(arr))
    if not tables:
        raise ValueError("sequence too short: no operator applies")
    eps = model.pool.epsilon
    mode = model.pool.scoring
    total = 0.0
    for t in tables:
        v = apply_operator(t.op, arr[len(arr) - t.op.min_length :])[0]
        b = int(t.bins.index(v))
        total += score(t.p_s[b], t.p_g[b], eps, mode)
    return total / len(tables)


def rank_continuations(model: ValuationModel, base: PositionSequence) -> list[RankedContinuation]:
    """Value every field as a continuation of ``base`` and rank descending.

    Already-visited fields stay candidates; ties break by (col, row) ascending.
    """
    board = base.board
    n = board.size
    fields = all_fields(board)
    cand = np.array([complex(p.col, p.row) for p in fields])
    base_arr = base.complexes()
    tables = _applicable(model, len(base_arr) + 1)
    if not tables:
        raise ValueError("sequence too short: no operator applies")
    eps = model.pool.epsilon
    mode = model.pool.scoring
    totals = np.zeros(n * n)
    for t in tables:
        m_len = t.op.min_length
        windows = np.empty((n * n, m_len), dtype=np.complex128)
        if m_len > 1:
            windows[:, :-1] = base_arr[len(base_arr) - (m_len - 1) :]
        windows[:, -1] = cand
        vals = apply_operator(t.op, windows)[:, 0]
        idx = t.bins.index(vals)
        p_s = np.asarray(t.p_s)[idx]
        p_g = np.asarray(t.p_g)[idx]
        if mode is ScoringMode.INDICATOR:
            totals += (p_s > 0).astype(np.float64)
        else:
            totals += np.log(np.maximum(p_s, eps) / np.maximum(p_g, eps))
    values = totals / len(tables)
    order = sorted(range(n * n), key=lambda i: (-values[i], i))
    return [
        RankedContinuation(fields[i], float(values[i]), rank + 1)
        for rank, i in enumerate(order)
    ]


def value_similarity(model: ValuationModel, d: PositionSequence) -> float:
    """Mean interval score over all operators and all windows of ``d``."""
    arr = d.complexes()
    eps = model.pool.epsilon
    mode = model.pool.scoring
    total = 0.0
    count = 0
    for t in model.tables:
        if not t.has_special or t.op.min_length > len(arr):
            continue
        vals = apply_operator(t.op, arr)
        idx = t.bins.index(vals)
        p_s = np.asarray(t.p_s)[idx]
        p_g = np.asarray(t.p_g)[idx]
        if mode is ScoringMode.INDICATOR:
            total += float(np.sum(p_s > 0))
        else:
            total += float(np.sum(np.log(np.maximum(p_s, eps) / np.maximum(p_g, eps))))
        count += len(vals)
    if count == 0:
        raise ValueError("sequence too short: no operator window applies")
    return total / count


def continue_iteratively(
    model: ValuationModel, seed_seq: PositionSequence, steps: int
) -> PositionSequence:
    """Append the top-ranked continuation ``steps`` times under a frozen model."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    current = seed_seq
    for _ in range(steps):
        best = rank_continuations(model, current)[0]
        current = current.append(best.position)
    return current


def reconstruct(model: ValuationModel, prefix_len: int) -> tuple[PositionSequence, int]:
    """Predict the special sequence past a prefix; count mismatched positions.

    At each index the top-ranked continuation of the true prefix so far is
    recorded; a deviation is a prediction that differs from the special
    sequence there.  Prediction always restarts from the true prefix, so one
    deviation does not cascade into the rest of the count.
    """
    special = model.special
    if not 1 <= prefix_len <= len(special):
        raise ValueError(f"prefix_len must be in 1..{len(special)}, got {prefix_len}")
    out = list(special.positions[:prefix_len])
    deviations = 0
    for i in range(prefix_len, len(special)):
        pred = rank_continuations(model, special[:i])[0].position
        out.append(pred)
        if pred != special.positions[i]:
            deviations += 1
    return PositionSequence(tuple(out), special.board), deviations


def model_to_json(model: ValuationModel) -> str:
    """Deterministic JSON dump; floats round-trip bit-exactly."""
    obj = {
        "board_size": model.special.board.size,
        "special": [format_position(p) for p in model.special],
        "chains": list(model.chains),
        "general": {
            "length": model.general.length,
            "seed": model.general.seed,
        },
        "pool": {
            "pool_size": model.pool.pool_size,
            "seed": model.pool.seed,
            "max_conv_len": model.pool.max_conv_len,
            "bins_k": model.pool.bins_k,
            "epsilon": model.pool.epsilon,
            "scoring": model.pool.scoring.value,
        },
        "tables": [
            {
                "op": t.op.spec_string(),
                "boundaries": list(t.bins.boundaries),
                "p_g": list(t.p_g),
                "p_s": list(t.p_s),
            }
            for t in model.tables
        ],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def model_from_json(text: str) -> ValuationModel:
    """Inverse of :func:`model_to_json`."""
    obj = json.loads(text)
    board = BoardConfig(obj["board_size"])
    special = parse_sequence(obj["special"], board)
    general = GeneralSequenceConfig(
        length=obj["general"]["length"], seed=obj["general"]["seed"], board=board
    )
    pool = PoolConfig(
        pool_size=obj["pool"]["pool_size"],
        seed=obj["pool"]["seed"],
        max_conv_len=obj["pool"]["max_conv_len"],
        bins_k=obj["pool"]["bins_k"],
        epsilon=obj["pool"]["epsilon"],
        scoring=ScoringMode(obj["pool"]["scoring"]),
    )
    tables = tuple(
        FeatureTable(
            OperatorSpec.parse(rec["op"]),
            Bins(tuple(rec["boundaries"])),
            tuple(rec["p_g"]),
            tuple(rec["p_s"]),
        )
        for rec in obj["tables"]
    )
    return ValuationModel(special, tables, pool, general, tuple(obj["chains"]))
