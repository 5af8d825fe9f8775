"""Statistical apparatus: general sequence, operator pool, quantile bins, scoring.

The general sequence is a long seeded uniform-random position sequence.  Per
operator, its transformed values define a k-way quantile partition of the real
axis; valuations compare how a special sequence's values and the general
sequence's values distribute over those intervals.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass

import numpy as np

from .board import BoardConfig, Position, PositionSequence
from .transform import PROJECTIONS, STANDARD_CHAINS, OperatorSpec


class ScoringMode(enum.Enum):
    LOG_RATIO = "log"
    INDICATOR = "indicator"


@dataclass(frozen=True)
class GeneralSequenceConfig:
    """Seeded uniform-random reference sequence."""

    length: int = 1000
    seed: int = 0
    board: BoardConfig = BoardConfig()

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"general sequence length must be >= 1, got {self.length}")


@dataclass(frozen=True)
class PoolConfig:
    """Operator pool sampling and scoring configuration."""

    pool_size: int = 200
    seed: int = 0
    max_conv_len: int = 4
    bins_k: int = 8
    epsilon: float = 0.01
    scoring: ScoringMode = ScoringMode.LOG_RATIO

    def __post_init__(self):
        if self.pool_size < 1:
            raise ValueError(f"pool_size must be >= 1, got {self.pool_size}")
        if self.max_conv_len < 1:
            raise ValueError(f"max_conv_len must be >= 1, got {self.max_conv_len}")
        if self.bins_k < 2:
            raise ValueError(f"bins_k must be >= 2, got {self.bins_k}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")


def generate_general_sequence(cfg: GeneralSequenceConfig) -> PositionSequence:
    """Uniform i.i.d. positions, deterministic for a fixed seed."""
    rng = random.Random(cfg.seed)
    n = cfg.board.size
    positions = tuple(
        Position(rng.randrange(n), rng.randrange(n)) for _ in range(cfg.length)
    )
    return PositionSequence(positions, cfg.board)


def sample_operator_pool(cfg: PoolConfig, chains=STANDARD_CHAINS) -> list[OperatorSpec]:
    """Draw ``pool_size`` operators, deterministic for a fixed seed.

    Convolution lengths follow the truncated geometric P(l) ~ 2^-l on
    1..max_conv_len (about 50% l=1, 25% l=2, ...); chain and projection are
    uniform.  Draws are independent, so repeated specs can occur; a repeat
    weights its feature accordingly in the valuation mean.
    """
    if not chains:
        raise ValueError("chains must be nonempty")
    rng = random.Random(cfg.seed)
    lengths = list(range(1, cfg.max_conv_len + 1))
    weights = [0.5**l for l in lengths]
    pool = []
    for _ in range(cfg.pool_size):
        conv_len = rng.choices(lengths, weights)[0]
        chain = rng.choice(chains)
        proj = rng.choice(PROJECTIONS)
        pool.append(OperatorSpec(conv_len, chain, proj))
    return pool


@dataclass(frozen=True)
class Bins:
    """k-way partition of the real axis by ascending boundaries.

    Interval j is [b_j, b_{j+1}) with open ends at -inf and +inf; value v
    falls into bin ``searchsorted(boundaries, v, side="right")``.
    """

    boundaries: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundaries", tuple(float(b) for b in self.boundaries))
        if any(a >= b for a, b in zip(self.boundaries, self.boundaries[1:])):
            raise ValueError("boundaries must be strictly ascending")

    @property
    def nbins(self) -> int:
        return len(self.boundaries) + 1

    def index(self, values):
        """Bin index of a value or array of values."""
        return np.searchsorted(np.asarray(self.boundaries), values, side="right")


def build_bins(values, k: int) -> Bins:
    """Quantile bins holding near-equal counts of ``values`` per interval.

    Boundaries are the order statistics at indices ceil(j*N/k); duplicates and
    boundaries at or below the minimum are dropped, so the effective bin count
    can shrink for degenerate value distributions (down to a single interval
    when all values coincide).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    vals = np.sort(np.asarray(values, dtype=np.float64))
    n = len(vals)
    if n == 0:
        raise ValueError("cannot build bins from no values")
    boundaries = []
    for j in range(1, k):
        b = float(vals[min(math.ceil(j * n / k), n - 1)])
        if b > vals[0] and (not boundaries or b > boundaries[-1]):
            boundaries.append(b)
    return Bins(tuple(boundaries))


def estimate_probs(values, bins: Bins) -> np.ndarray:
    """Empirical bin frequencies; an empty value list gives the zero vector."""
    vals = np.asarray(values, dtype=np.float64)
    if len(vals) == 0:
        return np.zeros(bins.nbins)
    counts = np.bincount(bins.index(vals), minlength=bins.nbins)
    return counts / len(vals)


def score(p_s: float, p_g: float, eps: float, mode: ScoringMode) -> float:
    """Single-interval valuation.

    Log-ratio mode floors both probabilities at eps before taking the natural
    log of their ratio; indicator mode is 1 when the special probability is
    positive, else 0.
    """
    if mode is ScoringMode.INDICATOR:
        return 1.0 if p_s > 0 else 0.0
    return math.log(max(p_s, eps) / max(p_g, eps))


@dataclass(frozen=True)
class FeatureTable:
    """Per-operator bins and bin probabilities of general and special values."""

    op: OperatorSpec
    bins: Bins
    p_g: tuple[float, ...]
    p_s: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p_g", tuple(float(p) for p in self.p_g))
        object.__setattr__(self, "p_s", tuple(float(p) for p in self.p_s))
        k = self.bins.nbins
        if len(self.p_g) != k or len(self.p_s) != k:
            raise ValueError("probability vectors must match the bin count")

    @property
    def has_special(self) -> bool:
        """False when the special sequence was too short to feed this operator."""
        return any(p > 0 for p in self.p_s)
