"""Bundled regular sequences: the ablation corpus and pattern generators.

The corpus holds 15 regular motifs (lines, zigzags, staircases, loops, a
spiral) on the default 12x12 board, each with designated continuations used
as ground truth when measuring continuation ranks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import BoardConfig, Position, PositionSequence, parse_sequence


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    base: str
    continuations: str


REGULAR_CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("diag-up", "A1 B2 C3 D4 E5 F6", "G7 H8 I9"),
    CorpusEntry("diag-down", "A12 B11 C10 D9 E8 F7", "G6 H5 I4"),
    CorpusEntry("anti-diag", "L1 K2 J3 I4 H5 G6", "F7 E8 D9"),
    CorpusEntry("row", "B3 C3 D3 E3 F3 G3", "H3 I3 J3"),
    CorpusEntry("row-left", "K10 J10 I10 H10 G10 F10", "E10 D10 C10"),
    CorpusEntry("column", "E2 E3 E4 E5 E6 E7", "E8 E9 E10"),
    CorpusEntry("zigzag", "B2 C3 D2 E3 F2 G3", "H2 I3 J2"),
    CorpusEntry("zigzag-up", "B2 C3 B4 C5 B6 C7", "B8 C9 B10"),
    CorpusEntry("tall-zigzag", "A4 B6 C4 D6 E4 F6", "G4 H6 I4"),
    CorpusEntry("stair-up", "B3 B5 D5 D7 F7 F9", "H9 H11"),
    CorpusEntry("stair-right", "A2 C2 C4 E4 E6 G6", "G8 I8"),
    CorpusEntry("square-loop", "C3 E3 E5 C5 C3 E3", "E5 C5"),
    CorpusEntry("octagon", "C2 D2 E3 E4 D5 C5", "B4 B3 C2"),
    CorpusEntry("double-repeat", "B2 B2 C3 C3 D4 D4", "E5 E5 F6"),
    CorpusEntry("spiral", "F6 G6 G7 F7 E7 E6", "E5 F5 G5 H5"),
)


def corpus_sequences(board: BoardConfig = BoardConfig()):
    """Parsed corpus: list of (name, base sequence, continuation positions)."""
    out = []
    for entry in REGULAR_CORPUS:
        base = parse_sequence(entry.base, board)
        conts = list(parse_sequence(entry.continuations, board))
        out.append((entry.name, base, conts))
    return out


def serpentine(length: int, board: BoardConfig = BoardConfig()) -> PositionSequence:
    """Boustrophedon scan from A1: row by row, direction alternating."""
    n = board.size
    if not 1 <= length <= n * n:
        raise ValueError(f"serpentine length must be in 1..{n * n}, got {length}")
    positions = []
    for t in range(length):
        row, c = divmod(t, n)
        col = c if row % 2 == 0 else n - 1 - c
        positions.append(Position(col, row))
    return PositionSequence(tuple(positions), board)


def square_loop(length: int, board: BoardConfig = BoardConfig()) -> PositionSequence:
    """Period-4 loop C3 E3 E5 C5 repeated; any length fits the board."""
    cycle = (Position(2, 2), Position(4, 2), Position(4, 4), Position(2, 4))
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    return PositionSequence(tuple(cycle[t % 4] for t in range(length)), board)


_RING_CYCLE = (
    (0, 0), (3, 0), (6, 0), (9, 0),
    (9, 3), (9, 6), (9, 9),
    (6, 9), (3, 9), (0, 9),
    (0, 6), (0, 3),
)


def ring(length: int, board: BoardConfig = BoardConfig()) -> PositionSequence:
    """Counterclockwise walk around a square ring, step 3, period 12.

    The step length keeps a stand-still candidate (difference 0) out of the
    quantile bins occupied by the walk's own steps, so the walk reconstructs
    cleanly from a short prefix.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if board.size < 10:
        raise ValueError(f"ring needs a board of size >= 10, got {board.size}")
    return PositionSequence(
        tuple(Position(*_RING_CYCLE[t % 12]) for t in range(length)), board
    )


PATTERN_GENERATORS = {
    "serpentine": serpentine,
    "square-loop": square_loop,
    "ring": ring,
}


def generate_pattern(pattern: str, length: int, board: BoardConfig = BoardConfig()) -> PositionSequence:
    if pattern not in PATTERN_GENERATORS:
        raise ValueError(
            f"unknown pattern {pattern!r}; known: {sorted(PATTERN_GENERATORS)}"
        )
    return PATTERN_GENERATORS[pattern](length, board)
