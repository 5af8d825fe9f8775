"""Board geometry, chess-style notation and text rendering of position sequences.

Fields of an n x n board are addressed like spreadsheet cells: column letters
(A, B, ... including I; AA, AB, ... beyond 26 columns) followed by a 1-based
row number.  Internally a field is a (col, row) pair of 0-based integers and
is treated as the complex number col + row*i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

_NOTATION_RE = re.compile(r"^([A-Za-z]+)(\d+)$")


class NotationError(ValueError):
    """A position or sequence failed to parse.

    Carries the offending token and, for sequences, its 0-based index.
    """

    def __init__(self, message: str, token: str | None = None, index: int | None = None):
        super().__init__(message)
        self.token = token
        self.index = index


@dataclass(frozen=True)
class BoardConfig:
    """Square board with ``size`` fields per side."""

    size: int = 12

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"board size must be >= 2, got {self.size}")


def column_label(col: int) -> str:
    """0-based column index to letters: 0 -> A, 11 -> L, 26 -> AA."""
    if col < 0:
        raise ValueError(f"negative column {col}")
    label = ""
    c = col
    while c >= 0:
        label = chr(ord("A") + c % 26) + label
        c = c // 26 - 1
    return label


def column_index(letters: str) -> int:
    """Letters to 0-based column index, inverse of :func:`column_label`."""
    value = 0
    for ch in letters.upper():
        if not "A" <= ch <= "Z":
            raise ValueError(f"bad column letter {ch!r}")
        value = value * 26 + (ord(ch) - ord("A") + 1)
    return value - 1


@dataclass(frozen=True, order=True)
class Position:
    """A single board field, 0-based column and row."""

    col: int
    row: int

    def __post_init__(self):
        if self.col < 0 or self.row < 0:
            raise ValueError(f"negative coordinate ({self.col}, {self.row})")


def to_complex(p: Position) -> complex:
    """Encode a field as a complex number: real part = column, imaginary = row."""
    return complex(p.col, p.row)


def format_position(p: Position) -> str:
    return f"{column_label(p.col)}{p.row + 1}"


def parse_position(text: str, board: BoardConfig) -> Position:
    """Parse notation like ``"C7"`` into a :class:`Position`, checking bounds."""
    m = _NOTATION_RE.match(text.strip())
    if not m:
        raise NotationError(f"malformed position {text!r}", token=text)
    col = column_index(m.group(1))
    row = int(m.group(2)) - 1
    if row < 0 or col >= board.size or row >= board.size:
        raise NotationError(
            f"position {text!r} is off a {board.size}x{board.size} board", token=text
        )
    return Position(col, row)


@dataclass(frozen=True)
class PositionSequence:
    """Immutable ordered sequence of on-board positions.

    Repeated fields are allowed; order is significant.
    """

    positions: tuple[Position, ...]
    board: BoardConfig

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        n = self.board.size
        for p in self.positions:
            if p.col >= n or p.row >= n:
                raise ValueError(f"position {format_position(p)} off {n}x{n} board")

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return PositionSequence(self.positions[item], self.board)
        return self.positions[item]

    def append(self, p: Position) -> "PositionSequence":
        """New sequence with ``p`` appended; self is unchanged."""
        return PositionSequence(self.positions + (p,), self.board)

    def complexes(self) -> np.ndarray:
        """The sequence as a 1-D complex128 array."""
        return np.array([complex(p.col, p.row) for p in self.positions], dtype=np.complex128)

    def notation(self) -> str:
        return " ".join(format_position(p) for p in self.positions)


def parse_sequence(text, board: BoardConfig) -> PositionSequence:
    """Parse whitespace-separated notation (or a list of tokens) into a sequence.

    The first bad token is reported with its 0-based index.
    """
    tokens = text.split() if isinstance(text, str) else list(text)
    positions = []
    for i, tok in enumerate(tokens):
        try:
            positions.append(parse_position(tok, board))
        except NotationError as exc:
            raise NotationError(f"token {i} ({tok!r}): {exc}", token=tok, index=i) from exc
    return PositionSequence(tuple(positions), board)


def all_fields(board: BoardConfig) -> list[Position]:
    """All n^2 fields in (col, row) ascending order."""
    return [Position(c, r) for c in range(board.size) for r in range(board.size)]


def render_board(seq: PositionSequence, extra: dict[Position, float] | None = None) -> str:
    """Text diagram of a sequence, rows printed top-down with axes.

    Occupied fields show the sequence index (latest wins on repeats).  When
    ``extra`` is given, unoccupied fields listed there show a single-digit
    bucket of their value, scaled to the 0..9 range of the map.
    """
    n = seq.board.size
    cells = [["." for _ in range(n)] for _ in range(n)]
    if extra:
        lo = min(extra.values())
        hi = max(extra.values())
        span = hi - lo
        for p, v in extra.items():
            bucket = 0 if span == 0 else min(9, int(10.0 * (v - lo) / span))
            cells[p.row][p.col] = str(bucket)
    for i, p in enumerate(seq):
        cells[p.row][p.col] = str(i)
    width = max(
        [len(column_label(c)) for c in range(n)]
        + [len(s) for row in cells for s in row]
    )
    label_w = len(str(n))
    lines = []
    for row in range(n - 1, -1, -1):
        body = " ".join(s.rjust(width) for s in cells[row])
        lines.append(f"{row + 1:>{label_w}} {body}")
    axis = " ".join(column_label(c).rjust(width) for c in range(n))
    lines.append(f"{'':>{label_w}} {axis}")
    return "\n".join(lines)
