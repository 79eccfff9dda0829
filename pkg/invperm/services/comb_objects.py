"""
Target combinatorial families: partitions, compositions, fountains of
coins, even fountains and parallelogram polyominoes, with exhaustive
generators and the predicates used by the counting identities.
"""

import os
import logging
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Sequence, Set, Tuple

from dotenv import load_dotenv

from invperm.utils.errors import MalformedObjectError, OracleLimitError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

FOUNTAIN_MAX_COINS = int(os.getenv("FOUNTAIN_MAX_COINS", "16"))
EVEN_FOUNTAIN_MAX_SIZE = int(os.getenv("EVEN_FOUNTAIN_MAX_SIZE", "10"))
POLYOMINO_MAX_CELLS = int(os.getenv("POLYOMINO_MAX_CELLS", "14"))


class PartitionMode(str, Enum):
    ALL = "all"
    DISTINCT = "distinct"
    EQUAL_PARTS = "equal-parts"


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise MalformedObjectError(f"partition {parts!r} has a part below 1")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise MalformedObjectError(f"partition {parts!r} is not weakly decreasing")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Composition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise MalformedObjectError(f"composition {parts!r} has a part below 1")

    @property
    def total(self) -> int:
        return sum(self.parts)


def _partitions(k: int, max_part: int, strict: bool) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(min(k, max_part), 0, -1):
        next_max = first - 1 if strict else first
        for rest in _partitions(k - first, next_max, strict):
            yield (first,) + rest


def partitions_of(k: int, mode: PartitionMode = PartitionMode.ALL) -> List[Partition]:
    """
    Every partition of k in the requested family, largest first part first.

    Args:
        k: the number being partitioned
        mode: all partitions, partitions into distinct parts, or partitions
            whose parts are all equal

    Returns:
        A duplicate-free list; k = 0 yields only the empty partition in every mode
    """
    mode = PartitionMode(mode)
    if k < 0:
        return []
    if mode == PartitionMode.EQUAL_PARTS:
        if k == 0:
            return [Partition(())]
        return [Partition((d,) * (k // d)) for d in range(k, 0, -1) if k % d == 0]
    return [Partition(parts) for parts in _partitions(k, k, mode == PartitionMode.DISTINCT)]


def is_gorenstein(rho: Partition) -> bool:
    """
    True iff rho_i + i takes a single value over the corners of rho, the
    indices i with rho_i != rho_{i+1} (sentinel rho_{m+1} = 0).
    """
    parts = rho.parts + (0,)
    corners = {parts[i] + i + 1 for i in range(len(rho.parts)) if parts[i] != parts[i + 1]}
    return len(corners) <= 1


def compositions_of(s: int) -> List[Composition]:
    """All 2^(s-1) compositions of s; s = 0 gives the empty composition."""
    if s == 0:
        return [Composition(())]
    result = []
    # each subset of the s-1 gaps is a set of cut points
    for mask in range(1 << (s - 1)):
        parts = []
        run = 1
        for gap in range(s - 1):
            if mask >> gap & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        result.append(Composition(tuple(parts)))
    return result


@dataclass(frozen=True)
class Fountain:
    """
    Rows of coin positions, row 0 at the bottom.

    Row 0 is {1..n}; a coin at position p of row r rests on positions p and
    p+1 of row r-1. Trailing empty rows are dropped.
    """

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = [tuple(sorted(set(row))) for row in self.rows]
        while rows and not rows[-1]:
            rows.pop()
        object.__setattr__(self, "rows", tuple(rows))
        if not rows:
            return
        if rows[0] != tuple(range(1, len(rows[0]) + 1)):
            raise MalformedObjectError(f"bottom row {rows[0]!r} is not full")
        for r in range(1, len(rows)):
            below = set(rows[r - 1])
            for p in rows[r]:
                if p not in below or p + 1 not in below:
                    raise MalformedObjectError(f"coin ({r},{p}) is not supported by row {r - 1}")

    @classmethod
    def from_rows(cls, *rows: Sequence[int]) -> "Fountain":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def bare(cls, width: int) -> "Fountain":
        return cls((tuple(range(1, width + 1)),))

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def coins(self) -> int:
        return sum(len(row) for row in self.rows)

    def coin_set(self) -> Set[Tuple[int, int]]:
        return {(r, p) for r, row in enumerate(self.rows) for p in row}

    def even_coins(self) -> int:
        return sum(len(row) for r, row in enumerate(self.rows) if r % 2 == 0)

    def render(self) -> str:
        """Debug rendering: top row first, coins offset by half positions."""
        lines = []
        for r in range(len(self.rows) - 1, -1, -1):
            row = set(self.rows[r])
            cells = [("o" if p in row else " ") for p in range(1, self.width - r + 1)]
            lines.append(" " * r + " ".join(cells))
        return "\n".join(line.rstrip() for line in lines)


@dataclass(frozen=True)
class EvenFountain:
    """A fountain whose size counts only the coins of rows 0, 2, 4, ..."""

    fountain: Fountain
    size: int

    def __post_init__(self):
        if self.size != self.fountain.even_coins():
            raise MalformedObjectError(
                f"even fountain size {self.size} does not match {self.fountain.even_coins()} red coins"
            )

    @classmethod
    def of(cls, fountain: Fountain) -> "EvenFountain":
        return cls(fountain, fountain.even_coins())


def _supported_positions(row: Sequence[int]) -> List[int]:
    present = set(row)
    return [p for p in row if p + 1 in present]


def _upper_rows(below: Tuple[int, ...], budget: int, row_index: int, is_charged) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    Yield stacks of rows resting on `below`.

    is_charged(row_index) decides whether coins of that row count against
    the budget; other rows are bounded by the support rule alone.
    """
    candidates = _supported_positions(below)
    charged = is_charged(row_index)
    largest = min(len(candidates), budget) if charged else len(candidates)
    for size in range(largest + 1):
        for chosen in itertools.combinations(candidates, size):
            remaining = budget - size if charged else budget
            if size == 0:
                if remaining == 0:
                    yield ()
                continue
            for rest in _upper_rows(chosen, remaining, row_index + 1, is_charged):
                yield (chosen,) + rest


def fountains_with_coins(k: int) -> List[Fountain]:
    """
    Every fountain with exactly k coins.

    Raises:
        OracleLimitError: when k exceeds FOUNTAIN_MAX_COINS
    """
    if k > FOUNTAIN_MAX_COINS:
        logger.error(f"Fountain enumeration for {k} coins exceeds FOUNTAIN_MAX_COINS={FOUNTAIN_MAX_COINS}")
        raise OracleLimitError(f"fountains_with_coins({k}) exceeds the bound {FOUNTAIN_MAX_COINS}")
    if k == 0:
        return [Fountain(())]
    result = []
    for width in range(k, 0, -1):
        bottom = tuple(range(1, width + 1))
        for rest in _upper_rows(bottom, k - width, 1, lambda r: True):
            result.append(Fountain((bottom,) + rest))
    return result


def even_fountains_of_size(s: int) -> List[EvenFountain]:
    """
    Every fountain whose rows 0, 2, 4, ... hold exactly s coins in total.

    Coins in odd rows are free; they stay finite because each row is
    narrower than the row below it.
    """
    if s > EVEN_FOUNTAIN_MAX_SIZE:
        logger.error(f"Even fountain enumeration for size {s} exceeds EVEN_FOUNTAIN_MAX_SIZE={EVEN_FOUNTAIN_MAX_SIZE}")
        raise OracleLimitError(f"even_fountains_of_size({s}) exceeds the bound {EVEN_FOUNTAIN_MAX_SIZE}")
    if s == 0:
        return [EvenFountain.of(Fountain(()))]
    result = []
    for width in range(s, 0, -1):
        bottom = tuple(range(1, width + 1))
        for rest in _upper_rows(bottom, s - width, 1, lambda r: r % 2 == 0):
            result.append(EvenFountain.of(Fountain((bottom,) + rest)))
    return result


def missing_set_is_rectangle(f: Fountain) -> bool:
    """
    Check whether the coins missing from the full triangle over f's bottom
    row form a rectangle.

    A missing coin (r, p) is placed at diagonal coordinates
    (u, v) = (p, n - r + 1 - p); the missing set qualifies when it is empty
    or equals {1..a} x {1..b}.
    """
    n = f.width
    if n == 0:
        return True
    present = f.coin_set()
    missing = {
        (p, n - r + 1 - p)
        for r in range(n)
        for p in range(1, n - r + 1)
        if (r, p) not in present
    }
    if not missing:
        return True
    a = max(u for u, _ in missing)
    b = max(v for _, v in missing)
    return len(missing) == a * b


@dataclass(frozen=True)
class ParallelogramPolyomino:
    """Columns as integer intervals [b_i, t_i], normalized so b_1 = 1."""

    columns: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        columns = tuple((int(b), int(t)) for b, t in self.columns)
        object.__setattr__(self, "columns", columns)
        if not columns:
            raise MalformedObjectError("a polyomino has at least one column")
        if columns[0][0] != 1:
            raise MalformedObjectError("the first column must start at row 1")
        for i, (b, t) in enumerate(columns):
            if t < b:
                raise MalformedObjectError(f"column {i + 1} is empty")
            if i:
                prev_b, prev_t = columns[i - 1]
                if b < prev_b or t < prev_t or b > prev_t:
                    raise MalformedObjectError(f"columns {i} and {i + 1} do not form a parallelogram")

    @property
    def cells(self) -> int:
        return sum(t - b + 1 for b, t in self.columns)

    def render(self) -> str:
        """Debug rendering: one '#' strip per column, top row first."""
        top = max(t for _, t in self.columns)
        lines = []
        for row in range(top, 0, -1):
            lines.append("".join("#" if b <= row <= t else "." for b, t in self.columns))
        return "\n".join(lines)


def _columns_after(b: int, t: int, remaining: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    if remaining == 0:
        yield ()
        return
    # next column starts within the current one and ends no lower than it
    for nb in range(b, t + 1):
        for nt in range(t, nb + remaining):
            for rest in _columns_after(nb, nt, remaining - (nt - nb + 1)):
                yield ((nb, nt),) + rest


def polyominoes_with_cells(k: int) -> List[ParallelogramPolyomino]:
    """
    Every parallelogram polyomino with k cells.

    Raises:
        OracleLimitError: when k exceeds POLYOMINO_MAX_CELLS
    """
    if k > POLYOMINO_MAX_CELLS:
        logger.error(f"Polyomino enumeration for {k} cells exceeds POLYOMINO_MAX_CELLS={POLYOMINO_MAX_CELLS}")
        raise OracleLimitError(f"polyominoes_with_cells({k}) exceeds the bound {POLYOMINO_MAX_CELLS}")
    result = []
    for height in range(k, 0, -1):
        for rest in _columns_after(1, height, k - height):
            result.append(ParallelogramPolyomino(((1, height),) + rest))
    return result

