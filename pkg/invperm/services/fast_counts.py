"""
Recurrences and closed forms that count pattern classes of I_k without
enumerating them.

All counts are Python integers, so nothing overflows at the scales of the
performance checks (a_{2000,1}, n = 500 Gorenstein partitions).
"""

import os
import math
import time
import logging
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from invperm.services.perm_core import Permutation, advance_reach
from invperm.utils.errors import OracleLimitError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

COUNT_123_MAX_K = int(os.getenv("COUNT_123_MAX_K", "22"))
ENABLE_EXPERIMENTAL_123 = os.getenv("ENABLE_EXPERIMENTAL_123", "true").lower() in ("true", "yes", "1")


class MemoTable:
    """
    Two-dimensional table of nonnegative integers filled one row at a time.

    A row is immutable once written; reads outside the declared bounds raise.
    """

    def __init__(self, name: str, rows: int):
        self.name = name
        self._rows: List[Optional[Tuple[int, ...]]] = [None] * rows

    def put_row(self, i: int, values: Sequence[int]) -> None:
        if self._rows[i] is not None:
            raise ValueError(f"{self.name}: row {i} is already written")
        self._rows[i] = tuple(values)

    def row(self, i: int) -> Tuple[int, ...]:
        row = self._rows[i]
        if row is None:
            raise KeyError(f"{self.name}: row {i} has not been written")
        return row

    def get(self, i: int, j: int) -> int:
        return self.row(i)[j]

    def __len__(self) -> int:
        return len(self._rows)


# --- parallelogram polyominoes / 321-avoiders ---------------------------------

@lru_cache(maxsize=4)
def _parallelogram_table(limit: int) -> MemoTable:
    """
    Rows a_{n,1..L_n} for n = 0..limit with L_n = max(1, min(n, limit - n)).

    a_{n,m} is constant in m once m >= n, and building row n only reads
    a_{j,i} with i <= limit - j, so the truncated rows are enough.
    """
    start_time = time.time()
    table = MemoTable("parallelogram", limit + 1)
    table.put_row(0, (1,))
    rows: List[Tuple[int, ...]] = [(1,)]

    def value(j: int, i: int) -> int:
        if j == 0:
            return 1
        return rows[j][min(i, j) - 1]

    for n in range(1, limit + 1):
        width = max(1, min(n, limit - n))
        tail = [0] * (n + 2)
        running = 0
        for m in range(n, 0, -1):
            running += value(n - m, m)
            tail[m] = running
        row = [tail[1]]
        for m in range(2, width + 1):
            row.append(row[-1] + tail[m])
        rows.append(tuple(row))
        table.put_row(n, row)
    logger.info(f"Parallelogram table up to n={limit} built in {time.time() - start_time:.2f}s")
    return table


def parallelogram_recurrence(n: int, m: int) -> int:
    """
    a_{n,m} = 1 if n = 0; sum_{i=1..n} a_{n-i,i} if m = 1;
    a_{n,m-1} + sum_{i=m..n} a_{n-i,i} otherwise.
    """
    if n < 0 or m < 1:
        raise ValueError("parallelogram_recurrence needs n >= 0 and m >= 1")
    if n == 0:
        return 1
    column = min(m, n)
    return _parallelogram_table(n + column).get(n, column - 1)


def count_i321(k: int) -> int:
    """|I_k(321)| = a_{k,1}, in O(k^2) time and space."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _parallelogram_table(k).get(k, 0)


def count_i321_sequence(k_max: int) -> Dict[int, int]:
    table = _parallelogram_table(k_max)
    return {k: table.get(k, 0) for k in range(k_max + 1)}


# --- Gorenstein partitions ------------------------------------------------------

def _gorenstein_terms(n: int, d: int, optimized: bool) -> List[int]:
    """The k in 1..d whose summand f(n - k(d+1-k), d-k) can be nonzero."""
    if not optimized:
        return list(range(1, d + 1))
    # k(d+1-k) rises then falls, so the admissible k form a prefix and a suffix
    left = 1
    while left <= d and left * (d + 1 - left) <= n:
        left += 1
    if left > d:
        return list(range(1, d + 1))
    right = d
    while right >= left and right * (d + 1 - right) <= n:
        right -= 1
    return list(range(1, left)) + list(range(right + 1, d + 1))


@lru_cache(maxsize=4)
def _gorenstein_table(limit: int, optimized: bool) -> MemoTable:
    """Rows f(0..limit, d) for d = 0..limit, built in increasing d."""
    start_time = time.time()
    table = MemoTable("gorenstein", limit + 1)
    rows: List[Tuple[int, ...]] = []
    for d in range(limit + 1):
        row = [1] + [0] * limit
        for n in range(1, limit + 1):
            total = 0
            for k in _gorenstein_terms(n, d, optimized):
                rest = n - k * (d + 1 - k)
                if rest >= 0:
                    total += rows[d - k][rest]
            row[n] = total
        rows.append(tuple(row))
        table.put_row(d, row)
    logger.info(
        f"Gorenstein table up to n={limit} ({'optimized' if optimized else 'plain'}) "
        f"built in {time.time() - start_time:.2f}s"
    )
    return table


def gorenstein_recurrence(n: int, d: int, optimized: bool = True) -> int:
    """
    f(n, d) = 0 if n < 0; 1 if n = 0; otherwise
    sum_{k=1..d} f(n - k(d+1-k), d-k).
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if n < 0:
        return 0
    if n == 0:
        return 1
    limit = max(n, d)
    return _gorenstein_table(limit, optimized).get(d, n)


def gorenstein_count(n: int, optimized: bool = True) -> int:
    """Number of Gorenstein partitions of n, the sum of f(n, d) over d = 0..n."""
    if n < 0:
        return 0
    table = _gorenstein_table(n, optimized)
    return sum(table.get(d, n) for d in range(n + 1))


def gorenstein_sequence(k_max: int) -> Dict[int, int]:
    table = _gorenstein_table(k_max, True)
    return {n: sum(table.get(d, n) for d in range(n + 1)) for n in range(k_max + 1)}


# --- 123-avoiders ---------------------------------------------------------------

@lru_cache(maxsize=None)
def experimental_123_recurrence(n: int, m: int, k: int) -> int:
    """
    The printed three-case recurrence for c_{n,m,k}, with its unbound index
    in the first summand read as k. Kept for comparison only: its totals
    disagree with exhaustive counts from k = 1 on.
    """
    if n < 0 or k < 0:
        return 0
    if n == 0 and k == 0:
        return 1
    total = experimental_123_recurrence(n - 1, m, k - n + 1)
    for i in range(min(n - 2, m - 1) + 1):
        total += experimental_123_recurrence(n - 1, i, k - i)
    return total


def experimental_123_total(k: int) -> int:
    """Sum of c_{n,n,k} over n = 0..k+1."""
    return sum(experimental_123_recurrence(n, n, k) for n in range(k + 2))


def _count_123_tables(n: int, k: int) -> int:
    """
    Indecomposable subdiagonal sequences of length n and sum k whose
    non-diagonal entries strictly decrease from left to right.
    """

    def walk(i: int, remaining: int, reach: int, last_free: Optional[int]) -> int:
        if i == n:
            return 1 if remaining == 0 else 0
        ceiling = n - 1 - i
        capacity_after = ceiling * (ceiling - 1) // 2
        total = 0
        for b in range(max(0, remaining - capacity_after), min(ceiling, remaining) + 1):
            new_reach = advance_reach(reach, i + 1, b, n)
            if new_reach is None:
                continue
            if b == ceiling:
                total += walk(i + 1, remaining - b, new_reach, last_free)
            elif last_free is None or b < last_free:
                total += walk(i + 1, remaining - b, new_reach, b)
        return total

    return walk(0, k, 0, None)


def count_i123(k: int) -> int:
    """
    |I_k(123)| counted on inversion tables.

    Raises:
        OracleLimitError: when k exceeds COUNT_123_MAX_K
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > COUNT_123_MAX_K:
        logger.error(f"count_i123({k}) exceeds COUNT_123_MAX_K={COUNT_123_MAX_K}")
        raise OracleLimitError(f"count_i123({k}) exceeds the bound {COUNT_123_MAX_K}")
    return sum(_count_123_tables(n, k) for n in range(1, k + 2))


def count_i123_by_subtraction(k: int) -> int:
    """All 123-avoiders with k inversions minus the decomposable ones (pairs of decreasing blocks)."""
    from invperm.services.oracle import total_123_avoiders
    from invperm.services.series_gf import triangular_series_squared

    return total_123_avoiders(k) - triangular_series_squared(k + 1).coefficient(k)


# --- closed forms ---------------------------------------------------------------

class ClosedFormFamily(str, Enum):
    PARTITIONS = "partitions"
    DISTINCT_PARTITIONS = "distinct-partitions"
    EQUAL_PARTITIONS = "equal-partitions"
    DIVISORS = "divisors"
    ODD_DIVISORS = "odd-divisors"
    TRIANGULAR_CHAR = "triangular-char"
    CONSTANT_ONE = "constant-one"


def partition_numbers(limit: int) -> List[int]:
    """p(0..limit) by Euler's pentagonal number recurrence."""
    p = [1] + [0] * limit
    for m in range(1, limit + 1):
        total = 0
        j = 1
        while True:
            first = m - j * (3 * j - 1) // 2
            if first < 0:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[first]
            second = m - j * (3 * j + 1) // 2
            if second >= 0:
                total += sign * p[second]
            j += 1
        p[m] = total
    return p


def distinct_partition_numbers(limit: int) -> List[int]:
    """q(0..limit): each part 1..limit used at most once."""
    q = [1] + [0] * limit
    for part in range(1, limit + 1):
        for s in range(limit, part - 1, -1):
            q[s] += q[s - part]
    return q


def divisor_count(k: int, odd_only: bool = False) -> int:
    """Number of (odd) divisors of k by trial division; k = 0 counts as 1."""
    if k == 0:
        return 1
    count = 0
    for d in range(1, math.isqrt(k) + 1):
        if k % d == 0:
            for divisor in {d, k // d}:
                if not odd_only or divisor % 2 == 1:
                    count += 1
    return count


def is_triangular(k: int) -> bool:
    root = math.isqrt(8 * k + 1)
    return root * root == 8 * k + 1


def closed_form(family: ClosedFormFamily, k: int) -> int:
    return closed_form_sequence(family, k)[k]


def closed_form_sequence(family: ClosedFormFamily, k_max: int) -> Dict[int, int]:
    """closed_form for every k in 0..k_max."""
    family = ClosedFormFamily(family)
    if k_max < 0:
        raise ValueError("k must be nonnegative")
    ks = range(k_max + 1)
    if family == ClosedFormFamily.PARTITIONS:
        return dict(enumerate(partition_numbers(k_max)))
    if family == ClosedFormFamily.DISTINCT_PARTITIONS:
        return dict(enumerate(distinct_partition_numbers(k_max)))
    if family in (ClosedFormFamily.EQUAL_PARTITIONS, ClosedFormFamily.DIVISORS):
        return {k: divisor_count(k) for k in ks}
    if family == ClosedFormFamily.ODD_DIVISORS:
        return {k: divisor_count(k, odd_only=True) for k in ks}
    if family == ClosedFormFamily.TRIANGULAR_CHAR:
        return {k: int(is_triangular(k)) for k in ks}
    return {k: 1 for k in ks}


def unique_avoider_231_321(k: int) -> Permutation:
    """The only element of I_k(231, 321): 1 for k = 0, (k+1) 1 2 ... k otherwise."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Permutation.of(1)
    return Permutation((k + 1,) + tuple(range(1, k + 1)))
