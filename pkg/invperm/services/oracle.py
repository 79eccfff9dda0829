"""
Exhaustive ground truth for I_k, the indecomposable permutations with k
inversions, and its pattern-restricted subsets.

Permutations are produced from their inversion tables: for every length n
all subdiagonal sequences with entry-sum k are generated in lexicographic
order with pruning on the remaining sum. An indecomposable permutation with
k inversions has length at most k + 1, so that cap makes I_k exhaustive.
"""

import os
import time
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterator, List, Optional, Tuple

from dotenv import load_dotenv

from invperm.services.perm_core import (
    Permutation,
    PatternSet,
    avoids_all,
    components,
    permutation_from_table,
    subdiagonal_sequences,
)
from invperm.services.reports import CountReport, Method
from invperm.utils import logging_utils
from invperm.utils.errors import OracleLimitError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

ORACLE_MAX_K = int(os.getenv("ORACLE_MAX_K", "14"))  # Largest k the exhaustive oracle accepts


@dataclass(frozen=True)
class AvoiderQuery:
    k: int
    patterns: PatternSet
    indecomposable_only: bool = True
    max_length: Optional[int] = None

    def length_cap(self) -> int:
        if self.max_length is not None:
            return self.max_length
        if self.indecomposable_only:
            return self.k + 1
        raise ValueError("a query over decomposable permutations needs an explicit max_length")


def _check_bound(k: int) -> None:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k > ORACLE_MAX_K:
        logger.error(f"Requested k={k} exceeds ORACLE_MAX_K={ORACLE_MAX_K}")
        raise OracleLimitError(f"k={k} exceeds the oracle bound {ORACLE_MAX_K}")


def permutations_with_inversions(k: int, max_length: int) -> Iterator[Permutation]:
    """
    Every permutation of length 1..max_length with exactly k inversions.

    Yields by length, then lexicographically.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    _check_bound(k)
    for n in range(1, max_length + 1):
        for table in subdiagonal_sequences(n, k):
            yield permutation_from_table(table)


@lru_cache(maxsize=None)
def _indecomposables(k: int) -> Tuple[Permutation, ...]:
    start_time = time.time()
    found = []
    for n in range(1, k + 2):
        for table in subdiagonal_sequences(n, k, indecomposable_only=True):
            found.append(permutation_from_table(table))
    logger.info(f"Enumerated |I_{k}| = {len(found)} in {time.time() - start_time:.2f}s")
    return tuple(found)


def indecomposables_with_inversions(k: int) -> List[Permutation]:
    """
    I_k: the indecomposable permutations with exactly k inversions.

    Raises:
        OracleLimitError: when k exceeds ORACLE_MAX_K
    """
    _check_bound(k)
    return list(_indecomposables(k))


@lru_cache(maxsize=None)
def _avoiders_of(k: int, pattern: Permutation) -> FrozenSet[Permutation]:
    # shared by every pattern set that contains `pattern`
    return frozenset(p for p in _indecomposables(k) if avoids_all(p, (pattern,)))


def enumerate_avoiders(query: AvoiderQuery) -> List[Permutation]:
    """The witnesses counted by count_avoiders, sorted by length then one-line form."""
    _check_bound(query.k)
    patterns = tuple(query.patterns)
    if query.indecomposable_only and query.max_length is None:
        allowed = [_avoiders_of(query.k, t) for t in patterns]
        return [p for p in _indecomposables(query.k) if all(p in s for s in allowed)]
    pool = permutations_with_inversions(query.k, query.length_cap())
    if query.indecomposable_only:
        pool = (p for p in pool if len(components(p)) == 1)
    return [p for p in pool if avoids_all(p, patterns)]


def count_avoiders(query: AvoiderQuery) -> int:
    return len(enumerate_avoiders(query))


def avoider_sequence(patterns: PatternSet, k_max: int) -> CountReport:
    """Oracle counts |I_k(patterns)| for k = 0..k_max."""
    _check_bound(k_max)
    start_time = time.time()
    values = {k: count_avoiders(AvoiderQuery(k, patterns)) for k in range(k_max + 1)}
    elapsed = int((time.time() - start_time) * 1000)
    logger.info(f"Oracle sequence for {patterns} up to k={k_max} computed in {elapsed}ms")
    return CountReport.from_values(patterns.labels(), Method.ORACLE.value, values, elapsed_ms=elapsed)


_PATTERN_123 = Permutation.of(1, 2, 3)


def total_123_avoiders(k: int) -> int:
    """
    All 123-avoiding permutations with k inversions, decomposable ones
    included.

    A 123-avoider has at most two components, each of length at most one
    more than its inversion count, so length k + 2 bounds the search.
    """
    _check_bound(k)
    total = 0
    for p in permutations_with_inversions(k, k + 2):
        if avoids_all(p, (_PATTERN_123,)):
            total += 1
            if logging_utils.DEBUG_MODE and len(p) == k + 2:
                assert len(components(p)) <= 2, f"{p} avoids 123 with {len(components(p))} components"
    logging_utils.debug_log(f"total_123_avoiders({k}) = {total}", logger)
    return total
