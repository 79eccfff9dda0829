"""
The sequence catalog: every pattern class with a known enumeration, bound
to the paths that compute it (oracle, fast recurrence or closed form,
generating function) and to its OEIS entry.
"""

import time
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

from invperm.services import fast_counts
from invperm.services.comb_objects import fountains_with_coins, missing_set_is_rectangle
from invperm.services.fast_counts import ClosedFormFamily, closed_form_sequence
from invperm.services.oracle import avoider_sequence
from invperm.services.perm_core import PatternSet
from invperm.services.reports import CountReport, Method, compare_terms
from invperm.services.series_gf import (
    TruncatedSeries,
    gf_fountain,
    gf_pascal_diagonals,
    gf_pascal_without_first_column,
    gf_pascal_zero_one,
    gf_rectangle_fountains,
    gf_second_elementary,
    pin_offset,
    triangular_series,
)
from invperm.utils.errors import MethodUnavailableError, OffsetError

logger = logging.getLogger(__name__)

PIN_PREFIX_K = 8  # Oracle terms used to pin a generating function's offset

FastPath = Callable[[int], Dict[int, int]]
SeriesPath = Callable[[int], TruncatedSeries]


class OffsetPolicy(str, Enum):
    ALIGNED = "aligned"  # coefficient(k) = |I_k|
    PINNED = "pinned"  # shift found at runtime against the oracle


@dataclass(frozen=True)
class CatalogEntry:
    patterns: PatternSet
    title: str
    fast: Optional[FastPath] = None
    gf: Optional[SeriesPath] = None
    oeis_id: Optional[str] = None
    offset_policy: OffsetPolicy = OffsetPolicy.ALIGNED

    @property
    def methods(self) -> List[Method]:
        methods = [Method.ORACLE]
        if self.fast is not None:
            methods.append(Method.FAST)
        if self.gf is not None:
            methods.append(Method.GF)
        return methods


def _closed(family: ClosedFormFamily) -> FastPath:
    return lambda k_max: closed_form_sequence(family, k_max)


def _fountain_counts(k_max: int) -> Dict[int, int]:
    return {k: len(fountains_with_coins(k)) for k in range(k_max + 1)}


def _rectangle_fountain_counts(k_max: int) -> Dict[int, int]:
    return {
        k: sum(1 for f in fountains_with_coins(k) if missing_set_is_rectangle(f))
        for k in range(k_max + 1)
    }


def _count_i123_sequence(k_max: int) -> Dict[int, int]:
    return {k: fast_counts.count_i123(k) for k in range(k_max + 1)}


@lru_cache(maxsize=1)
def catalog() -> Tuple[CatalogEntry, ...]:
    """Every catalogued pattern class, singletons first."""
    return (
        CatalogEntry(PatternSet.of("1"), "empty for every k"),
        CatalogEntry(PatternSet.of("12"), "characteristic function of the triangular numbers",
                     fast=_closed(ClosedFormFamily.TRIANGULAR_CHAR), gf=triangular_series, oeis_id="A010054"),
        CatalogEntry(PatternSet.of("21"), "only the singleton at k = 0"),
        CatalogEntry(PatternSet.of("132"), "partitions of k",
                     fast=_closed(ClosedFormFamily.PARTITIONS), oeis_id="A000041"),
        CatalogEntry(PatternSet.of("213"), "partitions of k (reverse-complement of 132)",
                     fast=_closed(ClosedFormFamily.PARTITIONS), oeis_id="A000041"),
        CatalogEntry(PatternSet.of("231"), "fountains of k coins",
                     fast=_fountain_counts, gf=gf_fountain, oeis_id="A005169"),
        CatalogEntry(PatternSet.of("312"), "fountains of k coins (inverse of 231)",
                     fast=_fountain_counts, gf=gf_fountain, oeis_id="A005169"),
        CatalogEntry(PatternSet.of("321"), "parallelogram polyominoes with k cells",
                     fast=fast_counts.count_i321_sequence, oeis_id="A006958"),
        CatalogEntry(PatternSet.of("123"), "tables with strictly decreasing non-diagonal entries",
                     fast=_count_i123_sequence),
        CatalogEntry(PatternSet.of("123", "231"), "fountains missing a rectangle",
                     fast=_rectangle_fountain_counts, gf=gf_rectangle_fountains),
        CatalogEntry(PatternSet.of("132", "123"), "Pascal triangle without its first column",
                     gf=gf_pascal_without_first_column, oeis_id="A135278", offset_policy=OffsetPolicy.PINNED),
        CatalogEntry(PatternSet.of("132", "213"), "Gorenstein partitions of k",
                     fast=fast_counts.gorenstein_sequence, gf=gf_second_elementary, oeis_id="A117629"),
        CatalogEntry(PatternSet.of("132", "231"), "partitions of k into distinct parts",
                     fast=_closed(ClosedFormFamily.DISTINCT_PARTITIONS), oeis_id="A000009"),
        CatalogEntry(PatternSet.of("132", "321"), "partitions of k into equal parts",
                     fast=_closed(ClosedFormFamily.EQUAL_PARTITIONS), oeis_id="A000005"),
        CatalogEntry(PatternSet.of("231", "321"), "exactly one avoider",
                     fast=_closed(ClosedFormFamily.CONSTANT_ONE)),
        CatalogEntry(PatternSet.of("231", "312"), "characteristic function of the triangular numbers",
                     fast=_closed(ClosedFormFamily.TRIANGULAR_CHAR), oeis_id="A010054"),
        CatalogEntry(PatternSet.of("123", "321"), "empty from k = 7 on"),
        CatalogEntry(PatternSet.of("123", "132", "231"), "exactly one avoider",
                     fast=_closed(ClosedFormFamily.CONSTANT_ONE)),
        CatalogEntry(PatternSet.of("123", "132", "213"), "Pascal triangle read by diagonals",
                     gf=gf_pascal_diagonals, offset_policy=OffsetPolicy.PINNED),
        CatalogEntry(PatternSet.of("132", "213", "231"), "odd divisors of k",
                     fast=_closed(ClosedFormFamily.ODD_DIVISORS), oeis_id="A001227"),
        CatalogEntry(PatternSet.of("132", "213", "321"), "divisors of k",
                     fast=_closed(ClosedFormFamily.DIVISORS)),
        CatalogEntry(PatternSet.of("123", "132", "213", "231"), "Pascal triangle with entries above 1 zeroed",
                     gf=gf_pascal_zero_one, oeis_id="A103451", offset_policy=OffsetPolicy.PINNED),
    )


def entry(patterns: PatternSet) -> Optional[CatalogEntry]:
    for candidate in catalog():
        if candidate.patterns == patterns:
            return candidate
    return None


def entry_for_oeis(oeis_id: str) -> Optional[CatalogEntry]:
    """The first catalog entry citing oeis_id."""
    for candidate in catalog():
        if candidate.oeis_id == oeis_id:
            return candidate
    return None


def pinned_gf_values(found: CatalogEntry, k_max: int) -> Tuple[Dict[int, int], int]:
    """
    |I_k| for k = 0..k_max read off a generating function.

    For a pinned entry the shift o is found against the oracle's first
    PIN_PREFIX_K terms and |I_k| = coefficient(k - o); values the series
    cannot represent (k < o) come from that oracle prefix.

    Raises:
        OffsetError: when no unique constant shift fits
    """
    if found.offset_policy == OffsetPolicy.ALIGNED:
        series = found.gf(k_max + 1)
        return dict(enumerate(series.coefficients)), 0

    # Pin the shift against a short oracle prefix
    prefix = avoider_sequence(found.patterns, PIN_PREFIX_K)
    series = found.gf(max(k_max, PIN_PREFIX_K) + 3)
    pinned = pin_offset(series, prefix)
    if pinned.offset is None:
        logger.error(f"No constant offset for {found.patterns}: diff {pinned.diff}")
        raise OffsetError(f"generating function for {found.patterns} does not match the oracle under any shift")
    offset = pinned.offset
    # Shift the coefficients into place
    reference = prefix.as_dict()
    values = {}
    for k in range(k_max + 1):
        index = k - offset
        values[k] = series.coefficient(index) if index >= 0 else reference[k]
    logger.info(f"Pinned offset {offset:+d} for {found.patterns}")
    return values, offset


def _method_values(found: CatalogEntry, method: Method, k_max: int) -> Tuple[Dict[int, int], Optional[int]]:
    # Only catalogued paths may be requested
    if method not in found.methods:
        raise MethodUnavailableError(f"method {method.value} is not available for {found.patterns}")
    if method == Method.FAST:
        return found.fast(k_max), None
    if method == Method.GF:
        return pinned_gf_values(found, k_max)
    return avoider_sequence(found.patterns, k_max).as_dict(), None


def run_count(patterns: Union[PatternSet, str], k_max: int, method: Method = Method.ALL) -> CountReport:
    """
    Compute |I_k(patterns)| for k = 0..k_max along one path, or along every
    catalogued path with cross-checks.

    Args:
        patterns: the pattern set, or its comma-separated text form
        k_max: largest k to compute
        method: oracle, fast, gf or all

    Returns:
        CountReport; with method all, its terms are the oracle's and its
        mismatches list every disagreeing path
    """
    if isinstance(patterns, str):
        patterns = PatternSet.parse(patterns)
    method = Method(method)
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")

    # Look up the catalogued paths
    found = entry(patterns)
    if found is None:
        logger.warning(f"No catalog entry for {patterns}; falling back to the oracle")
        return avoider_sequence(patterns, k_max)

    start_time = time.time()
    if method != Method.ALL:
        # Single path, no cross-check
        values, offset = _method_values(found, method, k_max)
        elapsed = int((time.time() - start_time) * 1000)
        return CountReport.from_values(patterns.labels(), method.value, values, elapsed_ms=elapsed, offset=offset)

    # The oracle is the reference for every other path
    reference = avoider_sequence(patterns, k_max)
    mismatches = []
    offset = None
    for path in found.methods[1:]:
        values, path_offset = _method_values(found, path, k_max)
        if path == Method.GF:
            offset = path_offset
        actual = CountReport.from_values(patterns.labels(), path.value, values)
        mismatches.extend(compare_terms(reference, actual))
    # Log each disagreement
    for m in mismatches:
        logger.warning(f"{patterns} k={m.k}: {m.method}={m.actual} but {m.reference}={m.expected}")
    elapsed = int((time.time() - start_time) * 1000)
    return CountReport(
        patterns=patterns.labels(),
        method=Method.ALL.value,
        terms=reference.terms,
        mismatches=mismatches,
        elapsed_ms=elapsed,
        offset=offset,
    )
