"""
Permutations, inversion statistics, decomposability, classical pattern
containment, the two inversion-preserving symmetries and the inversion-table
encoding.

Permutations are written in one-line notation over the values 1..n with
n >= 1. The empty permutation is not a Permutation.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from invperm.utils.errors import MalformedPermutationError, MalformedTableError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise MalformedPermutationError("the empty permutation is not allowed")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise MalformedPermutationError(f"{values!r} is not a rearrangement of 1..{len(values)}")

    @classmethod
    def of(cls, *values: int) -> "Permutation":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse the textual format.

        Args:
            text: digit string such as "3142" (n <= 9) or comma-separated
                integers such as "10,1,2,3,4,5,6,7,8,9"

        Returns:
            The parsed permutation
        """
        text = text.strip()
        if not text:
            raise MalformedPermutationError("empty permutation text")
        try:
            if "," in text:
                values = tuple(int(token) for token in text.split(","))
            else:
                values = tuple(int(ch) for ch in text)
        except ValueError:
            raise MalformedPermutationError(f"cannot parse permutation {text!r}")
        return cls(values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __str__(self) -> str:
        if len(self.values) <= 9:
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)


def canonical_key(p: Permutation) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: by length, then lexicographic one-line form."""
    return (len(p), p.values)


@dataclass(frozen=True)
class SubdiagonalSequence:
    """A sequence b_1..b_n with 0 <= b_i <= n - i (an inversion table)."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise MalformedTableError("an inversion table has at least one entry")
        n = len(entries)
        for i, b in enumerate(entries):
            if b < 0 or b > n - 1 - i:
                raise MalformedTableError(f"entry {i + 1} of {entries!r} is outside 0..{n - 1 - i}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def total(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True)
class PatternSet:
    """A nonempty, duplicate-free set of patterns in canonical order."""

    patterns: Tuple[Permutation, ...]

    def __post_init__(self):
        unique = sorted(set(self.patterns), key=canonical_key)
        if not unique:
            raise MalformedPermutationError("a pattern set needs at least one pattern")
        object.__setattr__(self, "patterns", tuple(unique))

    @classmethod
    def of(cls, *patterns: Union[str, Permutation]) -> "PatternSet":
        return cls(tuple(p if isinstance(p, Permutation) else Permutation.parse(p) for p in patterns))

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        """Parse a comma-separated list of digit-string patterns, e.g. "132,213"."""
        tokens = [token for token in text.replace(" ", "").split(",") if token]
        return cls.of(*tokens)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.patterns)

    def labels(self) -> List[str]:
        return [str(p) for p in self.patterns]


def inversions(p: Permutation) -> int:
    """Number of index pairs i < j with p_i > p_j."""
    values = p.values
    n = len(values)
    return sum(1 for i in range(n) for j in range(i + 1, n) if values[i] > values[j])


def components(p: Permutation) -> List[Permutation]:
    """
    Factor p into its indecomposable components.

    Returns:
        The unique maximal factorization p = c_1 + c_2 + ... (direct sum)
    """
    result = []
    start = 0
    running_max = 0
    for i, v in enumerate(p.values):
        running_max = max(running_max, v)
        if running_max == i + 1:
            result.append(Permutation(tuple(x - start for x in p.values[start:i + 1])))
            start = i + 1
    return result


def is_decomposable(p: Permutation) -> bool:
    return len(components(p)) > 1


def is_indecomposable(p: Permutation) -> bool:
    return len(components(p)) == 1


def skew_components(p: Permutation) -> List[Permutation]:
    """Factor p into its skew-indecomposable blocks (p = s_1 - s_2 - ... as skew sums)."""
    n = len(p)
    result = []
    start = 0
    running_min = n + 1
    for i, v in enumerate(p.values):
        running_min = min(running_min, v)
        # the prefix through i holds exactly the top i+1 values
        if running_min == n - i:
            low = running_min - 1
            result.append(Permutation(tuple(x - low for x in p.values[start:i + 1])))
            start = i + 1
    return result


def is_skew_decomposable(p: Permutation) -> bool:
    return len(skew_components(p)) > 1


def direct_sum(p: Permutation, q: Permutation) -> Permutation:
    shift = len(p)
    return Permutation(p.values + tuple(v + shift for v in q.values))


def skew_sum(p: Permutation, q: Permutation) -> Permutation:
    shift = len(q)
    return Permutation(tuple(v + shift for v in p.values) + q.values)


def reverse_complement(p: Permutation) -> Permutation:
    n = len(p)
    return Permutation(tuple(n + 1 - v for v in reversed(p.values)))


def inverse(p: Permutation) -> Permutation:
    result = [0] * len(p)
    for i, v in enumerate(p.values, start=1):
        result[v - 1] = i
    return Permutation(tuple(result))


def symmetry_class(p: Permutation) -> List[Permutation]:
    """Orbit of p under the group generated by reverse_complement and inverse, canonically sorted."""
    orbit = {p}
    frontier = [p]
    while frontier:
        current = frontier.pop()
        for image in (reverse_complement(current), inverse(current)):
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return sorted(orbit, key=canonical_key)


def apply_to_patterns(patterns: PatternSet, symmetry) -> PatternSet:
    return PatternSet(tuple(symmetry(t) for t in patterns))


def contains(p: Permutation, t: Permutation) -> bool:
    """True iff some subsequence of p is order-isomorphic to t."""
    pv, tv = p.values, t.values
    n, m = len(pv), len(tv)
    if m > n:
        return False
    chosen: List[int] = []

    def extend(start: int, depth: int) -> bool:
        if depth == m:
            return True
        target = tv[depth]
        for idx in range(start, n - (m - depth) + 1):
            v = pv[idx]
            if all((v < pv[c]) == (target < tv[d]) for d, c in enumerate(chosen)):
                chosen.append(idx)
                if extend(idx + 1, depth + 1):
                    return True
                chosen.pop()
        return False

    return extend(0, 0)


def avoids(p: Permutation, t: Permutation) -> bool:
    return not contains(p, t)


def avoids_all(p: Permutation, patterns: Iterable[Permutation]) -> bool:
    return all(not contains(p, t) for t in patterns)


def inversion_table(p: Permutation) -> SubdiagonalSequence:
    """b_i is the number of values after p_i that are smaller than p_i."""
    values = p.values
    n = len(values)
    return SubdiagonalSequence(tuple(
        sum(1 for j in range(i + 1, n) if values[j] < values[i]) for i in range(n)
    ))


def permutation_from_table(b: Union[SubdiagonalSequence, Sequence[int]]) -> Permutation:
    """
    Decode an inversion table.

    Args:
        b: a subdiagonal sequence (raw sequences are validated first)

    Returns:
        The permutation whose inversion table is b
    """
    if not isinstance(b, SubdiagonalSequence):
        b = SubdiagonalSequence(tuple(b))
    available = list(range(1, len(b) + 1))
    return Permutation(tuple(available.pop(entry) for entry in b.entries))


def diagonal_flags(b: SubdiagonalSequence) -> Tuple[bool, ...]:
    """Flag i is true iff b_i attains its maximum n - i."""
    n = len(b)
    return tuple(entry == n - 1 - i for i, entry in enumerate(b.entries))


def advance_reach(reach: int, position: int, entry: int, n: int) -> Optional[int]:
    """
    Extend the reach of a table prefix by the entry at 1-based `position`.

    The prefix of length i is a permutation of 1..i exactly when
    b_j + j <= i for every j <= i. Returns None when the prefix ending
    here is such a proper component.
    """
    reach = max(reach, entry + position)
    if position < n and reach <= position:
        return None
    return reach


def table_is_indecomposable(entries: Sequence[int]) -> bool:
    """Decomposability read straight off an inversion table."""
    reach: Optional[int] = 0
    n = len(entries)
    for i, b in enumerate(entries, start=1):
        reach = advance_reach(reach, i, b, n)
        if reach is None:
            return False
    return True


def subdiagonal_sequences(n: int, total: int, indecomposable_only: bool = False) -> Iterator[Tuple[int, ...]]:
    """
    Yield every subdiagonal sequence of length n with entry-sum `total`,
    in lexicographic order (which is the lexicographic order of the
    corresponding permutations).

    With indecomposable_only, prefixes that already split off a component
    are pruned.
    """
    if n < 1 or total < 0 or total > n * (n - 1) // 2:
        return
    prefix = [0] * n

    def fill(i: int, remaining: int, reach: int) -> Iterator[Tuple[int, ...]]:
        # i is 0-based; entry i may take 0..n-1-i
        if i == n:
            if remaining == 0:
                yield tuple(prefix)
            return
        tail = n - 1 - i
        capacity_after = tail * (tail - 1) // 2
        low = max(0, remaining - capacity_after)
        high = min(tail, remaining)
        for b in range(low, high + 1):
            new_reach = advance_reach(reach, i + 1, b, n) if indecomposable_only else reach
            if new_reach is None:
                continue
            prefix[i] = b
            yield from fill(i + 1, remaining - b, new_reach)

    yield from fill(0, total, 0)


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every permutation of length n, in lexicographic order."""
    for values in itertools.permutations(range(1, n + 1)):
        yield Permutation(values)
