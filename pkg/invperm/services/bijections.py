"""
Executable maps between the pattern classes and their target families,
plus a harness that checks a map for injectivity and surjectivity.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from invperm.services.comb_objects import EvenFountain, Partition
from invperm.services.perm_core import Permutation, avoids, inversion_table, is_indecomposable
from invperm.utils import logging_utils
from invperm.utils.errors import DomainError

logger = logging.getLogger(__name__)

_PATTERN_132 = Permutation.of(1, 3, 2)


@dataclass(frozen=True)
class WalkStep:
    """One removed coin; action is the move taken afterwards: up, down or stop."""

    row: int
    position: int
    color: str
    action: str

    def to_line(self) -> str:
        return f"{self.row} {self.position} {self.color} {self.action}"


@dataclass(frozen=True)
class RemovalTrace:
    walks: Tuple[Tuple[WalkStep, ...], ...]
    output: Tuple[int, ...]
    flagged_events: Tuple[Tuple[int, int], ...] = ()

    def to_log(self) -> str:
        """Line-oriented log, one visited coin per line, walks separated by '--'."""
        lines = []
        for i, walk in enumerate(self.walks):
            if i:
                lines.append("--")
            lines.extend(step.to_line() for step in walk)
        for row, position in self.flagged_events:
            lines.append(f"# flagged: below-right coin ({row},{position}) already removed")
        lines.append("output " + " ".join(str(v) for v in self.output))
        return "\n".join(lines) + "\n"


def coin_removal(even_fountain: EvenFountain, emit_skipped: bool = False) -> RemovalTrace:
    """
    Walk the coins of an even fountain from each bottom coin, left to right.

    Red coins (even rows) are removed and the walk moves above-right,
    stopping if that coin is absent. Black coins (odd rows) are removed and
    the walk moves above-right, or below-right when there is nothing above.
    Coin (r, p) has above-right neighbour (r+1, p) and below-right
    neighbour (r-1, p+1); removed coins count as absent.

    Args:
        even_fountain: the fountain to consume
        emit_skipped: write 0 for bottom coins an earlier walk already removed,
            instead of skipping them silently

    Returns:
        RemovalTrace with one red-removal count per walk, followed by a single 0
    """
    fountain = even_fountain.fountain
    original = fountain.coin_set()
    remaining = set(original)
    walks: List[Tuple[WalkStep, ...]] = []
    output: List[int] = []
    flagged: List[Tuple[int, int]] = []

    for start in range(1, fountain.width + 1):
        if (0, start) not in remaining:
            if emit_skipped:
                output.append(0)
            continue
        steps: List[WalkStep] = []
        red_removed = 0
        row, position = 0, start
        while True:
            remaining.discard((row, position))
            red = row % 2 == 0
            if red:
                red_removed += 1
            color = "red" if red else "black"
            if (row + 1, position) in remaining:
                steps.append(WalkStep(row, position, color, "up"))
                row += 1
                continue
            if not red:
                below_right = (row - 1, position + 1)
                if below_right in remaining:
                    steps.append(WalkStep(row, position, color, "down"))
                    row, position = below_right
                    continue
                if below_right in original:
                    logger.warning(f"Black coin ({row},{position}) found its below-right coin already removed")
                    flagged.append(below_right)
            steps.append(WalkStep(row, position, color, "stop"))
            break
        walks.append(tuple(steps))
        output.append(red_removed)

    output.append(0)
    trace = RemovalTrace(walks=tuple(walks), output=tuple(output), flagged_events=tuple(flagged))
    logging_utils.debug_log(f"coin_removal({fountain.rows}) -> {trace.output}", logger)
    return trace


def table_to_partition(p: Permutation) -> Partition:
    """
    The nonzero inversion-table entries of a 132-avoiding indecomposable
    permutation, sorted into a partition of inversions(p).

    Raises:
        DomainError: when p is decomposable or contains 132
    """
    if not is_indecomposable(p):
        raise DomainError(f"{p} is decomposable")
    if not avoids(p, _PATTERN_132):
        raise DomainError(f"{p} contains 132")
    entries = inversion_table(p).entries
    return Partition(tuple(sorted((b for b in entries if b), reverse=True)))


@dataclass(frozen=True)
class BijectionReport:
    domain_size: int
    image_size: int
    collisions: Tuple[Tuple[Hashable, Tuple[Hashable, ...]], ...] = ()
    pairs: Tuple[Tuple[Hashable, Hashable], ...] = field(default=(), repr=False)
    missing: Tuple[Hashable, ...] = ()
    extra: Tuple[Hashable, ...] = ()
    codomain_size: Optional[int] = None

    @property
    def injective(self) -> bool:
        return not self.collisions

    @property
    def bijective(self) -> bool:
        return self.injective and self.codomain_size is not None and not self.missing and not self.extra

    def summary(self) -> str:
        text = f"domain {self.domain_size}, image {self.image_size}, collisions {len(self.collisions)}"
        if self.codomain_size is not None:
            text += f", codomain {self.codomain_size}, missing {len(self.missing)}, extra {len(self.extra)}"
        return text


def verify_map(domain: Iterable[Hashable], fn: Callable[[Hashable], Hashable], codomain: Optional[Sequence[Hashable]] = None) -> BijectionReport:
    """
    Apply fn to every domain element and report collisions and, when a
    codomain is given, the symmetric difference between it and the image.
    """
    pairs = []
    preimages: Dict[Hashable, List[Hashable]] = defaultdict(list)
    for x in domain:
        y = fn(x)
        pairs.append((x, y))
        preimages[y].append(x)

    collisions = tuple((y, tuple(xs)) for y, xs in preimages.items() if len(xs) > 1)
    missing: Tuple[Hashable, ...] = ()
    extra: Tuple[Hashable, ...] = ()
    codomain_size = None
    if codomain is not None:
        target = list(codomain)
        codomain_size = len(target)
        target_set = set(target)
        missing = tuple(y for y in target if y not in preimages)
        extra = tuple(y for y in preimages if y not in target_set)

    report = BijectionReport(
        domain_size=len(pairs),
        image_size=len(preimages),
        collisions=collisions,
        pairs=tuple(pairs),
        missing=missing,
        extra=extra,
        codomain_size=codomain_size,
    )
    if collisions:
        logger.info(f"Map is not injective: {len(collisions)} collisions")
    return report
