"""
Exact truncated power series over the integers and the generating
functions of the enumeration results.

A TruncatedSeries holds c_0..c_{K-1}. Binary operations return the smaller
precision of their operands; nothing ever rounds.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from invperm.services.reports import CountReport
from invperm.utils.errors import PrecisionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedSeries:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = tuple(int(c) for c in self.coefficients)
        if not coefficients:
            raise ValueError("precision must be at least 1")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls((0,) * precision)

    @classmethod
    def one(cls, precision: int) -> "TruncatedSeries":
        return cls.monomial(0, precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coefficient: int = 1) -> "TruncatedSeries":
        if exponent < 0:
            raise ValueError("exponents are nonnegative")
        coefficients = [0] * precision
        if exponent < precision:
            coefficients[exponent] = coefficient
        return cls(tuple(coefficients))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], precision: int) -> "TruncatedSeries":
        """Tally x^e for every exponent e below the precision."""
        coefficients = [0] * precision
        for e in exponents:
            if 0 <= e < precision:
                coefficients[e] += 1
        return cls(tuple(coefficients))

    def coefficient(self, k: int) -> int:
        if k < 0 or k >= self.precision:
            raise PrecisionError(f"coefficient {k} requested from a series of precision {self.precision}")
        return self.coefficients[k]

    def truncate(self, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients[:min(precision, self.precision)])

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.precision, other.precision)
        return TruncatedSeries(tuple(self.coefficients[i] + other.coefficients[i] for i in range(k)))

    def subtract(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other.scale(-1))

    def scale(self, factor: int) -> "TruncatedSeries":
        return TruncatedSeries(tuple(factor * c for c in self.coefficients))

    def multiply(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.precision, other.precision)
        a, b = self.coefficients, other.coefficients
        result = [0] * k
        for i in range(k):
            if a[i]:
                ai = a[i]
                for j in range(k - i):
                    if b[j]:
                        result[i + j] += ai * b[j]
        return TruncatedSeries(tuple(result))

    def reciprocal(self) -> "TruncatedSeries":
        """1 / self, defined when the constant term is 1 or -1."""
        c = self.coefficients
        if c[0] not in (1, -1):
            raise ValueError("only series with constant term +-1 have integer reciprocals")
        result = [0] * self.precision
        result[0] = c[0]
        for n in range(1, self.precision):
            acc = sum(c[i] * result[n - i] for i in range(1, n + 1))
            result[n] = -acc * c[0]
        return TruncatedSeries(tuple(result))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.subtract(other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.multiply(other)


def _binomial2(n: int) -> int:
    return n * (n - 1) // 2 if n >= 2 else 0


def triangular_series(precision: int) -> TruncatedSeries:
    """Sum over i >= 0 of x^(i(i+1)/2)."""
    exponents = []
    i = 0
    while i * (i + 1) // 2 < precision:
        exponents.append(i * (i + 1) // 2)
        i += 1
    return TruncatedSeries.from_exponents(exponents, precision)


def triangular_series_squared(precision: int) -> TruncatedSeries:
    """Ordered pairs of triangular numbers, counted by their sum."""
    t = triangular_series(precision)
    return t * t


def gf_rectangle_fountains(precision: int) -> TruncatedSeries:
    """
    Fountains whose missing coins form a rectangle: one full triangle per
    bottom width, plus a union of two triangles with a shared corner
    triangle removed for each (i, j, l).
    """
    exponents = []
    i = 1
    while _binomial2(i) < precision:
        exponents.append(_binomial2(i))
        i += 1
    i = 1
    # for fixed i, j the smallest exponent is C(i+1,2) + min(i, j) >= C(i+1,2) + 1
    while _binomial2(i + 1) + 1 < precision:
        j = 1
        while _binomial2(j + 1) + 1 < precision:
            base = _binomial2(i + 1) + _binomial2(j + 1)
            for ell in range(min(i, j)):
                exponents.append(base - _binomial2(ell + 1))
            j += 1
        i += 1
    return TruncatedSeries.from_exponents(exponents, precision)


def gf_pascal_without_first_column(precision: int) -> TruncatedSeries:
    """Sum over n >= 0 of x^(n(n+3)/2) ((x+1)^(n+2) - x^(n+2))."""
    coefficients = [0] * precision
    n = 0
    while n * (n + 3) // 2 < precision:
        base = n * (n + 3) // 2
        for j in range(n + 2):
            if base + j < precision:
                coefficients[base + j] += math.comb(n + 2, j)
        n += 1
    return TruncatedSeries(tuple(coefficients))


def gf_second_elementary(precision: int) -> TruncatedSeries:
    """
    Finite sequences of positive integers of length other than 1, counted
    by their second elementary symmetric function e2.

    Appending a part a to a sequence with sum S raises e2 by a*S, so every
    extension past the first part strictly increases e2 and the search
    below the precision is finite.
    """
    coefficients = [0] * precision
    coefficients[0] += 1  # the empty sequence

    def extend(total: int, e2: int, length: int) -> None:
        if length >= 2:
            coefficients[e2] += 1
        a = 1
        while e2 + a * total < precision:
            extend(total + a, e2 + a * total, length + 1)
            a += 1

    for first in range(1, precision):
        extend(first, 0, 1)
    return TruncatedSeries(tuple(coefficients))


def gf_pascal_diagonals(precision: int) -> TruncatedSeries:
    """1 + sum over d >= 3 of x^C(d-1,2) * sum_{n=2..d} C(n, d-n) x^(n-2)."""
    coefficients = [0] * precision
    coefficients[0] += 1
    d = 3
    while _binomial2(d - 1) < precision:
        base = _binomial2(d - 1)
        for n in range(2, d + 1):
            e = base + n - 2
            if e < precision:
                coefficients[e] += math.comb(n, d - n)
        d += 1
    return TruncatedSeries(tuple(coefficients))


def gf_pascal_zero_one(precision: int) -> TruncatedSeries:
    """Sum over i >= 0 of x^(i(i+1)/2) + x^((i+1)(i+4)/2)."""
    exponents = []
    i = 0
    while i * (i + 1) // 2 < precision:
        exponents.append(i * (i + 1) // 2)
        exponents.append((i + 1) * (i + 4) // 2)
        i += 1
    return TruncatedSeries.from_exponents(exponents, precision)


def gf_fountain(precision: int) -> TruncatedSeries:
    """
    Fountains of coins by number of coins, from the continued fraction
    1/(1 - x/(1 - x^2/(1 - x^3/(...)))) evaluated bottom-up.

    Levels x^j with j >= precision vanish, so the evaluation starts at
    depth precision - 1.
    """
    one = TruncatedSeries.one(precision)
    tail = one
    for depth in range(precision - 1, 0, -1):
        tail = (one - TruncatedSeries.monomial(depth, precision) * tail).reciprocal()
    return tail


@dataclass(frozen=True)
class OffsetReport:
    """Result of aligning a series with a count sequence: coefficient(k) = sequence(k + offset)."""

    offset: Optional[int]
    matched_range: Tuple[int, int]
    candidates: Tuple[int, ...] = ()
    diff: Tuple[Tuple[int, int, int], ...] = field(default=())


def find_offset(series_values: Dict[int, int], reference_values: Dict[int, int], max_shift: int = 2, min_overlap: int = 4) -> OffsetReport:
    """
    Find the unique shift o with |o| <= max_shift such that
    series_values[k] == reference_values[k + o] wherever both exist.

    Returns an OffsetReport whose offset is None when no shift, or more
    than one, fits; the diff then lists (k, series, reference) at shift 0.
    """
    fits = []
    for o in range(-max_shift, max_shift + 1):
        overlap = [k for k in sorted(series_values) if k + o in reference_values]
        if len(overlap) < min_overlap:
            continue
        if all(series_values[k] == reference_values[k + o] for k in overlap):
            fits.append((o, overlap[0], overlap[-1]))
    if len(fits) == 1:
        o, first, last = fits[0]
        return OffsetReport(offset=o, matched_range=(first, last), candidates=(o,))
    diff = tuple(
        (k, series_values[k], reference_values[k])
        for k in sorted(series_values)
        if k in reference_values and series_values[k] != reference_values[k]
    )
    if fits:
        logger.warning(f"Ambiguous offset: shifts {[f[0] for f in fits]} all fit")
    else:
        logger.warning("No constant offset aligns the series with the reference")
    return OffsetReport(offset=None, matched_range=(0, -1), candidates=tuple(f[0] for f in fits), diff=diff)


def pin_offset(series: TruncatedSeries, reference: CountReport) -> OffsetReport:
    """
    Align a generating function with a count sequence.

    Args:
        series: the generating function
        reference: a CountReport with at least four terms

    Returns:
        OffsetReport with offset o such that series.coefficient(k) = reference(k + o)
    """
    if len(reference.terms) < 4:
        raise ValueError("pin_offset needs a reference with at least four terms")
    series_values = dict(enumerate(series.coefficients))
    return find_offset(series_values, reference.as_dict())
