import unittest
import sys
import os

from hypothesis import given, strategies as st

# Add the parent directory to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from invperm.services.oracle import avoider_sequence
from invperm.services.perm_core import PatternSet
from invperm.services.reports import CountReport
from invperm.services.series_gf import (
    TruncatedSeries,
    find_offset,
    gf_fountain,
    gf_pascal_diagonals,
    gf_pascal_without_first_column,
    gf_pascal_zero_one,
    gf_rectangle_fountains,
    gf_second_elementary,
    pin_offset,
    triangular_series,
    triangular_series_squared,
)
from invperm.utils.errors import PrecisionError


def coefficients(series, count):
    return [series.coefficient(k) for k in range(count)]


same_precision_triples = st.integers(min_value=1, max_value=8).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(-20, 20), min_size=n, max_size=n) for _ in range(3)])
)


class TestTruncatedSeries(unittest.TestCase):

    def test_arithmetic(self):
        one_plus_x = TruncatedSeries((1, 1, 0, 0))
        self.assertEqual((one_plus_x * one_plus_x).coefficient(1), 2)
        self.assertEqual(TruncatedSeries.monomial(3, 5).coefficient(3), 1)
        self.assertEqual(triangular_series(10).multiply(triangular_series(10)).coefficient(2), 1)
        self.assertEqual((one_plus_x - one_plus_x), TruncatedSeries.zero(4))

    def test_precision_is_the_minimum(self):
        short = TruncatedSeries((1, 1))
        long = TruncatedSeries((1, 2, 3, 4))
        self.assertEqual((short + long).precision, 2)
        self.assertEqual((short * long).precision, 2)
        self.assertEqual(long.truncate(9).precision, 4)

    def test_out_of_precision(self):
        with self.assertRaises(PrecisionError):
            TruncatedSeries.one(3).coefficient(3)
        with self.assertRaises(IndexError):
            TruncatedSeries.one(3).coefficient(-1)
        with self.assertRaises(ValueError):
            TruncatedSeries(())

    def test_reciprocal(self):
        one_minus_x = TruncatedSeries((1, -1, 0, 0, 0))
        self.assertEqual(one_minus_x.reciprocal().coefficients, (1, 1, 1, 1, 1))
        with self.assertRaises(ValueError):
            TruncatedSeries((2, 1)).reciprocal()

    @given(same_precision_triples)
    def test_multiplication_laws(self, triple):
        a, b, c = (TruncatedSeries(tuple(values)) for values in triple)
        self.assertEqual(a * b, b * a)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)


class TestGeneratingFunctions(unittest.TestCase):

    def test_rectangle_fountains(self):
        self.assertEqual(coefficients(gf_rectangle_fountains(10), 5), [1, 1, 1, 1, 2])

    def test_pascal_without_first_column(self):
        self.assertEqual(
            coefficients(gf_pascal_without_first_column(14), 14),
            [1, 2, 1, 3, 3, 1, 4, 6, 4, 1, 5, 10, 10, 5],
        )

    def test_second_elementary(self):
        series = gf_second_elementary(15)
        self.assertEqual(series.coefficient(0), 1)
        self.assertEqual(series.coefficient(1), 1)
        self.assertEqual(series.coefficient(3), 3)
        self.assertEqual(coefficients(series, 15), [1, 1, 2, 3, 3, 5, 5, 5, 7, 10, 5, 11, 11, 11, 15])

    def test_pascal_diagonals(self):
        self.assertEqual(coefficients(gf_pascal_diagonals(13), 13), [1, 2, 1, 1, 3, 1, 0, 3, 4, 1, 0, 1, 6])

    def test_pascal_zero_one(self):
        self.assertEqual(coefficients(gf_pascal_zero_one(11), 11), [1, 1, 1, 1, 0, 1, 1, 0, 0, 1, 1])

    def test_triangular_series_squared(self):
        series = triangular_series_squared(51)
        self.assertEqual(series.coefficient(0), 1)
        self.assertEqual(series.coefficient(2), 1)
        self.assertEqual(series.coefficient(4), 2)
        triangular = [i * (i + 1) // 2 for i in range(11)]
        for k in range(51):
            pairs = sum(1 for a in triangular for b in triangular if a + b == k)
            self.assertEqual(series.coefficient(k), pairs, f"k={k}")

    def test_fountain_continued_fraction(self):
        self.assertEqual(coefficients(gf_fountain(11), 11), [1, 1, 1, 2, 3, 5, 9, 15, 26, 45, 78])
        self.assertEqual(gf_fountain(1).coefficients, (1,))


class TestOffsets(unittest.TestCase):

    def reference(self, text, k_max=8):
        patterns = PatternSet.parse(text)
        return avoider_sequence(patterns, k_max)

    def test_pin_offsets_against_the_oracle(self):
        self.assertEqual(pin_offset(gf_rectangle_fountains(9), self.reference("123,231")).offset, 0)
        self.assertEqual(pin_offset(gf_pascal_without_first_column(8), self.reference("123,132")).offset, 1)
        self.assertEqual(pin_offset(gf_pascal_diagonals(8), self.reference("123,132,213")).offset, 1)
        self.assertEqual(pin_offset(gf_pascal_zero_one(9), self.reference("123,132,213,231")).offset, 0)

    def test_matched_range(self):
        report = pin_offset(gf_pascal_without_first_column(8), self.reference("123,132"))
        self.assertEqual(report.matched_range, (0, 7))

    def test_reference_needs_four_terms(self):
        short = CountReport.from_values(["12"], "oracle", {0: 1, 1: 1, 2: 0})
        with self.assertRaises(ValueError):
            pin_offset(triangular_series(5), short)

    def test_no_shift_fits(self):
        report = find_offset({0: 1, 1: 5, 2: 7, 3: 9, 4: 11}, {0: 1, 1: 2, 2: 3, 3: 4, 4: 5})
        self.assertIsNone(report.offset)
        self.assertEqual(report.candidates, ())
        self.assertEqual(report.diff[0], (1, 5, 2))

    def test_ambiguous_shift(self):
        constant = {k: 1 for k in range(10)}
        report = find_offset(constant, constant)
        self.assertIsNone(report.offset)
        self.assertEqual(report.candidates, (-2, -1, 0, 1, 2))


class TestSkewRunDescription(unittest.TestCase):
    """Both Pascal-type classes are skew sums of increasing runs of length 1 or 2."""

    def skew_run_counts(self, k_max, only_last_run_long=False):
        counts = [0] * (k_max + 1)
        counts[0] = 1  # the singleton

        def extend(runs):
            n = sum(runs)
            inv = (n * n - sum(r * r for r in runs)) // 2
            if inv > k_max:
                return
            if len(runs) >= 2 and (not only_last_run_long or all(r == 1 for r in runs[:-1])):
                counts[inv] += 1
            for r in (1, 2):
                extend(runs + [r])

        extend([1])
        extend([2])
        return counts

    def test_pascal_diagonals_shifted_by_one(self):
        counts = self.skew_run_counts(13)
        series = gf_pascal_diagonals(13)
        self.assertEqual([series.coefficient(k - 1) for k in range(1, 14)], counts[1:])
        self.assertEqual(counts[7], 0)
        self.assertEqual(counts[11], 0)

    def test_pascal_zero_one_aligned(self):
        counts = self.skew_run_counts(20, only_last_run_long=True)
        self.assertEqual(coefficients(gf_pascal_zero_one(21), 21), counts)


if __name__ == '__main__':
    unittest.main()
