import time
import unittest
from unittest.mock import patch
import sys
import os

import pytest

# Add the parent directory to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from invperm.services import fast_counts
from invperm.services.fast_counts import (
    ClosedFormFamily,
    MemoTable,
    closed_form,
    closed_form_sequence,
    count_i123,
    count_i123_by_subtraction,
    count_i321,
    count_i321_sequence,
    experimental_123_recurrence,
    experimental_123_total,
    gorenstein_count,
    gorenstein_recurrence,
    gorenstein_sequence,
    parallelogram_recurrence,
    unique_avoider_231_321,
)
from invperm.services.perm_core import Permutation
from invperm.utils.errors import OracleLimitError

POLYOMINOES = [1, 1, 2, 4, 9, 20, 46, 105, 242, 557, 1285, 2964, 6842]
GORENSTEIN = [1, 1, 2, 3, 3, 5, 5, 5, 7, 10, 5, 11, 11, 11, 15]


class TestMemoTable(unittest.TestCase):

    def test_rows_are_write_once(self):
        table = MemoTable("t", 2)
        table.put_row(0, [1, 2])
        self.assertEqual(table.get(0, 1), 2)
        with self.assertRaises(ValueError):
            table.put_row(0, [3])
        with self.assertRaises(KeyError):
            table.row(1)
        with self.assertRaises(IndexError):
            table.get(0, 2)


class TestParallelogramRecurrence(unittest.TestCase):

    def test_small_values(self):
        self.assertEqual(parallelogram_recurrence(0, 5), 1)
        self.assertEqual(parallelogram_recurrence(3, 1), 4)
        self.assertEqual(parallelogram_recurrence(4, 1), 9)
        # a_{4,1} = a_{3,1} + a_{2,2} + a_{1,3} + a_{0,4}
        self.assertEqual(parallelogram_recurrence(2, 2), 3)
        self.assertEqual(parallelogram_recurrence(1, 3), 1)

    def test_constant_beyond_the_diagonal(self):
        for n in range(1, 8):
            self.assertEqual(parallelogram_recurrence(n, n), parallelogram_recurrence(n, n + 3))

    def test_counts(self):
        self.assertEqual([count_i321(k) for k in range(13)], POLYOMINOES)
        self.assertEqual(list(count_i321_sequence(12).values()), POLYOMINOES)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            parallelogram_recurrence(2, 0)
        with self.assertRaises(ValueError):
            count_i321(-1)

    @pytest.mark.slow
    def test_large_k_is_quadratic(self):
        start = time.time()
        value = count_i321(2000)
        self.assertGreater(value, 0)
        self.assertLess(time.time() - start, 10)


class TestGorenstein(unittest.TestCase):

    def test_base_cases_and_small_counts(self):
        for d in range(6):
            self.assertEqual(gorenstein_recurrence(0, d), 1)
        self.assertEqual(gorenstein_recurrence(-1, 2), 0)
        self.assertEqual(gorenstein_count(3), 3)
        self.assertEqual(gorenstein_count(4), 3)

    def test_sequence(self):
        self.assertEqual([gorenstein_count(n) for n in range(15)], GORENSTEIN)
        self.assertEqual(list(gorenstein_sequence(14).values()), GORENSTEIN)

    def test_plain_and_optimized_agree(self):
        for n in range(41):
            self.assertEqual(gorenstein_count(n, optimized=False), gorenstein_count(n, optimized=True))

    @pytest.mark.slow
    def test_plain_and_optimized_agree_to_200(self):
        plain = [gorenstein_count(n, optimized=False) for n in (150, 199, 200)]
        optimized = [gorenstein_count(n) for n in (150, 199, 200)]
        self.assertEqual(plain, optimized)

    @pytest.mark.slow
    def test_optimized_at_500(self):
        start = time.time()
        self.assertGreater(gorenstein_count(500), 0)
        self.assertLess(time.time() - start, 60)


class TestCount123(unittest.TestCase):

    def test_small_counts(self):
        self.assertEqual(count_i123(0), 1)
        self.assertEqual(count_i123(3), 3)
        self.assertEqual(count_i123(4), 5)

    def test_subtraction_path_agrees(self):
        for k in range(8):
            self.assertEqual(count_i123_by_subtraction(k), count_i123(k))

    @patch.object(fast_counts, "COUNT_123_MAX_K", 3)
    def test_bound(self):
        with self.assertRaises(OracleLimitError):
            count_i123(4)

    def test_printed_recurrence_values(self):
        self.assertEqual(experimental_123_recurrence(0, 0, 0), 1)
        self.assertEqual([experimental_123_total(k) for k in range(3)], [2, 1, 2])


class TestClosedForms(unittest.TestCase):

    def test_single_values(self):
        self.assertEqual(closed_form(ClosedFormFamily.PARTITIONS, 4), 5)
        self.assertEqual(closed_form(ClosedFormFamily.ODD_DIVISORS, 4), 1)
        self.assertEqual(closed_form(ClosedFormFamily.TRIANGULAR_CHAR, 5), 0)

    def test_conventions_at_zero(self):
        for family in ClosedFormFamily:
            self.assertEqual(closed_form(family, 0), 1)

    def test_sequences(self):
        self.assertEqual(list(closed_form_sequence("partitions", 10).values()), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])
        self.assertEqual(list(closed_form_sequence("distinct-partitions", 10).values()), [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10])
        self.assertEqual(list(closed_form_sequence("divisors", 12).values())[1:], [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6])
        self.assertEqual(list(closed_form_sequence("odd-divisors", 9).values())[1:], [1, 1, 2, 1, 2, 2, 2, 1, 3])
        self.assertEqual(list(closed_form_sequence("triangular-char", 10).values()), [1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1])
        self.assertEqual(set(closed_form_sequence("constant-one", 5).values()), {1})
        self.assertEqual(closed_form(ClosedFormFamily.PARTITIONS, 60), 966467)

    def test_unknown_family(self):
        with self.assertRaises(ValueError):
            closed_form_sequence("squares", 3)


class TestUniqueAvoider(unittest.TestCase):

    def test_witnesses(self):
        self.assertEqual(unique_avoider_231_321(0), Permutation.of(1))
        self.assertEqual(str(unique_avoider_231_321(2)), "312")
        self.assertEqual(str(unique_avoider_231_321(3)), "4123")


if __name__ == '__main__':
    unittest.main()
