import unittest
from unittest.mock import patch
import sys
import os

# Add the parent directory to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from invperm.services.bijections import WalkStep, coin_removal, table_to_partition, verify_map
from invperm.services.comb_objects import EvenFountain, Fountain, Partition, PartitionMode, even_fountains_of_size, partitions_of
from invperm.services.fast_counts import count_i321
from invperm.services.oracle import AvoiderQuery, enumerate_avoiders
from invperm.services.perm_core import PatternSet, Permutation
from invperm.utils.errors import DomainError


def even(*rows):
    return EvenFountain.of(Fountain.from_rows(*rows))


class TestCoinRemoval(unittest.TestCase):

    def test_outputs_for_size_three(self):
        self.assertEqual(coin_removal(even((1, 2, 3), (1, 2))).output, (3, 0))
        self.assertEqual(coin_removal(even((1, 2, 3), (1,))).output, (2, 1, 0))
        self.assertEqual(coin_removal(even((1, 2, 3))).output, (1, 1, 1, 0))
        self.assertEqual(coin_removal(even((1, 2, 3), (2,))).output, (1, 2, 0))

    def test_single_walk_steps(self):
        trace = coin_removal(even((1, 2, 3), (1, 2)))
        self.assertEqual(len(trace.walks), 1)
        self.assertEqual(trace.walks[0], (
            WalkStep(0, 1, "red", "up"),
            WalkStep(1, 1, "black", "down"),
            WalkStep(0, 2, "red", "up"),
            WalkStep(1, 2, "black", "down"),
            WalkStep(0, 3, "red", "stop"),
        ))

    def test_log_format(self):
        trace = coin_removal(even((1, 2, 3), (1,)))
        self.assertEqual(
            trace.to_log(),
            "0 1 red up\n1 1 black down\n0 2 red stop\n--\n0 3 red stop\noutput 2 1 0\n",
        )

    def test_emit_skipped(self):
        self.assertEqual(coin_removal(even((1, 2, 3), (1, 2)), emit_skipped=True).output, (3, 0, 0, 0))
        self.assertEqual(coin_removal(even((1, 2, 3)), emit_skipped=True).output, (1, 1, 1, 0))

    def test_output_sums_to_size(self):
        for s in range(8):
            for f in even_fountains_of_size(s):
                trace = coin_removal(f)
                self.assertEqual(sum(trace.output), s)
                self.assertEqual(trace.output[-1], 0)

    def test_injective_up_to_size_three(self):
        for s in range(4):
            fountains = even_fountains_of_size(s)
            report = verify_map(fountains, lambda f: coin_removal(f).output)
            self.assertTrue(report.injective)
            self.assertEqual(report.image_size, count_i321(s))

    def test_collision_at_size_four(self):
        first = even((1, 2, 3, 4), (1, 3))
        second = even((1, 2, 3), (1, 2), (1,))
        self.assertEqual(first.size, 4)
        self.assertEqual(second.size, 4)
        self.assertEqual(coin_removal(first).output, (2, 2, 0))
        self.assertEqual(coin_removal(second).output, (2, 2, 0))

        fountains = even_fountains_of_size(4)
        report = verify_map(fountains, lambda f: coin_removal(f).output)
        self.assertFalse(report.injective)
        self.assertIn((2, 2, 0), [output for output, _ in report.collisions])

    def test_emit_skipped_separates_the_size_four_pair(self):
        self.assertEqual(coin_removal(even((1, 2, 3, 4), (1, 3)), emit_skipped=True).output, (2, 0, 2, 0, 0))
        self.assertEqual(coin_removal(even((1, 2, 3), (1, 2), (1,)), emit_skipped=True).output, (2, 2, 0, 0))

    def test_emit_skipped_is_injective_up_to_size_eight(self):
        for s in range(9):
            report = verify_map(even_fountains_of_size(s), lambda f: coin_removal(f, emit_skipped=True).output)
            self.assertTrue(report.injective, f"s={s}: {report.summary()}")
            self.assertEqual(report.image_size, count_i321(s), f"s={s}")

    def test_flagged_events_appear_in_the_log(self):
        for s in range(5):
            for f in even_fountains_of_size(s):
                trace = coin_removal(f)
                self.assertEqual(len(trace.flagged_events), trace.to_log().count("# flagged"))

    @patch('invperm.utils.logging_utils.DEBUG_MODE', True)
    def test_debug_logging(self):
        with self.assertLogs('invperm.services.bijections', level='DEBUG') as captured:
            coin_removal(even((1, 2, 3), (1,)))
        self.assertTrue(any("(2, 1, 0)" in line for line in captured.output))


class TestTableToPartition(unittest.TestCase):

    def test_known_tables(self):
        self.assertEqual(table_to_partition(Permutation.parse("4213")), Partition((3, 1)))
        self.assertEqual(table_to_partition(Permutation.parse("23451")), Partition((1, 1, 1, 1)))
        self.assertEqual(table_to_partition(Permutation.parse("1")), Partition(()))

    def test_domain(self):
        with self.assertRaises(DomainError):
            table_to_partition(Permutation.parse("2143"))
        with self.assertRaises(DomainError):
            table_to_partition(Permutation.parse("3142"))

    def test_bijective_onto_partition_families(self):
        families = (("132", PartitionMode.ALL), ("132,231", PartitionMode.DISTINCT), ("132,321", PartitionMode.EQUAL_PARTS))
        for text, mode in families:
            for k in range(7):
                domain = enumerate_avoiders(AvoiderQuery(k, PatternSet.parse(text)))
                report = verify_map(domain, table_to_partition, partitions_of(k, mode))
                self.assertTrue(report.bijective, f"{text} k={k}: {report.summary()}")

    def test_distinct_example(self):
        domain = enumerate_avoiders(AvoiderQuery(4, PatternSet.parse("132,231")))
        self.assertEqual({str(p) for p in domain}, {"4213", "51234"})
        pairs = dict(verify_map(domain, table_to_partition).pairs)
        self.assertEqual(pairs[Permutation.parse("51234")], Partition((4,)))


class TestVerifyMap(unittest.TestCase):

    def test_even_fountains_of_size_three(self):
        report = verify_map(even_fountains_of_size(3), lambda f: coin_removal(f).output)
        self.assertEqual(report.domain_size, 4)
        self.assertEqual(report.image_size, 4)
        self.assertEqual({y for _, y in report.pairs}, {(3, 0), (2, 1, 0), (1, 2, 0), (1, 1, 1, 0)})

    def test_collisions_and_difference(self):
        report = verify_map(range(4), lambda x: x % 2, codomain=[0, 1, 2])
        self.assertEqual(report.image_size, 2)
        self.assertEqual(len(report.collisions), 2)
        self.assertEqual(report.missing, (2,))
        self.assertEqual(report.extra, ())
        self.assertFalse(report.bijective)
        self.assertIn("missing 1", report.summary())

    def test_bijective_needs_a_codomain(self):
        report = verify_map([1, 2], lambda x: -x)
        self.assertTrue(report.injective)
        self.assertFalse(report.bijective)


if __name__ == '__main__':
    unittest.main()
