import json
from fractions import Fraction
from io import StringIO
from math import comb, e, factorial

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from apps.permutations.arrays import class_sizes
from apps.permutations.exceptions import InvalidInputError
from apps.permutations.models import AdjacencyType

from .identities import (
    circular_zero_oracle,
    copies_count,
    first_mismatch,
    irreducible_fraction,
    irreducible_fraction_estimate,
    search_workload,
    tanny_count,
    vector_alphabet_oracle,
    vector_alphabet_size,
    whitworth_zero_count,
)
from .recurrences import build_count_table, derangements

T1, T2, T3, T4 = AdjacencyType


class CountTableTests(SimpleTestCase):
    def test_published_rows(self):
        t1 = build_count_table(14, T1)
        self.assertEqual([t1.f(5, k) for k in range(3)], [53, 44, 18])
        self.assertEqual(t1.f(14, 0), 34361893981)
        self.assertEqual(build_count_table(5, T2).row(5), (44, 45, 20, 10, 0, 1))
        self.assertEqual(build_count_table(6, T4).row(6), (229, 252, 168, 35, 35, 0, 0, 1))

    def test_small_rows(self):
        self.assertEqual(build_count_table(2, T2).row(2), (1, 0, 1))
        self.assertEqual(build_count_table(4, T4).row(4), (8, 5, 10, 0, 0, 1))

    def test_row_sums_are_factorials(self):
        for t in AdjacencyType:
            table = build_count_table(20, t)
            self.assertIsNone(table.check_row_sums())
            self.assertEqual(len(table.row(20)), 20 + t.offset + 1)

    def test_type2_and_type3_agree(self):
        self.assertEqual(build_count_table(14, T2).rows, build_count_table(14, T3).rows)

    def test_zero_columns(self):
        for n in range(2, 15):
            self.assertEqual(build_count_table(14, T2).f(n, n - 1), 0)
            self.assertEqual(build_count_table(14, T4).f(n, n), 0)
            self.assertEqual(build_count_table(14, T4).f(n, n - 1), 0)

    def test_type2_first_columns_differ_by_one(self):
        table = build_count_table(14, T2)
        for n in range(3, 15):
            self.assertEqual(abs(table.f(n, 0) - table.f(n, 1)), 1)

    def test_matches_oracle(self):
        for t in AdjacencyType:
            table = build_count_table(8, t)
            for n in range(1, 9):
                self.assertEqual(list(table.row(n)), class_sizes(n, t), msg=f"{t.label} n={n}")

    def test_rejects_tiny_tables(self):
        with self.assertRaises(InvalidInputError):
            build_count_table(1, T1)

    def test_out_of_range_is_zero(self):
        table = build_count_table(5, T1)
        self.assertEqual(table.f(5, 9), 0)
        self.assertEqual(table.f(6, 0), 0)
        self.assertEqual(table.f(3, -1), 0)


class ClosedFormTests(SimpleTestCase):
    def test_derangements(self):
        self.assertEqual([derangements(n) for n in range(7)], [1, 0, 1, 2, 9, 44, 265])

    def test_tanny(self):
        self.assertEqual(tanny_count(5, 1), 44)
        self.assertEqual(tanny_count(7, 2), 795)
        table = build_count_table(14, T1)
        for n in range(1, 15):
            for k in range(n):
                self.assertEqual(tanny_count(n, k), table.f(n, k))

    def test_whitworth(self):
        self.assertEqual(whitworth_zero_count(2), 1)
        self.assertEqual(whitworth_zero_count(5), 44)
        self.assertEqual(whitworth_zero_count(9), 133496)
        table = build_count_table(14, T3)
        for n in range(1, 15):
            self.assertEqual(whitworth_zero_count(n), table.f(n, 0))

    def test_circular_successions(self):
        table = build_count_table(8, T4)
        self.assertEqual(circular_zero_oracle(3), 3)
        for n in range(3, 9):
            self.assertEqual(circular_zero_oracle(n), n * table.f(n - 1, 0))


class IrreducibleFractionTests(SimpleTestCase):
    def test_example(self):
        self.assertEqual(irreducible_fraction(5, T1), Fraction(53, 120))

    def test_bounds_against_inverse_e(self):
        inverse_e = Fraction(1 / e)
        for n in range(2, 51):
            self.assertGreater(irreducible_fraction(n, T1), inverse_e)
        # alternating partial sums of the series for 1/e, within float reach of 1/e
        for n in range(2, 16):
            type2 = irreducible_fraction(n, T2)
            if n % 2:
                self.assertLess(type2, inverse_e)
            else:
                self.assertGreater(type2, inverse_e)
            self.assertEqual(type2, irreducible_fraction(n, T3))
        for n in range(3, 51):
            self.assertLess(irreducible_fraction(n, T4), inverse_e)

    def test_type4_lower_bounds(self):
        self.assertGreaterEqual(irreducible_fraction(20, T4), Fraction(34056, 100000))
        self.assertGreaterEqual(irreducible_fraction(50, T4), Fraction(35688, 100000))

    def test_independence_estimate(self):
        self.assertAlmostEqual(irreducible_fraction_estimate(20, T4), 0.34056, places=4)
        self.assertAlmostEqual(irreducible_fraction_estimate(50, T4), 0.35688, places=4)
        self.assertAlmostEqual(irreducible_fraction_estimate(10, T2), 0.9 ** 10)

    def test_search_workload(self):
        exact, estimate = search_workload(9, T2)
        self.assertEqual(exact, 133496)
        self.assertAlmostEqual(estimate, factorial(9) / e)
        self.assertLess(abs(exact - estimate), 1)


class CopiesCountTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(copies_count(5, 3, T1).copies, 6)
        self.assertEqual(copies_count(5, 3, T2).copies, 10)
        self.assertEqual(copies_count(5, 4, T4).copies, 6)

    def test_copies_times_irreducibles(self):
        for t in AdjacencyType:
            table = build_count_table(14, t)
            for n in range(2, 15):
                for k in range(2, n + 1):
                    c = copies_count(n, k, t).copies
                    self.assertEqual(c * table.f(k, 0), table.f(n, n - k), msg=f"{t.label} n={n} k={k}")

    def test_closed_form_patterns(self):
        for n in range(2, 15):
            for k in range(2, n + 1):
                self.assertEqual(copies_count(n, k, T2).copies, comb(n, k))
                self.assertEqual(copies_count(n, k, T4).copies, comb(n + 1, k + 1))

    def test_preconditions(self):
        with self.assertRaises(InvalidInputError):
            copies_count(5, 6, T1)
        with self.assertRaises(InvalidInputError):
            copies_count(5, 1, T2)  # no irreducible of size 1 under Type 2


class VectorAlphabetTests(SimpleTestCase):
    def test_small_values(self):
        self.assertEqual(vector_alphabet_size(3, T1), 5)
        self.assertEqual(vector_alphabet_size(3, T2), 4)
        self.assertEqual(vector_alphabet_size(2, T4), 2)

    def test_matches_oracle(self):
        for t in AdjacencyType:
            for n in range(1, 7):
                self.assertEqual(vector_alphabet_size(n, t), vector_alphabet_oracle(n, t))


class TablesCommandTests(SimpleTestCase):
    def call(self, *args, **options):
        out, err = StringIO(), StringIO()
        call_command("tables", *args, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def test_csv(self):
        out, _ = self.call("--type", "2", "--n-max", "2")
        self.assertEqual(out, "n,k,count\n1,0,0\n1,1,1\n2,0,1\n2,1,0\n2,2,1\n")

    def test_json_is_decimal_strings(self):
        out, _ = self.call("--type", "1", "--n-max", "14", "--format", "json")
        rows = json.loads(out)
        self.assertEqual(len(rows), 14)
        self.assertEqual(rows[13][0], "34361893981")

    def test_markdown_has_one_row_per_n(self):
        out, _ = self.call("--type", "1", "--n-max", "14", "--format", "markdown")
        self.assertEqual(len(out.strip().splitlines()), 2 + 14)
        self.assertIn("87178291200", out)  # 14!

    def test_checks_pass(self):
        _, err = self.call("--type", "4", "--n-max", "6", "--check", "oracle")
        self.assertIn("oracle check passed", err)
        self.call("--type", "1", "--n-max", "14", "--check", "tanny")
        self.call("--type", "3", "--n-max", "14", "--check", "whitworth")

    @override_settings(PADJ_ORACLE_LIMIT=6)
    def test_oracle_check_is_clamped(self):
        _, err = self.call("--type", "2", "--n-max", "10", "--check", "oracle")
        self.assertIn("limited to n <= 6", err)

    def test_check_must_fit_the_type(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--type", "4", "--n-max", "6", "--check", "tanny")
        self.assertEqual(cm.exception.returncode, 1)

    def test_invalid_n_max(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--type", "1", "--n-max", "1")
        self.assertEqual(cm.exception.returncode, 1)

    def test_first_mismatch_reports_location(self):
        table = build_count_table(6, T4)
        self.assertIsNone(first_mismatch(table, "oracle"))
        self.assertEqual(first_mismatch(build_count_table(6, T1), "whitworth")[:2], (1, 0))
