import tempfile
from fractions import Fraction
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from apps.blockmoves.distances import average_moves_zero, expected_moves_exact
from apps.blockmoves.models import BlockMoveKind
from apps.permutations.exceptions import InvalidInputError

from .estimation import (
    build_estimate_model,
    empirical_double_probability,
    expected_value_model,
    move_count_model,
    psi,
    sigma,
)
from .models import PsiMode

PT, ST = BlockMoveKind.PREFIX, BlockMoveKind.SUFFIX

CACHE_DIR = tempfile.mkdtemp(prefix="padj-test-")

# published predictions per exact limit, n -> value
PREDICTED_MOVES = {
    6: dict(zip(range(7, 17), [4.21, 4.81, 5.43, 6.07, 6.71, 7.37, 8.02, 8.69, 9.35, 10.01])),
    7: dict(zip(range(8, 17), [4.83, 5.46, 6.08, 6.72, 7.37, 8.03, 8.69, 9.35, 10.01])),
    8: dict(zip(range(9, 17), [5.47, 6.10, 6.73, 7.38, 8.03, 8.69, 9.35, 10.01])),
}
PREDICTED_EXPECTED = {
    6: dict(zip(range(7, 17), [3.65, 4.23, 4.82, 5.44, 6.07, 6.72, 7.37, 8.03, 8.69, 9.35])),
    7: dict(zip(range(8, 17), [4.26, 4.86, 5.46, 6.09, 6.73, 7.38, 8.03, 8.69, 9.35])),
    8: dict(zip(range(9, 17), [4.89, 5.50, 6.11, 6.74, 7.38, 8.03, 8.69, 9.35])),
}


def near(value, expected, tolerance=0.05):
    return abs(float(value) - expected) <= tolerance


class SigmaPsiTests(SimpleTestCase):
    def test_sigma(self):
        self.assertEqual(sigma(5), Fraction(2, 5))
        self.assertAlmostEqual(float(sigma(10)), 0.47778, places=5)
        values = [sigma(n) for n in range(3, 60)]
        self.assertEqual(values, sorted(set(values)))
        self.assertLess(values[-1], Fraction(1, 2))

    def test_sigma_needs_three(self):
        with self.assertRaises(InvalidInputError):
            sigma(2)

    def test_psi(self):
        self.assertEqual(psi(4), Fraction(3, 2))
        self.assertEqual(psi(5, PsiMode.SIZED), Fraction(7, 5))
        self.assertAlmostEqual(float(psi(9, PsiMode.SIZED)), 1.47222, places=5)


class EmpiricalDoubleTests(SimpleTestCase):
    def test_small_sizes(self):
        self.assertEqual(empirical_double_probability(3), 0)
        self.assertEqual(empirical_double_probability(4), Fraction(2, 3))

    def test_gap_to_sigma_at_eight(self):
        # sigma assumes symbols are positioned uniformly, which is only roughly true
        self.assertLess(abs(float(empirical_double_probability(8) - sigma(8))), 0.05)

    @tag("slow")
    def test_gap_to_sigma_at_nine(self):
        self.assertLess(abs(float(empirical_double_probability(9) - sigma(9))), 0.04)


class MoveCountModelTests(SimpleTestCase):
    def test_requires_exact_base(self):
        with self.assertRaises(InvalidInputError):
            move_count_model(2, {2: 1}, 10)
        with self.assertRaises(InvalidInputError):
            move_count_model(4, {2: 1, 3: 2}, 10)
        with self.assertRaises(InvalidInputError):
            move_count_model(4, {2: 1, 3: 2, 4: Fraction(7, 3)}, 4)

    def test_hand_computed_step(self):
        base = move_count_model(3, {2: 1, 3: 2}, 4)
        # j = 2.5: x = 1 + (1 + 2)/2, y = 3 / 1.5
        self.assertEqual(base[4], (Fraction(5, 2) + 2) / 2)


@override_settings(PADJ_CACHE_DIR=CACHE_DIR)
class EstimateModelTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.models = {limit: build_estimate_model(PT, limit, 16) for limit in (6, 7, 8)}

    def test_published_predictions(self):
        for limit, row in PREDICTED_MOVES.items():
            for n, published in row.items():
                value = self.models[limit].base[n]
                self.assertTrue(near(value, published), msg=f"limit={limit} n={n}: {float(value):.3f}")

    def test_published_expected_values(self):
        for limit, row in PREDICTED_EXPECTED.items():
            expected = expected_value_model(self.models[limit])
            for n, published in row.items():
                self.assertTrue(near(expected[n], published), msg=f"limit={limit} n={n}: {float(expected[n]):.3f}")

    def test_is_exact(self):
        model = self.models[7]
        self.assertTrue(model.is_exact(7))
        self.assertFalse(model.is_exact(8))
        self.assertEqual([n for n in range(2, 17) if not model.is_exact(n)], sorted(model.predictions))

    def test_exact_part_is_verbatim(self):
        model = self.models[6]
        self.assertEqual(set(model.predictions), set(range(7, 17)))
        for n in range(2, 7):
            self.assertEqual(model.base[n], average_moves_zero(n, PT))
        self.assertEqual(model.base[0], 0)
        self.assertEqual(model.base[1], 0)

    def test_monotone(self):
        for model in self.models.values():
            values = [model.base[n] for n in range(0, 17)]
            self.assertEqual(values, sorted(values))
            predicted = [model.base[n] for n in range(model.limit + 1, 17)]
            self.assertEqual(len(set(predicted)), len(predicted))

    def test_limits_agree_far_out(self):
        for n in range(11, 17):
            values = [float(self.models[limit].base[n]) for limit in (6, 7, 8)]
            self.assertLess(max(values) - min(values), 0.05, msg=f"n={n}")

    def test_expected_values(self):
        expected = {limit: expected_value_model(model) for limit, model in self.models.items()}
        self.assertEqual(expected[6][2], Fraction(1, 2))
        self.assertTrue(near(expected[8][9], 4.89))
        self.assertTrue(near(expected[6][16], 9.35))

    def test_exact_base_reproduces_exact_expectations(self):
        expected = expected_value_model(self.models[8])
        for n in range(2, 9):
            self.assertEqual(expected[n], expected_moves_exact(n, PT))

    def test_suffix_matches_prefix(self):
        prefix = build_estimate_model(PT, 6, 10)
        suffix = build_estimate_model(ST, 6, 10)
        self.assertEqual(prefix.base, suffix.base)

    def test_transpositions_are_not_modelled(self):
        with self.assertRaises(InvalidInputError):
            build_estimate_model(BlockMoveKind.TRANSPOSITION, 6, 10)

    def test_sized_psi_differs(self):
        sized = build_estimate_model(PT, 6, 10, PsiMode.SIZED)
        self.assertNotEqual(sized.base[10], self.models[6].base[10])
        self.assertEqual(sized.psi_mode, PsiMode.SIZED)


@override_settings(PADJ_CACHE_DIR=CACHE_DIR)
class EstimateCommandTests(SimpleTestCase):
    def call(self, *args):
        out, err = StringIO(), StringIO()
        call_command("estimate", *args, stdout=out, stderr=err)
        return out.getvalue()

    def sections(self, text):
        parts = {}
        name = None
        for line in text.splitlines():
            if line.startswith("# "):
                name = line[2:]
                parts[name] = []
            elif line and name:
                parts[name].append(line.split(","))
        return parts

    def test_csv_layout(self):
        out = self.call("--move", "pt", "--limit", "6", "--n-max", "10", "--search-limit", "7")
        parts = self.sections(out)
        self.assertEqual(list(parts), ["moves_irreducible", "expected_moves"])
        header, *rows = parts["moves_irreducible"]
        self.assertEqual(header, ["n", "computed", "pred_i6"])
        self.assertEqual(rows[0], ["2", "1.00", ""])
        self.assertEqual([row[0] for row in rows if row[2]], [str(n) for n in range(7, 11)])
        self.assertEqual(rows[-1][0], "10")
        self.assertEqual(rows[-1][1], "")
        self.assertEqual(parts["expected_moves"][1], ["2", "0.50", ""])

    def test_suffix_output_matches_prefix(self):
        args = ["--limit", "6", "--n-max", "10", "--search-limit", "7"]
        self.assertEqual(self.call("--move", "pt", *args), self.call("--move", "st", *args))

    def test_limit_above_search_limit(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--limit", "8", "--search-limit", "7")
        self.assertEqual(cm.exception.returncode, 1)

    def test_n_max_must_exceed_limit(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--limit", "6", "--n-max", "6", "--search-limit", "7")
        self.assertEqual(cm.exception.returncode, 1)
        self.assertIn("n-max must exceed", str(cm.exception))

    def test_json(self):
        out = self.call("--limit", "6", "--n-max", "8", "--search-limit", "7", "--format", "json")
        self.assertIn('"pred_i6"', out)
