import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path
from unittest import mock

import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from apps.blockmoves.models import BlockMoveKind
from apps.counting.recurrences import build_count_table
from apps.permutations.exceptions import InvalidInputError, ResourceLimitError
from apps.permutations.models import AdjacencyType, Permutation

from .emitters import display_decimal, frame_to_markdown, render_count_table, render_frame, render_sections
from .forms import RunConfigForm
from .models import OutputFormat
from .verification import PropertyResult, run_verification

CACHE_DIR = tempfile.mkdtemp(prefix="padj-test-")

FRAME = pd.DataFrame({"n": [1, 10], "label": ["a", "bb"]})


class DisplayDecimalTests(SimpleTestCase):
    def test_half_to_even(self):
        self.assertEqual(display_decimal(Fraction(1, 8)), "0.12")
        self.assertEqual(display_decimal(Fraction(3, 8)), "0.38")
        self.assertEqual(display_decimal(Fraction(5, 8)), "0.62")

    def test_values(self):
        self.assertEqual(display_decimal(Fraction(7, 6)), "1.17")
        self.assertEqual(display_decimal(Fraction(34, 11)), "3.09")
        self.assertEqual(display_decimal(2), "2.00")
        self.assertEqual(display_decimal(None), "")


class RenderTests(SimpleTestCase):
    def test_csv(self):
        self.assertEqual(render_frame(FRAME, OutputFormat.CSV), "n,label\n1,a\n10,bb\n")

    def test_json(self):
        records = json.loads(render_frame(FRAME, OutputFormat.JSON))
        self.assertEqual(records, [{"n": 1, "label": "a"}, {"n": 10, "label": "bb"}])

    def test_markdown(self):
        self.assertEqual(
            frame_to_markdown(FRAME),
            "|  n | label |\n|---:|------:|\n|  1 |     a |\n| 10 |    bb |\n",
        )

    def test_unknown_format(self):
        with self.assertRaises(InvalidInputError):
            render_frame(FRAME, "xml")

    def test_sections(self):
        other = pd.DataFrame({"x": [2]})
        text = render_sections([("first", FRAME), ("second", other)], OutputFormat.CSV)
        self.assertEqual(text, "# first\nn,label\n1,a\n10,bb\n\n# second\nx\n2\n")
        payload = json.loads(render_sections([("first", FRAME), ("second", other)], OutputFormat.JSON))
        self.assertEqual(list(payload), ["first", "second"])
        self.assertEqual(payload["second"], [{"x": 2}])
        self.assertIn("### second", render_sections([("second", other)], OutputFormat.MARKDOWN))

    def test_count_table(self):
        table = build_count_table(3, AdjacencyType.TYPE2)
        self.assertEqual(
            json.loads(render_count_table(table, OutputFormat.JSON)),
            [["0", "1"], ["1", "0", "1"], ["2", "3", "0", "1"]],
        )
        markdown = render_count_table(table, OutputFormat.MARKDOWN).splitlines()
        self.assertEqual(len(markdown), 5)
        self.assertTrue(markdown[0].startswith("| n | k=0 |"))
        self.assertTrue(markdown[-1].endswith("6 |"))


@override_settings(PADJ_CACHE_DIR=CACHE_DIR, PADJ_WORKERS=1, PADJ_ORACLE_LIMIT=9, PADJ_SEARCH_LIMIT=9)
class RunConfigFormTests(SimpleTestCase):
    def form(self, **data):
        return RunConfigForm(data=data)

    def test_defaults(self):
        form = self.form(n=5, move="pt")
        self.assertTrue(form.is_valid(), form.errors)
        config = form.to_config()
        self.assertEqual(config.output_format, OutputFormat.CSV)
        self.assertEqual(config.workers, 1)
        self.assertEqual(config.oracle_limit, 9)
        self.assertEqual(config.search_limit, 9)
        self.assertEqual(config.move_kind, BlockMoveKind.PREFIX)
        self.assertEqual(config.cache_dir, Path(CACHE_DIR))
        self.assertIsNone(config.permutation)

    def test_flags_win(self):
        form = self.form(workers=4, search_limit=7, format="json")
        self.assertTrue(form.is_valid(), form.errors)
        config = form.to_config()
        self.assertEqual((config.workers, config.search_limit, config.output_format), (4, 7, "json"))

    @override_settings(PADJ_SEARCH_LIMIT=12)
    def test_search_limit_is_capped(self):
        form = self.form()
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().search_limit, 10)
        self.assertFalse(self.form(search_limit=11).is_valid())

    def test_limits(self):
        form = self.form(limit="6,7", search_limit=7)
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().limits, (6, 7))
        self.assertIn("limit", self.form(limit=[8], search_limit=7).errors)
        self.assertIn("limit", self.form(limit=[2]).errors)
        self.assertIn("limit", self.form(limit="six").errors)
        self.assertIn("n_max", self.form(limit=[6], n_max=5).errors)
        self.assertIn("n_max", self.form(limit=[6], n_max=6).errors)
        self.assertTrue(self.form(limit=[6], n_max=7).is_valid())

    def test_permutation(self):
        form = self.form(perm="4,2,1,3,0")
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().permutation, Permutation((4, 2, 1, 3, 0)))
        self.assertIn("perm", self.form(perm="0,0").errors)
        self.assertIn("perm", self.form(perm="1,x").errors)

    def test_type(self):
        form = self.form(type="4")
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().adjacency_type, AdjacencyType.TYPE4)
        self.assertIn("type", self.form(type="5").errors)

    def test_cache_dir_is_created(self):
        with tempfile.TemporaryDirectory() as root:
            target = Path(root) / "nested" / "cache"
            form = self.form(cache_dir=str(target))
            self.assertTrue(form.is_valid(), form.errors)
            self.assertTrue(target.is_dir())

    def test_cache_dir_left_alone_without_cache(self):
        with tempfile.TemporaryDirectory() as root:
            target = Path(root) / "unused"
            form = RunConfigForm(data={"cache_dir": str(target)}, uses_cache=False)
            self.assertTrue(form.is_valid(), form.errors)
            self.assertEqual(form.to_config().cache_dir, target)
            self.assertFalse(target.exists())

    def test_tables_command_does_not_create_cache(self):
        with tempfile.TemporaryDirectory() as root:
            target = Path(root) / "never"
            with override_settings(PADJ_CACHE_DIR=target):
                call_command("tables", "--type", "2", "--n-max", "3", stdout=StringIO(), stderr=StringIO())
            self.assertFalse(target.exists())


@override_settings(PADJ_CACHE_DIR=CACHE_DIR)
class VerificationTests(SimpleTestCase):
    def test_all_properties_hold(self):
        for n, kind in [(2, BlockMoveKind.PREFIX), (4, BlockMoveKind.TRANSPOSITION), (5, BlockMoveKind.SUFFIX)]:
            results = run_verification(n, kind, cache_dir=CACHE_DIR)
            self.assertEqual(len(results), 6)
            for result in results:
                self.assertTrue(result.passed, msg=f"n={n} {kind.label}: {result.name} {result.detail}")

    def test_property_order(self):
        names = [result.name for result in run_verification(3, BlockMoveKind.PREFIX, cache_dir=CACHE_DIR)]
        self.assertEqual(
            names,
            [
                "oracle equality",
                "row sums",
                "reduction idempotence",
                "single move gain",
                "reduction-distance invariance",
                "decomposition equality",
            ],
        )

    def test_guards(self):
        with self.assertRaises(InvalidInputError):
            run_verification(1, BlockMoveKind.PREFIX)
        with self.assertRaises(ResourceLimitError):
            run_verification(6, BlockMoveKind.PREFIX, oracle_limit=5)
        with self.assertRaises(ResourceLimitError):
            run_verification(6, BlockMoveKind.PREFIX, oracle_limit=9, search_limit=5)


@override_settings(PADJ_CACHE_DIR=CACHE_DIR, PADJ_ORACLE_LIMIT=9, PADJ_SEARCH_LIMIT=9)
class VerifyCommandTests(SimpleTestCase):
    def call(self, *args):
        out, err = StringIO(), StringIO()
        call_command("verify", *args, stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def test_transpositions_small(self):
        out, err = self.call("--n", "3", "--move", "t")
        self.assertEqual(out.count("✓"), 6)
        self.assertNotIn("✗", out)
        self.assertIn("all 6 properties hold", err)

    def test_prefix_seven(self):
        out, _ = self.call("--n", "7", "--move", "pt")
        self.assertEqual(out.count("✓"), 6)
        self.assertIn("reduction-distance invariance", out)

    def test_beyond_oracle_limit(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--n", "12")
        self.assertEqual(cm.exception.returncode, 3)
        self.assertIn("oracle enumeration refused for n=12", str(cm.exception))

    def test_too_small(self):
        with self.assertRaises(CommandError) as cm:
            self.call("--n", "1")
        self.assertEqual(cm.exception.returncode, 1)

    def test_failure_exit_code(self):
        failing = [PropertyResult("row sums", True, "ok"), PropertyResult("oracle equality", False, "f(3, 0) is 4")]
        with mock.patch("apps.core.management.commands.verify.run_verification", return_value=failing):
            out = StringIO()
            with self.assertRaises(CommandError) as cm:
                call_command("verify", "--n", "3", stdout=out, stderr=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn("✗ oracle equality: f(3, 0) is 4", out.getvalue())
