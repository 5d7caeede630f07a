import tempfile
from fractions import Fraction
from io import StringIO
from math import comb, factorial

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings, tag

from apps.permutations.arrays import enumerate_class
from apps.permutations.exceptions import (
    ConsistencyError,
    InvalidInputError,
    ResourceLimitError,
    UndefinedValueError,
)
from apps.permutations.models import AdjacencyType, Permutation
from apps.permutations.utils import rank, unrank

from .distances import (
    average_moves_zero,
    bfs_distances,
    cache_path,
    class_statistics,
    expected_moves_decomposed,
    expected_moves_exact,
    forget_tables,
    get_distance_table,
    load_table,
    reduction_invariance_check,
    save_table,
)
from .models import BlockMove, BlockMoveKind
from .moves import (
    adjacency_delta,
    adjacency_delta_range,
    apply_move,
    double_feasible_prefix,
    double_prefix_by_enumeration,
    find_double_prefix,
    find_single,
    generate_moves,
)
from .solver import lower_bound, solve

T, PT, ST = BlockMoveKind.TRANSPOSITION, BlockMoveKind.PREFIX, BlockMoveKind.SUFFIX
KINDS = [T, PT, ST]

CACHE_DIR = tempfile.mkdtemp(prefix="padj-test-")

# published exact means for prefix transpositions, n -> value; printed to two
# decimals, some truncated rather than rounded
ZERO_CLASS_MEANS = dict(zip(range(2, 10), [1.00, 2.00, 2.33, 3.09, 3.68, 4.29, 4.91, 5.50]))
OVERALL_MEANS = dict(zip(range(2, 10), [0.50, 1.16, 1.79, 2.42, 3.06, 3.68, 4.29, 4.90]))


def near(value, expected, tolerance=0.005):
    return abs(float(value) - expected) <= tolerance


class MoveTests(SimpleTestCase):
    def test_move_counts(self):
        for n in range(2, 9):
            self.assertEqual(len(generate_moves(n, T)), comb(n + 1, 3))
            self.assertEqual(len(generate_moves(n, PT)), comb(n, 2))
            self.assertEqual(len(generate_moves(n, ST)), comb(n, 2))
        self.assertEqual(generate_moves(2, T), (BlockMove(1, 2, 3, T),))

    def test_apply(self):
        p = Permutation((2, 1, 0))
        self.assertEqual(apply_move(p, BlockMove(1, 2, 3, PT)).symbols, (1, 2, 0))
        q = Permutation((0, 1, 2, 3, 4))
        self.assertEqual(apply_move(q, BlockMove(2, 3, 5, T)).symbols, (0, 2, 3, 1, 4))

    def test_invalid_moves(self):
        p = Permutation.identity(4)
        for move in [BlockMove(2, 2, 4, T), BlockMove(1, 3, 6, T), BlockMove(2, 3, 4, PT), BlockMove(1, 2, 3, ST)]:
            with self.subTest(move=move), self.assertRaises(InvalidInputError):
                apply_move(p, move)

    def test_inverse_undoes_move(self):
        p = Permutation((3, 0, 4, 1, 2))
        for kind in KINDS:
            for move in generate_moves(5, kind):
                self.assertIn(move.inverse(), generate_moves(5, kind))
                self.assertEqual(apply_move(apply_move(p, move), move.inverse()), p)

    def test_delta_ranges(self):
        for n in range(3, 7):
            self.assertEqual(adjacency_delta_range(n, PT)[1], 2)
            self.assertEqual(adjacency_delta_range(n, ST)[1], 2)
            self.assertEqual(adjacency_delta_range(n, T)[1], 3)
            for kind in KINDS:
                self.assertGreaterEqual(adjacency_delta_range(n, kind)[0], -3)

    def test_delta_example(self):
        # (0,2,1) -> (0,1,2) joins three pairs under Type 4
        self.assertEqual(adjacency_delta(Permutation((0, 2, 1)), BlockMove(2, 3, 4, T)), 3)


class SingleAndDoubleMoveTests(SimpleTestCase):
    def test_single_move_always_exists(self):
        for kind in KINDS:
            for n in range(2, 9):
                for p in enumerate_class(n, 0, kind.paired_type):
                    move = find_single(p, kind)
                    self.assertGreaterEqual(adjacency_delta(p, move), 1, msg=f"{kind.label} {p}")

    def test_single_rejects_reducible(self):
        with self.assertRaises(InvalidInputError):
            find_single(Permutation((1, 0, 2)), PT)

    def test_double_examples(self):
        p = Permutation((1, 3, 0, 2))
        self.assertTrue(double_feasible_prefix(p))
        move = find_double_prefix(p)
        self.assertEqual(apply_move(p, move).symbols, (3, 0, 1, 2))
        self.assertEqual(adjacency_delta(p, move), 2)
        self.assertFalse(double_feasible_prefix(Permutation((0, 2, 1))))
        self.assertFalse(double_feasible_prefix(Permutation((2, 1, 0))))

    def test_characterisation_matches_enumeration(self):
        for n in range(2, 8):
            for p in enumerate_class(n, 0, AdjacencyType.TYPE2):
                self.assertEqual(double_feasible_prefix(p), double_prefix_by_enumeration(p), msg=str(p))


@override_settings(PADJ_CACHE_DIR=CACHE_DIR)
class DistanceTableTests(SimpleTestCase):
    def test_small_tables(self):
        table = get_distance_table(3, PT)
        self.assertEqual(list(table.distances), [0, 2, 1, 1, 1, 2])
        self.assertEqual(table.diameter, 2)

    def test_reverse_needs_three_transpositions_at_five(self):
        table = get_distance_table(5, T)
        self.assertEqual(table.distance(rank(Permutation.reverse(5))), 3)
        self.assertEqual(table.diameter, 3)

    def test_workers_do_not_change_results(self):
        single = bfs_distances(6, T, workers=1)
        threaded = bfs_distances(6, T, workers=3)
        self.assertEqual(single.distances.tobytes(), threaded.distances.tobytes())

    def test_refuses_above_search_limit(self):
        with self.assertRaises(ResourceLimitError):
            get_distance_table(8, PT, search_limit=7)

    def test_zero_class_averages(self):
        self.assertEqual(average_moves_zero(2, PT), 1)
        self.assertEqual(average_moves_zero(3, PT), 2)
        self.assertEqual(average_moves_zero(4, PT), Fraction(7, 3))
        self.assertTrue(near(average_moves_zero(5, PT), 3.09))

    def test_zero_class_of_size_one(self):
        with self.assertRaises(UndefinedValueError):
            average_moves_zero(1, PT)
        self.assertEqual(average_moves_zero(1, PT, adjacency_type=AdjacencyType.TYPE1), 0)

    def test_published_means(self):
        for n in range(2, 9):
            zero, overall = average_moves_zero(n, PT), expected_moves_exact(n, PT)
            self.assertTrue(near(zero, ZERO_CLASS_MEANS[n], 0.01), msg=f"n={n}: {float(zero):.4f}")
            self.assertTrue(near(overall, OVERALL_MEANS[n], 0.01), msg=f"n={n}: {float(overall):.4f}")

    def test_expected_moves(self):
        self.assertEqual(expected_moves_exact(2, PT), Fraction(1, 2))
        self.assertEqual(expected_moves_exact(3, PT), Fraction(7, 6))
        self.assertEqual(expected_moves_exact(4, PT), Fraction(43, 24))

    def test_decomposition(self):
        for kind in KINDS:
            for n in range(2, 9):
                self.assertEqual(expected_moves_exact(n, kind), expected_moves_decomposed(n, kind))

    def test_reduction_preserves_distance(self):
        for kind in KINDS:
            for n in range(2, 8):
                self.assertEqual(reduction_invariance_check(n, kind), [], msg=f"{kind.label} n={n}")

    def test_prefix_and_suffix_are_mirror_images(self):
        self.assertEqual(average_moves_zero(6, PT), average_moves_zero(6, ST))
        self.assertEqual(expected_moves_exact(6, PT), expected_moves_exact(6, ST))

    def test_class_statistics(self):
        stats = class_statistics(get_distance_table(3, PT))
        self.assertEqual(list(stats.columns), ["n", "class_k", "count", "avg_distance"])
        self.assertEqual(list(stats["class_k"]), [0, 1, 3])
        self.assertEqual(list(stats["count"]), [2, 3, 1])
        self.assertEqual(list(stats["avg_distance"]), [2, 1, 0])

    @tag("slow")
    def test_published_means_at_nine(self):
        self.assertTrue(near(average_moves_zero(9, PT), ZERO_CLASS_MEANS[9], 0.01))
        self.assertTrue(near(expected_moves_exact(9, PT), OVERALL_MEANS[9], 0.01))


class DistanceCacheTests(SimpleTestCase):
    def setUp(self):
        self.cache_dir = tempfile.mkdtemp(prefix="padj-cache-")

    def test_round_trip(self):
        table = bfs_distances(5, ST)
        save_table(table, self.cache_dir)
        loaded = load_table(self.cache_dir, 5, ST)
        self.assertEqual(loaded.distances.tobytes(), table.distances.tobytes())
        self.assertIsNone(load_table(self.cache_dir, 5, PT))

    def test_corrupt_file_is_rebuilt(self):
        path = cache_path(self.cache_dir, 4, T)
        path.write_bytes(b"PADJ\x01\x04\x00" + b"\x00" * 5)
        with self.assertLogs("apps.blockmoves.distances", "WARNING") as logs:
            self.assertIsNone(load_table(self.cache_dir, 4, T))
        self.assertIn("corrupt", logs.output[0])

        forget_tables()
        table = get_distance_table(4, T, cache_dir=self.cache_dir, search_limit=9)
        self.assertEqual(len(table.distances), factorial(4))
        self.assertIsNotNone(load_table(self.cache_dir, 4, T))

    def test_strict_load_raises(self):
        path = cache_path(self.cache_dir, 3, PT)
        path.write_bytes(b"XXXX\x01\x03\x01" + b"\x00" * 6)
        with self.assertRaises(ConsistencyError):
            load_table(self.cache_dir, 3, PT, strict=True)


class SolverTests(SimpleTestCase):
    def assertSorts(self, p, kind, moves):
        current = p
        for move in moves:
            current = apply_move(current, move)
        self.assertTrue(current.is_identity)

    def test_identity(self):
        self.assertEqual(solve(Permutation.identity(5), PT), [])

    @override_settings(PADJ_CACHE_DIR=CACHE_DIR)
    def test_table_walk_is_optimal(self):
        p = Permutation.parse("4,2,1,3,0")
        moves = solve(p, PT)
        self.assertSorts(p, PT, moves)
        self.assertEqual(len(moves), get_distance_table(5, PT).distance(rank(p)))

    @override_settings(PADJ_CACHE_DIR=CACHE_DIR)
    def test_search_matches_table(self):
        for kind in KINDS:
            table = get_distance_table(6, kind)
            for r in (1, 97, 388, 719):
                p = unrank(6, r)
                moves = solve(p, kind, method="search")
                self.assertSorts(p, kind, moves)
                self.assertEqual(len(moves), table.distance(r), msg=f"{kind.label} {p}")

    def test_lower_bound(self):
        self.assertEqual(lower_bound(Permutation.identity(4), T), 0)
        # Type 4 irreducible of size 4 misses all five adjacencies
        self.assertEqual(lower_bound(Permutation((1, 3, 0, 2)), T), 2)

    def test_refuses_above_solver_limit(self):
        with self.assertRaises(ResourceLimitError):
            solve(Permutation.reverse(13), PT, search_limit=9, solver_limit=12)


@override_settings(PADJ_CACHE_DIR=CACHE_DIR)
class CommandTests(SimpleTestCase):
    def call(self, name, *args):
        out, err = StringIO(), StringIO()
        call_command(name, *args, stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def test_distances_csv(self):
        out, err = self.call("distances", "--move", "pt", "--n", "3")
        self.assertEqual(
            out,
            "n,class_k,count,avg_distance\n3,0,2,2.00\n3,1,3,1.00\n3,3,1,0.00\n",
        )
        self.assertIn("Diameter: 2", err)

    def test_distances_transposition_five(self):
        _, err = self.call("distances", "--move", "t", "--n", "5", "--workers", "2")
        self.assertIn("Diameter: 3", err)

    def test_distances_is_deterministic(self):
        first, _ = self.call("distances", "--move", "st", "--n", "5", "--format", "json")
        second, _ = self.call("distances", "--move", "st", "--n", "5", "--format", "json")
        self.assertEqual(first, second)

    def test_sort(self):
        out, _ = self.call("sort", "--move", "pt", "--perm", "4,2,1,3,0")
        lines = out.splitlines()
        length = int(lines[0].split(": ")[1])
        self.assertEqual(len(lines), length + 1)
        self.assertTrue(lines[-1].endswith("-> 0,1,2,3,4"))

    def test_sort_bad_permutation(self):
        with self.assertRaises(CommandError) as cm:
            self.call("sort", "--move", "pt", "--perm", "0,0,1")
        self.assertEqual(cm.exception.returncode, 1)

    def test_sort_too_large(self):
        perm = ",".join(str(v) for v in range(12, -1, -1))
        with self.assertRaises(CommandError) as cm:
            self.call("sort", "--move", "t", "--perm", perm)
        self.assertEqual(cm.exception.returncode, 3)

    def test_distances_too_large(self):
        with self.assertRaises(CommandError) as cm:
            self.call("distances", "--move", "t", "--n", "8", "--search-limit", "7")
        self.assertEqual(cm.exception.returncode, 3)
