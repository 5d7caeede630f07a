from math import factorial

import numpy as np
from django.test import SimpleTestCase, override_settings

from .arrays import (
    adjacency_counts,
    all_permutations,
    class_sizes,
    enumerate_class,
    rank_rows,
)
from .exceptions import InvalidInputError, ResourceLimitError
from .forms import PermutationField
from .models import AdjacencyType, Permutation
from .utils import (
    count_adjacencies,
    count_circular_successions,
    mirror_canonicalize,
    rank,
    reduce,
    unrank,
)

ALL_TYPES = list(AdjacencyType)


class PermutationModelTests(SimpleTestCase):
    def test_parse_and_format(self):
        p = Permutation.parse("4, 2,1,3,0")
        self.assertEqual(p.symbols, (4, 2, 1, 3, 0))
        self.assertEqual(str(p), "4,2,1,3,0")

    def test_rejects_non_bijection(self):
        for text in ["0,0,1", "1,2,3", "a,b", "", "0,,1"]:
            with self.subTest(text=text), self.assertRaises(InvalidInputError):
                Permutation.parse(text)

    def test_offsets(self):
        offsets = {t: t.offset for t in ALL_TYPES}
        self.assertEqual(
            offsets,
            {
                AdjacencyType.TYPE1: -1,
                AdjacencyType.TYPE2: 0,
                AdjacencyType.TYPE3: 0,
                AdjacencyType.TYPE4: 1,
            },
        )

    def test_empty_permutation(self):
        empty = Permutation.empty()
        self.assertEqual(empty.n, 0)
        self.assertTrue(empty.is_identity)
        self.assertEqual(count_adjacencies(empty, AdjacencyType.TYPE4), 0)


class AdjacencyTests(SimpleTestCase):
    def test_examples(self):
        p = Permutation((4, 2, 1, 3, 0))
        self.assertEqual(count_adjacencies(p, AdjacencyType.TYPE1), 0)
        self.assertEqual(count_adjacencies(Permutation((1, 2, 0)), AdjacencyType.TYPE1), 1)
        self.assertEqual(count_adjacencies(Permutation((1, 0, 2)), AdjacencyType.TYPE2), 1)
        self.assertEqual(count_adjacencies(Permutation((0, 2, 1)), AdjacencyType.TYPE3), 1)
        self.assertEqual(count_adjacencies(Permutation((0, 2, 1)), AdjacencyType.TYPE4), 1)
        self.assertEqual(count_adjacencies(Permutation((2, 1, 0)), AdjacencyType.TYPE4), 0)

    def test_single_adjacency_examples(self):
        self.assertEqual(count_adjacencies(Permutation((4, 5, 2, 1, 3, 0)), AdjacencyType.TYPE1), 1)
        self.assertEqual(count_adjacencies(Permutation((4, 6, 3, 5, 0, 2, 1, 7)), AdjacencyType.TYPE2), 1)
        self.assertEqual(count_adjacencies(Permutation((0, 4, 6, 3, 5, 2, 1, 7)), AdjacencyType.TYPE4), 2)

    def test_identity_is_the_unique_maximum(self):
        for t in ALL_TYPES:
            for n in range(1, 7):
                with self.subTest(type=t, n=n):
                    counts = adjacency_counts(all_permutations(n), t)
                    top = n + t.offset
                    self.assertEqual(counts.max(), top)
                    self.assertEqual(list(np.flatnonzero(counts == top)), [0])

    def test_vectorised_counts_match_scalar(self):
        rows = all_permutations(5)
        for t in ALL_TYPES:
            counts = adjacency_counts(rows, t)
            for r in (0, 7, 42, 119):
                p = Permutation(tuple(rows[r]))
                self.assertEqual(counts[r], count_adjacencies(p, t))

    def test_circular_successions(self):
        self.assertEqual(count_circular_successions(Permutation((2, 0, 1))), 3)
        self.assertEqual(count_circular_successions(Permutation((0, 2, 1))), 0)


class ReductionTests(SimpleTestCase):
    def test_worked_example(self):
        p = Permutation((4, 6, 3, 1, 2, 0, 5))
        self.assertEqual(reduce(p, AdjacencyType.TYPE1).symbols, (3, 5, 2, 1, 0, 4))

    def test_identity_reduces_to_empty(self):
        for t in ALL_TYPES[1:]:
            self.assertEqual(reduce(Permutation.identity(5), t), Permutation.empty())
        self.assertEqual(reduce(Permutation.identity(5), AdjacencyType.TYPE1).symbols, (0,))

    def test_reduction_examples(self):
        # (1,3,0,2) under Type 4: 0 is not leading, no adjacency at all
        self.assertEqual(reduce(Permutation((1, 3, 0, 2)), AdjacencyType.TYPE4).symbols, (1, 3, 0, 2))
        # (2,0,1,3) under Type 2: (0,1) keeps 0, the trailing 3 goes, (2,0) relabels to (1,0)
        self.assertEqual(reduce(Permutation((2, 0, 1, 3)), AdjacencyType.TYPE2).symbols, (1, 0))
        self.assertEqual(reduce(Permutation((4, 5, 2, 1, 3, 0)), AdjacencyType.TYPE1).symbols, (4, 2, 1, 3, 0))
        self.assertEqual(
            reduce(Permutation((4, 6, 3, 5, 0, 2, 1, 7)), AdjacencyType.TYPE2).symbols,
            (4, 6, 3, 5, 0, 2, 1),
        )
        self.assertEqual(
            reduce(Permutation((0, 4, 6, 3, 5, 2, 1, 7)), AdjacencyType.TYPE4).symbols,
            (3, 5, 2, 4, 1, 0),
        )

    def test_reduced_is_irreducible_and_idempotent(self):
        for t in ALL_TYPES:
            for n in range(1, 7):
                rows = all_permutations(n)
                counts = adjacency_counts(rows, t)
                for row, k in zip(rows, counts):
                    p = Permutation(tuple(row))
                    reduced = reduce(p, t)
                    self.assertEqual(count_adjacencies(reduced, t), 0)
                    self.assertEqual(reduce(reduced, t), reduced)
                    self.assertEqual(reduced.n, max(n - int(k), 0))

    def test_mirror_canonicalize(self):
        self.assertEqual(mirror_canonicalize([5, 2, 9]).symbols, (1, 0, 2))
        self.assertEqual(mirror_canonicalize((4, 6, 3, 5, 2, 1)).symbols, (3, 5, 2, 4, 1, 0))
        with self.assertRaises(InvalidInputError):
            mirror_canonicalize([1, 1])


class RankingTests(SimpleTestCase):
    def test_bounds(self):
        for n in range(1, 8):
            self.assertEqual(rank(Permutation.identity(n)), 0)
            self.assertEqual(rank(Permutation.reverse(n)), factorial(n) - 1)

    def test_unrank_inverts_rank(self):
        for r in range(factorial(5)):
            self.assertEqual(rank(unrank(5, r)), r)
        self.assertEqual(unrank(3, 2).symbols, (1, 0, 2))
        with self.assertRaises(InvalidInputError):
            unrank(3, 6)

    def test_rows_are_in_rank_order(self):
        for n in range(0, 7):
            rows = all_permutations(n)
            self.assertEqual(rows.shape, (factorial(n), n))
            np.testing.assert_array_equal(rank_rows(rows), np.arange(factorial(n)))


class EnumerationTests(SimpleTestCase):
    def test_class_sizes_sum_to_factorial(self):
        for t in ALL_TYPES:
            for n in range(1, 8):
                self.assertEqual(sum(class_sizes(n, t)), factorial(n))

    def test_enumerate_class_members(self):
        members = enumerate_class(3, 0, AdjacencyType.TYPE2)
        self.assertEqual([str(p) for p in members], ["0,2,1", "2,1,0"])
        members = enumerate_class(3, 0, AdjacencyType.TYPE1)
        self.assertEqual([p.symbols for p in members], [(0, 2, 1), (1, 0, 2), (2, 1, 0)])
        members = enumerate_class(3, 0, AdjacencyType.TYPE4)
        self.assertEqual([p.symbols for p in members], [(2, 1, 0)])

    @override_settings(PADJ_ORACLE_LIMIT=5)
    def test_refuses_above_limit(self):
        with self.assertRaises(ResourceLimitError):
            enumerate_class(6, 0, AdjacencyType.TYPE1)
        with self.assertRaises(ResourceLimitError):
            class_sizes(6, AdjacencyType.TYPE1)


class PermutationFieldTests(SimpleTestCase):
    def test_clean(self):
        field = PermutationField()
        self.assertEqual(field.clean("1,0").symbols, (1, 0))
        with self.assertRaisesMessage(Exception, "not a permutation"):
            field.clean("1,1")
