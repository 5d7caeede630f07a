from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from django.db import models

from apps.permutations.exceptions import InvalidInputError, UndefinedValueError
from apps.permutations.models import AdjacencyType


class BlockMoveKind(models.TextChoices):
    TRANSPOSITION = "t", "Transposition"
    PREFIX = "pt", "Prefix transposition"
    SUFFIX = "st", "Suffix transposition"

    @property
    def paired_type(self):
        """Adjacency type whose count the kind of move can change, including the boundary it touches."""
        return {
            BlockMoveKind.TRANSPOSITION: AdjacencyType.TYPE4,
            BlockMoveKind.PREFIX: AdjacencyType.TYPE2,
            BlockMoveKind.SUFFIX: AdjacencyType.TYPE3,
        }[self]

    @property
    def max_gain(self):
        """Most adjacencies (of the paired type) one move can create."""
        return 3 if self == BlockMoveKind.TRANSPOSITION else 2

    @property
    def code(self):
        """Byte stored in the cache header."""
        return {BlockMoveKind.TRANSPOSITION: 0, BlockMoveKind.PREFIX: 1, BlockMoveKind.SUFFIX: 2}[self]


@dataclass(frozen=True)
class BlockMove:
    """
    Exchange the adjacent blocks [i..j-1] and [j..k-1] (1-based cut points,
    1 <= i < j < k <= n+1). Prefix moves have i = 1, suffix moves k = n+1.
    """

    i: int
    j: int
    k: int
    kind: BlockMoveKind

    def validate(self, n):
        if not 1 <= self.i < self.j < self.k <= n + 1:
            raise InvalidInputError(f"cut points {self.cut_points} invalid for n={n}")
        if self.kind == BlockMoveKind.PREFIX and self.i != 1:
            raise InvalidInputError(f"prefix transposition must start at 1, got {self.cut_points}")
        if self.kind == BlockMoveKind.SUFFIX and self.k != n + 1:
            raise InvalidInputError(f"suffix transposition must end at {n + 1}, got {self.cut_points}")

    @property
    def cut_points(self):
        return self.i, self.j, self.k

    def positions(self, n):
        """0-based source index for each position after the move."""
        i, j, k = self.i - 1, self.j - 1, self.k - 1
        return np.array(
            list(range(i)) + list(range(j, k)) + list(range(i, j)) + list(range(k, n)),
            dtype=np.intp,
        )

    def inverse(self):
        return BlockMove(self.i, self.i + self.k - self.j, self.k, self.kind)

    def __str__(self):
        return f"({self.i},{self.j},{self.k})"


@dataclass(frozen=True)
class DistanceTable:
    """Exact distance to the identity of every permutation of size n, indexed by rank."""

    n: int
    kind: BlockMoveKind
    distances: np.ndarray

    @property
    def diameter(self):
        return int(self.distances.max())

    def distance(self, rank):
        return int(self.distances[rank])

    def average(self, mask):
        """Exact mean distance over the permutations selected by a boolean mask."""
        count = int(mask.sum())
        if count == 0:
            raise UndefinedValueError(f"average over an empty set of permutations (n={self.n})")
        return Fraction(int(self.distances[mask].sum(dtype=np.int64)), count)
