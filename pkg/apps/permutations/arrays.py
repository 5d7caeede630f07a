"""
Whole-of-P_n operations on numpy arrays.

Row r of all_permutations(n) is the permutation of lexicographic rank r,
so a rank doubles as an index into any per-permutation table.
"""

import logging
from functools import lru_cache

import numpy as np
from django.conf import settings

from .exceptions import InvalidInputError, ResourceLimitError
from .models import AdjacencyType, Permutation

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def all_permutations(n):
    """(n!, n) int8 array of P_n in lexicographic order. Read-only."""
    if n < 0:
        raise InvalidInputError(f"size must be non-negative, got {n}")
    if n == 0:
        rows = np.zeros((1, 0), dtype=np.int8)
    else:
        sub = all_permutations(n - 1)
        blocks = []
        for first in range(n):
            block = np.empty((sub.shape[0], n), dtype=np.int8)
            block[:, 0] = first
            block[:, 1:] = sub + (sub >= first)
            blocks.append(block)
        rows = np.concatenate(blocks)
    rows.flags.writeable = False
    return rows


def rank_rows(rows):
    """Vectorised lexicographic rank of every row of a permutation array."""
    rows = np.asarray(rows)
    count, n = rows.shape
    ranks = np.zeros(count, dtype=np.int64)
    for i in range(n):
        smaller = (rows[:, i + 1:] < rows[:, i:i + 1]).sum(axis=1)
        ranks = ranks * (n - i) + smaller
    return ranks


def adjacency_counts(rows, adjacency_type):
    """count_adjacencies for every row at once."""
    adjacency_type = AdjacencyType(adjacency_type)
    rows = np.asarray(rows, dtype=np.int16)
    n = rows.shape[1]
    if n == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    counts = (rows[:, 1:] == rows[:, :-1] + 1).sum(axis=1)
    if adjacency_type.leading:
        counts = counts + (rows[:, 0] == 0)
    if adjacency_type.trailing:
        counts = counts + (rows[:, -1] == n - 1)
    return counts.astype(np.int64)


def _check_oracle_limit(n, oracle_limit):
    limit = settings.PADJ_ORACLE_LIMIT if oracle_limit is None else oracle_limit
    if n > limit:
        raise ResourceLimitError("exhaustive enumeration", n, limit)


def class_mask(n, k, adjacency_type, oracle_limit=None):
    """Boolean mask over all_permutations(n) selecting P_n(k)."""
    _check_oracle_limit(n, oracle_limit)
    return adjacency_counts(all_permutations(n), adjacency_type) == k


def class_sizes(n, adjacency_type, oracle_limit=None):
    """|P_n(k)| for k = 0..n+delta, by brute force."""
    adjacency_type = AdjacencyType(adjacency_type)
    _check_oracle_limit(n, oracle_limit)
    counts = adjacency_counts(all_permutations(n), adjacency_type)
    sizes = np.bincount(counts, minlength=adjacency_type.max_adjacencies(n) + 1)
    return [int(v) for v in sizes]


def enumerate_class(n, k, adjacency_type, oracle_limit=None):
    """Every permutation of size n with exactly k adjacencies, lexicographic order."""
    if n < 1:
        raise InvalidInputError(f"size must be positive, got {n}")
    rows = all_permutations(n)[class_mask(n, k, adjacency_type, oracle_limit)]
    logger.debug(f"P_{n}({k}) under {AdjacencyType(adjacency_type).label}: {len(rows)} permutations")
    return [Permutation(tuple(int(v) for v in row)) for row in rows]
