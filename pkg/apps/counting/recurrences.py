"""
Exact counts f(n, k) of permutations with k adjacencies.

Rows are built bottom-up in Python integers, so any n_max is exact.
Type 1 uses the classical three-term recurrence; Types 2, 3 and 4 share a
second-order recurrence and differ only in their seed rows.
"""

import logging
from functools import lru_cache

from apps.permutations.arrays import class_sizes
from apps.permutations.exceptions import InvalidInputError
from apps.permutations.models import AdjacencyType

from .models import CountTable

logger = logging.getLogger(__name__)

# Types 2 and 3 are seeded up to this size from brute-force class sizes
BOUNDARY_SEED_SIZE = 4

# Type 4 seeds, n = 1..3
TYPE4_SEEDS = ((0, 0, 1), (1, 0, 0, 1), (1, 4, 0, 0, 1))


@lru_cache(maxsize=None)
def derangements(n):
    """D(n), with D(0) = 1 and D(1) = 0."""
    if n < 0:
        raise InvalidInputError(f"derangements of negative size {n}")
    if n == 0:
        return 1
    if n == 1:
        return 0
    return (n - 1) * (derangements(n - 1) + derangements(n - 2))


def _internal_row(previous, n):
    """f(n, .) for Type 1 from f(n-1, .)."""

    def f(k):
        return previous[k] if 0 <= k < len(previous) else 0

    return tuple(
        f(k - 1) + (n - 1 - k) * f(k) + (k + 1) * f(k + 1)
        for k in range(n)
    )


def _boundary_row(older, previous, i, width):
    """f(i, .) for Types 2, 3, 4 from f(i-2, .) and f(i-1, .)."""

    def a(k):
        return previous[k] if 0 <= k < len(previous) else 0

    def b(k):
        return older[k] if 0 <= k < len(older) else 0

    row = []
    for j in range(width):
        value = (
            2 * (a(j - 1) - b(j - 2))
            + b(j - 2)
            + (j + 1) * (a(j + 1) - b(j))
            + (i - j - 1) * b(j)
            + (i - j - 2) * (a(j) - b(j - 1))
            + (j + 1) * b(j + 1)
        )
        row.append(value)
    return tuple(row)


def _seed_rows(adjacency_type, n_max):
    if adjacency_type == AdjacencyType.TYPE1:
        return [(1,), (1, 1)][:n_max]
    if adjacency_type == AdjacencyType.TYPE4:
        return list(TYPE4_SEEDS[:n_max])
    # Types 2 and 3: the recurrence needs two full rows, take the small ones from the oracle
    return [
        tuple(class_sizes(n, adjacency_type, oracle_limit=BOUNDARY_SEED_SIZE))
        for n in range(1, min(BOUNDARY_SEED_SIZE, n_max) + 1)
    ]


@lru_cache(maxsize=None)
def build_count_table(n_max, adjacency_type):
    """CountTable of f(n, k) for 1 <= n <= n_max."""
    adjacency_type = AdjacencyType(adjacency_type)
    if n_max < 2:
        raise InvalidInputError(f"n_max must be at least 2, got {n_max}")

    rows = _seed_rows(adjacency_type, n_max)
    for n in range(len(rows) + 1, n_max + 1):
        if adjacency_type == AdjacencyType.TYPE1:
            rows.append(_internal_row(rows[-1], n))
        else:
            width = adjacency_type.max_adjacencies(n) + 1
            rows.append(_boundary_row(rows[-2], rows[-1], n, width))

    table = CountTable(adjacency_type=adjacency_type, n_max=n_max, rows=tuple(rows))
    bad = table.check_row_sums()
    if bad is not None:
        logger.error(f"{adjacency_type.label}: row {bad} does not sum to {bad}!")
    logger.info(f"built {adjacency_type.label} table up to n={n_max}")
    return table
