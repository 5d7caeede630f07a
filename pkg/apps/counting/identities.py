"""
Closed forms and derived quantities on top of the count tables.
"""

import logging
from fractions import Fraction
from math import comb, e, factorial

from apps.permutations.arrays import all_permutations, class_sizes
from apps.permutations.exceptions import ConsistencyError, InvalidInputError
from apps.permutations.models import AdjacencyType, Permutation
from apps.permutations.utils import count_circular_successions, reduce

from .models import CopyCount
from .recurrences import build_count_table, derangements

logger = logging.getLogger(__name__)


def tanny_count(n, k):
    """Type 1 closed form: C(n-1, k) * (D(n-k) + D(n-1-k))."""
    if n < 1 or not 0 <= k <= n - 1:
        raise InvalidInputError(f"tanny_count needs 0 <= k <= n-1, got n={n}, k={k}")
    return comb(n - 1, k) * (derangements(n - k) + derangements(n - 1 - k))


def whitworth_zero_count(n):
    """Irreducible count under Types 2 and 3, which is D(n)."""
    if n < 1:
        raise InvalidInputError(f"size must be positive, got {n}")
    return derangements(n)


def irreducible_fraction(n, adjacency_type):
    """f(n, 0) / n! as an exact fraction."""
    table = build_count_table(max(n, 2), adjacency_type)
    return Fraction(table.f(n, 0), factorial(n))


def irreducible_fraction_estimate(n, adjacency_type):
    """Independence estimate (1 - 1/n)^(n + delta) of the irreducible fraction."""
    adjacency_type = AdjacencyType(adjacency_type)
    if n < 1:
        raise InvalidInputError(f"size must be positive, got {n}")
    return (1 - 1 / n) ** (n + adjacency_type.offset)


def search_workload(n, adjacency_type):
    """(f(n, 0), n!/e): exact irreducible count and the 1/e estimate of it."""
    table = build_count_table(max(n, 2), adjacency_type)
    return table.f(n, 0), factorial(n) / e


def copies_count(n, k, adjacency_type):
    """
    Number of permutations of size n that reduce to a given irreducible of size k.

    Types 1 to 3 have closed forms; Type 4 is obtained by dividing the count
    of permutations with n-k adjacencies by the number of irreducibles of size k.
    """
    adjacency_type = AdjacencyType(adjacency_type)
    if not 1 <= k <= n:
        raise InvalidInputError(f"copies_count needs 1 <= k <= n, got n={n}, k={k}")
    table = build_count_table(max(n, 2), adjacency_type)
    if table.f(k, 0) == 0:
        raise InvalidInputError(f"no irreducible permutation of size {k} under {adjacency_type.label}")

    if adjacency_type == AdjacencyType.TYPE1:
        copies = comb(n - 1, k - 1)
    elif adjacency_type in (AdjacencyType.TYPE2, AdjacencyType.TYPE3):
        copies = sum(comb(n - i, k - 1) for i in range(1, n - k + 2))
    else:
        copies, remainder = divmod(table.f(n, n - k), table.f(k, 0))
        if remainder:
            logger.error(
                f"f({n},{n - k}) = {table.f(n, n - k)} is not a multiple of f({k},0) = {table.f(k, 0)}"
            )
            raise ConsistencyError(f"non-integral copy count for n={n}, k={k} under Type 4")
    return CopyCount(n=n, k=k, adjacency_type=adjacency_type, copies=copies)


def vector_alphabet_size(n, adjacency_type):
    """
    Number of distinct reduced forms over P_n: every irreducible of size
    1..n, plus the empty permutation when a virtual end symbol exists.
    """
    adjacency_type = AdjacencyType(adjacency_type)
    if n < 1:
        raise InvalidInputError(f"size must be positive, got {n}")
    table = build_count_table(max(n, 2), adjacency_type)
    size = sum(table.f(m, 0) for m in range(1, n + 1))
    if adjacency_type != AdjacencyType.TYPE1:
        size += 1
    return size


def vector_alphabet_oracle(n, adjacency_type, oracle_limit=None):
    """vector_alphabet_size by reducing every permutation of P_n."""
    class_sizes(n, adjacency_type, oracle_limit=oracle_limit)  # limit check
    images = {
        reduce(Permutation(tuple(int(v) for v in row)), adjacency_type)
        for row in all_permutations(n)
    }
    return len(images)


def circular_zero_oracle(n, oracle_limit=None):
    """Number of permutations of P_n with no circular succession, by brute force."""
    class_sizes(n, AdjacencyType.TYPE1, oracle_limit=oracle_limit)  # limit check
    return sum(
        1
        for row in all_permutations(n)
        if count_circular_successions(Permutation(tuple(int(v) for v in row))) == 0
    )


def first_mismatch(table, check, oracle_limit=None):
    """
    Compare a table against an independent source.

    Returns (n, k, expected, actual) for the first disagreement, or None.
    """
    adjacency_type = table.adjacency_type
    for n in range(1, table.n_max + 1):
        if check == "oracle":
            expected = class_sizes(n, adjacency_type, oracle_limit=oracle_limit)
        elif check == "tanny":
            expected = [tanny_count(n, k) for k in range(n)]
        elif check == "whitworth":
            expected = [whitworth_zero_count(n)]
        else:
            raise InvalidInputError(f"unknown cross-check {check!r}")
        for k, value in enumerate(expected):
            if table.f(n, k) != value:
                return n, k, value, table.f(n, k)
    return None
