"""
The exhaustive consistency suite behind the verify command.

Each property is checked over the whole of P_n and reports a witness on
failure. Counting properties cover all four adjacency types; distance
properties use the move kind given and its paired type.
"""

import logging
from dataclasses import dataclass
from math import factorial

from django.conf import settings

from apps.blockmoves.distances import (
    expected_moves_decomposed,
    expected_moves_exact,
    get_distance_table,
    reduction_invariance_check,
)
from apps.blockmoves.models import BlockMoveKind
from apps.blockmoves.moves import adjacency_delta, find_single
from apps.counting.identities import first_mismatch
from apps.counting.recurrences import build_count_table
from apps.permutations.arrays import all_permutations, enumerate_class
from apps.permutations.exceptions import InvalidInputError, ResourceLimitError
from apps.permutations.models import AdjacencyType, Permutation
from apps.permutations.utils import count_adjacencies, reduce

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""


def check_oracle_equality(n, oracle_limit):
    for adjacency_type in AdjacencyType:
        table = build_count_table(max(n, 2), adjacency_type)
        mismatch = first_mismatch(table, "oracle", oracle_limit=oracle_limit)
        if mismatch is not None:
            m, k, expected, actual = mismatch
            return PropertyResult(
                "oracle equality",
                False,
                f"{adjacency_type.label}: f({m}, {k}) is {actual}, enumeration gives {expected}",
            )
    return PropertyResult("oracle equality", True, f"all types, n <= {n}")


def check_row_sums(n):
    for adjacency_type in AdjacencyType:
        bad = build_count_table(max(n, 2), adjacency_type).check_row_sums()
        if bad is not None:
            return PropertyResult("row sums", False, f"{adjacency_type.label}: row {bad} does not sum to {bad}!")
    return PropertyResult("row sums", True, f"every row equals m! for m <= {n}")


def check_reduction_idempotence(n):
    rows = all_permutations(n)
    for adjacency_type in AdjacencyType:
        for row in rows:
            p = Permutation(tuple(int(v) for v in row))
            reduced = reduce(p, adjacency_type)
            if count_adjacencies(reduced, adjacency_type) or reduce(reduced, adjacency_type) != reduced:
                return PropertyResult(
                    "reduction idempotence",
                    False,
                    f"{adjacency_type.label}: {p} reduces to ({reduced}), which is not irreducible",
                )
            if reduced.n != max(n - count_adjacencies(p, adjacency_type), 0):
                return PropertyResult(
                    "reduction idempotence",
                    False,
                    f"{adjacency_type.label}: {p} reduces to size {reduced.n}",
                )
    return PropertyResult("reduction idempotence", True, f"{factorial(n)} permutations, all types")


def check_single_move(n, kind, oracle_limit):
    for p in enumerate_class(n, 0, kind.paired_type, oracle_limit=oracle_limit):
        move = find_single(p, kind)
        if adjacency_delta(p, move) < 1:
            return PropertyResult("single move gain", False, f"{move} on {p} creates no adjacency")
    return PropertyResult("single move gain", True, f"every irreducible under {kind.paired_type.label}")


def check_reduction_distance(n, kind, table_options):
    violations = reduction_invariance_check(n, kind, **table_options)
    if violations:
        p, distance, reduced, expected = violations[0]
        return PropertyResult(
            "reduction-distance invariance",
            False,
            f"{len(violations)} violations, e.g. d({p}) = {distance} but d({reduced}) = {expected}",
        )
    return PropertyResult("reduction-distance invariance", True, f"{kind.label}, n = {n}")


def check_decomposition(n, kind, table_options):
    exact = expected_moves_exact(n, kind, **table_options)
    decomposed = expected_moves_decomposed(n, kind, **table_options)
    if exact != decomposed:
        return PropertyResult("decomposition equality", False, f"mean {exact} but class sum {decomposed}")
    return PropertyResult("decomposition equality", True, f"E = {exact}")


def run_verification(n, kind, oracle_limit=None, search_limit=None, cache_dir=None, workers=None):
    """Every property at size n, in a fixed order."""
    kind = BlockMoveKind(kind)
    oracle_limit = settings.PADJ_ORACLE_LIMIT if oracle_limit is None else oracle_limit
    search_limit = settings.PADJ_SEARCH_LIMIT if search_limit is None else search_limit
    if n < 2:
        raise InvalidInputError(f"verification needs n >= 2, got {n}")
    if n > oracle_limit:
        raise ResourceLimitError("oracle enumeration", n, oracle_limit)
    if n > search_limit:
        raise ResourceLimitError("distance search", n, search_limit)

    table_options = {"cache_dir": cache_dir, "workers": workers, "search_limit": search_limit}
    get_distance_table(n, kind, **table_options)

    results = [
        check_oracle_equality(n, oracle_limit),
        check_row_sums(n),
        check_reduction_idempotence(n),
        check_single_move(n, kind, oracle_limit),
        check_reduction_distance(n, kind, table_options),
        check_decomposition(n, kind, table_options),
    ]
    for result in results:
        if result.passed:
            logger.info(f"✓ {result.name}: {result.detail}")
        else:
            logger.error(f"✗ {result.name}: {result.detail}")
    return results
