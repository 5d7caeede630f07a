"""
Estimating sorting averages beyond exact search.

An irreducible permutation of size i loses psi symbols per move on
average (each move creates 1 + sigma adjacencies), which gives one
estimate by interpolating the known averages at i - psi; i - 1 symbols
need placing at psi per move, which gives another. The model averages the
two and climbs from the largest exact size.
"""

import logging
from fractions import Fraction
from math import ceil, factorial, floor

from apps.blockmoves.distances import average_moves_zero
from apps.blockmoves.models import BlockMoveKind
from apps.blockmoves.moves import double_feasible_prefix
from apps.counting.recurrences import build_count_table
from apps.permutations.arrays import enumerate_class
from apps.permutations.exceptions import InvalidInputError, UndefinedValueError
from apps.permutations.models import AdjacencyType

from .models import EstimateModel, PsiMode

logger = logging.getLogger(__name__)

LIMITING_PSI = Fraction(3, 2)


def sigma(n):
    """Expected probability that an irreducible permutation of size n admits a double prefix move."""
    if n < 3:
        raise InvalidInputError(f"sigma needs n >= 3, got {n}")
    return Fraction(1, 2) - Fraction(2, n * (n - 1))


def psi(n, mode=PsiMode.LIMITING):
    """Expected adjacencies created per move."""
    if PsiMode(mode) == PsiMode.LIMITING:
        return LIMITING_PSI
    return 1 + sigma(n)


def empirical_double_probability(n, oracle_limit=None):
    """Exact share of Type 2 irreducibles of size n that admit a double prefix move."""
    members = enumerate_class(n, 0, AdjacencyType.TYPE2, oracle_limit=oracle_limit)
    if not members:
        raise UndefinedValueError(f"no irreducible permutation of size {n}")
    doubles = sum(1 for p in members if double_feasible_prefix(p))
    return Fraction(doubles, len(members))


def move_count_model(limit, base_exact, n_max, psi_mode=PsiMode.LIMITING):
    """
    Complete base up to n_max from the exact averages base_exact[2..limit].

    Returns the full base, 0 and 1 included.
    """
    if limit < 3:
        raise InvalidInputError(f"limit must be at least 3, got {limit}")
    missing = [n for n in range(2, limit + 1) if n not in base_exact]
    if missing:
        raise InvalidInputError(f"exact averages missing for n={missing}")
    if n_max < limit + 1:
        raise InvalidInputError(f"n_max ({n_max}) must exceed limit ({limit})")

    base = {0: Fraction(0), 1: Fraction(0)}
    base.update({n: Fraction(base_exact[n]) for n in range(2, limit + 1)})
    for i in range(limit + 1, n_max + 1):
        yield_per_move = psi(i, psi_mode)
        j = i - yield_per_move
        low, high = floor(j), ceil(j)
        if low == high:
            x = 1 + base[low]
        else:
            x = 1 + (j - low) * base[high] + (high - j) * base[low]
        y = Fraction(i - 1) / yield_per_move
        base[i] = (x + y) / 2
        logger.debug(f"base[{i}] = {float(base[i]):.4f} (x={float(x):.4f}, y={float(y):.4f})")
    return base


def build_estimate_model(kind, limit, n_max, psi_mode=PsiMode.LIMITING, **table_options):
    """EstimateModel with exact averages from the distance tables up to limit."""
    kind = BlockMoveKind(kind)
    if kind == BlockMoveKind.TRANSPOSITION:
        raise InvalidInputError("estimation covers prefix and suffix transpositions only")
    base_exact = {n: average_moves_zero(n, kind, **table_options) for n in range(2, limit + 1)}
    base = move_count_model(limit, base_exact, n_max, psi_mode)
    return EstimateModel(kind=kind, limit=limit, n_max=n_max, psi_mode=PsiMode(psi_mode), base=base)


def expected_value_model(model, count_table=None):
    """
    Predicted mean moves over all of P_n, for 2 <= n <= model.n_max:
    sum over k of f(n, k)/n! times base[n - k].
    """
    adjacency_type = model.kind.paired_type
    if count_table is None:
        count_table = build_count_table(max(model.n_max, 2), adjacency_type)
    if count_table.n_max < model.n_max:
        raise InvalidInputError(f"count table stops at {count_table.n_max}, model needs {model.n_max}")

    expected = {}
    for n in range(2, model.n_max + 1):
        total = Fraction(0)
        for k in range(adjacency_type.max_adjacencies(n) + 1):
            count = count_table.f(n, k)
            if count:
                total += Fraction(count, factorial(n)) * model.base[max(n - k, 0)]
        expected[n] = total
    return expected
