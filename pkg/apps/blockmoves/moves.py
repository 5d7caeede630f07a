"""
Generating and applying block moves, and finding moves that create
adjacencies.
"""

from functools import lru_cache

from apps.permutations.arrays import adjacency_counts, all_permutations
from apps.permutations.exceptions import InvalidInputError
from apps.permutations.models import AdjacencyType, Permutation
from apps.permutations.utils import count_adjacencies

from .models import BlockMove, BlockMoveKind


@lru_cache(maxsize=None)
def generate_moves(n, kind):
    """
    Every move of the kind on size n, ordered by cut points.
    C(n+1, 3) transpositions, C(n, 2) prefix or suffix transpositions.
    """
    kind = BlockMoveKind(kind)
    if n < 2:
        raise InvalidInputError(f"no block moves on size {n}")
    moves = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 2):
                if kind == BlockMoveKind.PREFIX and i != 1:
                    continue
                if kind == BlockMoveKind.SUFFIX and k != n + 1:
                    continue
                moves.append(BlockMove(i, j, k, kind))
    return tuple(moves)


def apply_move(p, move):
    move.validate(p.n)
    return Permutation(tuple(p.symbols[index] for index in move.positions(p.n)))


def adjacency_delta(p, move, adjacency_type=None):
    """Change in adjacency count made by the move; the paired type by default."""
    adjacency_type = move.kind.paired_type if adjacency_type is None else AdjacencyType(adjacency_type)
    return count_adjacencies(apply_move(p, move), adjacency_type) - count_adjacencies(p, adjacency_type)


def adjacency_delta_range(n, kind):
    """(min, max) adjacency delta over every move and every permutation of size n."""
    kind = BlockMoveKind(kind)
    rows = all_permutations(n)
    before = adjacency_counts(rows, kind.paired_type)
    low, high = 0, 0
    for move in generate_moves(n, kind):
        delta = adjacency_counts(rows[:, move.positions(n)], kind.paired_type) - before
        low, high = min(low, int(delta.min())), max(high, int(delta.max()))
    return low, high


def _require_irreducible(p, adjacency_type):
    if count_adjacencies(p, adjacency_type) != 0:
        raise InvalidInputError(f"{p} has adjacencies under {adjacency_type.label}")


def find_single(p, kind):
    """
    A move creating at least one adjacency on an irreducible permutation.

    Prefix and transposition kinds move the first symbol just behind its
    predecessor (0 goes in front of 1). The suffix kind moves the last
    symbol just in front of its successor (n-1 goes behind n-2).
    """
    kind = BlockMoveKind(kind)
    _require_irreducible(p, kind.paired_type)
    n = p.n
    if n < 2:
        raise InvalidInputError(f"no block moves on size {n}")

    if kind == BlockMoveKind.SUFFIX:
        last = p[-1]
        if last == n - 1:
            return BlockMove(p.position_of(n - 2) + 1, n, n + 1, kind)
        return BlockMove(p.position_of(last + 1), n, n + 1, kind)

    first = p[0]
    if first == 0:
        # only reachable without a leading virtual symbol
        return BlockMove(1, 2, p.position_of(1), kind)
    return BlockMove(1, 2, p.position_of(first - 1) + 1, kind)


def find_double_prefix(p):
    """
    A prefix transposition creating two adjacencies on a Type 2 irreducible
    permutation, or None.

    With f = p[0] and f-1 at position i, let v = p[i+1] (n when i = n).
    A double move exists exactly when v-1 sits at some position s < i;
    moving the prefix [1..s] behind position i then joins f-1,f and v-1,v.
    """
    _require_irreducible(p, AdjacencyType.TYPE2)
    n = p.n
    first = p[0]
    if first == 0:
        return None
    i = p.position_of(first - 1)
    following = p[i] if i < n else n
    if following == 0:
        return None
    s = p.position_of(following - 1)
    if s >= i:
        return None
    return BlockMove(1, s + 1, i + 1, BlockMoveKind.PREFIX)


def double_feasible_prefix(p):
    return find_double_prefix(p) is not None


def double_prefix_by_enumeration(p):
    """Whether any prefix transposition has delta +2, by trying them all."""
    return any(
        adjacency_delta(p, move, AdjacencyType.TYPE2) == 2
        for move in generate_moves(p.n, BlockMoveKind.PREFIX)
    )
