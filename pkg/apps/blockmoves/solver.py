"""
Shortest block-move sorting sequence for a single permutation.

Up to the search limit the distance table is walked greedily (every step
to a neighbour one closer). Beyond it, iterative deepening A* with the
adjacency bound: each missing adjacency of the paired type needs a move,
and one move creates at most max_gain of them.
"""

import logging
from math import inf

from django.conf import settings

from apps.permutations.exceptions import ConsistencyError, InvalidInputError, ResourceLimitError
from apps.permutations.models import Permutation
from apps.permutations.utils import count_adjacencies, rank

from .distances import get_distance_table
from .models import BlockMoveKind
from .moves import apply_move, generate_moves

logger = logging.getLogger(__name__)

FOUND = -1


def lower_bound(p, kind):
    kind = BlockMoveKind(kind)
    missing = kind.paired_type.max_adjacencies(p.n) - count_adjacencies(p, kind.paired_type)
    return -(-missing // kind.max_gain)


def _walk_table(p, kind, **table_options):
    table = get_distance_table(p.n, kind, **table_options)
    moves = generate_moves(p.n, kind)
    path = []
    current = p
    remaining = table.distance(rank(current))
    while remaining:
        for move in moves:
            candidate = apply_move(current, move)
            if table.distance(rank(candidate)) == remaining - 1:
                path.append(move)
                current, remaining = candidate, remaining - 1
                break
        else:
            raise ConsistencyError(f"no neighbour of {current} is one move closer")
    return path


class IdaStarSolver:
    def __init__(self, p, kind):
        self.kind = BlockMoveKind(kind)
        self.start = p
        self.n = p.n
        self.moves = generate_moves(self.n, self.kind)
        self.positions = [tuple(int(i) for i in move.positions(self.n)) for move in self.moves]
        self.inverse_of = [self.moves.index(move.inverse()) for move in self.moves]
        self.path = []
        self.expanded = 0

    def bound(self, symbols):
        return lower_bound(Permutation(symbols), self.kind)

    def search(self, symbols, g, limit, previous):
        h = self.bound(symbols)
        if g + h > limit:
            return g + h
        if h == 0:
            return FOUND
        self.expanded += 1
        smallest = inf
        for index, positions in enumerate(self.positions):
            if previous is not None and self.inverse_of[previous] == index:
                continue
            self.path.append(index)
            result = self.search(tuple(symbols[i] for i in positions), g + 1, limit, index)
            if result == FOUND:
                return FOUND
            self.path.pop()
            smallest = min(smallest, result)
        return smallest

    def solve(self):
        limit = self.bound(self.start.symbols)
        while True:
            result = self.search(self.start.symbols, 0, limit, None)
            if result == FOUND:
                logger.info(f"{self.start}: {len(self.path)} moves, {self.expanded} nodes expanded")
                return [self.moves[index] for index in self.path]
            logger.debug(f"{self.start}: raising bound to {result}")
            limit = result


def solve(p, kind, method=None, search_limit=None, solver_limit=None, **table_options):
    """
    A shortest list of moves sorting p.

    method is "table" or "search"; by default the table is used when n is
    within the search limit.
    """
    kind = BlockMoveKind(kind)
    search_limit = settings.PADJ_SEARCH_LIMIT if search_limit is None else search_limit
    solver_limit = settings.PADJ_SOLVER_LIMIT if solver_limit is None else solver_limit
    if p.is_identity:
        return []

    method = method or ("table" if p.n <= search_limit else "search")
    if method == "table":
        return _walk_table(p, kind, search_limit=search_limit, **table_options)
    if method == "search":
        if p.n > solver_limit:
            raise ResourceLimitError("heuristic search", p.n, solver_limit)
        return IdaStarSolver(p, kind).solve()
    raise InvalidInputError(f"unknown solve method {method!r}")
