"""
Scalar operations on a single Permutation: adjacency counting, reduction,
ranking. The whole-of-P_n counterparts live in arrays.py.
"""

import logging
from math import factorial

from .exceptions import InvalidInputError
from .models import AdjacencyType, Permutation

logger = logging.getLogger(__name__)


def _extended(symbols, adjacency_type):
    """The symbol sequence with the virtual end symbols of the adjacency type."""
    n = len(symbols)
    head = [-1] if adjacency_type.leading else []
    tail = [n] if adjacency_type.trailing else []
    return head + list(symbols) + tail


def count_adjacencies(p, adjacency_type):
    """Number of (a, a+1) pairs, virtual ends included per the adjacency type."""
    adjacency_type = AdjacencyType(adjacency_type)
    if p.n == 0:
        return 0
    ext = _extended(p.symbols, adjacency_type)
    return sum(1 for a, b in zip(ext, ext[1:]) if b == a + 1)


def count_circular_successions(p):
    """Positions i with p[i+1] == p[i] + 1, both indices read modulo n."""
    n = p.n
    return sum(1 for i in range(n) if p[(i + 1) % n] == (p[i] + 1) % n)


def mirror_canonicalize(sequence):
    """Relabel distinct integers by their rank, keeping the order: (5,2,9) -> (1,0,2)."""
    values = list(sequence)
    if len(set(values)) != len(values):
        raise InvalidInputError(f"repeated values in {values}")
    rank_of = {value: rank for rank, value in enumerate(sorted(values))}
    return Permutation(tuple(rank_of[v] for v in values))


def _runs(ext):
    runs = [[ext[0]]] if ext else []
    for value in ext[1:]:
        if value == runs[-1][-1] + 1:
            runs[-1].append(value)
        else:
            runs.append([value])
    return runs


def reduce(p, adjacency_type):
    """
    Collapse adjacencies until none remain.

    Every maximal run a, a+1, ..., a+r keeps only its head; a run holding a
    virtual end symbol is dropped whole. The survivors are relabelled with
    mirror_canonicalize and the pass repeats, since relabelling can create
    new adjacencies.
    """
    adjacency_type = AdjacencyType(adjacency_type)
    symbols = list(p.symbols)
    passes = 0
    while symbols:
        n = len(symbols)
        runs = _runs(_extended(symbols, adjacency_type))
        if all(len(run) == 1 for run in runs):
            break
        survivors = [
            run[0]
            for run in runs
            if not (adjacency_type.leading and run[0] == -1)
            and not (adjacency_type.trailing and run[-1] == n)
        ]
        symbols = list(mirror_canonicalize(survivors).symbols)
        passes += 1
    logger.debug(f"reduced {p} to ({','.join(map(str, symbols))}) in {passes} passes")
    return Permutation(tuple(symbols))


def rank(p):
    """Lexicographic rank in 0..n!-1 (Lehmer code read in the factorial number system)."""
    n = p.n
    result = 0
    for i, value in enumerate(p.symbols):
        smaller = sum(1 for later in p.symbols[i + 1:] if later < value)
        result = result * (n - i) + smaller
    return result


def unrank(n, r):
    if n < 0 or not 0 <= r < factorial(n):
        raise InvalidInputError(f"rank {r} out of range for n={n}")
    remaining = list(range(n))
    symbols = []
    for i in range(n):
        digit, r = divmod(r, factorial(n - 1 - i))
        symbols.append(remaining.pop(digit))
    return Permutation(tuple(symbols))
