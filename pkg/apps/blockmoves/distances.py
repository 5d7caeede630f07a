"""
Exact block-move distances for every permutation of size n.

Distances come from a breadth-first search out of the identity over rank
indices; every move set here is closed under inverses, so the distance
from the identity is the sorting distance. Finished tables are cached on
disk, one byte per permutation behind a small header.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

from apps.counting.recurrences import build_count_table
from apps.permutations.arrays import adjacency_counts, all_permutations, rank_rows
from apps.permutations.exceptions import ConsistencyError, InvalidInputError, ResourceLimitError
from apps.permutations.models import AdjacencyType, Permutation
from apps.permutations.utils import rank, reduce

from .models import BlockMoveKind, DistanceTable
from .moves import generate_moves

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"PADJ"
CACHE_VERSION = 1
UNSEEN = 255

# rows expanded at once, bounds memory at n = 10
FRONTIER_CHUNK = 1 << 16

# in-process tables, keyed by (n, kind)
_tables = {}


def _expand(rows, positions):
    """Ranks of every neighbour of the given rows under a batch of moves."""
    return np.concatenate([rank_rows(rows[:, index]) for index in positions])


def bfs_distances(n, kind, workers=1):
    """Fresh DistanceTable by layered breadth-first search."""
    kind = BlockMoveKind(kind)
    if n < 1:
        raise InvalidInputError(f"size must be positive, got {n}")

    perms = all_permutations(n)
    distances = np.full(factorial(n), UNSEEN, dtype=np.uint8)
    distances[0] = 0
    if n == 1:
        distances.flags.writeable = False
        return DistanceTable(n=n, kind=kind, distances=distances)

    positions = [move.positions(n) for move in generate_moves(n, kind)]
    workers = max(workers or 1, 1)
    batches = [positions[w::workers] for w in range(workers) if positions[w::workers]]

    frontier = np.array([0], dtype=np.int64)
    depth = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while frontier.size:
            depth += 1
            reached = []
            for start in range(0, frontier.size, FRONTIER_CHUNK):
                rows = perms[frontier[start:start + FRONTIER_CHUNK]]
                neighbours = np.unique(
                    np.concatenate(list(pool.map(lambda batch: _expand(rows, batch), batches)))
                )
                # first writer wins: only unseen ranks join the next layer
                fresh = neighbours[distances[neighbours] == UNSEEN]
                distances[fresh] = depth
                reached.append(fresh)
            frontier = np.concatenate(reached)
            logger.debug(f"{kind.label} n={n}: {frontier.size} permutations at distance {depth}")

    if (distances == UNSEEN).any():
        raise InvalidInputError(f"{kind.label} moves do not reach all of P_{n}")
    distances.flags.writeable = False
    logger.info(f"{kind.label} n={n}: diameter {int(distances.max())}")
    return DistanceTable(n=n, kind=kind, distances=distances)


def cache_path(cache_dir, n, kind):
    return Path(cache_dir) / f"{BlockMoveKind(kind).value}-n{n}.padj"


def save_table(table, cache_dir):
    path = cache_path(cache_dir, table.n, table.kind)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = CACHE_MAGIC + bytes([CACHE_VERSION, table.n, table.kind.code])
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(header + table.distances.tobytes())
    tmp.replace(path)
    return path


def _corrupt(path, strict):
    if strict:
        raise ConsistencyError(f"corrupt distance cache {path}")
    logger.warning(f"⚠ discarding corrupt distance cache {path}")
    return None


def load_table(cache_dir, n, kind, strict=False):
    """
    Cached table, or None when missing or unusable.

    With strict=True an unusable file raises ConsistencyError instead.
    """
    kind = BlockMoveKind(kind)
    path = cache_path(cache_dir, n, kind)
    if not path.exists():
        return None
    data = path.read_bytes()
    header = CACHE_MAGIC + bytes([CACHE_VERSION, n, kind.code])
    if not data.startswith(header) or len(data) != len(header) + factorial(n):
        return _corrupt(path, strict)
    distances = np.frombuffer(data[len(header):], dtype=np.uint8).copy()
    if distances[0] != 0 or (distances == UNSEEN).any():
        return _corrupt(path, strict)
    distances.flags.writeable = False
    return DistanceTable(n=n, kind=kind, distances=distances)


def get_distance_table(n, kind, cache_dir=None, workers=None, search_limit=None, use_cache=True):
    """DistanceTable for (n, kind): from memory, then disk, then a fresh search."""
    kind = BlockMoveKind(kind)
    limit = settings.PADJ_SEARCH_LIMIT if search_limit is None else search_limit
    if n > limit:
        raise ResourceLimitError("breadth-first distance table", n, limit)

    key = (n, kind)
    if key in _tables:
        return _tables[key]

    cache_dir = Path(cache_dir or settings.PADJ_CACHE_DIR)
    table = load_table(cache_dir, n, kind) if use_cache else None
    if table is None:
        table = bfs_distances(n, kind, workers=workers or settings.PADJ_WORKERS)
        if use_cache:
            try:
                save_table(table, cache_dir)
            except OSError as exc:
                logger.warning(f"⚠ could not write distance cache: {exc}")
    _tables[key] = table
    return table


def forget_tables():
    """Drop the in-process tables; the disk cache is untouched."""
    _tables.clear()


def zero_class_mask(n, kind, adjacency_type=None):
    adjacency_type = BlockMoveKind(kind).paired_type if adjacency_type is None else AdjacencyType(adjacency_type)
    return adjacency_counts(all_permutations(n), adjacency_type) == 0


def average_moves_zero(n, kind, adjacency_type=None, **table_options):
    """Exact mean distance over the irreducible permutations of size n."""
    table = get_distance_table(n, kind, **table_options)
    return table.average(zero_class_mask(n, kind, adjacency_type))


def expected_moves_exact(n, kind, **table_options):
    """Exact mean distance over all of P_n."""
    table = get_distance_table(n, kind, **table_options)
    return table.average(np.ones(factorial(n), dtype=bool))


def expected_moves_decomposed(n, kind, **table_options):
    """
    The same mean, rebuilt from class sizes and irreducible averages:
    sum over k of f(n, k)/n! times the mean over irreducibles of size n-k.
    """
    kind = BlockMoveKind(kind)
    counts = build_count_table(max(n, 2), kind.paired_type)
    total = Fraction(0)
    for k in range(kind.paired_type.max_adjacencies(n) + 1):
        size = n - k
        if counts.f(n, k) == 0 or size <= 1:
            continue
        total += Fraction(counts.f(n, k), factorial(n)) * average_moves_zero(size, kind, **table_options)
    return total


def reduction_invariance_check(n, kind, **table_options):
    """
    Permutations whose distance differs from that of their reduced form
    (read from the smaller table), as (p, distance, reduced, reduced distance).
    """
    kind = BlockMoveKind(kind)
    table = get_distance_table(n, kind, **table_options)
    violations = []
    for r, row in enumerate(all_permutations(n)):
        p = Permutation(tuple(int(v) for v in row))
        reduced = reduce(p, kind.paired_type)
        if reduced.n <= 1:
            expected = 0
        else:
            expected = get_distance_table(reduced.n, kind, **table_options).distance(rank(reduced))
        if table.distance(r) != expected:
            violations.append((p, table.distance(r), reduced, expected))
    if violations:
        logger.error(f"{kind.label} n={n}: {len(violations)} permutations change distance under reduction")
    return violations


def class_statistics(table, adjacency_type=None):
    """
    One row per adjacency class: n, class_k, count, and the exact mean
    distance as a Fraction in avg_distance.
    """
    adjacency_type = table.kind.paired_type if adjacency_type is None else AdjacencyType(adjacency_type)
    frame = pd.DataFrame(
        {
            "class_k": adjacency_counts(all_permutations(table.n), adjacency_type),
            "distance": table.distances.astype(np.int64),
        }
    )
    grouped = frame.groupby("class_k")["distance"].agg(["count", "sum"]).reset_index()
    grouped.insert(0, "n", table.n)
    grouped["avg_distance"] = [
        Fraction(int(total), int(count)) for total, count in zip(grouped["sum"], grouped["count"])
    ]
    return grouped[["n", "class_k", "count", "avg_distance"]]
