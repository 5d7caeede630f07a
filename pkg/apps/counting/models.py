from dataclasses import dataclass
from math import factorial

import pandas as pd
from django.db import models

from apps.permutations.models import AdjacencyType


class CrossCheck(models.TextChoices):
    ORACLE = "oracle", "Brute-force class sizes"
    TANNY = "tanny", "Closed form C(n-1,k)(D(n-k)+D(n-1-k)), Type 1"
    WHITWORTH = "whitworth", "f(n,0) equals D(n), Types 2 and 3"


@dataclass(frozen=True)
class CountTable:
    """f(n, k) = |P_n(k)| for 1 <= n <= n_max and 0 <= k <= n + delta."""

    adjacency_type: AdjacencyType
    n_max: int
    rows: tuple

    def f(self, n, k):
        """Zero outside the table's range."""
        if not 1 <= n <= self.n_max or k < 0:
            return 0
        row = self.rows[n - 1]
        return row[k] if k < len(row) else 0

    def row(self, n):
        return self.rows[n - 1]

    def row_sum(self, n):
        return sum(self.row(n))

    def to_frame(self):
        """Long form, one record per (n, k)."""
        records = [
            {"n": n, "k": k, "count": count}
            for n, row in enumerate(self.rows, start=1)
            for k, count in enumerate(row)
        ]
        return pd.DataFrame.from_records(records, columns=["n", "k", "count"])

    def check_row_sums(self):
        """First n whose row does not sum to n!, or None."""
        for n in range(1, self.n_max + 1):
            if self.row_sum(n) != factorial(n):
                return n
        return None


@dataclass(frozen=True)
class CopyCount:
    """How many permutations of size n reduce to one fixed irreducible of size k."""

    n: int
    k: int
    adjacency_type: AdjacencyType
    copies: int
