from dataclasses import dataclass

from django.db import models

from .exceptions import InvalidInputError


class AdjacencyType(models.IntegerChoices):
    """
    Which boundary pairs count as an adjacency.

    Internal pairs (a, a+1) always count. Type 2 also counts a last symbol
    n-1 (virtual trailing n), Type 3 a first symbol 0 (virtual leading -1),
    Type 4 both.
    """

    TYPE1 = 1, "Type 1 (internal pairs only)"
    TYPE2 = 2, "Type 2 (virtual trailing n)"
    TYPE3 = 3, "Type 3 (virtual leading -1)"
    TYPE4 = 4, "Type 4 (both virtual ends)"

    @property
    def leading(self):
        return self in (AdjacencyType.TYPE3, AdjacencyType.TYPE4)

    @property
    def trailing(self):
        return self in (AdjacencyType.TYPE2, AdjacencyType.TYPE4)

    @property
    def offset(self):
        """delta such that the identity of size n has n + delta adjacencies."""
        return int(self.leading) + int(self.trailing) - 1

    def max_adjacencies(self, n):
        return max(n + self.offset, 0)


@dataclass(frozen=True)
class Permutation:
    """An arrangement of 0..n-1. The size-0 permutation is allowed (reduced identity)."""

    symbols: tuple

    def __post_init__(self):
        try:
            symbols = tuple(int(v) for v in self.symbols)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"not a sequence of integers: {self.symbols!r}") from exc
        if sorted(symbols) != list(range(len(symbols))):
            raise InvalidInputError(
                f"{symbols} is not a permutation of 0..{len(symbols) - 1}"
            )
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def parse(cls, text):
        """Read "4,2,1,3,0" (spaces tolerated)."""
        if text is None or not str(text).strip():
            raise InvalidInputError("empty permutation")
        parts = [part.strip() for part in str(text).split(",")]
        if any(not part.lstrip("-").isdigit() for part in parts):
            raise InvalidInputError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(part) for part in parts))

    @classmethod
    def identity(cls, n):
        if n < 0:
            raise InvalidInputError(f"size must be non-negative, got {n}")
        return cls(tuple(range(n)))

    @classmethod
    def reverse(cls, n):
        if n < 0:
            raise InvalidInputError(f"size must be non-negative, got {n}")
        return cls(tuple(range(n - 1, -1, -1)))

    @classmethod
    def empty(cls):
        return cls(())

    @property
    def n(self):
        return len(self.symbols)

    @property
    def is_identity(self):
        return self.symbols == tuple(range(self.n))

    def position_of(self, symbol):
        """1-based position of a symbol."""
        return self.symbols.index(symbol) + 1

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        return self.symbols[index]

    def __str__(self):
        return ",".join(str(v) for v in self.symbols)
