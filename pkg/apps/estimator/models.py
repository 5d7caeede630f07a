from dataclasses import dataclass, field

from django.db import models

from apps.blockmoves.models import BlockMoveKind


class PsiMode(models.TextChoices):
    LIMITING = "limiting", "Limiting yield 3/2"
    SIZED = "sized", "Size-dependent yield 1 + sigma(n)"


@dataclass
class EstimateModel:
    """
    Average moves to sort an irreducible permutation, per size.

    base holds exact averages for n <= limit and predictions above it,
    with base[0] = base[1] = 0.
    """

    kind: BlockMoveKind
    limit: int
    n_max: int
    psi_mode: PsiMode = PsiMode.LIMITING
    base: dict = field(default_factory=dict)

    @property
    def predictions(self):
        return {n: value for n, value in self.base.items() if n > self.limit}

    def is_exact(self, n):
        return n <= self.limit
