from dataclasses import dataclass, field
from pathlib import Path

from django.db import models


class OutputFormat(models.TextChoices):
    CSV = "csv", "CSV"
    JSON = "json", "JSON"
    MARKDOWN = "markdown", "Markdown"


@dataclass(frozen=True)
class RunConfig:
    """Validated options shared by every management command."""

    output_format: str = OutputFormat.CSV
    cache_dir: Path = None
    workers: int = 1
    oracle_limit: int = 9
    search_limit: int = 9
    solver_limit: int = 12
    adjacency_type: int = None
    move_kind: str = None
    n: int = None
    n_max: int = None
    limits: tuple = field(default_factory=tuple)
    psi_mode: str = None
    check: str = None
    permutation: object = None
