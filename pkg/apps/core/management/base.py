import logging

from django.core.management.base import BaseCommand, CommandError

from apps.permutations.exceptions import (
    ConsistencyError,
    InvalidInputError,
    ResourceLimitError,
    UndefinedValueError,
)

from ..forms import RunConfigForm
from ..models import OutputFormat

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_REFUSED = 3


class PadjCommand(BaseCommand):
    """
    Shared plumbing: options go through RunConfigForm, library errors become
    CommandError with the matching exit code. Subclasses implement run(config).
    """

    # set by add_cache_arguments; only those commands create the cache directory
    uses_cache = False

    def add_format_argument(self, parser):
        parser.add_argument(
            "--format",
            choices=OutputFormat.values,
            help="Output format (default: csv)",
        )

    def add_limit_arguments(self, parser):
        parser.add_argument(
            "--oracle-limit",
            type=int,
            help="Largest n enumerated exhaustively (default: PADJ_ORACLE_LIMIT)",
        )
        parser.add_argument(
            "--search-limit",
            type=int,
            help="Largest n with a breadth-first distance table, at most 10 (default: PADJ_SEARCH_LIMIT)",
        )

    def add_cache_arguments(self, parser):
        self.uses_cache = True
        parser.add_argument(
            "--cache-dir",
            type=str,
            help="Where distance tables are stored (default: PADJ_CACHE_DIR)",
        )
        parser.add_argument(
            "--workers",
            type=int,
            help="Threads expanding each search layer (default: PADJ_WORKERS)",
        )

    def build_config(self, options):
        data = {
            name: value
            for name, value in options.items()
            if name in RunConfigForm.base_fields and value is not None
        }
        form = RunConfigForm(data=data, uses_cache=self.uses_cache)
        if not form.is_valid():
            problems = "; ".join(
                f"{name}: {' '.join(messages)}" if name != "__all__" else " ".join(messages)
                for name, messages in form.errors.items()
            )
            raise CommandError(f"invalid options: {problems}", returncode=EXIT_USAGE)
        return form.to_config()

    def emit(self, text):
        self.stdout.write(text, ending="")

    def status(self, text):
        """Human-readable progress and summaries, kept off stdout."""
        self.stderr.write(text, style_func=self.style.SUCCESS)

    def handle(self, *args, **options):
        config = self.build_config(options)
        try:
            self.run(config)
        except InvalidInputError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except UndefinedValueError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except ConsistencyError as exc:
            raise CommandError(str(exc), returncode=EXIT_MISMATCH)
        except ResourceLimitError as exc:
            logger.warning(f"refused: {exc}")
            raise CommandError(str(exc), returncode=EXIT_REFUSED)

    def run(self, config):
        raise NotImplementedError("subclasses of PadjCommand must provide a run() method")
