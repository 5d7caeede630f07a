from django.core.management.base import CommandError

from apps.blockmoves.models import BlockMoveKind
from apps.core.management.base import EXIT_MISMATCH, PadjCommand
from apps.core.verification import run_verification


class Command(PadjCommand):
    help = "Run the exhaustive consistency checks at one size and report each property"

    def add_arguments(self, parser):
        parser.add_argument(
            "--n",
            type=int,
            required=True,
            help="Permutation size checked exhaustively",
        )
        parser.add_argument(
            "--move",
            choices=BlockMoveKind.values,
            default=BlockMoveKind.PREFIX.value,
            help="Move kind for the distance properties (default: pt)",
        )
        self.add_cache_arguments(parser)
        self.add_limit_arguments(parser)

    def run(self, config):
        results = run_verification(
            config.n,
            config.move_kind,
            oracle_limit=config.oracle_limit,
            search_limit=config.search_limit,
            cache_dir=config.cache_dir,
            workers=config.workers,
        )
        for result in results:
            if result.passed:
                self.stdout.write(self.style.SUCCESS(f"✓ {result.name}: {result.detail}"))
            else:
                self.stdout.write(self.style.ERROR(f"✗ {result.name}: {result.detail}"))

        failed = [result.name for result in results if not result.passed]
        if failed:
            raise CommandError(f"{len(failed)} properties failed: {', '.join(failed)}", returncode=EXIT_MISMATCH)
        self.status(f"\n✓ all {len(results)} properties hold for n={config.n}")
