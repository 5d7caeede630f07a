from django.core.management.base import CommandError

from apps.core.emitters import render_count_table
from apps.core.management.base import EXIT_MISMATCH, EXIT_USAGE, PadjCommand
from apps.counting.identities import first_mismatch
from apps.counting.recurrences import build_count_table
from apps.permutations.models import AdjacencyType


class Command(PadjCommand):
    help = "Print the table f(n, k) of permutations with k adjacencies, optionally cross-checked"

    def add_arguments(self, parser):
        parser.add_argument(
            "--type",
            type=int,
            required=True,
            choices=AdjacencyType.values,
            help="Adjacency type 1-4",
        )
        parser.add_argument(
            "--n-max",
            type=int,
            default=14,
            help="Largest n in the table (default: 14)",
        )
        parser.add_argument(
            "--check",
            choices=["oracle", "tanny", "whitworth"],
            help="Cross-check the table against brute force or a closed form",
        )
        self.add_format_argument(parser)
        self.add_limit_arguments(parser)

    def run(self, config):
        adjacency_type = AdjacencyType(config.adjacency_type)
        table = build_count_table(config.n_max, adjacency_type)
        self.emit(render_count_table(table, config.output_format))

        if config.check:
            self.cross_check(table, config)

    def cross_check(self, table, config):
        adjacency_type = table.adjacency_type
        if config.check == "tanny" and adjacency_type != AdjacencyType.TYPE1:
            raise CommandError("the tanny check applies to Type 1 only", returncode=EXIT_USAGE)
        if config.check == "whitworth" and adjacency_type not in (AdjacencyType.TYPE2, AdjacencyType.TYPE3):
            raise CommandError("the whitworth check applies to Types 2 and 3 only", returncode=EXIT_USAGE)

        checked = table
        if config.check == "oracle" and table.n_max > config.oracle_limit:
            self.stderr.write(
                self.style.WARNING(
                    f"⚠ oracle check limited to n <= {config.oracle_limit}"
                )
            )
            checked = build_count_table(max(config.oracle_limit, 2), adjacency_type)

        mismatch = first_mismatch(checked, config.check, oracle_limit=config.oracle_limit)
        if mismatch is not None:
            n, k, expected, actual = mismatch
            raise CommandError(
                f"✗ {config.check} check failed: first mismatch at (n={n}, k={k}), "
                f"expected {expected}, table has {actual}",
                returncode=EXIT_MISMATCH,
            )
        self.status(f"✓ {config.check} check passed for n <= {checked.n_max}")
