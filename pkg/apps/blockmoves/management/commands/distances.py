from apps.core.emitters import display_decimal, render_frame
from apps.core.management.base import PadjCommand
from apps.blockmoves.distances import class_statistics, get_distance_table
from apps.blockmoves.models import BlockMoveKind
from apps.permutations.models import AdjacencyType


class Command(PadjCommand):
    help = "Build (or load) the exact distance table for one size and print per-class averages"

    def add_arguments(self, parser):
        parser.add_argument(
            "--move",
            choices=BlockMoveKind.values,
            required=True,
            help="t (transposition), pt (prefix) or st (suffix)",
        )
        parser.add_argument(
            "--n",
            type=int,
            required=True,
            help="Permutation size",
        )
        parser.add_argument(
            "--type",
            type=int,
            choices=AdjacencyType.values,
            help="Adjacency type used for the classes (default: the one paired with the move)",
        )
        self.add_format_argument(parser)
        self.add_cache_arguments(parser)
        self.add_limit_arguments(parser)

    def run(self, config):
        kind = BlockMoveKind(config.move_kind)
        table = get_distance_table(
            config.n,
            kind,
            cache_dir=config.cache_dir,
            workers=config.workers,
            search_limit=config.search_limit,
        )
        stats = class_statistics(table, config.adjacency_type)
        display = stats.assign(avg_distance=[display_decimal(v) for v in stats["avg_distance"]])
        self.emit(render_frame(display, config.output_format))

        zero = stats[stats["class_k"] == 0]
        zero_text = display_decimal(zero["avg_distance"].iloc[0]) if len(zero) else "n/a"
        self.status(
            f"\n=== {kind.label} distances, n={config.n} ===\n"
            f"Permutations: {len(table.distances)}\n"
            f"Diameter: {table.diameter}\n"
            f"Class-0 average: {zero_text}"
        )
