from apps.core.management.base import PadjCommand
from apps.blockmoves.models import BlockMoveKind
from apps.blockmoves.moves import apply_move
from apps.blockmoves.solver import solve


class Command(PadjCommand):
    help = "Print a shortest sequence of block moves sorting one permutation"

    def add_arguments(self, parser):
        parser.add_argument(
            "--move",
            choices=BlockMoveKind.values,
            required=True,
            help="t (transposition), pt (prefix) or st (suffix)",
        )
        parser.add_argument(
            "--perm",
            type=str,
            required=True,
            help='Comma separated permutation of 0..n-1, e.g. "4,2,1,3,0"',
        )
        parser.add_argument(
            "--solver-limit",
            type=int,
            help="Largest n handed to the heuristic search (default: PADJ_SOLVER_LIMIT)",
        )
        self.add_cache_arguments(parser)
        self.add_limit_arguments(parser)

    def run(self, config):
        p = config.permutation
        moves = solve(
            p,
            config.move_kind,
            search_limit=config.search_limit,
            solver_limit=config.solver_limit,
            cache_dir=config.cache_dir,
            workers=config.workers,
        )
        lines = [f"length: {len(moves)}"]
        current = p
        for step, move in enumerate(moves, start=1):
            current = apply_move(current, move)
            lines.append(f"{step}: {move} -> {current}")
        self.emit("\n".join(lines) + "\n")
