import pandas as pd

from apps.blockmoves.distances import average_moves_zero, expected_moves_exact
from apps.blockmoves.models import BlockMoveKind
from apps.core.emitters import display_decimal, render_sections
from apps.core.management.base import PadjCommand
from apps.estimator.estimation import build_estimate_model, expected_value_model
from apps.estimator.models import PsiMode


class Command(PadjCommand):
    help = "Predict average prefix/suffix transposition distances beyond exact search"

    def add_arguments(self, parser):
        parser.add_argument(
            "--move",
            choices=[BlockMoveKind.PREFIX.value, BlockMoveKind.SUFFIX.value],
            default=BlockMoveKind.PREFIX.value,
            help="pt (prefix) or st (suffix) (default: pt)",
        )
        parser.add_argument(
            "--limit",
            type=int,
            nargs="+",
            default=[6, 7, 8],
            help="Largest exact size feeding each model (default: 6 7 8)",
        )
        parser.add_argument(
            "--n-max",
            type=int,
            default=16,
            help="Largest predicted size (default: 16)",
        )
        parser.add_argument(
            "--psi",
            choices=PsiMode.values,
            help="Adjacencies created per move: limiting (3/2) or sized (1 + sigma(n)) (default: limiting)",
        )
        self.add_format_argument(parser)
        self.add_cache_arguments(parser)
        self.add_limit_arguments(parser)

    def run(self, config):
        kind = BlockMoveKind(config.move_kind)
        table_options = {
            "cache_dir": config.cache_dir,
            "workers": config.workers,
            "search_limit": config.search_limit,
        }
        limits = sorted(set(config.limits))
        models = {
            limit: build_estimate_model(kind, limit, config.n_max, config.psi_mode, **table_options)
            for limit in limits
        }
        expectations = {limit: expected_value_model(model) for limit, model in models.items()}
        computed_max = min(config.n_max, config.search_limit)

        irreducible_rows, expected_rows = [], []
        for n in range(2, config.n_max + 1):
            irreducible, expected = {"n": n, "computed": ""}, {"n": n, "computed": ""}
            if n <= computed_max:
                irreducible["computed"] = display_decimal(average_moves_zero(n, kind, **table_options))
                expected["computed"] = display_decimal(expected_moves_exact(n, kind, **table_options))
            for limit in limits:
                column = f"pred_i{limit}"
                predicted = not models[limit].is_exact(n)
                irreducible[column] = display_decimal(models[limit].base[n]) if predicted else ""
                expected[column] = display_decimal(expectations[limit][n]) if predicted else ""
            irreducible_rows.append(irreducible)
            expected_rows.append(expected)

        self.emit(
            render_sections(
                [
                    ("moves_irreducible", pd.DataFrame.from_records(irreducible_rows)),
                    ("expected_moves", pd.DataFrame.from_records(expected_rows)),
                ],
                config.output_format,
            )
        )
        self.status(
            f"\n=== {kind.label} estimate ===\n"
            f"Exact sizes: 2..{computed_max}\n"
            f"Models: limits {', '.join(str(limit) for limit in limits)}, psi {config.psi_mode}"
        )
