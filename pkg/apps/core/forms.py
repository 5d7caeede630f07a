from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError
from pathlib import Path

from apps.blockmoves.models import BlockMoveKind
from apps.counting.models import CrossCheck
from apps.estimator.models import PsiMode
from apps.permutations.forms import AdjacencyTypeField, PermutationField

from .models import OutputFormat, RunConfig

# breadth-first tables are never built beyond this size
SEARCH_CEILING = 10


class IntegerListField(forms.Field):
    """A list of integers, given as a list or as "6,7,8"."""

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        try:
            return [int(v) for v in value]
        except (TypeError, ValueError):
            raise ValidationError("Enter whole numbers separated by commas.", code="invalid")


class RunConfigForm(forms.Form):
    """
    Validates command options into a RunConfig.

    Unset options fall back to settings (which read the PADJ_* environment),
    so a flag always wins over the environment.
    """

    format = forms.ChoiceField(choices=OutputFormat.choices, required=False)
    cache_dir = forms.CharField(required=False)
    workers = forms.IntegerField(min_value=1, required=False)
    oracle_limit = forms.IntegerField(min_value=1, required=False)
    search_limit = forms.IntegerField(min_value=1, max_value=SEARCH_CEILING, required=False)
    solver_limit = forms.IntegerField(min_value=1, required=False)

    type = AdjacencyTypeField(required=False)
    move = forms.ChoiceField(choices=BlockMoveKind.choices, required=False)
    n = forms.IntegerField(min_value=1, required=False)
    n_max = forms.IntegerField(min_value=2, required=False)
    limit = IntegerListField(required=False)
    psi = forms.ChoiceField(choices=PsiMode.choices, required=False)
    check = forms.ChoiceField(choices=CrossCheck.choices, required=False)
    perm = PermutationField(required=False)

    def __init__(self, *args, uses_cache=True, **kwargs):
        super().__init__(*args, **kwargs)
        self.uses_cache = uses_cache

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data

        defaults = {
            "format": OutputFormat.CSV,
            "workers": settings.PADJ_WORKERS,
            "oracle_limit": settings.PADJ_ORACLE_LIMIT,
            "search_limit": min(settings.PADJ_SEARCH_LIMIT, SEARCH_CEILING),
            "solver_limit": settings.PADJ_SOLVER_LIMIT,
            "psi": PsiMode.LIMITING,
        }
        for name, default in defaults.items():
            if cleaned_data.get(name) in (None, ""):
                cleaned_data[name] = default

        cache_dir = Path(cleaned_data.get("cache_dir") or settings.PADJ_CACHE_DIR)
        if self.uses_cache:
            try:
                cache_dir.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise ValidationError(f"cache directory {cache_dir} is not writable: {exc}")
        cleaned_data["cache_dir"] = cache_dir

        limits = cleaned_data.get("limit") or []
        if limits:
            if min(limits) < 3:
                self.add_error("limit", "Exact limits start at 3.")
            elif max(limits) > cleaned_data["search_limit"]:
                self.add_error(
                    "limit",
                    f"Limit {max(limits)} is above the search limit {cleaned_data['search_limit']}.",
                )
            n_max = cleaned_data.get("n_max")
            if n_max is not None and n_max <= max(limits):
                self.add_error("n_max", f"n-max must exceed the largest limit ({max(limits)}).")
        return cleaned_data

    def to_config(self):
        data = self.cleaned_data
        return RunConfig(
            output_format=data["format"],
            cache_dir=data["cache_dir"],
            workers=data["workers"],
            oracle_limit=data["oracle_limit"],
            search_limit=data["search_limit"],
            solver_limit=data["solver_limit"],
            adjacency_type=data.get("type") or None,
            move_kind=data.get("move") or None,
            n=data.get("n"),
            n_max=data.get("n_max"),
            limits=tuple(data.get("limit") or ()),
            psi_mode=data["psi"],
            check=data.get("check") or None,
            permutation=data.get("perm"),
        )
