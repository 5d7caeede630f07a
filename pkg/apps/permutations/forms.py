from django import forms
from django.core.exceptions import ValidationError

from .exceptions import InvalidInputError
from .models import AdjacencyType, Permutation


class PermutationField(forms.CharField):
    """Comma separated symbols, e.g. "4,2,1,3,0"."""

    def to_python(self, value):
        if isinstance(value, Permutation):
            return value
        value = super().to_python(value)
        if value in self.empty_values:
            return None
        try:
            return Permutation.parse(value)
        except InvalidInputError as exc:
            raise ValidationError(str(exc), code="invalid_permutation") from exc


class AdjacencyTypeField(forms.TypedChoiceField):
    def __init__(self, **kwargs):
        kwargs.setdefault("choices", AdjacencyType.choices)
        kwargs.setdefault("coerce", lambda value: AdjacencyType(int(value)))
        super().__init__(**kwargs)
