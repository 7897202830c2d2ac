"""Computable model presentations."""

from .epset import EMPTY_SET, FULL_SET, EPSet
from .presentations import (
    AmorphElem, AmorphousModel, BAElem, CharacteristicModel, CharElem, ColumnElem, ColumnsModel,
    DescriptorError, FiniteBAElem, FiniteBAModel, InfGrade, MalformedSplit, Model, MODEL_IDS,
    PresentationMismatch, PrimeElem, PrimeModel, SaturatedBAModel, Unavailable, Unrealizable,
    coarse, format_size, get_model, is_infinite_size, refine,
)

__all__ = [
    "EMPTY_SET", "FULL_SET", "EPSet", "AmorphElem", "AmorphousModel", "BAElem", "CharacteristicModel",
    "CharElem", "ColumnElem", "ColumnsModel", "DescriptorError", "FiniteBAElem", "FiniteBAModel",
    "InfGrade", "MalformedSplit", "Model", "MODEL_IDS", "PresentationMismatch", "PrimeElem",
    "PrimeModel", "SaturatedBAModel", "Unavailable", "Unrealizable", "coarse", "format_size",
    "get_model", "is_infinite_size", "refine",
]
