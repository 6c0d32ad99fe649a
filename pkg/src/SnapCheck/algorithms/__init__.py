"""Simulated snapshot algorithm implementations."""

from .base import (
    Action,
    ProcessContext,
    Read,
    ReadAll,
    Return,
    SnapshotAlgorithm,
    Write,
)
from .atomic_mock import AtomicMock
from .double_collect import DoubleCollectSeq, DoubleCollectValue
from .even_mask import EvenMask
from .single_collect import SingleCollect


class UnknownModelError(KeyError):
    """No builtin model has the requested name."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"Unknown model {name!r}; available: {', '.join(BUILTIN_MODELS)}"
        )

    def __str__(self) -> str:
        return self.args[0]


BUILTIN_MODELS: dict[str, type[SnapshotAlgorithm]] = {
    "AtomicMock": AtomicMock,
    "SingleCollect": SingleCollect,
    "DoubleCollectSeq": DoubleCollectSeq,
    "DoubleCollectValue": DoubleCollectValue,
    "EvenMask": EvenMask,
}


def builtin_models() -> list[SnapshotAlgorithm]:
    """One instance of every builtin model, in registry order."""
    return [model_class() for model_class in BUILTIN_MODELS.values()]


def get_model(name: str) -> SnapshotAlgorithm:
    """
    Create a builtin model by name (case-insensitive).

    Raises:
        UnknownModelError: if no model has that name
    """
    for key, model_class in BUILTIN_MODELS.items():
        if key.lower() == name.lower():
            return model_class()
    raise UnknownModelError(name)


__all__ = [
    "Action",
    "AtomicMock",
    "BUILTIN_MODELS",
    "DoubleCollectSeq",
    "DoubleCollectValue",
    "EvenMask",
    "ProcessContext",
    "Read",
    "ReadAll",
    "Return",
    "SingleCollect",
    "SnapshotAlgorithm",
    "UnknownModelError",
    "Write",
    "builtin_models",
    "get_model",
]
