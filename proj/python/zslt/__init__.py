"""Python bindings for the zslt modular speech/text translation toolkit."""

from ._core import (
    BpeModel,
    Checkpoint,
    adapter_param_count,
    bleu,
    edit_distance,
    project_2d,
    retrieval_top1,
    run_cli,
    version,
    wer,
)

__all__ = [
    "BpeModel",
    "Checkpoint",
    "adapter_param_count",
    "bleu",
    "edit_distance",
    "project_2d",
    "retrieval_top1",
    "run_cli",
    "version",
    "wer",
]
