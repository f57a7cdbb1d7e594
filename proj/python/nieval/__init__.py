"""Normalized mutual information for binary classifiers."""

from ._core import (
    ClassSizes,
    ConfusionMatrix,
    DomainError,
    InputError,
    accuracy,
    accuracy_from_pr,
    classify_case,
    dispatch,
    entropy,
    false_alarm,
    flip_predictions,
    ni,
    ni_case9_apr,
    ni_from_fr,
    ni_from_pr,
    precision,
    precision_from_fr,
    rank,
    recall,
    run_cli,
)

__all__ = [
    "ClassSizes",
    "ConfusionMatrix",
    "DomainError",
    "InputError",
    "accuracy",
    "accuracy_from_pr",
    "classify_case",
    "dispatch",
    "entropy",
    "false_alarm",
    "flip_predictions",
    "ni",
    "ni_case9_apr",
    "ni_from_fr",
    "ni_from_pr",
    "precision",
    "precision_from_fr",
    "rank",
    "recall",
    "run_cli",
]
