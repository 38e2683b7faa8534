"""Feedback gain: sum of per-attribute desirability derived from row scores."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Sequence, Union

import numpy as np
import pandas as pd

from .. import settings
from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.errors import DatasetParseError, GainContractError, WidthMismatchError

logger = logging.getLogger(__name__)


class FeedbackVector:
    """Non-negative score per dataset row.

    Negative reviews have to be shifted into the non-negative range before
    they get here.
    """

    def __init__(self, scores: Union[Sequence[float], np.ndarray]):
        values = np.asarray(scores, dtype=float).reshape(-1)
        if not np.isfinite(values).all():
            raise GainContractError("feedback scores must be finite")
        negative = np.flatnonzero(values < 0)
        if negative.size:
            raise GainContractError(
                f"feedback score {values[negative[0]]} at row {negative[0]} is "
                "negative; shift scores to be non-negative first"
            )
        values.setflags(write=False)
        self.scores = values

    def __len__(self) -> int:
        return len(self.scores)

    def attribute_scores(self, dataset: Dataset) -> np.ndarray:
        """Per-attribute feedback: the row scores times the 0/1 matrix."""
        if len(self.scores) != dataset.n:
            raise WidthMismatchError(
                f"{len(self.scores)} feedback scores for {dataset.n} rows"
            )
        return self.scores @ dataset.to_matrix()


class FeedbackGain:
    integral = False

    def __init__(self, feedback: FeedbackVector):
        self.feedback = feedback
        self.name = "feedback"
        self._per_attribute: Dict[str, np.ndarray] = {}

    def attribute_scores(self, dataset: Dataset) -> np.ndarray:
        cached = self._per_attribute.get(dataset.fingerprint)
        if cached is None:
            cached = self.feedback.attribute_scores(dataset)
            self._per_attribute[dataset.fingerprint] = cached
        return cached

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> float:
        scores = self.attribute_scores(dataset)
        return float(sum(scores[k] for k in attrs.indices()))


def feedback_gain(R: Union[FeedbackVector, Sequence[float]]) -> FeedbackGain:
    if not isinstance(R, FeedbackVector):
        R = FeedbackVector(R)
    return FeedbackGain(R)


def load_feedback(path: Union[str, Path], n: int) -> FeedbackVector:
    """Read a ``row_index,score`` CSV; rows not listed score 0."""
    frame = pd.read_csv(
        path,
        header=None,
        names=["row", "score"],
        encoding=settings.CSV_ENCODING,
        skip_blank_lines=True,
        dtype=str,
    )
    if len(frame) and not frame.iloc[0]["row"].strip().lstrip("-").isdigit():
        frame = frame.iloc[1:]
    scores = np.zeros(n, dtype=float)
    for line_no, (row, score) in enumerate(frame.itertuples(index=False), start=1):
        try:
            index = int(str(row).strip())
            value = float(str(score).strip())
        except ValueError:
            raise DatasetParseError(
                f"bad feedback entry {row!r},{score!r}", row=line_no
            ) from None
        if not 0 <= index < n:
            raise DatasetParseError(
                f"row index {index} outside 0..{n - 1}", row=line_no
            )
        scores[index] = value
    logger.info("Loaded feedback for %d rows from %s", len(frame), path)
    return FeedbackVector(scores)
