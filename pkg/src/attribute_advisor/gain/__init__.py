from .fbc_gain import FbcGain, fbc_gain
from .feedback import FeedbackGain, FeedbackVector, feedback_gain, load_feedback
from .registry import GAIN_NAMES, GainRegistry
from .workload import (
    Workload,
    WorkloadGain,
    load_workload,
    parse_workload,
    queries_from_names,
    workload_gain,
)

__all__ = [
    "GAIN_NAMES",
    "FbcGain",
    "FeedbackGain",
    "FeedbackVector",
    "GainRegistry",
    "Workload",
    "WorkloadGain",
    "fbc_gain",
    "feedback_gain",
    "load_feedback",
    "load_workload",
    "parse_workload",
    "queries_from_names",
    "workload_gain",
]
