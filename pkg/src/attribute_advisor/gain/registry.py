"""Build gain functions from short spec strings such as ``workload:queries.txt``."""

from __future__ import annotations

import logging
from typing import Any, Optional, Tuple

from ..core.dataset import Dataset
from ..core.errors import ConfigError
from ..fbc.frequent import FbcConfig, MaximalFrequentSet, mine_maximal_frequents
from .fbc_gain import FbcGain
from .feedback import FeedbackGain, load_feedback
from .workload import WorkloadGain, load_workload

logger = logging.getLogger(__name__)

GAIN_NAMES = ("fbc", "fbc-apriori", "feedback", "workload", "workload-raw")


class GainRegistry:
    """Resolves ``name[:argument]`` specs to gain objects via ``getattr``."""

    def __init__(self, dataset: Dataset):
        self.dataset = dataset

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------
    @staticmethod
    def split_spec(spec: str) -> Tuple[str, Optional[str]]:
        name, sep, argument = spec.strip().partition(":")
        return name.strip(), (argument.strip() or None) if sep else None

    def build(self, spec: str, **context: Any) -> Any:
        name, argument = self.split_spec(spec)
        handler = getattr(self, f"build_{name.replace('-', '_')}", None)
        if handler is None or name not in GAIN_NAMES:
            raise KeyError(
                f"Unknown gain '{name}'. Available: {', '.join(GAIN_NAMES)}"
            )
        gain = handler(argument, **context)
        logger.info("Using gain %s", gain.name)
        return gain

    # ------------------------------------------------------------------
    # Builders
    # ------------------------------------------------------------------
    def _maximal_set(
        self, mined: Optional[MaximalFrequentSet], tau: Optional[float]
    ) -> MaximalFrequentSet:
        if mined is not None:
            return mined
        if tau is None:
            raise ConfigError("FBC gain needs a mined file or a tau")
        return mine_maximal_frequents(self.dataset, FbcConfig(tau))

    def build_fbc(
        self,
        argument: Optional[str],
        *,
        mined: Optional[MaximalFrequentSet] = None,
        tau: Optional[float] = None,
        verify: bool = False,
        **_: Any,
    ) -> FbcGain:
        if argument is not None:
            tau = float(argument)
        return FbcGain(self._maximal_set(mined, tau), verify=verify)

    def build_fbc_apriori(
        self,
        argument: Optional[str],
        *,
        mined: Optional[MaximalFrequentSet] = None,
        tau: Optional[float] = None,
        deadline: Any = None,
        **_: Any,
    ) -> FbcGain:
        if argument is not None:
            tau = float(argument)
        if mined is None:
            if tau is None:
                raise ConfigError("FBC gain needs a mined file or a tau")
            mined = MaximalFrequentSet((), self.dataset.m, tau, self.dataset.n)
        return FbcGain(mined, method="apriori", deadline=deadline)

    def build_feedback(self, argument: Optional[str], **_: Any) -> FeedbackGain:
        if not argument:
            raise ConfigError("feedback gain needs a file: feedback:<path>")
        return FeedbackGain(load_feedback(argument, self.dataset.n))

    def build_workload(self, argument: Optional[str], **_: Any) -> WorkloadGain:
        if not argument:
            raise ConfigError("workload gain needs a file: workload:<path>")
        return WorkloadGain(load_workload(argument, self.dataset.catalog))

    def build_workload_raw(self, argument: Optional[str], **_: Any) -> WorkloadGain:
        if not argument:
            raise ConfigError("workload gain needs a file: workload-raw:<path>")
        return WorkloadGain(
            load_workload(argument, self.dataset.catalog), smoothing=False
        )
