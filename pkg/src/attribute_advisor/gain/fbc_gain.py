from __future__ import annotations

import logging
from typing import Optional

from .. import settings
from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.deadline import Deadline
from ..core.errors import ConfigError, GainContractError
from ..fbc.frequent import FbcConfig, MaximalFrequentSet, project_maximal_frequents
from ..fbc.oracles import fbc_apriori, fbc_bruteforce
from ..fbc.patterns import RecursionCounter, fbc

logger = logging.getLogger(__name__)

FBC_METHODS = ("patterns", "apriori")


class FbcGain:
    """Number of frequent subsets of the evaluated attribute set.

    ``patterns`` counts from the mined maximal frequent set; ``apriori``
    re-derives the count from the dataset on every call. With ``verify``
    each value is checked against exhaustive enumeration when the set is
    small enough for it.
    """

    integral = True

    def __init__(
        self,
        F: MaximalFrequentSet,
        *,
        method: str = "patterns",
        verify: bool = False,
        deadline: Optional[Deadline] = None,
    ):
        if method not in FBC_METHODS:
            raise ConfigError(
                f"Unknown FBC method '{method}'. Available: {', '.join(FBC_METHODS)}"
            )
        self.F = F
        self.cfg = FbcConfig(F.tau)
        self.method = method
        self.verify = verify
        self.deadline = deadline
        self.counter = RecursionCounter()
        self.name = "fbc" if method == "patterns" else "fbc-apriori"

    def _check(self, attrs: AttrSet, dataset: Dataset) -> None:
        if attrs.width != self.F.width or dataset.m != self.F.width:
            raise GainContractError(
                f"maximal set width {self.F.width} does not match "
                f"attrs width {attrs.width} / dataset width {dataset.m}"
            )
        if self.F.fingerprint and self.F.fingerprint != dataset.fingerprint:
            raise GainContractError(
                f"maximal set was mined from dataset {self.F.fingerprint}, "
                f"not {dataset.fingerprint}"
            )

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> int:
        self._check(attrs, dataset)
        if self.method == "apriori":
            value = fbc_apriori(attrs, dataset, self.cfg, deadline=self.deadline)
        else:
            value = fbc(attrs, project_maximal_frequents(self.F, attrs), self.counter)

        if self.verify and attrs.level <= settings.ORACLE_GUARD:
            expected = fbc_bruteforce(attrs, dataset, self.cfg)
            if expected != value:
                raise GainContractError(
                    f"FBC({attrs}) = {value} but enumeration gives {expected}"
                )
        logger.debug("FBC(%s) = %d", attrs, value)
        return value


def fbc_gain(F: MaximalFrequentSet, **options) -> FbcGain:
    return FbcGain(F, **options)
