from .frequent import (
    FbcConfig,
    MaximalFrequentSet,
    canonical_order,
    is_frequent,
    levelwise,
    mine_maximal_frequents,
    project_maximal_frequents,
)
from .oracles import (
    fbc_apriori,
    fbc_bruteforce,
    fbc_inclusion_exclusion,
    inclusion_exclusion_count,
)
from .patterns import (
    BipartiteGraph,
    Pattern,
    RecursionCounter,
    assign_rule1,
    construct_bipartite_graphs,
    count_patterns,
    fbc,
    satisfies_rule1,
)

__all__ = [
    "BipartiteGraph",
    "FbcConfig",
    "MaximalFrequentSet",
    "Pattern",
    "RecursionCounter",
    "assign_rule1",
    "canonical_order",
    "construct_bipartite_graphs",
    "count_patterns",
    "fbc",
    "fbc_apriori",
    "fbc_bruteforce",
    "fbc_inclusion_exclusion",
    "inclusion_exclusion_count",
    "is_frequent",
    "levelwise",
    "mine_maximal_frequents",
    "project_maximal_frequents",
    "satisfies_rule1",
]
