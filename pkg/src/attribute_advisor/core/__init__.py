from .attrset import AttrSet, format_bits
from .dataset import (
    AttributeCatalog,
    Dataset,
    load_dataset,
    parse_costs,
    parse_dataset,
    query_match,
    query_match_ordinal,
    support_count,
)
from .deadline import Deadline, check_deadline
from .money import format_cents, to_cents

__all__ = [
    "AttrSet",
    "AttributeCatalog",
    "Dataset",
    "Deadline",
    "check_deadline",
    "format_bits",
    "format_cents",
    "load_dataset",
    "parse_costs",
    "parse_dataset",
    "query_match",
    "query_match_ordinal",
    "support_count",
    "to_cents",
]
