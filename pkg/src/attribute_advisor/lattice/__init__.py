from .nodes import (
    LatticeNode,
    enumerate_tree,
    is_affordable,
    is_maximal_affordable,
    lattice_parents,
    rho,
    tree_children,
    tree_parent,
)
from .ordinal import (
    OrdinalNode,
    dag_rho,
    dag_tree_children,
    dag_tree_parent,
    enumerate_dag_tree,
)

__all__ = [
    "LatticeNode",
    "OrdinalNode",
    "dag_rho",
    "dag_tree_children",
    "dag_tree_parent",
    "enumerate_dag_tree",
    "enumerate_tree",
    "is_affordable",
    "is_maximal_affordable",
    "lattice_parents",
    "rho",
    "tree_children",
    "tree_parent",
]
