"""Solver and builder for binary trees with choosable edge lengths.

Given a constant k >= 2 and a multiset of per-leaf depth bounds, decide
whether a rooted strict binary tree exists whose sibling edge lengths sum
to k everywhere and whose leaf depths stay within the bounds, and build a
witness tree when one exists.  k = 2 is the classical unit-edge case
solved by the power-of-two feasibility sum.
"""

from .errors import InputError, LimitError
from .oracle import (
    OracleConfig,
    kraft_check,
    oracle_enumerate_trees,
    oracle_recursive,
    run_oracle,
)
from .signature import (
    LeafSignature,
    canonicalize,
    is_dominated,
    merge_reduce,
    omega,
    truncate,
)
from .solver import (
    Decision,
    LevelSet,
    MergeRecord,
    SolverConfig,
    SolverStats,
    decide,
    generate_children_fast,
    generate_children_naive,
    prune_level,
    trace_levels,
)
from .treebuild import (
    SplitTree,
    TreeNode,
    ValidationReport,
    child_edge_lengths,
    export_tree,
    parse_tree,
    reconstruct,
    relabel,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Decision",
    "InputError",
    "LeafSignature",
    "LevelSet",
    "LimitError",
    "MergeRecord",
    "OracleConfig",
    "SolverConfig",
    "SolverStats",
    "SplitTree",
    "TreeNode",
    "ValidationReport",
    "canonicalize",
    "child_edge_lengths",
    "decide",
    "export_tree",
    "generate_children_fast",
    "generate_children_naive",
    "is_dominated",
    "kraft_check",
    "merge_reduce",
    "omega",
    "oracle_enumerate_trees",
    "oracle_recursive",
    "parse_tree",
    "prune_level",
    "reconstruct",
    "relabel",
    "run_oracle",
    "trace_levels",
    "truncate",
    "validate",
]
