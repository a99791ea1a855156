"""chainlab: exact combinatorics of k-ary chains and their decompressed trees.

A k-ary chain is a rooted ordered DAG in which every node has out-degree k
and the depth-first spanning tree is a path; decompressing one unfolds every
pointer into a copy of the subtree it shares.  This package provides the
decompression operator, exhaustive enumeration and uniform sampling of
chains, exact per-level node counts and moments, the generating-function
calculus behind them, the l!-to-1 marked-chain correspondence, and the
bridge to Brauer addition chains — everything in exact arithmetic, with a
brute-force oracle for each closed form.
"""

from .chains import (
    Chain,
    ChainError,
    InversionTable,
    Permutation,
    all_previous_chain,
    all_zero_chain,
    chain_from_json,
    chain_to_inversion,
    chain_to_json,
    chain_to_permutation,
    enumerate_chains,
    inversion_to_chain,
    random_chain,
)
from .decompress import (
    BudgetExceededError,
    DagError,
    RootedDag,
    chain_to_dag,
    compress_tree,
    dag_decompressed_size,
    dag_from_json,
    dag_level_profile,
    dag_to_json,
    decompress_tree,
    decompressed_size,
    enumerate_trees,
    is_chain,
    leaf_counts,
    level_profile,
    spine,
    tree_from_json,
    tree_size,
    tree_to_json,
)
from .stats import (
    chain_count,
    expected_size_asymptotic,
    expected_size_exact,
    expected_size_value,
    fuss_catalan,
    laguerre_check,
    laguerre_polynomial,
    level_count_total,
    level_moments,
    total_decompressed_nodes,
)
from .series import (
    TruncatedSeries,
    add_root,
    bivariate_check,
    bivariate_level_slices,
    counts_to_series,
    geometric_series,
    level_series,
    level_series_closed_form,
    pointer_add,
    pointer_remove,
    series_to_counts,
)
from .bijections import (
    MarkedChain,
    count_increasing_subsequences,
    enumerate_marked_chains,
    is_valid_traversal,
    joint_profile_counterexample,
    make_valid_traversal,
    strict_partial_permutation_count,
    traversal_preimages,
)
from .addition_chains import (
    AdditionChainError,
    BrauerChain,
    brauer_from_chain,
    chain_from_brauer,
    count_chain_compressible,
    k_brauer_values,
    min_addition_chain_length,
    min_star_chain_length,
    scholz_brauer_check,
)

__version__ = "0.1.0"
