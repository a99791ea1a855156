import random

import pytest

from chainlab import (
    BudgetExceededError,
    Chain,
    DagError,
    RootedDag,
    all_previous_chain,
    all_zero_chain,
    chain_to_dag,
    compress_tree,
    dag_decompressed_size,
    dag_from_json,
    dag_level_profile,
    dag_to_json,
    decompress_tree,
    decompressed_size,
    enumerate_chains,
    enumerate_trees,
    fuss_catalan,
    is_chain,
    leaf_counts,
    level_profile,
    random_chain,
    spine,
    tree_from_json,
    tree_size,
    tree_to_json,
)


def brute_profile(dag):
    """Oracle: walk every root path explicitly, counting pointer crossings."""
    sp = spine(dag)
    profile = {}
    stack = [(dag.root, 0)]
    while stack:
        node, depth = stack.pop()
        if node != 0:
            profile[depth + 1] = profile.get(depth + 1, 0) + 1
        for slot, child in enumerate(dag.nodes[node], start=1):
            stack.append((child, depth + (0 if slot in sp[node] else 1)))
    return profile


# ---------------------------------------------------------------------------
# RootedDag and spine
# ---------------------------------------------------------------------------

def test_dag_validation():
    RootedDag(2, [(), (0, 0), (1, 1)])
    with pytest.raises(DagError, match="sink"):
        RootedDag(2, [(0,), (0, 0)])
    with pytest.raises(DagError, match="node 2"):
        RootedDag(2, [(), (0, 0), (2, 0)])
    with pytest.raises(DagError, match="unreachable"):
        RootedDag(2, [(), (0, 0), (0, 0), (2, 2)])  # node 1 has no parent


def test_spine_of_chain_is_slot_one_path():
    chain = Chain(2, [[0], [1], [2]])
    assert spine(chain_to_dag(chain)) == ((), (1,), (1,), (1,))


def test_spine_first_visit_rule():
    dag = RootedDag(2, [(), (0, 0), (1, 1)])
    assert spine(dag) == ((), (1,), (1,))  # both slot-2 edges are pointers


def test_is_chain_examples():
    assert is_chain(chain_to_dag(Chain(2, [[0], [1]])))
    assert is_chain(RootedDag(2, [(), (0, 0), (1, 1), (2, 0)]))
    assert not is_chain(RootedDag(2, [(), (0, 0), (1, 0), (1, 2)]))


def test_is_chain_matches_canonical_criterion():
    # every canonical binary DAG on 4 nodes: spine is a path iff slot-1 child is i-1
    for c2 in [(a, b) for a in range(2) for b in range(2)]:
        for c3 in [(a, b) for a in range(3) for b in range(3)]:
            try:
                dag = RootedDag(2, [(), (0, 0), c2, c3])
            except DagError:
                continue
            expected = c2[0] == 1 and c3[0] == 2
            assert is_chain(dag) == expected


# ---------------------------------------------------------------------------
# Sizes and level profiles
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k,targets,counts", [
    (2, [[0], [1]], (1, 2, 4)),
    (2, [[0], [0]], (1, 2, 3)),
    (3, [[0, 0], [1, 1]], (1, 3, 9)),
])
def test_leaf_counts(k, targets, counts):
    assert leaf_counts(Chain(k, targets)) == counts


def test_decompressed_size_examples():
    assert decompressed_size(all_zero_chain(2, 5)) == 5
    assert decompressed_size(Chain(2, [[0], [1]])) == 3
    assert decompressed_size(Chain(3, [[0, 0], [1, 1]])) == 4


def test_level_profile_examples():
    assert level_profile(Chain(2, [[0], [1]])) == {1: 2, 2: 1}
    assert level_profile(Chain(2, [[0], [0]])) == {1: 2}
    assert level_profile(Chain(2, [])) == {}


def test_level_profile_aggregate_n2():
    aggregate = {}
    for chain in enumerate_chains(2, 2):
        for level, count in level_profile(chain).items():
            aggregate[level] = aggregate.get(level, 0) + count
    assert aggregate == {1: 4, 2: 1}


def test_profile_matches_brute_paths_small():
    for k, n_max in ((2, 5), (3, 3)):
        for n in range(n_max + 1):
            for chain in enumerate_chains(k, n):
                dag = chain_to_dag(chain)
                assert level_profile(chain) == brute_profile(dag)
                assert dag_level_profile(dag) == level_profile(chain)


def test_dp_identities_random_chains():
    # 1000 random chains with n <= 200, k <= 4: profile total = size and the
    # sink consistency check inside level_profile both hold
    rng = random.Random(424242)
    for _ in range(1000):
        k = rng.choice((2, 3, 4))
        n = rng.randrange(0, 201)
        chain = random_chain(k, n, rng.getrandbits(64))
        profile = level_profile(chain)
        assert sum(profile.values()) == decompressed_size(chain)


def test_extremes_unbounded():
    for k in (2, 3):
        for n in range(21):
            assert decompressed_size(all_zero_chain(k, n)) == n
            assert decompressed_size(all_previous_chain(k, n)) == (k ** n - 1) // (k - 1)
    # binary case: the familiar 2^n - 1
    assert decompressed_size(all_previous_chain(2, 20)) == 2 ** 20 - 1


# ---------------------------------------------------------------------------
# Tree materialization
# ---------------------------------------------------------------------------

def test_decompress_tree_examples():
    unit = [None, None]
    assert decompress_tree(chain_to_dag(Chain(2, [[0], [1]]))) == [unit, unit]
    comb = decompress_tree(chain_to_dag(all_zero_chain(2, 5)))
    assert comb == [[[[[None, None], None], None], None], None]
    assert decompress_tree(chain_to_dag(Chain(2, []))) is None


def test_decompress_tree_matches_dp():
    rng = random.Random(7)
    cases = [random_chain(2, rng.randrange(0, 11), rng.getrandbits(64)) for _ in range(40)]
    cases += [random_chain(3, rng.randrange(0, 8), rng.getrandbits(64)) for _ in range(20)]
    for chain in cases:
        dag = chain_to_dag(chain)
        tree = decompress_tree(dag)
        assert tree_size(tree) == decompressed_size(chain)
        assert dag_decompressed_size(dag) == decompressed_size(chain)


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError) as err:
        decompress_tree(chain_to_dag(all_previous_chain(2, 25)))
    assert err.value.partial_size <= 10 ** 6
    with pytest.raises(BudgetExceededError):
        decompress_tree(chain_to_dag(all_previous_chain(2, 10)), node_budget=100)
    # a budget exactly at the size succeeds
    tree = decompress_tree(chain_to_dag(all_previous_chain(2, 10)), node_budget=1023)
    assert tree_size(tree) == 1023


def test_deep_comb_does_not_recurse():
    tree = decompress_tree(chain_to_dag(all_zero_chain(2, 50_000)), node_budget=60_000)
    assert tree_size(tree) == 50_000
    text = tree_to_json(tree)
    assert text.startswith("[" * 50_000) and text.endswith(",null]")
    assert text.count("null") == 50_001


# ---------------------------------------------------------------------------
# Compressor
# ---------------------------------------------------------------------------

def test_compress_examples():
    unit = [None, None]
    assert compress_tree([unit, unit]) == chain_to_dag(Chain(2, [[0], [1]]))
    comb = decompress_tree(chain_to_dag(all_zero_chain(2, 5)))
    assert compress_tree(comb) == chain_to_dag(all_zero_chain(2, 5))
    assert compress_tree(None, 2) == RootedDag(2, [()])


def test_compress_minimality():
    for tree in enumerate_trees(2, 5):
        dag = compress_tree(tree)
        assert len(set(dag.nodes)) == len(dag.nodes)  # pairwise-distinct child tuples


def test_round_trip_all_binary_trees_size_6():
    trees = list(enumerate_trees(2, 6))
    assert len(trees) == fuss_catalan(6, 2) == 132
    for tree in trees:
        assert decompress_tree(compress_tree(tree)) == tree


def test_round_trip_exhaustive_chains():
    # chains have pairwise-distinct fringe trees, so compression recovers them
    for n in range(9):
        for chain in enumerate_chains(2, n):
            dag = chain_to_dag(chain)
            assert compress_tree(decompress_tree(dag), 2) == dag


def test_round_trip_ternary_chains():
    rng = random.Random(99)
    for _ in range(50):
        chain = random_chain(3, rng.randrange(0, 8), rng.getrandbits(64))
        dag = chain_to_dag(chain)
        assert compress_tree(decompress_tree(dag), 3) == dag


def test_compress_needs_arity_for_bare_leaf():
    with pytest.raises(DagError, match="arity"):
        compress_tree(None)


# ---------------------------------------------------------------------------
# General DAGs
# ---------------------------------------------------------------------------

def test_single_internal_node():
    dag = RootedDag(3, [(), (0, 0, 0)])
    assert dag_decompressed_size(dag) == 1
    assert dag_level_profile(dag) == {1: 1}


def test_five_node_dag_decompresses_to_15():
    dag = chain_to_dag(all_previous_chain(2, 4))
    assert len(dag.nodes) == 5
    assert dag_decompressed_size(dag) == 15
    assert tree_size(decompress_tree(dag)) == 15


def test_non_chain_dag_cross_checks():
    for nodes in ([(), (0, 0), (1, 0), (1, 2)],
                  [(), (0, 0), (1, 1), (1, 2)],
                  [(), (0, 0), (0, 1), (2, 1), (3, 2)]):
        dag = RootedDag(2, nodes)
        assert dag_level_profile(dag) == brute_profile(dag)
        assert dag_decompressed_size(dag) == tree_size(decompress_tree(dag))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def test_tree_json_round_trip():
    tree = [[None, [None, None]], None]
    assert tree_from_json(tree_to_json(tree)) == tree
    assert tree_to_json(None) == "null"
    assert tree_to_json(tree) == "[[null,[null,null]],null]"


def test_tree_json_rejects_mixed_arity():
    with pytest.raises(DagError, match="arity"):
        tree_from_json("[[null,null,null],null]")


def test_dag_json_round_trip():
    dag = RootedDag(2, [(), (0, 0), (1, 1)])
    assert dag_to_json(dag) == '{"k": 2, "nodes": [[], [0, 0], [1, 1]], "root": 2}'
    assert dag_from_json(dag_to_json(dag)) == dag


@pytest.mark.parametrize("text,fragment", [
    ('{"k": 2, "nodes": [[], [0, 0]], "root": 0}', '"root"'),
    ('{"k": 2, "nodes": [[0], [0, 0]], "root": 1}', "sink"),
    ('{"k": 2, "nodes": [[], [0, 1]], "root": 1}', "node 1"),
    ('{"k": 2, "root": 1}', '"nodes"'),
])
def test_dag_json_rejects_malformed(text, fragment):
    with pytest.raises(DagError) as err:
        dag_from_json(text)
    assert fragment in str(err.value)
