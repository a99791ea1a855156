"""The decompression operator for rooted ordered k-ary DAGs.

A rooted DAG is stored in topological order: node 0 is the unique sink, node
i >= 1 has exactly k ordered children with labels strictly below i, and the
last node is the root (the unique source).  Decompression unfolds the DAG
into an ordered k-ary tree by replacing every non-spine edge (pointer) with a
fresh copy of the already-decompressed subtree it points to.

Trees are plain nested lists: a leaf is None, an internal node is a list of
exactly k child trees.  All tree helpers here are iterative so that very deep
trees (combs) do not hit the interpreter recursion limit.
"""

import itertools
import json
from dataclasses import dataclass

from .chains import Chain


class DagError(ValueError):
    """Malformed DAG data or DAG/tree JSON."""


class BudgetExceededError(RuntimeError):
    """Decompression would materialize more internal nodes than allowed.

    `partial_size` is the number of internal nodes already created when the
    budget ran out; decompressed sizes grow like k^n, so hitting this is
    expected for all but small inputs.
    """

    def __init__(self, budget, partial_size):
        super().__init__(f"node budget {budget} exceeded after materializing {partial_size} nodes")
        self.budget = budget
        self.partial_size = partial_size


DEFAULT_NODE_BUDGET = 10 ** 6


@dataclass(frozen=True)
class RootedDag:
    """Rooted ordered k-ary DAG in canonical (topologically sorted) form.

    nodes[0] must be empty; nodes[i] for i >= 1 lists exactly k child labels,
    each < i.  Acyclicity is therefore structural.  The root is the last node
    and must be the only node without incoming edges.
    """

    k: int
    nodes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(tuple(row) for row in self.nodes))
        if not isinstance(self.k, int) or self.k < 2:
            raise DagError(f"arity must be an integer >= 2, got {self.k!r}")
        if not self.nodes:
            raise DagError("a rooted DAG needs at least the sink node")
        if self.nodes[0] != ():
            raise DagError("node 0 must be the sink (no children)")
        indeg = [0] * len(self.nodes)
        for i, row in enumerate(self.nodes[1:], start=1):
            if len(row) != self.k:
                raise DagError(f"node {i}: expected {self.k} children, got {len(row)}")
            for slot, t in enumerate(row, start=1):
                if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < i:
                    raise DagError(f"node {i} slot {slot}: child {t!r} not in 0..{i - 1}")
                indeg[t] += 1
        for i in range(len(self.nodes) - 1):
            if indeg[i] == 0:
                raise DagError(f"node {i} is unreachable (second source); the root must be unique")

    @property
    def root(self) -> int:
        return len(self.nodes) - 1


def chain_to_dag(chain: Chain) -> RootedDag:
    """Embed a chain as a rooted DAG: node i's children are (i-1, *pointers)."""
    nodes = [()] + [(i - 1,) + chain.targets[i - 1] for i in range(1, chain.n + 1)]
    return RootedDag(chain.k, tuple(nodes))


def spine(dag: RootedDag) -> tuple[tuple[int, ...], ...]:
    """Classify edges by a depth-first search from the root, slot order 1..k.

    Returns, per node, the tuple of child slots (1-based) whose edge is a
    first-visit (spine) edge; every other edge is a pointer.  The spine edges
    form the unique DFS spanning tree of the DAG.
    """
    m = dag.root
    slots = [[] for _ in range(m + 1)]
    visited = [False] * (m + 1)
    visited[m] = True
    stack = [(m, 0)]  # (node, next slot index to examine)
    while stack:
        v, j = stack.pop()
        children = dag.nodes[v]
        while j < len(children):
            t = children[j]
            if not visited[t]:
                visited[t] = True
                slots[v].append(j + 1)
                stack.append((v, j + 1))
                stack.append((t, 0))
                break
            j += 1
    return tuple(tuple(s) for s in slots)


def is_chain(dag: RootedDag) -> bool:
    """True iff the DFS spanning tree is a path.

    Equivalent, for this canonical representation, to every node i >= 1
    having its slot-1 child equal to i-1.
    """
    return all(len(s) <= 1 for s in spine(dag))


def leaf_counts(chain: Chain) -> tuple[int, ...]:
    """Leaf counts a_0..a_n of the decompressed fringe subtrees.

    a_0 = 1 and a_i = a_{i-1} + sum of a_t over node i's pointer targets t;
    a_i equals the number of leaves below node i after decompression, i.e.
    the number of node-i-to-sink paths in the DAG.
    """
    a = [1]
    for row in chain.targets:
        a.append(a[-1] + sum(a[t] for t in row))
    return tuple(a)


def decompressed_size(chain: Chain) -> int:
    """Number of internal nodes of the decompressed tree, (a_n - 1) / (k - 1)."""
    q, r = divmod(leaf_counts(chain)[-1] - 1, chain.k - 1)
    if r:  # cannot happen for a valid chain: leaves = (k-1)*internal + 1
        raise ArithmeticError(f"leaf count inconsistent with arity {chain.k}")
    return q


def _accumulate(dst, src, offset):
    # dst[d + offset] += src[d], growing dst as needed
    need = len(src) + offset - len(dst)
    if need > 0:
        dst.extend([0] * need)
    for d, c in enumerate(src):
        if c:
            dst[d + offset] += c


def _path_counts(k, rows, pointer_slots):
    """Shared DP: per-level counts of root-to-internal-node paths.

    rows[i] lists node i's children (i >= 1); pointer_slots[i] marks which
    0-based slots are pointers.  W(v, d) counts root-to-v paths crossing d
    pointers; sweeping labels downward visits every edge after its source.
    Returns (per-level profile dict, sink path counts by depth).
    """
    m = len(rows)
    if m == 0:
        return {}, [1]
    counts = [[] for _ in range(m + 1)]
    counts[m] = [1]
    profile = []
    for v in range(m, 0, -1):
        here = counts[v]
        counts[v] = None
        if not here:
            continue
        _accumulate(profile, here, 0)
        for j, t in enumerate(rows[v - 1]):
            _accumulate(counts[t], here, 1 if j in pointer_slots[v - 1] else 0)
    return ({d + 1: c for d, c in enumerate(profile) if c}, counts[0])


def level_profile(chain: Chain) -> dict[int, int]:
    """Map level -> number of decompressed internal nodes at that level.

    A decompressed node's level is one plus the number of pointers on its
    defining root path, so the profile follows from the path-count DP; the
    counts sum to decompressed_size(chain), and the root-to-sink path count
    equals the total leaf count a_n.
    """
    rows = [(i - 1,) + chain.targets[i - 1] for i in range(1, chain.n + 1)]
    ptr = [frozenset(range(1, chain.k))] * chain.n  # slot 0 is the spine edge
    profile, _ = _path_counts(chain.k, rows, ptr)
    return profile


def dag_level_profile(dag: RootedDag) -> dict[int, int]:
    """Per-level decompressed node counts for an arbitrary rooted DAG."""
    sp = spine(dag)
    rows = list(dag.nodes[1:])
    ptr = [frozenset(j for j in range(dag.k) if (j + 1) not in sp[i])
           for i in range(1, dag.root + 1)]
    profile, _ = _path_counts(dag.k, rows, ptr)
    return profile


def dag_decompressed_size(dag: RootedDag) -> int:
    """Number of internal nodes of the decompressed tree of a rooted DAG."""
    return sum(dag_level_profile(dag).values())


# ---------------------------------------------------------------------------
# Explicit tree materialization and the inverse (hash-consing) compressor
# ---------------------------------------------------------------------------

def tree_size(tree) -> int:
    """Number of internal nodes of a nested-list tree (iterative)."""
    size = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if node is not None:
            size += 1
            stack.extend(node)
    return size


def validate_tree(tree, k=None) -> int:
    """Check that every internal node has the same arity; return that arity.

    A bare leaf carries no arity: `k` must then be supplied (and is returned).
    """
    arity = k
    stack = [tree]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        if not isinstance(node, list):
            raise DagError(f"tree nodes must be null or arrays, got {type(node).__name__}")
        if arity is None:
            arity = len(node)
        if len(node) != arity:
            raise DagError(f"inconsistent arity: found a node with {len(node)} children, expected {arity}")
        stack.extend(node)
    if arity is None:
        raise DagError("cannot infer arity from a single leaf; pass k explicitly")
    if arity < 2:
        raise DagError(f"arity must be >= 2, got {arity}")
    return arity


def _copy_tree(tree, created, budget):
    """Deep copy, counting internal nodes created; aborts over budget."""
    if tree is None:
        return None, created
    out = []
    stack = [(tree, out)]
    while stack:
        node, dst = stack.pop()
        for child in node:
            if child is None:
                dst.append(None)
            else:
                created += 1
                if created > budget:
                    raise BudgetExceededError(budget, created - 1)
                fresh = []
                dst.append(fresh)
                stack.append((child, fresh))
    return out, created


def decompress_tree(dag: RootedDag, node_budget: int = DEFAULT_NODE_BUDGET):
    """Materialize the decompressed tree of a rooted DAG.

    Nodes are processed sink-to-root (a postorder of the spine): the spine
    child's finished subtree is attached directly, every pointer attaches a
    deep copy of its target's finished subtree, so the result shares no
    structure.  Raises BudgetExceededError once more than `node_budget`
    internal nodes have been materialized.
    """
    sp = spine(dag)
    trees = [None] * (dag.root + 1)
    created = 0
    for i in range(1, dag.root + 1):
        spine_slots = set(sp[i])
        children = []
        for j, t in enumerate(dag.nodes[i], start=1):
            if j in spine_slots:
                children.append(trees[t])
            else:
                copy, created = _copy_tree(trees[t], created, node_budget)
                children.append(copy)
        created += 1
        if created > node_budget:
            raise BudgetExceededError(node_budget, created - 1)
        trees[i] = children
    return trees[dag.root]


def compress_tree(tree, k=None) -> RootedDag:
    """Hash-cons a tree into its minimal rooted DAG.

    Identical subtrees receive one shared node, keyed by the tuple of child
    node ids (the leaf is node 0); node ids are assigned in postorder
    completion order, so children always precede parents.  The output has
    pairwise-distinct child tuples and decompresses back to `tree`.
    """
    arity = validate_tree(tree, k)
    if tree is None:
        return RootedDag(arity, ((),))
    interned = {}
    nodes = [()]
    # iterative postorder: (node, child ids collected so far)
    stack = [(tree, [])]
    root_id = None
    while stack:
        node, ids = stack[-1]
        if len(ids) < arity:
            child = node[len(ids)]
            if child is None:
                ids.append(0)
            else:
                stack.append((child, []))
            continue
        key = tuple(ids)
        node_id = interned.get(key)
        if node_id is None:
            node_id = len(nodes)
            nodes.append(key)
            interned[key] = node_id
        stack.pop()
        if stack:
            stack[-1][1].append(node_id)
        else:
            root_id = node_id
    assert root_id == len(nodes) - 1  # the whole tree completes last
    return RootedDag(arity, tuple(nodes))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_trees(k: int, size: int):
    """Yield every ordered k-ary tree with `size` internal nodes.

    The count is the Fuss-Catalan number C(k*size, size) / ((k-1)*size + 1);
    keep `size` small.
    """
    if size == 0:
        yield None
        return
    for split in _compositions(size - 1, k):
        subtree_choices = [list(enumerate_trees(k, s)) for s in split]
        for kids in itertools.product(*subtree_choices):
            yield list(kids)


# ---------------------------------------------------------------------------
# JSON interfaces
#   tree: null | [child, ...]            (exactly k children per array)
#   DAG:  {"k": 2, "nodes": [[], [0,0], [1,1]], "root": 2}
# ---------------------------------------------------------------------------

def tree_to_json(tree) -> str:
    """Serialize a tree without recursing (safe for very deep combs)."""
    parts = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
        elif node is None:
            parts.append("null")
        else:
            parts.append("[")
            items = []
            for index, child in enumerate(node):
                if index:
                    items.append(",")
                items.append(child)
            items.append("]")
            stack.extend(reversed(items))
    return "".join(parts)


def tree_from_json(text: str, k=None):
    """Parse tree JSON and validate arity consistency; returns the tree."""
    try:
        tree = json.loads(text)
    except (json.JSONDecodeError, RecursionError) as exc:
        raise DagError(f"invalid tree JSON: {exc}") from None
    validate_tree(tree, k)
    return tree


def dag_to_json(dag: RootedDag) -> str:
    return json.dumps({"k": dag.k, "nodes": [list(row) for row in dag.nodes],
                       "root": dag.root})


def dag_from_json(text: str) -> RootedDag:
    """Parse DAG JSON, rejecting malformed input with a field diagnostic."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DagError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise DagError("DAG JSON must be an object with fields k, nodes, root")
    for field in ("k", "nodes", "root"):
        if field not in obj:
            raise DagError(f'missing field "{field}"')
    nodes = obj["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(row, list) for row in nodes):
        raise DagError('field "nodes": expected a list of child-label lists')
    if obj["root"] != len(nodes) - 1:
        raise DagError(f'field "root": must equal {len(nodes) - 1} (the last node)')
    try:
        return RootedDag(obj["k"], tuple(tuple(row) for row in nodes))
    except DagError as exc:
        raise DagError(f'field "nodes": {exc}') from None
