"""k-ary chains: representation, validation, enumeration, uniform sampling, JSON.

A chain with arity k and n internal nodes is stored as a table of pointer
targets: node labels run 0..n with 0 the unique sink/leaf and n the root,
node i's first child is always node i-1 (the spine), and its remaining
k-1 children are pointers to nodes strictly below i.
"""

import itertools
import json
import random
from dataclasses import dataclass


class ChainError(ValueError):
    """Malformed chain data or chain JSON."""


def validate_chain_data(k, targets):
    """Check arity and pointer bounds; raise ChainError on the first violation."""
    if not isinstance(k, int) or k < 2:
        raise ChainError(f"arity must be an integer >= 2, got {k!r}")
    for i, row in enumerate(targets, start=1):
        if len(row) != k - 1:
            raise ChainError(f"node {i}: expected {k - 1} pointer targets, got {len(row)}")
        for slot, t in enumerate(row, start=1):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < i:
                raise ChainError(f"node {i} slot {slot}: target {t!r} not in 0..{i - 1}")


@dataclass(frozen=True)
class Chain:
    """Immutable k-ary chain.

    targets[i-1] holds the pointer targets of internal node i in child-slot
    order 2..k; each target lies in 0..i-1.  There are (n!)^(k-1) chains for
    each (k, n).
    """

    k: int
    targets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(tuple(row) for row in self.targets))
        validate_chain_data(self.k, self.targets)

    @property
    def n(self) -> int:
        return len(self.targets)

    def pointer_targets(self, node: int) -> tuple[int, ...]:
        """Pointer targets of internal node `node` (1-based)."""
        return self.targets[node - 1]


def enumerate_chains(k: int, n: int):
    """Yield every chain with parameters (k, n) exactly once.

    Order is lexicographic on the flattened target table; the total number
    of chains is (n!)^(k-1), so callers should keep that desk-scale.
    """
    if k < 2:
        raise ChainError(f"arity must be >= 2, got {k}")
    ranges = []
    for i in range(1, n + 1):
        ranges.extend([range(i)] * (k - 1))
    width = k - 1
    for flat in itertools.product(*ranges):
        targets = tuple(flat[(i - 1) * width:i * width] for i in range(1, n + 1))
        yield Chain(k, targets)


def random_chain(k: int, n: int, seed) -> Chain:
    """Draw a chain uniformly at random among all (n!)^(k-1) chains.

    Each targets[i][j] is drawn independently and uniformly from 0..i-1
    (nodes i = 1..n in order, slots left to right), so the law is exactly
    uniform.  The same seed always yields the same chain; parallel callers
    should derive distinct seeds per worker.
    """
    if k < 2:
        raise ChainError(f"arity must be >= 2, got {k}")
    rng = random.Random(seed)
    targets = tuple(tuple(rng.randrange(i) for _ in range(k - 1)) for i in range(1, n + 1))
    return Chain(k, targets)


def all_zero_chain(k: int, n: int) -> Chain:
    """The chain with every pointer aimed at the sink (smallest decompression)."""
    return Chain(k, tuple((0,) * (k - 1) for _ in range(n)))


def all_previous_chain(k: int, n: int) -> Chain:
    """The chain with every pointer aimed at node i-1 (largest decompression)."""
    return Chain(k, tuple((i - 1,) * (k - 1) for i in range(1, n + 1)))


@dataclass(frozen=True)
class InversionTable:
    """Entries (t_1, ..., t_n) with 0 <= t_i < i; equivalent to a binary chain."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for i, t in enumerate(self.entries, start=1):
            if not 0 <= t < i:
                raise ChainError(f"entry {i}: value {t!r} not in 0..{i - 1}")


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n, stored one-line."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        n = len(self.values)
        if sorted(self.values) != list(range(1, n + 1)):
            raise ChainError(f"not a permutation of 1..{n}: {self.values}")


def chain_to_inversion(chain: Chain) -> InversionTable:
    """Binary chains are in bijection with inversion tables: t_i is node i's pointer."""
    if chain.k != 2:
        raise ChainError(f"inversion tables require arity 2, got {chain.k}")
    return InversionTable(tuple(row[0] for row in chain.targets))


def inversion_to_chain(table: InversionTable) -> Chain:
    """Inverse of chain_to_inversion."""
    return Chain(2, tuple((t,) for t in table.entries))


def chain_to_permutation(chain: Chain) -> Permutation:
    """Bijection from binary chains onto permutations of 1..n.

    Builds the one-line word left to right: value i is inserted so that
    exactly t_i previously placed values precede it.  This is one of many
    possible conventions; it is fixed here so results are reproducible.
    """
    table = chain_to_inversion(chain)
    word = []
    for i, t in enumerate(table.entries, start=1):
        word.insert(t, i)
    return Permutation(tuple(word))


# ---------------------------------------------------------------------------
# JSON interface: {"k": 2, "n": 3, "targets": [[0], [1], [0]]}
# ---------------------------------------------------------------------------

def chain_to_json(chain: Chain) -> str:
    return json.dumps({"k": chain.k, "n": chain.n,
                       "targets": [list(row) for row in chain.targets]})


def chain_from_json(text: str) -> Chain:
    """Parse chain JSON, rejecting malformed input with a field diagnostic."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ChainError("chain JSON must be an object with fields k, n, targets")
    for field in ("k", "n", "targets"):
        if field not in obj:
            raise ChainError(f'missing field "{field}"')
    k, n, targets = obj["k"], obj["n"], obj["targets"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ChainError(f'field "k": expected integer >= 2, got {k!r}')
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ChainError(f'field "n": expected integer >= 0, got {n!r}')
    if not isinstance(targets, list) or len(targets) != n:
        raise ChainError(f'field "targets": expected a list of {n} rows')
    for i, row in enumerate(targets, start=1):
        if not isinstance(row, list) or len(row) != k - 1:
            raise ChainError(f'field "targets[{i - 1}]": expected {k - 1} targets for node {i}')
        for j, t in enumerate(row):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < i:
                raise ChainError(f'field "targets[{i - 1}][{j}]": value {t!r} not in 0..{i - 1}')
    return Chain(k, tuple(tuple(row) for row in targets))
