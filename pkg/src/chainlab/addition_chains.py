"""Addition chains, Brauer (star) chains, and their link to binary chains.

The leaf counts a_0..a_n of a binary chain form a Brauer chain (every step
adds the immediately preceding value), and that correspondence is a bijection:
a_n is the number of leaves of the decompressed tree, so Brauer chains of
length n are exactly the binary trees with a_n leaves that compress into a
chain of size n.
"""

from dataclasses import dataclass

from .chains import Chain
from .decompress import leaf_counts

DEFAULT_SEARCH_LIMIT = 2 ** 10
COMPRESSIBLE_LIMIT = 12


class AdditionChainError(ValueError):
    """Input is not a valid (Brauer) addition chain, or a limit was exceeded."""


@dataclass(frozen=True)
class BrauerChain:
    """Values a_0 < a_1 < ... < a_n with a_0 = 1 and a_i - a_{i-1} an earlier value."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        a = self.values
        if not a or a[0] != 1:
            raise AdditionChainError(f"a Brauer chain starts at 1, got {a[:1]}")
        for i in range(1, len(a)):
            if a[i] <= a[i - 1]:
                raise AdditionChainError(f"values must be strictly increasing, got {a[i]} after {a[i - 1]}")
            if a[i] - a[i - 1] not in a[:i]:
                raise AdditionChainError(
                    f"step {i}: {a[i]} - {a[i - 1]} = {a[i] - a[i - 1]} is not an earlier value")

    @property
    def length(self) -> int:
        return len(self.values) - 1


def k_brauer_values(chain: Chain) -> tuple[int, ...]:
    """Value sequence a_0..a_n of a k-ary chain: a_i = a_{i-1} + sum of pointed a_j.

    a_n is the leaf count of the decompressed tree, so the internal size is
    (a_n - 1) / (k - 1).
    """
    return leaf_counts(chain)


def brauer_from_chain(chain: Chain) -> BrauerChain:
    """The Brauer chain of a binary chain (its leaf-count sequence)."""
    if chain.k != 2:
        raise AdditionChainError(f"Brauer chains correspond to arity 2, got {chain.k}")
    return BrauerChain(leaf_counts(chain))


def chain_from_brauer(brauer: BrauerChain) -> Chain:
    """Inverse of brauer_from_chain.

    Distinctness of the values makes the index j with a_j = a_i - a_{i-1}
    unique, and that j is node i's pointer target.
    """
    a = brauer.values
    index = {value: i for i, value in enumerate(a)}
    targets = []
    for i in range(1, len(a)):
        j = index.get(a[i] - a[i - 1])
        if j is None or j >= i:  # unreachable for a validated BrauerChain
            raise AdditionChainError(f"step {i}: no earlier value equals {a[i] - a[i - 1]}")
        targets.append((j,))
    return Chain(2, tuple(targets))


def _min_length(m: int, star: bool, limit: int) -> int:
    if m < 1:
        raise AdditionChainError(f"target must be >= 1, got {m}")
    if m > limit:
        raise AdditionChainError(f"target {m} exceeds the search limit {limit}")
    if m == 1:
        return 0
    # iterative deepening over strictly increasing chains; minimal length is
    # always achieved by one, so ascending search stays complete
    def extend(chain, remaining):
        last = chain[-1]
        if last == m:
            return True
        if remaining == 0 or last << remaining < m:
            return False
        if star:
            candidates = {last + a for a in chain}
        else:
            candidates = {chain[i] + chain[j]
                          for i in range(len(chain)) for j in range(i, len(chain))}
        for value in sorted(candidates, reverse=True):  # doubling-heavy first
            if value <= last or value > m:
                continue
            if value != m and value << (remaining - 1) < m:
                continue
            chain.append(value)
            if extend(chain, remaining - 1):
                return True
            chain.pop()
        return False

    depth = (m - 1).bit_length()  # ceil(log2 m), a valid lower bound
    while True:
        if extend([1], depth):
            return depth
        depth += 1


def min_addition_chain_length(m: int, limit: int = DEFAULT_SEARCH_LIMIT) -> int:
    """Exact minimal length of an addition chain for m (any two earlier summands)."""
    return _min_length(m, star=False, limit=limit)


def min_star_chain_length(m: int, limit: int = DEFAULT_SEARCH_LIMIT) -> int:
    """Exact minimal length of a Brauer (star) chain for m."""
    return _min_length(m, star=True, limit=limit)


def scholz_brauer_check(m: int) -> bool:
    """Whether star lengths satisfy l*(2^m - 1) <= m - 1 + l*(m).

    Known to hold for every m; checked exactly here for m <= 8 to keep the
    target 2^m - 1 within easy search range.
    """
    if not 1 <= m <= 8:
        raise AdditionChainError(f"m must be in 1..8, got {m}")
    return min_star_chain_length(2 ** m - 1) <= m - 1 + min_star_chain_length(m)


def count_chain_compressible(max_m: int, limit: int = COMPRESSIBLE_LIMIT) -> tuple[int, ...]:
    """Counts, for m = 1..max_m, of binary trees with m leaves compressible into chains.

    Distinct chains decompress to distinct trees, so this equals the number of
    binary chains (any size) with leaf count exactly m.  Depth-first search
    over leaf-count sequences; every extension grows the count by at least 1,
    so branches stop as soon as the target ceiling is reached.
    """
    if not 1 <= max_m <= limit:
        raise AdditionChainError(f"max_m must be in 1..{limit}, got {max_m}")
    counts = [0] * (max_m + 1)

    def grow(values):
        counts[values[-1]] += 1
        if values[-1] < max_m:
            last = values[-1]
            for j in range(len(values)):  # pointer target j, one branch per node
                if last + values[j] <= max_m:
                    values.append(last + values[j])
                    grow(values)
                    values.pop()

    grow([1])
    return tuple(counts[1:])
