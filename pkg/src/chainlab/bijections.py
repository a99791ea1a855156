"""Marked chains, valid traversals, and the l!-to-1 normalization map.

A decompressed node on level l of a chain corresponds to a root path that
crosses exactly l-1 pointers.  Such a path is determined by l marked internal
nodes v_0 < ... < v_{l-1} together with a pointer-slot choice w_i at each of
v_1..v_{l-1}, provided the chosen pointers interlace with the marks:

    v_0 <= p_1 < v_1 <= p_2 < v_2 <= ... <= p_{l-1} < v_{l-1},

where p_i is the slot-w_i target at v_i.  Marked chains satisfying this are
"valid traversals".  `make_valid_traversal` rewires violating pointers one
index at a time (highest first) and is exactly l!-to-1 onto valid traversals,
which is what pins the closed form for the per-level node counts; the fibers
are produced by `traversal_preimages`.
"""

import itertools
from dataclasses import dataclass

from .chains import Chain, ChainError, Permutation, enumerate_chains
from .decompress import level_profile


@dataclass(frozen=True)
class MarkedChain:
    """A chain with l marked internal nodes and a pointer-slot choice each.

    marks must be strictly increasing labels in 1..n; slots[i-1] picks the
    pointer (1..k-1) consulted at marks[i], so it has one entry less than
    marks.  The mark at position 0 needs no slot: a traversal ends there.
    """

    chain: Chain
    marks: tuple[int, ...]
    slots: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(self.marks))
        object.__setattr__(self, "slots", tuple(self.slots))
        n, k = self.chain.n, self.chain.k
        if not self.marks:
            raise ChainError("at least one node must be marked")
        if len(self.slots) != len(self.marks) - 1:
            raise ChainError(f"expected {len(self.marks) - 1} slot choices, got {len(self.slots)}")
        prev = 0
        for v in self.marks:
            if not prev < v <= n:
                raise ChainError(f"marks must be strictly increasing labels in 1..{n}, got {self.marks}")
            prev = v
        for w in self.slots:
            if not 1 <= w <= k - 1:
                raise ChainError(f"slot {w} not in 1..{k - 1}")

    @property
    def level(self) -> int:
        return len(self.marks)

    def pointer(self, i: int) -> int:
        """Target p_i of the chosen pointer at marks[i], for i >= 1."""
        return self.chain.targets[self.marks[i] - 1][self.slots[i - 1] - 1]


def is_valid_traversal(marked: MarkedChain) -> bool:
    """Check the interlacing condition p_i >= v_{i-1} for every i >= 1."""
    return all(marked.pointer(i) >= marked.marks[i - 1] for i in range(1, marked.level))


def make_valid_traversal(marked: MarkedChain) -> MarkedChain:
    """Rewire the marked pointers so that the traversal becomes valid.

    Steps run for i = l-1 down to 1; step i leaves an already-compliant p_i
    alone, otherwise it locates the mark interval [v_{m-1}, v_m) containing
    p_i (with v_{-1} = 0), retargets the chosen pointer at v_i to the current
    value of v_{i-1}, and slides the marks v_m..v_{i-1} left by
    d = v_m - p_i - 1.  Only that one pointer and the mark positions change.
    The map is total and exactly l!-to-1 onto valid traversals.
    """
    targets = [list(row) for row in marked.chain.targets]
    v = list(marked.marks)
    slots = marked.slots
    for i in range(len(v) - 1, 0, -1):
        p = targets[v[i] - 1][slots[i - 1] - 1]
        if p >= v[i - 1]:
            continue
        m = 0
        while v[m] <= p:
            m += 1
        d = v[m] - p - 1
        targets[v[i] - 1][slots[i - 1] - 1] = v[i - 1]  # pre-slide mark value
        for j in range(m, i):
            v[j] -= d
    return MarkedChain(Chain(marked.chain.k, tuple(tuple(r) for r in targets)), tuple(v), slots)


def traversal_preimages(traversal: MarkedChain) -> list[MarkedChain]:
    """All l! marked chains that make_valid_traversal sends to `traversal`.

    Inverts the steps in the opposite order (i = 1, 2, ...): step i keeps the
    element unchanged or, for each interval index m < i, retargets the chosen
    pointer at v_i to v_m - 1 and slides the marks v_m..v_{i-1} right by
    d = p_i - v_{i-1}.  Each step multiplies the count by i + 1.
    """
    if not is_valid_traversal(traversal):
        raise ChainError("preimages are defined for valid traversals only")
    k = traversal.chain.k
    slots = traversal.slots
    states = [([list(row) for row in traversal.chain.targets], list(traversal.marks))]
    for i in range(1, traversal.level):
        branched = []
        for targets, v in states:
            branched.append(([list(r) for r in targets], list(v)))
            p = targets[v[i] - 1][slots[i - 1] - 1]
            d = p - v[i - 1]
            for m in range(i):
                tg2 = [list(r) for r in targets]
                v2 = list(v)
                tg2[v[i] - 1][slots[i - 1] - 1] = v[m] - 1
                for j in range(m, i):
                    v2[j] += d
                branched.append((tg2, v2))
        states = branched
    return [MarkedChain(Chain(k, tuple(tuple(r) for r in tg)), tuple(v), slots)
            for tg, v in states]


def enumerate_marked_chains(k: int, n: int, level: int):
    """Every chain in (k, n) with every choice of `level` marks and slots."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    slot_choices = list(itertools.product(range(1, k), repeat=level - 1))
    for chain in enumerate_chains(k, n):
        for marks in itertools.combinations(range(1, n + 1), level):
            for slots in slot_choices:
                yield MarkedChain(chain, marks, slots)


def count_increasing_subsequences(perm, length: int) -> int:
    """Number of increasing subsequences of the given length in a permutation."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    values = perm.values if isinstance(perm, Permutation) else tuple(perm)
    n = len(values)
    ending = [1] * n
    for _ in range(length - 1):
        ending = [sum(ending[m] for m in range(i) if values[m] < values[i])
                  for i in range(n)]
    return sum(ending)


def strict_partial_permutation_count(n: int, max_n: int = 6) -> int:
    """Count strictly partial permutations of [n] by direct enumeration.

    Words of length n over [n] plus a blank, injective on the non-blank
    letters, with at least one blank.  These are equinumerous with the
    decompressed nodes of all binary chains of size n, which is what the
    brute force is for; hence the hard size limit.
    """
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the brute-force limit {max_n}")
    blank = n
    count = 0
    for word in itertools.product(range(n + 1), repeat=n):
        finite = [x for x in word if x != blank]
        if len(finite) < n and len(set(finite)) == len(finite):
            count += 1
    return count


def joint_profile_counterexample() -> tuple[int, int]:
    """Why no bijection can carry the full level profile to subsequence counts.

    Scans all 120 permutations of 5 and all 120 binary chains of size 5:
    returns (permutations with exactly five increasing pairs and no increasing
    triple, chains with exactly five level-2 nodes and nothing deeper).
    The two counts differ (4 vs 5) even though each statistic agrees in
    aggregate level by level.
    """
    perms = 0
    for word in itertools.permutations(range(1, 6)):
        if (count_increasing_subsequences(word, 2) == 5
                and count_increasing_subsequences(word, 3) == 0):
            perms += 1
    chains = 0
    for chain in enumerate_chains(2, 5):
        profile = level_profile(chain)
        if profile.get(2, 0) == 5 and max(profile) <= 2:
            chains += 1
    return perms, chains
