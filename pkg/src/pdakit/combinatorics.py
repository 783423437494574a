"""Binomial counts and lexicographic ranking of k-subsets of {1..m}.

Subsets are 1-based, strictly increasing tuples.  Ranks are 1-based
positions in the lexicographic enumeration of all subsets with the same
cardinality, so over m=4 the 2-subsets rank as

    {1,2}=1 {1,3}=2 {1,4}=3 {2,3}=4 {2,4}=5 {3,4}=6
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import OverflowCountError, ParameterError, RankError

COUNT_BITS = 127
COUNT_MAX = (1 << COUNT_BITS) - 1


class Count(int):
    """Non-negative integer that knows whether it left the 128-bit range.

    Python integers never wrap, so the value itself stays exact; the
    ``overflow`` flag only marks it as analysis-only.
    """

    overflow: bool

    def __new__(cls, value, overflow=False):
        if value < 0:
            raise ValueError(f"Count must be non-negative, got {value}")
        obj = super().__new__(cls, value)
        obj.overflow = bool(overflow) or value > COUNT_MAX
        return obj

    def exact(self) -> int:
        """Return the plain int, refusing overflow-marked values."""
        if self.overflow:
            raise OverflowCountError("count exceeds 2^127 and is analysis-only")
        return int(self)

    def render(self) -> str:
        return f">2^{COUNT_BITS}" if self.overflow else str(int(self))

    def __str__(self):
        return int.__repr__(self)

    def __repr__(self):
        return f"Count({int(self)}{', overflow' if self.overflow else ''})"


def binomial(n: int, k: int) -> Count:
    """C(n, k), zero when k > n."""
    if n < 0 or k < 0:
        raise ParameterError(f"binomial needs n, k >= 0, got ({n}, {k})")
    return Count(math.comb(n, k))


def count_product(*factors: int) -> Count:
    """Product of counts; the result is overflow-marked if any factor is."""
    marked = any(getattr(f, "overflow", False) for f in factors)
    return Count(math.prod(int(f) for f in factors), overflow=marked)


@dataclass(frozen=True)
class Subset:
    members: tuple[int, ...]
    ground_size: int

    def __post_init__(self):
        m = self.ground_size
        if m < 1:
            raise ParameterError(f"ground size must be positive, got {m}")
        prev = 0
        for x in self.members:
            if x <= prev or x > m:
                raise ParameterError(
                    f"subset members must be strictly increasing in [1, {m}]: {self.members}"
                )
            prev = x

    @classmethod
    def from_mask(cls, mask: int, m: int) -> "Subset":
        return cls(mask_members(mask), m)

    @property
    def mask(self) -> int:
        return members_mask(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def members_mask(members) -> int:
    """Bit i-1 set for every member i."""
    mask = 0
    for x in members:
        mask |= 1 << (x - 1)
    return mask


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def rank_members(members, m: int) -> int:
    """1-based lex rank of a sorted tuple among all |members|-subsets of [m]."""
    k = len(members)
    rank = 1
    prev = 0
    for i, c in enumerate(members):
        # subsets agreeing on the first i entries but with a smaller i-th entry
        for v in range(prev + 1, c):
            rank += math.comb(m - v, k - i - 1)
        prev = c
    return rank


def rank_subset(s: Subset) -> int:
    return rank_members(s.members, s.ground_size)


def unrank_members(r: int, k: int, m: int) -> tuple[int, ...]:
    total = math.comb(m, k)
    if r < 1 or r > total:
        raise RankError(f"rank {r} outside [1, {total}] for {k}-subsets of [{m}]")
    r -= 1
    out = []
    v = 1
    for i in range(k):
        while True:
            block = math.comb(m - v, k - i - 1)
            if r < block:
                break
            r -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def unrank_subset(r: int, k: int, m: int) -> Subset:
    if m < 1 or k < 0:
        raise ParameterError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    return Subset(unrank_members(r, k, m), m)


def enumerate_subsets(m: int, k: int) -> Iterator[Subset]:
    """All k-subsets of [m] in lexicographic order."""
    if m < 1 or k < 0 or k > m:
        raise ParameterError(f"cannot enumerate {k}-subsets of [{m}]")
    for c in combinations(range(1, m + 1), k):
        yield Subset(c, m)
