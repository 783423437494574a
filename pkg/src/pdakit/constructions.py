"""PDAs from strong edge colorings of the subset graph S_m(a, b, lam).

Left vertices are the a-subsets X of [m], right vertices the b-subsets Y,
both indexed by lexicographic rank.  X ~ Y iff |X & Y| == lam.  Two strong
colorings are available:

* ``S1`` keys an edge by (D, I) = (symmetric difference, intersection);
* ``S2`` keys it by (U, V) = (X - Y, Y - X).

Color ids come from key arithmetic, never from discovery order, so labels
are stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bigraph import BipartiteGraph, ColoredBipartiteGraph, graph_to_pda
from .combinatorics import Count, binomial, count_product, mask_members, rank_members
from .errors import MaterializationError, ParameterError
from .pda import Pda

MAX_CELLS = 1 << 27
MAX_GROUND = 64

S1 = "S1"
S2 = "S2"


@dataclass(frozen=True)
class SubsetGraphParams:
    m: int
    a: int
    b: int
    lam: int

    def __post_init__(self):
        m, a, b, lam = self.m, self.a, self.b, self.lam
        if not 0 < a < m:
            raise ParameterError(f"need 0 < a < m, got a={a}, m={m}")
        if not 0 < b < m:
            raise ParameterError(f"need 0 < b < m, got b={b}, m={m}")
        if not 0 <= lam <= min(a, b):
            raise ParameterError(f"need 0 <= lambda <= min(a, b), got lambda={lam}")
        if a + b - lam > m:
            raise ParameterError(
                f"need a + b - lambda <= m (else no edges), got {a}+{b}-{lam} > {m}"
            )

    @property
    def d(self) -> int:
        """Size of the symmetric difference of adjacent X and Y."""
        return self.a + self.b - 2 * self.lam

    def __str__(self):
        return f"({self.m},{self.a},{self.b},{self.lam})"


def valid_params(max_m: int):
    """Every admissible (m, a, b, lam) with m <= max_m, in lexicographic order."""
    for m in range(2, max_m + 1):
        for a in range(1, m):
            for b in range(1, m):
                for lam in range(0, min(a, b) + 1):
                    if a + b - lam <= m:
                        yield SubsetGraphParams(m, a, b, lam)


@dataclass(frozen=True)
class Theorem3Params:
    K: Count
    F: Count
    Z: Count
    S_s1: Count
    S_s2: Count
    S: Count
    g: Count
    chosen_strategy: str
    rate: Fraction
    memory_ratio: Fraction

    @property
    def overflow(self) -> bool:
        return any(c.overflow for c in (self.K, self.F, self.Z, self.S))


def theorem3_params(p: SubsetGraphParams) -> Theorem3Params:
    m, a, b, lam, d = p.m, p.a, p.b, p.lam, p.d
    K = binomial(m, a)
    F = binomial(m, b)
    degree = count_product(binomial(a, lam), binomial(m - a, b - lam))
    Z = Count(F - degree, overflow=F.overflow or degree.overflow)
    s1_class = binomial(d, a - lam)
    s2_class = binomial(m - d, lam)
    S_s1 = count_product(binomial(m, d), s2_class)
    S_s2 = count_product(binomial(m, d), s1_class)
    if S_s1 <= S_s2:
        strategy, S = S1, S_s1
    else:
        strategy, S = S2, S_s2
    return Theorem3Params(
        K=K,
        F=F,
        Z=Z,
        S_s1=S_s1,
        S_s2=S_s2,
        S=S,
        g=max(s1_class, s2_class),
        chosen_strategy=strategy,
        rate=Fraction(int(S), int(F)),
        memory_ratio=Fraction(int(Z), int(F)),
    )


@dataclass(frozen=True)
class SubsetGraph:
    params: SubsetGraphParams
    graph: BipartiteGraph
    left_masks: tuple[int, ...]
    right_masks: tuple[int, ...]

    def left_label(self, k: int) -> tuple[int, ...]:
        return mask_members(self.left_masks[k - 1])

    def right_label(self, j: int) -> tuple[int, ...]:
        return mask_members(self.right_masks[j - 1])


def _check_materializable(p: SubsetGraphParams):
    if p.m > MAX_GROUND:
        raise MaterializationError(f"m={p.m} exceeds the ground-set limit {MAX_GROUND}")
    cells = math.comb(p.m, p.a) * math.comb(p.m, p.b)
    if cells > MAX_CELLS:
        raise MaterializationError(
            f"{cells} cells exceeds the limit of 2^27; use theorem3_params for analysis"
        )


def _masks(m, k):
    return tuple(sum(1 << (x - 1) for x in c) for c in combinations(range(1, m + 1), k))


def subset_graph(p: SubsetGraphParams) -> SubsetGraph:
    """Materialize S_m(a, b, lam), generating each X's neighbours directly."""
    _check_materializable(p)
    m, a, b, lam = p.m, p.a, p.b, p.lam
    edges = set()
    for k, X in enumerate(combinations(range(1, m + 1), a), 1):
        outside = [x for x in range(1, m + 1) if x not in X]
        for I in combinations(X, lam):
            for V in combinations(outside, b - lam):
                edges.add((k, rank_members(tuple(sorted(I + V)), m)))
    return SubsetGraph(p, BipartiteGraph(math.comb(m, a), math.comb(m, b), edges), _masks(m, a), _masks(m, b))


def _complement_rank(mask: int, excluded: int, m: int) -> int:
    """Lex rank of ``mask`` among same-size subsets of [m] minus ``excluded``.

    Lex order restricted to subsets avoiding ``excluded`` is the lex order of
    the complement relabelled 1..m-|excluded|, so rank there.
    """
    relabel = {}
    for x in range(1, m + 1):
        if not excluded >> (x - 1) & 1:
            relabel[x] = len(relabel) + 1
    return rank_members(tuple(relabel[x] for x in mask_members(mask)), len(relabel))


def s1_key(X: int, Y: int) -> tuple[int, int]:
    return X ^ Y, X & Y


def s2_key(X: int, Y: int) -> tuple[int, int]:
    return X & ~Y, Y & ~X


def s1_color(D: int, I: int, p: SubsetGraphParams) -> int:
    """Position of (D, I) in the lex enumeration of disjoint S1 keys."""
    m, d, lam = p.m, p.d, p.lam
    rank_d = rank_members(mask_members(D), m)
    return (rank_d - 1) * math.comb(m - d, lam) + _complement_rank(I, D, m)


def s2_color(U: int, V: int, p: SubsetGraphParams) -> int:
    m, a, b, lam = p.m, p.a, p.b, p.lam
    rank_u = rank_members(mask_members(U), m)
    return (rank_u - 1) * math.comb(m - (a - lam), b - lam) + _complement_rank(V, U, m)


def _color(sg: SubsetGraph, key_fn, color_fn) -> ColoredBipartiteGraph:
    p = sg.params
    cache = {}
    coloring = {}
    for k, j in sg.graph.edges:
        key = key_fn(sg.left_masks[k - 1], sg.right_masks[j - 1])
        s = cache.get(key)
        if s is None:
            s = cache[key] = color_fn(*key, p)
        coloring[(k, j)] = s
    g = sg.graph
    return ColoredBipartiteGraph(g.left_count, g.right_count, coloring)


def color_s1(sg: SubsetGraph) -> ColoredBipartiteGraph:
    return _color(sg, s1_key, s1_color)


def color_s2(sg: SubsetGraph) -> ColoredBipartiteGraph:
    return _color(sg, s2_key, s2_color)


def theorem3_pda(p: SubsetGraphParams) -> Pda:
    """Materialize the subset-graph PDA using the strategy with fewer colors."""
    params = theorem3_params(p)
    sg = subset_graph(p)
    colored = color_s1(sg) if params.chosen_strategy == S1 else color_s2(sg)
    # graph_to_pda refuses gapped color sets, so an unused key fails loudly here
    return graph_to_pda(colored)


def maddah_niesen_pda(K: int, t: int) -> Pda:
    """The Ali-Niesen scheme as a (t+1)-(K, C(K,t), C(K-1,t-1), C(K,t+1)) PDA."""
    if K < 1 or not 0 <= t <= K:
        raise ParameterError(f"need K >= 1 and 0 <= t <= K, got K={K}, t={t}")
    if t == K:
        return Pda(((None,) * K,))
    if t == 0:
        return Pda((tuple(range(1, K + 1)),))
    return theorem3_pda(SubsetGraphParams(K, 1, t, 0))


def mn_row_labels(p: Pda) -> list[str] | None:
    """Subset labels ``{1,2}`` for the rows of an Ali-Niesen PDA, else None."""
    K, F = p.K, p.F
    for t in range(1, K):
        if math.comb(K, t) == F and K * F <= MAX_CELLS and maddah_niesen_pda(K, t) == p:
            return ["{" + ",".join(map(str, c)) + "}" for c in combinations(range(1, K + 1), t)]
    return None
