"""Placement delivery arrays for coded caching, built from strong edge
colorings of bipartite subset graphs."""

from .bigraph import (
    BipartiteGraph,
    ColoredBipartiteGraph,
    brute_force_sq,
    graph_to_pda,
    pda_to_graph,
    theorem2_check,
    verify_strong_coloring,
)
from .caching import Library, decode, deliver, place, simulate
from .combinatorics import Count, Subset, binomial, enumerate_subsets, rank_subset, unrank_subset
from .constructions import (
    SubsetGraphParams,
    color_s1,
    color_s2,
    maddah_niesen_pda,
    subset_graph,
    theorem3_params,
    theorem3_pda,
)
from .pda import STAR, Pda, parse_pda, scheme_params, serialize_pda, verify_pda

__version__ = "0.1.0"
