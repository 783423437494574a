"""Colored bipartite graphs and their correspondence with PDAs.

Left vertices ``k = 1..K`` are users, right vertices ``j = 1..F`` are
packets.  An edge is the pair ``(k, j)``.  A PDA cell ``(j, k)`` holding
color ``s`` is the edge ``(k, j)`` colored ``s``; stars are non-edges.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import GappedColorsError, GraphError, InvalidPdaError, ParseError, SizeCapError
from .pda import Pda, _parse_int, _tokens, verify_pda

Edge = tuple[int, int]

BRUTE_FORCE_EDGE_CAP = 24


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        _check_edges(self.left_count, self.right_count, self.edges)

    def left_degrees(self) -> list[int]:
        deg = [0] * self.left_count
        for k, _ in self.edges:
            deg[k - 1] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * self.right_count
        for _, j in self.edges:
            deg[j - 1] += 1
        return deg


@dataclass(frozen=True)
class ColoredBipartiteGraph:
    left_count: int
    right_count: int
    coloring: Mapping[Edge, int]

    def __post_init__(self):
        coloring = dict(sorted(self.coloring.items()))
        object.__setattr__(self, "coloring", coloring)
        _check_edges(self.left_count, self.right_count, coloring)
        for e, s in coloring.items():
            if type(s) is not int or s < 1:
                raise GraphError(f"edge {e} has color {s!r}, expected a positive integer")

    def __eq__(self, other):
        if not isinstance(other, ColoredBipartiteGraph):
            return NotImplemented
        return (self.left_count, self.right_count, self.coloring) == (
            other.left_count,
            other.right_count,
            other.coloring,
        )

    def __hash__(self):
        return hash((self.left_count, self.right_count, tuple(self.coloring.items())))

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.coloring)

    @property
    def S(self) -> int:
        return max(self.coloring.values(), default=0)

    def color_classes(self) -> dict[int, list[Edge]]:
        classes = defaultdict(list)
        for e, s in self.coloring.items():
            classes[s].append(e)
        return dict(sorted(classes.items()))

    def uncolored(self) -> BipartiteGraph:
        return BipartiteGraph(self.left_count, self.right_count, self.edges)


def _check_edges(K, F, edges):
    if K < 1 or F < 1:
        raise GraphError(f"both sides need at least one vertex, got K={K}, F={F}")
    for k, j in edges:
        if not (1 <= k <= K and 1 <= j <= F):
            raise GraphError(f"edge ({k},{j}) outside [1,{K}] x [1,{F}]")


@dataclass(frozen=True)
class ColoringViolation:
    kind: str  # "proper" or "strong"
    color: int
    edges: tuple[Edge, Edge]
    witness: Optional[Edge] = None

    def __str__(self):
        (k1, j1), (k2, j2) = self.edges
        msg = f"{self.kind}: color {self.color} on ({k1},{j1}) and ({k2},{j2})"
        if self.witness is not None:
            msg += f" joined by ({self.witness[0]},{self.witness[1]})"
        return msg


@dataclass(frozen=True)
class ColoringReport:
    proper: bool
    strong: bool
    left_degree: Optional[int]
    violations: tuple[ColoringViolation, ...] = field(default_factory=tuple)


def pda_to_graph(p: Pda) -> ColoredBipartiteGraph:
    report = verify_pda(p)
    if not report.valid:
        raise InvalidPdaError(f"not a PDA: {report.violations[0]}")
    if report.S == 0:
        raise InvalidPdaError("PDA has no integer cells (S = 0); its graph has no colored edges")
    return array_graph(p)


def array_graph(p: Pda) -> ColoredBipartiteGraph:
    coloring = {}
    for j, row in enumerate(p.cells, 1):
        for k, c in enumerate(row, 1):
            if c is not None:
                coloring[(k, j)] = c
    return ColoredBipartiteGraph(p.K, p.F, coloring)


def graph_to_pda(g: ColoredBipartiteGraph) -> Pda:
    used = set(g.coloring.values())
    if used != set(range(1, g.S + 1)):
        missing = sorted(set(range(1, g.S + 1)) - used)
        raise GappedColorsError(f"colors must be exactly 1..{g.S}; missing {missing}")
    rows = [[None] * g.left_count for _ in range(g.right_count)]
    for (k, j), s in g.coloring.items():
        rows[j - 1][k - 1] = s
    return Pda(tuple(tuple(r) for r in rows))


def compact_colors(g: ColoredBipartiteGraph) -> ColoredBipartiteGraph:
    """Relabel used colors to 1..S preserving their relative order."""
    relabel = {s: i for i, s in enumerate(sorted(set(g.coloring.values())), 1)}
    return ColoredBipartiteGraph(
        g.left_count, g.right_count, {e: relabel[s] for e, s in g.coloring.items()}
    )


def verify_strong_coloring(g: ColoredBipartiteGraph) -> ColoringReport:
    """Check properness and distance-2 properness one color class at a time."""
    edges = g.coloring
    violations = []
    for s, members in g.color_classes().items():
        for a in range(len(members)):
            k1, j1 = members[a]
            for b in range(a + 1, len(members)):
                k2, j2 = members[b]
                if k1 == k2 or j1 == j2:
                    violations.append(ColoringViolation("proper", s, (members[a], members[b])))
                    continue
                for w in ((k1, j2), (k2, j1)):
                    if w in edges:
                        violations.append(
                            ColoringViolation("strong", s, (members[a], members[b]), w)
                        )
    proper = not any(v.kind == "proper" for v in violations)
    degrees = set(g.uncolored().left_degrees())
    left_degree = degrees.pop() if len(degrees) == 1 else None
    return ColoringReport(proper, not violations, left_degree, tuple(violations))


def theorem2_check(obj) -> bool:
    """True when the array-side and graph-side verdicts agree.

    The array side is PDA validity; the graph side is "constant left degree
    and strong coloring".  Accepts a Pda or a ColoredBipartiteGraph; colors
    are compacted to 1..S first, since C2 has no graph-side counterpart.
    """
    g = obj if isinstance(obj, ColoredBipartiteGraph) else array_graph(obj)
    g = compact_colors(g)
    array_side = verify_pda(graph_to_pda(g)).valid
    report = verify_strong_coloring(g)
    graph_side = report.strong and report.left_degree is not None
    return array_side == graph_side


def conflict_graph(g: BipartiteGraph) -> tuple[list[Edge], list[set[int]]]:
    """Edges (sorted) and, per edge, the indices of edges it may not share a color with."""
    edges = sorted(g.edges)
    edge_set = g.edges
    n = len(edges)
    adj = [set() for _ in range(n)]
    for a in range(n):
        k1, j1 = edges[a]
        for b in range(a + 1, n):
            k2, j2 = edges[b]
            if k1 == k2 or j1 == j2 or (k1, j2) in edge_set or (k2, j1) in edge_set:
                adj[a].add(b)
                adj[b].add(a)
    return edges, adj


def brute_force_sq(g: BipartiteGraph) -> tuple[int, ColoredBipartiteGraph]:
    """Exact strong chromatic index by branch and bound over edge colorings.

    Returns ``(sq, witness)`` where the witness is an optimal strong coloring
    with colors 1..sq.
    """
    if len(g.edges) > BRUTE_FORCE_EDGE_CAP:
        raise SizeCapError(
            f"{len(g.edges)} edges exceeds the exhaustive-search cap of {BRUTE_FORCE_EDGE_CAP}"
        )
    if not g.edges:
        return 0, ColoredBipartiteGraph(g.left_count, g.right_count, {})

    edges, adj = conflict_graph(g)
    n = len(edges)
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))

    # greedy coloring in the search order gives the initial upper bound
    greedy = [0] * n
    for v in order:
        taken = {greedy[u] for u in adj[v] if greedy[u]}
        c = 1
        while c in taken:
            c += 1
        greedy[v] = c
    best = max(greedy)
    best_colors = list(greedy)

    # a greedy clique in the conflict graph is a lower bound
    clique = []
    for v in order:
        if all(u in adj[v] for u in clique):
            clique.append(v)
    lower = len(clique)

    colors = [0] * n

    def search(pos, used):
        nonlocal best, best_colors
        if best == lower:
            return
        if pos == n:
            best = used
            best_colors = list(colors)
            return
        v = order[pos]
        taken = {colors[u] for u in adj[v] if colors[u]}
        for c in range(1, used + 1):
            if c not in taken:
                colors[v] = c
                search(pos + 1, used)
                if best == lower:
                    break
        if used + 1 < best:
            colors[v] = used + 1
            search(pos + 1, used + 1)
        colors[v] = 0

    search(0, 0)
    witness = ColoredBipartiteGraph(
        g.left_count, g.right_count, {edges[i]: best_colors[i] for i in range(n)}
    )
    return best, witness


def serialize_graph(g: ColoredBipartiteGraph) -> str:
    lines = [f"BIGRAPH {g.left_count} {g.right_count} {g.S}"]
    for (k, j), s in sorted(g.coloring.items()):
        lines.append(f"{k} {j} {s}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ColoredBipartiteGraph:
    if not text:
        raise ParseError("empty document, missing 'BIGRAPH K F S' header", 1)
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    header = list(_tokens(lines[0]))
    if len(header) != 4 or header[0][1] != "BIGRAPH":
        raise ParseError("missing 'BIGRAPH K F S' header", 1, 1)
    K, F, S = (_parse_int(tok, 1, col, name) for (col, tok), name in zip(header[1:], "KFS"))
    if K < 1 or F < 1:
        raise ParseError("K and F must be positive", 1)

    coloring = {}
    prev = None
    for lineno, line in enumerate(lines[1:], 2):
        toks = list(_tokens(line))
        if len(toks) != 3:
            raise ParseError(f"expected 'k j s', got {len(toks)} tokens", lineno)
        k, j, s = (_parse_int(tok, lineno, col, name) for (col, tok), name in zip(toks, "kjs"))
        if not (1 <= k <= K):
            raise ParseError(f"left vertex {k} outside 1..{K}", lineno, toks[0][0])
        if not (1 <= j <= F):
            raise ParseError(f"right vertex {j} outside 1..{F}", lineno, toks[1][0])
        if not (1 <= s <= S):
            raise ParseError(f"color {s} outside 1..{S}", lineno, toks[2][0])
        if (k, j) in coloring:
            raise ParseError(f"duplicate edge ({k},{j})", lineno)
        if prev is not None and (k, j) < prev:
            raise ParseError("edges must be sorted by (k, j)", lineno)
        prev = (k, j)
        coloring[(k, j)] = s
    g = ColoredBipartiteGraph(K, F, coloring)
    if g.S != S:
        raise ParseError(f"header declares S={S} but the largest color used is {g.S}", 1)
    return g
