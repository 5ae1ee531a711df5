"""Finite simple graphs for weight systems.

Vertices are ``0..p-1``; edges are stored as ``(u, v)`` with ``u < v``.
Vertex labels, when present, are weight vectors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, InputError, TooLarge
from .torus import WeightSystem

MAX_CLIQUE_VERTICES = 32
MAX_ISO_VERTICES = 12


class BadVertex(IndexOutOfRange):
    pass


class DomainError(InputError, ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    p: int
    edges: frozenset[tuple[int, int]]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.p):
                raise BadVertex(f"bad edge ({u}, {v}) for {self.p} vertices")

    @classmethod
    def from_edges(cls, p: int, edges: Iterable[Sequence[int]], labels=None) -> "SimpleGraph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise BadVertex(f"loop at {u}")
            norm.add((min(u, v), max(u, v)))
        return cls(p, frozenset(norm), tuple(labels) if labels is not None else None)

    @property
    def q(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.p)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]


def complete_graph(p: int) -> SimpleGraph:
    return SimpleGraph(p, frozenset(combinations(range(p), 2)))


def path_graph(p: int) -> SimpleGraph:
    return SimpleGraph(p, frozenset((i, i + 1) for i in range(p - 1)))


def empty_graph(p: int) -> SimpleGraph:
    return SimpleGraph(p, frozenset())


def sum_graph(ws: WeightSystem) -> SimpleGraph:
    """Vertices are weights; i ~ j when weight_i + weight_j is again a weight."""
    present = set(ws.weights)
    edges = set()
    for i, j in combinations(range(ws.size), 2):
        s = tuple(a + b for a, b in zip(ws.weights[i], ws.weights[j]))
        if s in present:
            edges.add((i, j))
    return SimpleGraph(ws.size, frozenset(edges), ws.weights)


def weight_graph(ws: WeightSystem) -> SimpleGraph:
    return complement(sum_graph(ws))


def complement(G: SimpleGraph) -> SimpleGraph:
    edges = frozenset(e for e in combinations(range(G.p), 2) if e not in G.edges)
    return SimpleGraph(G.p, edges, G.labels)


def isolated_vertices(G: SimpleGraph) -> frozenset[int]:
    return frozenset(v for v, d in enumerate(G.degrees()) if d == 0)


def is_connected(G: SimpleGraph) -> bool:
    if G.p == 0:
        return True
    adj = G.adjacency()
    seen = {0}
    todo = [0]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == G.p


def max_sum_edges(p: int) -> int:
    """Upper bound on the edges of a sum graph on p weights: sum_{j=1}^{p//2} (p - 2j)."""
    if p < 1:
        raise DomainError("p must be positive")
    return sum(p - 2 * j for j in range(1, p // 2 + 1))


def min_weight_graph_edges(p: int) -> int:
    return comb(p, 2) - max_sum_edges(p)


def lemma_inequality_holds(p: int) -> bool:
    """C(p-1, 2) - max_sum_edges(p) > 0, claimed for every p >= 4."""
    if p < 4:
        raise DomainError("the inequality is only claimed for p >= 4")
    return comb(p - 1, 2) - max_sum_edges(p) > 0


def odd_cycle(G: SimpleGraph) -> list[int] | None:
    """An odd cycle (vertex list) if G is not bipartite, else None.

    BFS two-colouring; a conflicting edge closes a cycle through the two
    BFS-tree paths to their lowest common ancestor.
    """
    adj = [sorted(a) for a in G.adjacency()]
    colour = [-1] * G.p
    parent = [-1] * G.p
    depth = [0] * G.p
    for s in range(G.p):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    a, b = u, w
                    left, right = [a], [b]
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                            left.append(a)
                        else:
                            b = parent[b]
                            right.append(b)
                    # left ends at the common ancestor; right ends there too
                    return _canonical_cycle(left + right[-2::-1])
    return None


def _canonical_cycle(cyc: list[int]) -> list[int]:
    """Rotate to start at the smallest vertex, heading to its smaller neighbour."""
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if cyc[-1] < cyc[1]:
        cyc = cyc[:1] + cyc[:0:-1]
    return cyc


def is_bipartite(G: SimpleGraph) -> bool:
    return odd_cycle(G) is None


def find_triangle(G: SimpleGraph) -> tuple[int, int, int] | None:
    """Lexicographically first triangle by exhaustive scan."""
    adj = G.adjacency()
    for a, b, c in combinations(range(G.p), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            return (a, b, c)
    return None


def has_triangle(G: SimpleGraph) -> bool:
    return find_triangle(G) is not None


def is_tree(G: SimpleGraph) -> bool:
    return G.p >= 1 and G.q == G.p - 1 and is_connected(G)


def is_complete(G: SimpleGraph) -> bool:
    return G.q == comb(G.p, 2)


def max_clique(G: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    """Exact maximum clique by branch and bound.

    Ties are broken toward the lexicographically smallest vertex set.
    """
    if G.p > MAX_CLIQUE_VERTICES:
        raise TooLarge(f"clique search limited to {MAX_CLIQUE_VERTICES} vertices")
    if G.p == 0:
        return 0, ()
    adj = G.adjacency()
    best: list[tuple[int, ...]] = [()]

    def better(cand: tuple[int, ...]) -> bool:
        b = best[0]
        return len(cand) > len(b) or (len(cand) == len(b) and cand < b)

    def expand(chosen: tuple[int, ...], candidates: list[int]):
        if not candidates:
            if better(chosen):
                best[0] = chosen
            return
        if len(chosen) + len(candidates) < len(best[0]):
            return
        for idx, v in enumerate(candidates):
            if len(chosen) + len(candidates) - idx < len(best[0]):
                return
            expand(chosen + (v,), [w for w in candidates[idx + 1:] if w in adj[v]])
        if better(chosen):
            best[0] = chosen

    expand((), list(range(G.p)))
    return len(best[0]), best[0]


def induced(G: SimpleGraph, S: Iterable[int]) -> SimpleGraph:
    """Subgraph on S, renumbered in increasing vertex order; labels carried over."""
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.p:
            raise BadVertex(f"vertex {v} not in graph")
    pos = {v: i for i, v in enumerate(verts)}
    edges = frozenset((pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos)
    labels = tuple(G.labels[v] for v in verts) if G.labels is not None else None
    return SimpleGraph(len(verts), edges, labels)


def join(*graphs: SimpleGraph) -> SimpleGraph:
    """Disjoint union plus every edge between different parts."""
    edges = set()
    offsets = []
    off = 0
    for g in graphs:
        offsets.append(off)
        edges.update((u + off, v + off) for u, v in g.edges)
        off += g.p
    for (a, ga), (b, gb) in combinations(list(zip(offsets, graphs)), 2):
        edges.update((a + u, b + v) for u in range(ga.p) for v in range(gb.p))
    labels = None
    if graphs and all(g.labels is not None for g in graphs):
        labels = tuple(l for g in graphs for l in g.labels)
    return SimpleGraph(off, frozenset(edges), labels)


def find_isomorphism(G1: SimpleGraph, G2: SimpleGraph, respect_labels: bool = False,
                     allowed=None) -> dict[int, int] | None:
    """Vertex bijection G1 -> G2 preserving adjacency, or None.

    Backtracking in order of decreasing degree with degree and
    neighbourhood-consistency pruning. ``allowed(u, v)`` can further restrict
    candidate images.
    """
    if G1.p != G2.p or G1.q != G2.q:
        return None
    if max(G1.p, G2.p) > MAX_ISO_VERTICES:
        raise TooLarge(f"isomorphism search limited to {MAX_ISO_VERTICES} vertices")
    d1, d2 = G1.degrees(), G2.degrees()
    if sorted(d1) != sorted(d2):
        return None
    adj1, adj2 = G1.adjacency(), G2.adjacency()
    order = sorted(range(G1.p), key=lambda v: (-d1[v], v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def ok(u: int, v: int) -> bool:
        if d1[u] != d2[v]:
            return False
        if respect_labels and G1.labels is not None and G2.labels is not None and G1.labels[u] != G2.labels[v]:
            return False
        if allowed is not None and not allowed(u, v):
            return False
        for a, b in mapping.items():
            if (a in adj1[u]) != (b in adj2[v]):
                return False
        return True

    def search(pos: int) -> bool:
        if pos == len(order):
            return True
        u = order[pos]
        for v in range(G2.p):
            if v in used or not ok(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if search(pos + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    if search(0):
        return dict(sorted(mapping.items()))
    return None


def are_isomorphic(G1: SimpleGraph, G2: SimpleGraph, respect_labels: bool = False) -> bool:
    return find_isomorphism(G1, G2, respect_labels) is not None


def weight_label(w: Sequence[int]) -> str:
    """Render a coordinate vector as e.g. ``b1+b2`` or ``2b1-b3``."""
    parts = []
    for i, a in enumerate(w, start=1):
        if a == 0:
            continue
        mag = "" if abs(a) == 1 else str(abs(a))
        sign = "-" if a < 0 else "+"
        parts.append((sign, f"{mag}b{i}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += sign + term
    return out


def to_dot(G: SimpleGraph, kind: str, name: str = "G") -> str:
    """Deterministic DOT text: vertices in index order, edges sorted."""
    lines = [f'graph "{name}" {{', f'  kind="{kind}";']
    for v in range(G.p):
        if G.labels is not None:
            lab = weight_label(G.labels[v])
        else:
            lab = str(v + 1)
        lines.append(f'  v{v + 1} [label="{lab}"];')
    for u, v in G.sorted_edges():
        lines.append(f"  v{u + 1} -- v{v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
