"""Deciding which subtori give 2-step solvable semidirect products.

Two routes are kept apart on purpose:

* the graph criterion (:func:`is_two_step_subtorus`) looks only at the weight
  system: the weight graph restricted to the union of the E(beta_i) must be
  complete;
* the oracle (:func:`oracle_two_step`) builds L + T_I with explicit structure
  constants and measures its derived length.

:func:`two_step_by_derived_closure` is a third, graph-only test that also
accounts for [L, L] inside the first derived term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import NamedTuple, Sequence

from .errors import IndexOutOfRange, InputError, NotNilpotent, PreconditionFailed, TooLarge, VerdictMismatch
from .graph import (
    MAX_CLIQUE_VERTICES,
    MAX_ISO_VERTICES,
    SimpleGraph,
    complement,
    find_isomorphism,
    find_triangle,
    induced,
    is_complete,
    is_connected,
    is_tree,
    isolated_vertices,
    join,
    max_clique,
    max_sum_edges,
    min_weight_graph_edges,
    odd_cycle,
    sum_graph,
    weight_graph,
    weight_label,
)
from .lie import LieAlgebra, center, is_nilpotent, semidirect_product, solvability_class
from .torus import Torus, WeightSystem, check_condition1, diagonal_torus, fundamental_torus, support_set, weight_system

MAX_ENUM_RANK = 16


class RankTooLarge(InputError):
    pass


class TwoStep(NamedTuple):
    holds: bool
    witness: tuple[int, int] | None


def _check_indices(ws: WeightSystem, indices: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(sorted(set(indices)))
    if not idx:
        raise IndexOutOfRange("index set must be nonempty")
    for i in idx:
        if not 1 <= i <= ws.rank:
            raise IndexOutOfRange(f"beta index {i} outside 1..{ws.rank}")
    return idx


def union_support(ws: WeightSystem, indices: Sequence[int]) -> frozenset[int]:
    out: set[int] = set()
    for i in _check_indices(ws, indices):
        out |= support_set(ws, i)
    return frozenset(out)


def fundamental_subgraph(ws: WeightSystem, i: int) -> SimpleGraph:
    return induced(weight_graph(ws), support_set(ws, i))


def _first_missing_edge(wg: SimpleGraph, verts: frozenset[int]) -> tuple[int, int] | None:
    for u, v in combinations(sorted(verts), 2):
        if not wg.has_edge(u, v):
            return (u, v)
    return None


def is_two_step_subtorus(ws: WeightSystem, indices: Sequence[int]) -> TwoStep:
    """Weight graph induced on the union of E(beta_i), i in ``indices``, is complete.

    On failure the witness is the lexicographically first missing edge, i.e.
    a pair of weights inside the union whose sum is again a weight.
    """
    verts = union_support(ws, indices)
    miss = _first_missing_edge(weight_graph(ws), verts)
    return TwoStep(miss is None, miss)


def sum_vertices(ws: WeightSystem) -> frozenset[int]:
    """Weights that are the sum of two weights (the weights of [L, L] under Condition 1)."""
    sg = sum_graph(ws)
    out = set()
    for u, v in sg.edges:
        out.add(ws.index_of(tuple(a + b for a, b in zip(ws.weights[u], ws.weights[v]))))
    return frozenset(out)


def two_step_by_derived_closure(ws: WeightSystem, indices: Sequence[int]) -> TwoStep:
    """Completeness test on the weights spanning [L + T_I, L + T_I].

    That span is every weight with a nonzero beta_i-length for some i in I,
    together with the weights of [L, L].
    """
    idx = _check_indices(ws, indices)
    verts = {j for j, w in enumerate(ws.weights) if any(w[i - 1] != 0 for i in idx)}
    verts |= sum_vertices(ws)
    miss = _first_missing_edge(weight_graph(ws), frozenset(verts))
    return TwoStep(miss is None, miss)


def three_step_witness(ws: WeightSystem, i: int) -> tuple[int, int] | None:
    """First pair in E(beta_i) whose sum is a weight lying outside E(beta_i)."""
    E = support_set(ws, i)
    for a, b in combinations(sorted(E), 2):
        c = ws.index_of(tuple(x + y for x, y in zip(ws.weights[a], ws.weights[b])))
        if c is not None and c not in E:
            return (a, b)
    return None


def enumerate_two_step_subsets(ws: WeightSystem) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """All index sets passing :func:`is_two_step_subtorus`, and the maximal ones.

    Supersets of a failing set fail too, so only sets whose every
    one-smaller subset passed are tested.
    """
    k = ws.rank
    if k > MAX_ENUM_RANK:
        raise RankTooLarge(f"subset enumeration limited to rank {MAX_ENUM_RANK}")
    passing: list[tuple[int, ...]] = []
    layer = {(i,) for i in range(1, k + 1) if is_two_step_subtorus(ws, (i,)).holds}
    while layer:
        passing.extend(sorted(layer))
        nxt = set()
        for s in layer:
            for i in range(s[-1] + 1, k + 1):
                cand = s + (i,)
                if all(cand[:t] + cand[t + 1:] in layer for t in range(len(cand))):
                    if is_two_step_subtorus(ws, cand).holds:
                        nxt.add(cand)
        layer = nxt
    pset = set(passing)
    maximal = [s for s in passing if not any(set(s) < set(t) for t in pset)]
    return passing, maximal


def oracle_two_step(L: LieAlgebra, T: Torus, indices: Sequence[int]) -> bool:
    """Derived length of L + T_I is at most 2."""
    P = semidirect_product(L, T.derivations(sorted(set(indices))))
    s = solvability_class(P)
    return s is not None and s <= 2


def full_torus_check(L: LieAlgebra, T: Torus) -> int | None:
    """Derived length of L + T."""
    return solvability_class(semidirect_product(L, T.derivations()))


def join_decomposition_check(ws: WeightSystem, indices: Sequence[int]) -> bool:
    """Union subgraph is isomorphic to the join of the fundamental subgraphs.

    Requires pairwise disjoint E(beta_i) and a complete union subgraph.
    """
    idx = _check_indices(ws, indices)
    supports = [support_set(ws, i) for i in idx]
    for a, b in combinations(range(len(idx)), 2):
        if supports[a] & supports[b]:
            raise PreconditionFailed(f"E(beta_{idx[a]}) and E(beta_{idx[b]}) overlap")
    union = induced(weight_graph(ws), union_support(ws, idx))
    if not is_complete(union):
        raise PreconditionFailed("union subgraph is not complete")
    joined = join(*(fundamental_subgraph(ws, i) for i in idx))
    return find_isomorphism(joined, union) is not None


@dataclass(frozen=True)
class Determination:
    verdict: str  # "Equivalent" | "Distinguished" | "GraphsDiffer"
    vertex_map: dict[int, int] | None = None
    sigma: tuple[int, ...] | None = None
    detail: str = ""


def _family_signature(ws: WeightSystem) -> list[tuple[int, int]]:
    return sorted((len(support_set(ws, i)), fundamental_subgraph(ws, i).q) for i in range(1, ws.rank + 1))


def determination_check(ws1: WeightSystem, ws2: WeightSystem) -> Determination:
    """Search jointly for a weight-graph isomorphism and sigma in S_k with
    f(E(beta_i)) = E'(beta_sigma(i)) for every i.

    ``sigma`` is reported as the tuple (sigma(1), ..., sigma(k)).
    """
    if ws1.size != ws2.size or ws1.rank != ws2.rank:
        raise PreconditionFailed("weight systems must have equal size and rank")
    if ws1.size > MAX_ISO_VERTICES:
        raise TooLarge(f"determination check limited to {MAX_ISO_VERTICES} weights")
    g1, g2 = weight_graph(ws1), weight_graph(ws2)
    if find_isomorphism(g1, g2) is None:
        return Determination("GraphsDiffer", detail="weight graphs are not isomorphic")
    k = ws1.rank
    e1 = [support_set(ws1, i) for i in range(1, k + 1)]
    e2 = [support_set(ws2, i) for i in range(1, k + 1)]
    for perm in permutations(range(k)):
        if any(len(e1[i]) != len(e2[perm[i]]) for i in range(k)):
            continue

        def allowed(u, v, perm=perm):
            return all((u in e1[i]) == (v in e2[perm[i]]) for i in range(k))

        f = find_isomorphism(g1, g2, allowed=allowed)
        if f is not None:
            return Determination("Equivalent", f, tuple(p + 1 for p in perm))
    s1, s2 = _family_signature(ws1), _family_signature(ws2)
    if s1 != s2:
        detail = f"fundamental subgraph families differ: (|E|, q) {s1} vs {s2}"
    else:
        detail = "no weight-graph isomorphism carries the fundamental subgraph family"
    return Determination("Distinguished", detail=detail)


def relabel(ws: WeightSystem, vertex_perm: Sequence[int], beta_perm: Sequence[int]) -> WeightSystem:
    """Move vertex v to position vertex_perm[v] and beta_i to beta_{beta_perm[i-1]} (1-based)."""
    k, n = ws.rank, ws.size
    new = [None] * n
    for v, w in enumerate(ws.weights):
        nw = [0] * k
        for i in range(k):
            nw[beta_perm[i] - 1] = w[i]
        new[vertex_perm[v]] = tuple(nw)
    fund = [0] * k
    for i in range(k):
        fund[beta_perm[i] - 1] = vertex_perm[ws.fundamental_indices[i]]
    return WeightSystem(k, tuple(new), tuple(fund))


@dataclass
class SubsetVerdict:
    indices: tuple[int, ...]
    graph_verdict: bool
    witness: tuple[int, int] | None
    closure_verdict: bool
    oracle_verdict: bool | None = None

    @property
    def agrees(self) -> bool:
        return self.oracle_verdict is None or self.oracle_verdict == self.graph_verdict


@dataclass
class SolvabilityReport:
    algebra_id: str
    dim: int
    rank: int
    weights: tuple[tuple[int, ...], ...]
    fundamental_indices: tuple[int, ...]
    graded: bool
    condition1: bool | None
    condition1_failures: list[tuple[int, int]]
    sum_graph: SimpleGraph
    weight_graph: SimpleGraph
    center_dim: int | None
    abelian: bool
    subsets: list[SubsetVerdict]
    two_step_subsets: list[tuple[int, ...]]
    maximal_two_step_subsets: list[tuple[int, ...]]
    three_step_witnesses: dict[int, tuple[int, int] | None]
    full_torus_derived_length: int | None
    oracle_checked: bool
    max_clique: tuple[int, tuple[int, ...]] | None = None
    odd_cycle: list[int] | None = None
    triangle: tuple[int, int, int] | None = None
    extras: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return len(self.weights)

    @property
    def mismatches(self) -> list[tuple[int, ...]]:
        return [s.indices for s in self.subsets if not s.agrees]

    @property
    def rigidity_obstruction(self) -> bool:
        return not self.abelian and (self.full_torus_derived_length or 0) >= 3

    def label(self, v: int) -> str:
        return weight_label(self.weights[v])

    def to_dict(self) -> dict:
        """JSON-ready dict; insertion order is the serialization order."""
        def pair(e):
            return None if e is None else [self.label(e[0]), self.label(e[1])]

        isolated = sorted(isolated_vertices(self.sum_graph))
        return {
            "algebra": self.algebra_id,
            "dim": self.dim,
            "rank": self.rank,
            "graded": self.graded,
            "weights": [list(w) for w in self.weights],
            "weight_labels": [self.label(v) for v in range(self.p)],
            "fundamental_vertices": [v + 1 for v in self.fundamental_indices],
            "condition1": {
                "holds": self.condition1,
                "surrogate": "every weight-sum relation carried by a nonzero bracket",
                "failures": [pair(e) for e in self.condition1_failures],
            },
            "sum_graph": {
                "p": self.p,
                "q": self.sum_graph.q,
                "edges": [[u + 1, v + 1] for u, v in self.sum_graph.sorted_edges()],
                "isolated": [self.label(v) for v in isolated],
            },
            "weight_graph": {
                "q": self.weight_graph.q,
                "connected": is_connected(self.weight_graph),
                "tree": is_tree(self.weight_graph),
                "bipartite": self.odd_cycle is None,
                "odd_cycle": None if self.odd_cycle is None else [self.label(v) for v in self.odd_cycle],
                "triangle": None if self.triangle is None else [self.label(v) for v in self.triangle],
                "max_clique": None if self.max_clique is None else {
                    "size": self.max_clique[0],
                    "vertices": [self.label(v) for v in self.max_clique[1]],
                },
            },
            "center_dim": self.center_dim,
            "bounds": {
                "max_sum_edges": max_sum_edges(self.p),
                "min_weight_graph_edges": min_weight_graph_edges(self.p),
            },
            "subtori": [
                {
                    "indices": list(s.indices),
                    "graph_verdict": s.graph_verdict,
                    "witness": pair(s.witness),
                    "oracle_verdict": s.oracle_verdict,
                    "closure_verdict": s.closure_verdict,
                }
                for s in self.subsets
            ],
            "two_step_subsets": [list(s) for s in self.two_step_subsets],
            "maximal_two_step_subsets": [list(s) for s in self.maximal_two_step_subsets],
            "three_step_witnesses": {str(i): pair(w) for i, w in self.three_step_witnesses.items()},
            "full_torus_derived_length": self.full_torus_derived_length,
            "rigidity_obstruction": self.rigidity_obstruction,
            "oracle_checked": self.oracle_checked,
            "mismatches": [list(m) for m in self.mismatches],
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [
            f"algebra: {self.algebra_id} (dim {self.dim})",
            f"rank: {self.rank}",
            "weights: " + ", ".join(d["weight_labels"]),
        ]
        if not self.graded:
            lines.append("weights: not all coordinates nonnegative")
        if self.condition1 is not None:
            cond = "holds" if self.condition1 else "fails " + str(d["condition1"]["failures"])
            lines.append(f"condition 1 (surrogate): {cond}")
        lines.append(f"sum graph: p={self.p} q={self.sum_graph.q} isolated={d['sum_graph']['isolated']}")
        if d["weight_graph"]["tree"]:
            lines.append("weight graph: tree (Heisenberg criterion)")
        else:
            lines.append(f"weight graph: q={self.weight_graph.q} connected={d['weight_graph']['connected']}")
        if self.max_clique is not None:
            lines.append(f"max clique: {self.max_clique[0]}")
        lines.append(f"center dim: {self.center_dim}")
        for s in d["subtori"]:
            tag = "2-step" if s["graph_verdict"] else "not 2-step"
            extra = ""
            if s["oracle_verdict"] is not None:
                extra = f" oracle={'2-step' if s['oracle_verdict'] else 'not 2-step'}"
            if s["witness"]:
                extra += f" witness={{{s['witness'][0]}, {s['witness'][1]}}}"
            lines.append(f"subtorus {{{','.join(map(str, s['indices']))}}}: {tag}{extra}")
        lines.append("two-step subsets: " + str(d["two_step_subsets"]))
        lines.append(f"full torus derived length: {self.full_torus_derived_length}")
        if self.rigidity_obstruction:
            lines.append("rigidity obstruction: derived length >= 3")
        if self.mismatches:
            lines.append("MISMATCH graph vs oracle: " + str(d["mismatches"]))
        return "\n".join(lines) + "\n"


def all_subsets(k: int) -> list[tuple[int, ...]]:
    return [s for r in range(1, k + 1) for s in combinations(range(1, k + 1), r)]


def _report(ws: WeightSystem, algebra_id: str, L: LieAlgebra | None, oracle: bool) -> SolvabilityReport:
    if ws.rank > MAX_ENUM_RANK:
        raise RankTooLarge(f"subset enumeration limited to rank {MAX_ENUM_RANK}")
    T = fundamental_torus(ws)
    sg = sum_graph(ws)
    wg = complement(sg)
    if L is not None:
        cond, failures = check_condition1(L, ws)
    else:
        cond, failures = None, []
    use_oracle = oracle and L is not None
    subsets = []
    for idx in all_subsets(ws.rank):
        g = is_two_step_subtorus(ws, idx)
        c = two_step_by_derived_closure(ws, idx)
        o = oracle_two_step(L, T, idx) if use_oracle else None
        subsets.append(SubsetVerdict(idx, g.holds, g.witness, c.holds, o))
    passing, maximal = enumerate_two_step_subsets(ws)
    return SolvabilityReport(
        algebra_id=algebra_id,
        dim=ws.size,
        rank=ws.rank,
        weights=ws.weights,
        fundamental_indices=ws.fundamental_indices,
        graded=ws.graded,
        condition1=cond,
        condition1_failures=failures,
        sum_graph=sg,
        weight_graph=wg,
        center_dim=center(L).dim if L is not None else None,
        abelian=L.is_abelian() if L is not None else sg.q == 0,
        subsets=subsets,
        two_step_subsets=passing,
        maximal_two_step_subsets=maximal,
        three_step_witnesses={i: three_step_witness(ws, i) for i in range(1, ws.rank + 1)},
        full_torus_derived_length=full_torus_check(L, T) if L is not None else None,
        oracle_checked=use_oracle,
        max_clique=max_clique(wg) if wg.p <= MAX_CLIQUE_VERTICES else None,
        odd_cycle=odd_cycle(wg),
        triangle=find_triangle(wg),
    )


def analyze(L: LieAlgebra, algebra_id: str = "L", oracle: bool = True, strict: bool = True,
            ws: WeightSystem | None = None) -> SolvabilityReport:
    """Run the full pipeline on a nilpotent algebra.

    With ``oracle`` every subtorus verdict is cross-checked against the
    derived series of the semidirect product; when ``strict`` any
    disagreement raises :class:`VerdictMismatch` carrying the report.
    ``ws`` overrides the computed weight system (it must list weights in
    basis order).
    """
    if not is_nilpotent(L):
        raise NotNilpotent("lower central series does not reach zero")
    if ws is None:
        ws = weight_system(L, diagonal_torus(L))
    if ws.size != L.dim:
        raise InputError("weight system size differs from the algebra dimension")
    report = _report(ws, algebra_id, L, oracle)
    if strict and report.mismatches:
        raise VerdictMismatch(report.mismatches, report)
    return report


def analyze_weight_system(ws: WeightSystem, algebra_id: str = "W") -> SolvabilityReport:
    """Graph-only report: no brackets, so no oracle, center or Condition 1."""
    return _report(ws, algebra_id, None, oracle=False)
