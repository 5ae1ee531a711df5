"""The invariant suite run by ``lieweights verify``.

Each check yields a :class:`Check`; a document passes when every check does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .document import AlgebraDocument
from .errors import PreconditionFailed, VerdictMismatch
from .graph import (
    is_connected,
    is_tree,
    isolated_vertices,
    lemma_inequality_holds,
    max_sum_edges,
    min_weight_graph_edges,
)
from .lie import LieAlgebra
from .solvability import (
    SolvabilityReport,
    all_subsets,
    analyze,
    analyze_weight_system,
    determination_check,
    join_decomposition_check,
    relabel,
)
from .torus import WeightSystem

SWEEP = range(4, 51)
RELABEL_TRIALS = 20


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self, subject: str) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        verb = "" if self.ok else " failed"
        return f"{status} {subject}: {self.name}{verb}{tail}"


def _is_odd_cycle(graph, cycle) -> bool:
    if cycle is None or len(cycle) % 2 == 0 or len(set(cycle)) != len(cycle):
        return False
    return all(graph.has_edge(cycle[t], cycle[(t + 1) % len(cycle)]) for t in range(len(cycle)))


def graph_checks(r: SolvabilityReport) -> list[Check]:
    p, sg, wg = r.p, r.sum_graph, r.weight_graph
    iso = isolated_vertices(sg)
    out = [
        Check("sum graph has an isolated vertex", len(iso) >= 1, f"{len(iso)} isolated"),
        Check("weight graph connected", is_connected(wg)),
        Check("sum-graph edge bound", sg.q <= max_sum_edges(p), f"q={sg.q} <= {max_sum_edges(p)}"),
        Check("weight-graph edge bound", wg.q >= min_weight_graph_edges(p),
              f"q={wg.q} >= {min_weight_graph_edges(p)}"),
    ]
    if r.center_dim is not None:
        out.append(Check("isolated sum-graph vertices = dim Z", len(iso) == r.center_dim,
                         f"{len(iso)} isolated, dim Z = {r.center_dim}"))
    if p >= 4:
        out.append(Check("weight graph not bipartite (odd cycle)", _is_odd_cycle(wg, r.odd_cycle)))
        out.append(Check("weight graph has a triangle", r.triangle is not None))
    if not r.abelian:
        # the tree criterion assumes a nonsplit algebra; abelian ones are split
        heis = p == 3
        out.append(Check("weight graph is a tree iff Heisenberg", is_tree(wg) == heis,
                         f"tree={is_tree(wg)}"))
    if r.rank >= 3 and r.max_clique is not None:
        out.append(Check("max clique <= p-2 for rank >= 3", r.max_clique[0] <= p - 2,
                         f"clique {r.max_clique[0]}, p-2 = {p - 2}"))
    verdicts = {s.indices: s.graph_verdict for s in r.subsets}
    mono = all(
        verdicts[b] <= verdicts[a]
        for a in verdicts for b in verdicts if set(a) <= set(b)
    )
    out.append(Check("monotonicity of two-step verdicts", mono))
    return out


def algebra_checks(r: SolvabilityReport) -> list[Check]:
    out = []
    if r.condition1 is not None:
        fails = ", ".join(f"({r.label(a)}, {r.label(b)})" for a, b in r.condition1_failures)
        out.append(Check("Condition-1 surrogate", r.condition1, fails))
    if r.oracle_checked:
        bad = r.mismatches
        out.append(Check("two-step criterion (graph = oracle)", not bad,
                         "disagree on " + ", ".join("{" + ",".join(map(str, m)) + "}" for m in bad) if bad else ""))
        witness_sound = all(
            next(s for s in r.subsets if s.indices == (i,)).oracle_verdict is False
            for i, w in r.three_step_witnesses.items() if w is not None
        )
        out.append(Check("three-step witness soundness", witness_sound))
    if not r.abelian and r.full_torus_derived_length is not None:
        full = next(s for s in r.subsets if len(s.indices) == r.rank)
        out.append(Check("full torus derived length >= 3",
                         r.full_torus_derived_length >= 3 and not full.graph_verdict,
                         f"derived length {r.full_torus_derived_length}"))
    return out


def determination_checks(ws: WeightSystem, seed: str) -> list[Check]:
    rng = random.Random(seed)
    ok = True
    for _ in range(RELABEL_TRIALS):
        vp = list(range(ws.size))
        bp = list(range(1, ws.rank + 1))
        rng.shuffle(vp)
        rng.shuffle(bp)
        if determination_check(ws, relabel(ws, vp, bp)).verdict != "Equivalent":
            ok = False
            break
    out = [Check("determination: relabelled copies equivalent", ok, f"{RELABEL_TRIALS} trials")]
    joins_ok = True
    for idx in all_subsets(ws.rank):
        try:
            joins_ok &= join_decomposition_check(ws, idx)
        except PreconditionFailed:
            continue
    out.append(Check("join decomposition", joins_ok))
    return out


def golden_checks(r: SolvabilityReport, expected: dict | None) -> list[Check]:
    if not expected:
        return []
    out = [
        Check("golden rank", r.rank == expected["rank"]),
        Check("golden weights", [list(w) for w in r.weights] == expected["weights"]),
        Check("golden two-step subsets", [list(s) for s in r.two_step_subsets] == expected["two_step_subsets"]),
    ]
    if r.center_dim is not None and "center_dim" in expected:
        out.append(Check("golden center dimension", r.center_dim == expected["center_dim"]))
    return out


def report_for(doc: AlgebraDocument, oracle: bool = True) -> tuple[SolvabilityReport, LieAlgebra | None]:
    """Analyze a document without raising on graph/oracle disagreement."""
    if doc.graph_only:
        return analyze_weight_system(doc.weight_system(), doc.name), None
    L = doc.algebra()
    ws = doc.weight_system(L)
    try:
        return analyze(L, doc.name, oracle=oracle, ws=ws), L
    except VerdictMismatch as exc:
        return exc.report, L


def verify_document(doc: AlgebraDocument, expected: dict | None = None, oracle: bool = True) -> list[Check]:
    r, _ = report_for(doc, oracle)
    ws = WeightSystem(r.rank, r.weights, r.fundamental_indices)
    return (
        algebra_checks(r)
        + graph_checks(r)
        + determination_checks(ws, doc.name)
        + golden_checks(r, expected)
    )


def global_checks() -> list[Check]:
    bad = [p for p in SWEEP if not lemma_inequality_holds(p)]
    return [Check("edge inequality for 4 <= p <= 50", not bad, f"fails at {bad}" if bad else "")]


def distinct_pair_checks(docs: dict[str, AlgebraDocument]) -> list[Check]:
    """Catalog entries with equal (p, rank) must not be declared equivalent."""
    systems = {}
    for name, doc in docs.items():
        r, _ = report_for(doc, oracle=False)
        systems[name] = WeightSystem(r.rank, r.weights, r.fundamental_indices)
    out = []
    for a, b in combinations(sorted(systems), 2):
        wa, wb = systems[a], systems[b]
        if (wa.size, wa.rank) != (wb.size, wb.rank):
            continue
        res = determination_check(wa, wb)
        out.append(Check(f"determination: {a} vs {b} not equivalent", res.verdict != "Equivalent", res.verdict))
    return out
