"""Layered socle graphs and the graded-socle conjugacy invariant.

For an irrational path p the construction grows layers backward from a
truncation of the forward orbit: layer zero is the orbit window, and
each next layer collects the new shift preimages of the previous one.
The graph has one vertex per collected point and one edge per vertex,
pointing at the vertex of its shift.  These graphs are acyclic,
row-finite, and sinkless (up to the truncation boundary).

Condition (Y) — every infinite path eventually admits an incoming path
one longer than its own position — is decided two ways: on the graph
window (with boundary accounting and, when the presentation certifies
exhausted layers and stabilized preimage chains, a decisive answer) and
through the shift map directly (iterated preimages of forward shifts).
A Holds/Fails split across two subshifts certifies that the associated
OTW-subshifts are not conjugate.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .points import PointDesc, Status, Verdict
from .qpaths import IrrationalWitness, TailClass, find_irrational_singletons, partition_classes
from .subshift import Bounds, Subshift


class PreimageOverflow(Exception):
    """A layer exceeded the width budget."""


WIDTH_BUDGET = 4096


@dataclass
class Layers:
    """Backward-layer decomposition of a class window."""

    base: PointDesc
    layers: List[List[PointDesc]]  # layer 0 is the truncated forward orbit
    orbit_len: int
    depth: int
    layers_exhausted: bool
    stabilization: bool

    @property
    def points(self) -> List[PointDesc]:
        return [z for layer in self.layers for z in layer]


@dataclass
class Vertex:
    vid: int
    layer: int
    point: Optional[PointDesc] = None
    label: str = ""
    in_boundary: bool = False
    out_boundary: bool = False

    @property
    def boundary(self) -> bool:
        return self.in_boundary or self.out_boundary


@dataclass
class Edge:
    eid: int
    source: int
    target: int


@dataclass
class Component:
    """One class window inside a (possibly disjoint-union) graph."""

    name: str
    vertex_ids: List[int]
    layers_exhausted: bool = False
    stabilization: bool = False
    orbit_index: Dict[int, int] = field(default_factory=dict)  # vid -> ray position


@dataclass
class LayeredGraph:
    vertices: List[Vertex]
    edges: List[Edge]
    components: List[Component]
    name: str = ""

    def vertex(self, vid: int) -> Vertex:
        return self.vertices[vid]

    def out_edges(self, vid: int) -> List[Edge]:
        return [e for e in self.edges if e.source == vid]

    def in_edges(self, vid: int) -> List[Edge]:
        return [e for e in self.edges if e.target == vid]

    def successor(self, vid: int) -> Optional[int]:
        outs = self.out_edges(vid)
        return outs[0].target if len(outs) == 1 else None


@dataclass
class WSet:
    """The irrational points of a subshift, witnessed lazily."""

    spec: Subshift
    witnesses: List[IrrationalWitness]

    @property
    def points(self) -> List[PointDesc]:
        return [w.point for w in self.witnesses]

    def reverify(self) -> bool:
        return all(w.reverify() for w in self.witnesses)


# ----------------------------------------------------------------------
# construction

def build_layers(
    X: Subshift,
    p: PointDesc,
    orbit_len: Optional[int] = None,
    depth: Optional[int] = None,
) -> Layers:
    """Grow the layer decomposition from a verified irrational path.

    Layer zero is the orbit window; layer ``k`` holds the preimages of
    layer ``k-1`` not seen earlier.  Exact within the window: preimage
    queries enumerate complete sets.
    """
    orbit_len = orbit_len if orbit_len is not None else X.bounds.orbit_len
    depth = depth if depth is not None else X.bounds.depth
    if X.eventually_periodic_form(p) is not None:
        raise ValueError("base point must be irrational")
    orbit: List[PointDesc] = [p]
    for _ in range(orbit_len - 1):
        orbit.append(X.shift(orbit[-1]))
    seen: Set[PointDesc] = set(orbit)
    if len(seen) != len(orbit):
        raise ValueError("orbit points repeat; base point is not irrational")
    layers = [orbit]
    exhausted = False
    for _ in range(depth):
        prev = layers[-1]
        fresh: List[PointDesc] = []
        for z in prev:
            for q in sorted(X.preimages(z), key=lambda d: d.sort_key()):
                if q not in seen:
                    seen.add(q)
                    fresh.append(q)
        if len(fresh) > WIDTH_BUDGET or len(seen) > WIDTH_BUDGET:
            raise PreimageOverflow(f"layer width exceeds {WIDTH_BUDGET}")
        layers.append(fresh)
        if not fresh:
            exhausted = True
            break
    return Layers(
        base=p,
        layers=layers,
        orbit_len=orbit_len,
        depth=depth,
        layers_exhausted=exhausted,
        stabilization=X.stabilization_certified,
    )


def build_graph(L: Layers, X: Subshift, name: str = "") -> LayeredGraph:
    """One vertex per collected point, one edge to the shift's vertex.

    The final orbit vertex is an out-boundary (its shift leaves the
    window: a dangling shift, flagged rather than fatal); the deepest
    non-exhausted layer is an in-boundary (its preimages were not
    computed)."""
    index: Dict[PointDesc, int] = {}
    vertices: List[Vertex] = []
    for layer_no, layer in enumerate(L.layers):
        for z in layer:
            vid = len(vertices)
            index[z] = vid
            vertices.append(Vertex(vid=vid, layer=layer_no, point=z, label=str(z)))
    edges: List[Edge] = []
    last_layer_no = len(L.layers) - 1
    orbit_index: Dict[int, int] = {}
    for v in vertices:
        if v.layer == 0:
            orbit_index[v.vid] = v.vid  # layer 0 is listed first, in orbit order
        target = X.shift(v.point)
        if target in index:
            edges.append(Edge(eid=v.vid, source=v.vid, target=index[target]))
        else:
            v.out_boundary = True  # dangling shift at the window edge
        if not L.layers_exhausted and v.layer == last_layer_no:
            v.in_boundary = True
    comp = Component(
        name=name or str(L.base),
        vertex_ids=[v.vid for v in vertices],
        layers_exhausted=L.layers_exhausted,
        stabilization=L.stabilization,
        orbit_index=orbit_index,
    )
    return LayeredGraph(vertices=vertices, edges=edges, components=[comp], name=name)


def disjoint_union(graphs: Sequence[LayeredGraph], name: str = "union") -> LayeredGraph:
    """Tagged disjoint union; the union satisfies Condition (Y) exactly
    when every component does, which the evaluator checks per component."""
    vertices: List[Vertex] = []
    edges: List[Edge] = []
    components: List[Component] = []
    for g in graphs:
        offset = len(vertices)
        for v in g.vertices:
            vertices.append(
                Vertex(
                    vid=v.vid + offset,
                    layer=v.layer,
                    point=v.point,
                    label=v.label,
                    in_boundary=v.in_boundary,
                    out_boundary=v.out_boundary,
                )
            )
        for e in g.edges:
            edges.append(Edge(eid=e.eid + offset, source=e.source + offset, target=e.target + offset))
        for c in g.components:
            components.append(
                Component(
                    name=c.name,
                    vertex_ids=[vid + offset for vid in c.vertex_ids],
                    layers_exhausted=c.layers_exhausted,
                    stabilization=c.stabilization,
                    orbit_index={vid + offset: pos for vid, pos in c.orbit_index.items()},
                )
            )
    return LayeredGraph(vertices=vertices, edges=edges, components=components, name=name)


# ----------------------------------------------------------------------
# validation

def validate_graph(g: LayeredGraph, X: Optional[Subshift] = None) -> List[str]:
    """Structural checks; returns a violation list (never raises)."""
    violations: List[str] = []
    # acyclicity over realized edges
    succ: Dict[int, List[int]] = {v.vid: [] for v in g.vertices}
    for e in g.edges:
        succ[e.source].append(e.target)
    state: Dict[int, int] = {}

    def visit(v: int) -> bool:
        state[v] = 1
        for t in succ[v]:
            mark = state.get(t)
            if mark == 1:
                return False
            if mark is None and not visit(t):
                return False
        state[v] = 2
        return True

    for v in g.vertices:
        if state.get(v.vid) is None and not visit(v.vid):
            violations.append("closed path detected")
            break
    # out-degrees
    for v in g.vertices:
        degree = len(g.out_edges(v.vid))
        if degree > 1:
            violations.append(f"vertex v{v.vid} emits {degree} edges")
        elif degree == 0 and not v.out_boundary:
            violations.append(f"vertex v{v.vid} is a sink inside the window")
    # in-degree finiteness is structural on a finite window; report the
    # maximum for the record
    # range map matches the shift on the points
    if X is not None:
        index = {v.point: v.vid for v in g.vertices if v.point is not None}
        for v in g.vertices:
            if v.point is None:
                continue
            outs = g.out_edges(v.vid)
            if not outs:
                continue
            expect = index.get(X.shift(v.point))
            if expect is None or outs[0].target != expect:
                violations.append(
                    f"edge e{outs[0].eid} range disagrees with the shift"
                )
        # path identity: the forward path of z starts with its own edge
        # followed by the forward path of shift(z)
        for v in g.vertices:
            if v.point is None or v.out_boundary:
                continue
            walk_v = _forward_edges(g, v.vid, 8)
            nxt = g.successor(v.vid)
            walk_s = _forward_edges(g, nxt, 7) if nxt is not None else []
            if walk_v[1 : 1 + len(walk_s)] != walk_s[: len(walk_v) - 1]:
                violations.append(f"path identity fails at v{v.vid}")
    return violations


def _forward_edges(g: LayeredGraph, vid: int, limit: int) -> List[int]:
    out: List[int] = []
    current = vid
    for _ in range(limit):
        outs = g.out_edges(current)
        if len(outs) != 1:
            break
        out.append(outs[0].eid)
        current = outs[0].target
    return out


# ----------------------------------------------------------------------
# Condition (Y)

def condition_y_graph(g: LayeredGraph, k_bound: Optional[int] = None) -> Verdict:
    """Graph-side Condition (Y) on the truncation.

    Every vertex heads a unique infinite path; a witness for position
    ``k`` is an incoming path of length ``k+1`` at the ``k``-th vertex
    of that path.  Holds needs a witness at every non-boundary vertex.
    Fails needs a certificate: exhausted layers plus stabilized preimage
    chains make the window data decisive for the infinite tail.
    """
    k_bound = k_bound if k_bound is not None else 8
    verdicts = [
        _condition_y_component(g, comp, k_bound) for comp in g.components
    ]
    return _conjoin(verdicts, k_bound)


def _conjoin(verdicts: Sequence[Verdict], bound: int) -> Verdict:
    if len(verdicts) == 1:
        return verdicts[0]
    failing = [v for v in verdicts if v.is_fails]
    if failing:
        return failing[0]
    if any(v.is_unknown for v in verdicts):
        blocked = next(v for v in verdicts if v.is_unknown)
        return Verdict.unknown(bound, blocked.reason)
    witnesses = [v.witness for v in verdicts if v.witness is not None]
    return Verdict.holds(witness=witnesses or None, bound=bound, reason=(
        "vacuous: no components" if not verdicts else "all components hold"
    ))


def _condition_y_component(g: LayeredGraph, comp: Component, k_bound: int) -> Verdict:
    ids = comp.vertex_ids
    if not ids:
        return Verdict.holds(reason="empty component", bound=k_bound)
    maxin = _exact_max_in_paths(g, ids)
    certified = comp.layers_exhausted and comp.stabilization
    # slack of the orbit ray: how far incoming chains outrun positions
    slack: Optional[int] = None
    if certified and comp.orbit_index:
        slack = max(
            (maxin[vid] - pos)
            for vid, pos in comp.orbit_index.items()
            if maxin.get(vid) is not None
        )
    witnesses: Dict[int, int] = {}
    unknowns: List[int] = []
    failures: List[int] = []
    for vid in ids:
        v = g.vertex(vid)
        if v.boundary:
            continue
        found = None
        current = vid
        for k in range(k_bound + 1):
            if current is None:
                break
            if _has_in_path(g, current, k + 1):
                found = k
                break
            current = g.successor(current)
        if found is not None:
            witnesses[vid] = found
            continue
        if certified and slack is not None:
            # the forward path enters the ray; beyond the window the
            # incoming-path length at position N is exactly N + slack,
            # so a witness exists iff the entry offset beats the layer
            depth = v.layer
            entry = _ray_entry(g, comp, vid)
            if entry is not None and entry - depth + slack >= 1:
                witnesses[vid] = entry - depth + slack
                continue
            if entry is not None:
                failures.append(vid)
                continue
        unknowns.append(vid)
    if failures:
        return Verdict.fails(
            witness=[f"v{vid}" for vid in failures],
            reason="incoming paths stay one short along the whole ray",
            bound=k_bound,
        )
    if unknowns:
        return Verdict.unknown(
            k_bound, f"no witness within bound for v{unknowns[0]} and no certificate"
        )
    return Verdict.holds(witness=witnesses, bound=k_bound, reason="window witnesses")


def _ray_entry(g: LayeredGraph, comp: Component, vid: int) -> Optional[int]:
    """Orbit position where the forward path of ``vid`` meets layer 0."""
    current = vid
    for _ in range(len(comp.vertex_ids) + 1):
        if current in comp.orbit_index:
            return comp.orbit_index[current]
        current = g.successor(current)
        if current is None:
            return None
    return None


def _exact_max_in_paths(g: LayeredGraph, ids: Sequence[int]) -> Dict[int, Optional[int]]:
    """Longest incoming path per vertex; None when an in-boundary vertex
    contaminates the backward cone (the length is then not certified)."""
    memo: Dict[int, Optional[int]] = {}

    def rec(vid: int) -> Optional[int]:
        if vid in memo:
            return memo[vid]
        memo[vid] = None  # cycle guard; validated graphs are acyclic
        v = g.vertex(vid)
        if v.in_boundary:
            memo[vid] = None
            return None
        best = 0
        for e in g.in_edges(vid):
            sub = rec(e.source)
            if sub is None:
                memo[vid] = None
                return None
            best = max(best, sub + 1)
        memo[vid] = best
        return best

    return {vid: rec(vid) for vid in ids}


def _has_in_path(g: LayeredGraph, vid: int, length: int) -> bool:
    """Existence of an incoming path of exactly ``length`` real edges."""
    frontier = {vid}
    for _ in range(length):
        frontier = {e.source for t in frontier for e in g.in_edges(t)}
        if not frontier:
            return False
    return True


def condition_y_sigma(
    X: Subshift, w_sample: Sequence[PointDesc], n_bound: Optional[int] = None
) -> Verdict:
    """Shift-side Condition (Y): for each sampled irrational point, some
    depth ``n`` has a nonempty ``(n+1)``-fold preimage of the ``n``-th
    shift.  Fails needs the stabilization certificate (preimage chains
    eventually singleton-or-empty), which licenses the for-all-depth
    conclusion from the bounded search."""
    n_bound = n_bound if n_bound is not None else X.bounds.n_bound
    if not w_sample:
        return Verdict.holds(reason="vacuous: no irrational points", bound=n_bound)
    witnesses: Dict[str, int] = {}
    failing: List[PointDesc] = []
    unknown: List[PointDesc] = []
    for q in w_sample:
        hit = None
        for n in range(n_bound + 1):
            level = {X.shift_iter(q, n)}
            for _ in range(n + 1):
                level = {z for s in level for z in X.preimages(s)}
                if not level:
                    break
            if level:
                hit = n
                break
        if hit is not None:
            witnesses[str(q)] = hit
        elif X.stabilization_certified and n_bound >= 2:
            failing.append(q)
        else:
            unknown.append(q)
    if failing:
        return Verdict.fails(
            witness=[str(q) for q in failing],
            reason="iterated preimages empty at every depth (stabilized chains)",
            bound=n_bound,
        )
    if unknown:
        return Verdict.unknown(n_bound, f"no witness for {unknown[0]} within bound")
    return Verdict.holds(witness=witnesses, bound=n_bound)


# ----------------------------------------------------------------------
# end-to-end evaluation

@dataclass
class ConditionYReport:
    spec_name: str
    witnesses: List[IrrationalWitness]
    classes: List[TailClass]
    graph: Optional[LayeredGraph]
    graph_verdict: Verdict
    sigma_verdict: Verdict
    combined: Verdict

    @property
    def strong_grading(self) -> str:
        if self.combined.is_holds:
            return "StronglyGraded"
        if self.combined.is_fails:
            return "NotStronglyGraded"
        return "Unknown"


def evaluate_condition_y(X: Subshift, bounds: Optional[Bounds] = None) -> ConditionYReport:
    """Full pipeline: witnesses, classes, per-class graphs, both
    Condition (Y) verdicts, and their conjunction."""
    b = bounds if bounds is not None else X.bounds
    witnesses = find_irrational_singletons(X, b.word_bound, b.closure_budget)
    classes = partition_classes(X, witnesses, b.tail_bound)
    graphs: List[LayeredGraph] = []
    sigma_verdicts: List[Verdict] = []
    for cls in classes:
        layers = build_layers(X, cls.representative, b.orbit_len, b.depth)
        graphs.append(build_graph(layers, X, name=str(cls.representative)))
        sample = sorted(cls.points, key=lambda d: d.sort_key())[:8]
        sigma_verdicts.append(condition_y_sigma(X, sample, b.n_bound))
    union = disjoint_union(graphs, name=X.name or "socle graph") if graphs else None
    graph_verdict = (
        condition_y_graph(union, b.k_bound)
        if union is not None
        else Verdict.holds(reason="vacuous: empty graph", bound=b.k_bound)
    )
    sigma_verdict = _conjoin(sigma_verdicts, b.n_bound) if sigma_verdicts else Verdict.holds(
        reason="vacuous: no irrational points", bound=b.n_bound
    )
    if graph_verdict.decisive and sigma_verdict.decisive:
        if graph_verdict.status is not sigma_verdict.status:
            combined = Verdict.unknown(
                b.k_bound,
                "graph-side and shift-side verdicts disagree; refusing both",
            )
        else:
            combined = graph_verdict
    elif graph_verdict.decisive:
        combined = graph_verdict
    elif sigma_verdict.decisive:
        combined = sigma_verdict
    else:
        combined = Verdict.unknown(b.k_bound, graph_verdict.reason)
    return ConditionYReport(
        spec_name=X.name,
        witnesses=witnesses,
        classes=classes,
        graph=union,
        graph_verdict=graph_verdict,
        sigma_verdict=sigma_verdict,
        combined=combined,
    )


@dataclass
class ComparisonReport:
    verdict: str  # "NotConjugate" | "Inconclusive"
    left: ConditionYReport
    right: ConditionYReport
    reason: str


def compare_invariants(
    X1: Subshift, X2: Subshift, bounds: Optional[Bounds] = None
) -> ComparisonReport:
    """Graded-socle conjugacy invariant for a pair of subshifts.

    NotConjugate exactly when the Condition (Y) verdicts are decisive
    and split; everything else (agreement or any Unknown) is
    Inconclusive.  Symmetric in its arguments."""
    with ThreadPoolExecutor(max_workers=2) as pool:
        f1 = pool.submit(evaluate_condition_y, X1, bounds)
        f2 = pool.submit(evaluate_condition_y, X2, bounds)
        left, right = f1.result(), f2.result()
    v1, v2 = left.combined, right.combined
    if v1.decisive and v2.decisive and v1.status is not v2.status:
        return ComparisonReport(
            verdict="NotConjugate",
            left=left,
            right=right,
            reason="Condition (Y) holds on one side and fails on the other",
        )
    if not v1.decisive or not v2.decisive:
        blockers = []
        if not v1.decisive:
            blockers.append(f"{left.spec_name}: {v1.reason}")
        if not v2.decisive:
            blockers.append(f"{right.spec_name}: {v2.reason}")
        return ComparisonReport(
            verdict="Inconclusive", left=left, right=right,
            reason="; ".join(blockers),
        )
    return ComparisonReport(
        verdict="Inconclusive",
        left=left,
        right=right,
        reason="both sides share the same Condition (Y) verdict",
    )


# ----------------------------------------------------------------------
# dumps

def dot_dump(g: LayeredGraph) -> str:
    """Deterministic DOT rendering: vertices ``v{i}/J{layer}``, edges
    ``e{i}``; boundary vertices drawn dashed."""
    lines = [f'digraph "{g.name or "socle_graph"}" {{', "  rankdir=LR;"]
    for v in sorted(g.vertices, key=lambda v: v.vid):
        attrs = [f'label="v{v.vid}/J{v.layer}"']
        if v.boundary:
            attrs.append('style="dashed"')
        lines.append(f"  v{v.vid} [{', '.join(attrs)}];")
    for e in sorted(g.edges, key=lambda e: e.eid):
        lines.append(f'  v{e.source} -> v{e.target} [label="e{e.eid}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def json_dump(g: LayeredGraph) -> str:
    """Deterministic structured dump with layer and boundary metadata."""
    payload = {
        "name": g.name,
        "vertices": [
            {
                "id": v.vid,
                "layer": v.layer,
                "point": v.label,
                "in_boundary": v.in_boundary,
                "out_boundary": v.out_boundary,
            }
            for v in sorted(g.vertices, key=lambda v: v.vid)
        ],
        "edges": [
            {"id": e.eid, "source": e.source, "target": e.target}
            for e in sorted(g.edges, key=lambda e: e.eid)
        ],
        "components": [
            {
                "name": c.name,
                "vertices": sorted(c.vertex_ids),
                "layers_exhausted": c.layers_exhausted,
                "stabilization": c.stabilization,
            }
            for c in g.components
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
