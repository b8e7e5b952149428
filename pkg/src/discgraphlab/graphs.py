"""Finite balls of the disc graphs and their electrified variants.

Vertices are discs (or curves, for the curve-graph kind); every stored
edge carries a revalidatable witness.  Balls are built breadth-first
with explicit budgets and deterministic, key-ordered exploration, so a
fixed configuration reproduces byte-identical graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import words
from .chart import (ChartError, CurveClass, MappingWord, band_sum_walk,
                    chart_intersection_number, closed_equal,
                    closed_pair_reduce, dehn_twist, intersection_number,
                    spine_paths)
from .handlebody import Disc, Handlebody, HandlebodyError, outer_arcs
from .overlay import Realization


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class GraphKind:
    tag: str                      # CG, DG, DG_ns, EDG, SDG, EDG_h, EDG_X, SDG_beta
    h: int | None = None          # for EDG_h
    subsurface_key: str | None = None   # for EDG_X / SDG_beta

    def __post_init__(self):
        if self.tag not in ("CG", "DG", "DG_ns", "EDG", "SDG",
                            "EDG_h", "EDG_X", "SDG_beta"):
            raise GraphError("unknown graph kind %r" % self.tag)
        if self.tag == "EDG_h" and (self.h is None or self.h < 1):
            raise GraphError("EDG_h needs a component count")

    def label(self):
        if self.tag == "EDG_h":
            return "EDG_%d" % self.h
        if self.subsurface_key:
            return "%s[%s]" % (self.tag, self.subsurface_key[:8])
        return self.tag


@dataclass
class Witness:
    kind: str                     # disjoint | common_curve | common_multicurve | ibundle
    curve: CurveClass | None = None
    multicurve: CurveClass | None = None
    catalog_id: str | None = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.curve is not None:
            out["curve"] = self.curve.to_json()
        if self.multicurve is not None:
            out["multicurve"] = self.multicurve.to_json()
        if self.catalog_id is not None:
            out["catalog_id"] = self.catalog_id
        return out


class CurvePool:
    """Deterministic pool of candidate witness curves.

    Seeded with the chart curves and any curves pushed in from region
    boundaries; always consumed in (weight, key) order.
    """

    def __init__(self, H):
        self.H = H
        self._curves = {}
        chart = H.chart
        for name in ["m%d" % (i + 1) for i in range(H.genus)] + \
                ["b%d" % (i + 1) for i in range(H.genus)] + ["sep"]:
            self.add(chart.curve(name))
        for d in H.seed_discs():
            self.add(d.boundary)

    def add(self, c):
        if c.canonical_key not in self._curves:
            self._curves[c.canonical_key] = c
            self._sorted = None

    def add_walk(self, walk):
        chart = self.H.chart
        try:
            c = CurveClass.from_walks(chart, [walk])
        except ChartError:
            return None
        if self.H.chart.is_null_homotopic(walk):
            return None
        self.add(c)
        return c

    def curves(self):
        if getattr(self, "_sorted", None) is None:
            self._sorted = sorted(self._curves.values(),
                                  key=lambda c: (c.total_weight,
                                                 c.canonical_key))
        return self._sorted

    def harvest_regions(self, realization):
        """Push essential region-boundary circuits into the pool."""
        out = []
        for reg in realization.regions:
            for circ in reg.circuits:
                if not circ.walk:
                    continue
                c = self.add_walk(circ.walk)
                if c is not None:
                    out.append(c)
        return out


# -- witness searches ---------------------------------------------------------


def common_disjoint_curve(H, a, b, pool, allow_parallel=True):
    """An essential curve disjoint from both, or None.

    Boundary-parallel witnesses are legitimate: a curve parallel to one
    of the two is disjoint from both exactly when the two are disjoint.
    """
    if intersection_number(a, b) == 0:
        if allow_parallel:
            return a
    shared = set(a.components) & set(b.components)
    if shared:
        walks = sorted(shared)
        return CurveClass.from_walks(H.chart, [walks[0]], _validate=False)
    for c in pool.curves():
        if (chart_intersection_number(c, a) == 0
                and chart_intersection_number(c, b) == 0):
            return c
    _, b2, iota = closed_pair_reduce(a, b)
    real = Realization(H.chart.spine,
                       [list(a.components), list(b2.components)])
    if all(r.is_disc for r in real.regions):
        return None
    fresh = pool.harvest_regions(real)
    for c in fresh:
        if (chart_intersection_number(c, a) == 0
                and chart_intersection_number(c, b2) == 0):
            if intersection_number(c, b) == 0:
                return c
    return None


def disjoint_multicurve(H, a, b, h, pool):
    """An h-component multicurve disjoint from both, components
    pairwise disjoint and pairwise non-homotopic; None if not found.

    Disjointness here is taken relative to the chart, which keeps the
    family simultaneously realizable; chart-disjoint witnesses are also
    disjoint on the closed surface."""
    _, b2, iota = closed_pair_reduce(a, b)
    cands = []
    seen = set()
    if iota == 0:
        for c in (a, b2):
            for w in c.components:
                k = H.chart.spine.canonical_closed(w)
                if k not in seen:
                    seen.add(k)
                    cands.append(CurveClass.from_walks(H.chart, [w],
                                                       _validate=False))
    else:
        real = Realization(H.chart.spine,
                           [list(a.components), list(b2.components)])
        pool.harvest_regions(real)
    for c in pool.curves():
        if c.component_count != 1:
            continue
        if c.components[0] in seen:
            continue
        if (chart_intersection_number(c, a) == 0
                and chart_intersection_number(c, b2) == 0):
            seen.add(c.components[0])
            cands.append(c)
    chosen = _grow_disjoint_family(cands, h)
    if chosen is None and iota == 0:
        # constructive completion: band sums of existing candidates give
        # curves in the same complement
        extra = _completion_candidates(H, cands, a, b2)
        chosen = _grow_disjoint_family(cands + extra, h)
    if chosen is None:
        return None
    walks = [c.components[0] for c in chosen]
    mc = CurveClass.from_walks(H.chart, walks)
    if intersection_number(mc, b) != 0:
        return None
    return mc


def _grow_disjoint_family(cands, h):
    """Backtracking search for h chart-disjoint, pairwise non-isotopic
    classes (non-isotopic on the closed surface)."""
    cands = sorted({c.canonical_key: c for c in cands}.values(),
                   key=lambda c: (c.total_weight, c.canonical_key))
    chosen = []

    def ok(c):
        for o in chosen:
            if chart_intersection_number(c, o) != 0:
                return False
            if closed_equal(c, o):
                return False
        return True

    def bt(start):
        if len(chosen) == h:
            return True
        for i in range(start, len(cands)):
            c = cands[i]
            if ok(c):
                chosen.append(c)
                if bt(i + 1):
                    return True
                chosen.pop()
        return False

    if bt(0):
        return list(chosen)
    return None


def _completion_candidates(H, cands, a, b, max_connector=4, cap=12):
    out = []
    chart = H.chart
    sp = chart.spine
    base = [c.components[0] for c in cands[:4]]
    for p in spine_paths(chart, max_connector):
        if len(out) >= cap:
            break
        for w1 in base:
            for w2 in base:
                try:
                    walk = band_sum_walk(chart, w1, w2, p)
                    if not walk:
                        continue
                    c = CurveClass.from_walks(chart, [walk])
                except ChartError:
                    continue
                if chart.is_null_homotopic(walk):
                    continue
                if (intersection_number(c, a) == 0
                        and intersection_number(c, b) == 0):
                    out.append(c)
    return out


def edge_test(H, kind, v, w, context=None):
    """Optional witness for an edge between two distinct vertices.

    DG: disjoint boundaries.  EDG: disjoint, or an essential curve
    disjoint from both.  SDG: an EDG witness or a catalog I-bundle curve
    meeting both boundaries exactly twice.  EDG_h: an h-component
    multicurve disjoint from both.  DG_ns additionally requires both
    discs non-separating.
    """
    context = context or {}
    pool = context.get("pool")
    if pool is None:
        pool = CurvePool(H)
        context["pool"] = pool
    if kind.tag == "CG":
        ca, cb = v, w
        if ca.canonical_key == cb.canonical_key:
            raise GraphError("edge test needs distinct vertices")
        if intersection_number(ca, cb) == 0:
            return Witness("disjoint")
        return None
    a, b = v.boundary, w.boundary
    if a.canonical_key == b.canonical_key:
        raise GraphError("edge test needs distinct vertices")
    disjoint = (intersection_number(a, b) == 0)
    if kind.tag in ("DG", "DG_ns"):
        if kind.tag == "DG_ns" and (v.separating or w.separating):
            return None
        return Witness("disjoint") if disjoint else None
    if kind.tag == "EDG":
        c = common_disjoint_curve(H, a, b, pool)
        return Witness("common_curve", curve=c) if c is not None else None
    if kind.tag == "EDG_h":
        mc = disjoint_multicurve(H, a, b, kind.h, pool)
        return (Witness("common_multicurve", multicurve=mc)
                if mc is not None else None)
    if kind.tag == "SDG":
        c = common_disjoint_curve(H, a, b, pool)
        if c is not None:
            return Witness("common_curve", curve=c)
        for wit in context.get("catalog", ()):
            if (intersection_number(wit.boundary_curve, a) == 2
                    and intersection_number(wit.boundary_curve, b) == 2):
                return Witness("ibundle", curve=wit.boundary_curve,
                               catalog_id=wit.catalog_id)
        return None
    if kind.tag in ("EDG_X", "SDG_beta"):
        sub = context.get("subsurface")
        if sub is None:
            raise GraphError("relative kinds need a subsurface context")
        return sub.relative_edge_test(H, kind, v, w, pool,
                                      context.get("catalog", ()))
    raise GraphError("unhandled kind %r" % kind.tag)


def revalidate_witness(H, kind, v, w, witness, context=None):
    if kind.tag == "CG":
        return intersection_number(v, w) == 0
    a, b = v.boundary, w.boundary
    if witness.kind == "disjoint":
        return intersection_number(a, b) == 0
    if witness.kind == "common_curve":
        c = witness.curve
        return (intersection_number(c, a) == 0
                and intersection_number(c, b) == 0)
    if witness.kind == "common_multicurve":
        mc = witness.multicurve
        return (mc.component_count >= (kind.h or 1)
                and intersection_number(mc, a) == 0
                and intersection_number(mc, b) == 0)
    if witness.kind == "ibundle":
        c = witness.curve
        return (intersection_number(c, a) == 2
                and intersection_number(c, b) == 2)
    return False


# -- finite graphs -------------------------------------------------------------


class FiniteGraph:
    def __init__(self, kind, center_key, radius, complete=True):
        self.kind = kind
        self.center = center_key
        self.radius = radius
        self.complete = complete
        self.vertices = {}        # key -> Disc or CurveClass
        self.adj = {}             # key -> {key: Witness}

    def add_vertex(self, key, obj):
        if key not in self.vertices:
            self.vertices[key] = obj
            self.adj[key] = {}

    def add_edge(self, k1, k2, witness):
        self.adj[k1][k2] = witness
        self.adj[k2][k1] = witness

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return sum(len(v) for v in self.adj.values()) // 2

    def distance(self, k1, k2):
        """BFS edge-count distance; None when unreachable."""
        if k1 not in self.vertices or k2 not in self.vertices:
            raise GraphError("vertex not in graph")
        if k1 == k2:
            return 0
        dist = {k1: 0}
        frontier = [k1]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        if v == k2:
                            return dist[v]
                        nxt.append(v)
            frontier = nxt
        return None

    def distances_from(self, k):
        dist = {k: 0}
        frontier = [k]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist

    @property
    def safe_radius(self):
        """Distances between vertices within this radius of the center
        are true graph distances when the ball is complete."""
        return self.radius // 2 if self.complete else 0

    def to_json(self):
        edges = []
        for k1 in sorted(self.adj):
            for k2 in sorted(self.adj[k1]):
                if k1 < k2:
                    edges.append({"u": k1, "v": k2,
                                  "witness": self.adj[k1][k2].to_json()})
        return {
            "version": 1,
            "kind": self.kind.label(),
            "center": self.center,
            "radius": self.radius,
            "complete": self.complete,
            "vertices": [self._vertex_json(k)
                         for k in sorted(self.vertices)],
            "edges": edges,
        }

    def _vertex_json(self, k):
        obj = self.vertices[k]
        if isinstance(obj, Disc):
            return obj.to_json()
        return obj.to_json()

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=None,
                          separators=(",", ":"))


@dataclass
class BallBudget:
    max_vertices: int = 120
    max_weight: int = 260
    orbit_word_len: int = 2
    orbit_powers: tuple = (-1, 1)
    surgery_pairs_per_round: int = 400


def build_ball(H, kind, center, radius, budget=None, context=None):
    """Breadth-first ball of a disc graph.

    Candidate neighbours come from simple surgeries between current
    vertices, the twist orbit of the center under words of meridian
    twists, and catalog fiber discs present in the context.  Edges among
    all stored vertices are tested so the induced subgraph is complete.
    """
    budget = budget or BallBudget()
    context = dict(context or {})
    pool = context.setdefault("pool", CurvePool(H))
    complete = True

    if kind.tag == "CG":
        return _build_curve_ball(H, kind, center, radius, budget, context)

    center_disc = center if isinstance(center, Disc) else H.disc(center)
    universe = {center_disc.key: center_disc}
    for d in context.get("extra_discs", ()):
        universe.setdefault(d.key, d)
    candidates = _vertex_candidates(H, center_disc, budget, pool, context)
    for d in candidates:
        if len(universe) >= budget.max_vertices:
            complete = False
            break
        if d.boundary.total_weight <= budget.max_weight:
            universe.setdefault(d.key, d)

    g = FiniteGraph(kind, center_disc.key, radius, complete)
    keys = sorted(universe)
    for k in keys:
        g.add_vertex(k, universe[k])
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            wit = edge_test(H, kind, universe[k1], universe[k2], context)
            if wit is not None:
                g.add_edge(k1, k2, wit)
    _prune_to_radius(g, center_disc.key, radius)
    return g


def _prune_to_radius(g, center_key, radius):
    dist = g.distances_from(center_key)
    drop = [k for k in list(g.vertices)
            if dist.get(k, radius + 1) > radius]
    for k in drop:
        for other in list(g.adj[k]):
            del g.adj[other][k]
        del g.adj[k]
        del g.vertices[k]


def _vertex_candidates(H, center, budget, pool, context):
    """Deterministic candidate disc set around a center."""
    out = {}
    seeds = H.seed_discs()
    for d in seeds:
        out.setdefault(d.key, d)
    for wit in context.get("catalog", ()):
        for fd in wit.fiber_discs():
            out.setdefault(fd.key, fd)
    # twist orbit of the center and seeds under meridian twists
    twisters = [d.boundary for d in seeds]
    sources = [center] + list(out.values())
    orbit = _twist_orbit(H, sources, twisters, budget)
    for d in orbit:
        out.setdefault(d.key, d)
    # one round of surgeries between intersecting candidates
    cands = sorted(out.values(), key=lambda d: (d.boundary.total_weight,
                                                d.key))
    pairs = 0
    for i in range(len(cands)):
        for j in range(len(cands)):
            if i == j:
                continue
            a, b = cands[i], cands[j]
            if pairs >= budget.surgery_pairs_per_round:
                break
            if intersection_number(a.boundary, b.boundary) == 0:
                continue
            pairs += 1
            try:
                arcs, _ = outer_arcs(H, a, b)
            except HandlebodyError:
                continue
            for arc in arcs:
                if not arc.certified:
                    continue
                for q in (arc.q1, arc.q2):
                    if q.boundary.total_weight <= budget.max_weight:
                        out.setdefault(q.key, q)
    out.pop(center.key, None)
    return sorted(out.values(), key=lambda d: (d.boundary.total_weight,
                                               d.key))


def _twist_orbit(H, sources, twisters, budget):
    frontier = [d.boundary for d in sources]
    seen = {c.canonical_key for c in frontier}
    out = []
    for _ in range(budget.orbit_word_len):
        nxt = []
        for c in frontier:
            for t in twisters:
                if chart_intersection_number(t, c) == 0:
                    continue
                for p in budget.orbit_powers:
                    c2 = dehn_twist(c, t, p)
                    if c2.canonical_key in seen:
                        continue
                    seen.add(c2.canonical_key)
                    if c2.total_weight <= budget.max_weight:
                        nxt.append(c2)
        out.extend(nxt)
        frontier = nxt
    discs = []
    for c in out:
        if H.is_meridian_curve(c):
            discs.append(H.disc(c, {"kind": "orbit"}))
    return discs


def _build_curve_ball(H, kind, center, radius, budget, context):
    pool = context["pool"]
    universe = {center.canonical_key: center}
    for c in pool.curves():
        if c.component_count != 1:
            continue
        if len(universe) >= budget.max_vertices:
            break
        if c.total_weight <= budget.max_weight:
            universe.setdefault(c.canonical_key, c)
    extra = context.get("extra_curves", ())
    for c in extra:
        if len(universe) < budget.max_vertices:
            universe.setdefault(c.canonical_key, c)
    g = FiniteGraph(kind, center.canonical_key, radius,
                    len(universe) < budget.max_vertices)
    keys = sorted(universe)
    for k in keys:
        g.add_vertex(k, universe[k])
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            if intersection_number(universe[k1], universe[k2]) == 0:
                g.add_edge(k1, k2, Witness("disjoint"))
    _prune_to_radius(g, center.canonical_key, radius)
    return g


# -- non-separating rerouting --------------------------------------------------


def nonsep_reroute(H, g, path_keys):
    """Replace separating interior discs of a disc-graph geodesic by
    non-separating ones disjoint from both neighbours.

    Follows the replacement rule: endpoints must be non-separating, and
    any odd-position separating disc has a non-separating substitute
    disjoint from its neighbours; the substitute is searched inside the
    stored ball, so an incomplete ball may fail with a notice.
    """
    discs = [g.vertices[k] for k in path_keys]
    if discs[0].separating or discs[-1].separating:
        raise GraphError("endpoints must be non-separating")
    out = list(discs)
    for i in range(1, len(out) - 1):
        if not out[i].separating:
            continue
        prev_b = out[i - 1].boundary
        nxt_b = out[i + 1].boundary
        candidates = sorted(
            (d for d in g.vertices.values()
             if isinstance(d, Disc) and not d.separating),
            key=lambda d: (d.boundary.total_weight, d.key))
        repl = None
        for d in candidates:
            if (intersection_number(d.boundary, prev_b) == 0
                    and intersection_number(d.boundary, nxt_b) == 0):
                repl = d
                break
        if repl is None:
            raise GraphError("replacement disc outside the stored ball")
        out[i] = repl
    return out
