"""Electrifications of metric graphs: cone vertices over subgraph
families, efficient paths, wide points, enlargements, penetration
probes, and exact hyperbolicity measurements.

Everything here works on abstract unit-edge graphs, so the synthetic
instances and the disc-graph balls go through the same machinery.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class ElectrifyError(ValueError):
    pass


class MetricGraph:
    """Connected graph with unit-length edges and a memoized BFS
    distance oracle."""

    def __init__(self, vertices, edges):
        self.vertices = sorted(set(vertices), key=repr)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.adj = {v: set() for v in self.vertices}
        for u, v in edges:
            if u == v:
                continue
            self.adj[u].add(v)
            self.adj[v].add(u)
        self._dist_cache = {}

    @property
    def n(self):
        return len(self.vertices)

    def neighbors(self, v):
        return self.adj[v]

    def distances_from(self, src):
        if src in self._dist_cache:
            return self._dist_cache[src]
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        self._dist_cache[src] = dist
        return dist

    def distance(self, u, v):
        d = self.distances_from(u).get(v)
        if d is None:
            raise ElectrifyError("vertices in different components")
        return d

    def geodesic(self, u, v):
        """Lexicographically least geodesic from u to v."""
        dist = self.distances_from(v)
        if u not in dist:
            raise ElectrifyError("unreachable")
        path = [u]
        cur = u
        while cur != v:
            cur = min((w for w in self.adj[cur]
                       if dist.get(w, -1) == dist[cur] - 1), key=repr)
            path.append(cur)
        return path

    def all_geodesics(self, u, v, cap=200):
        dist = self.distances_from(v)
        out = []

        def walk(path):
            if len(out) >= cap:
                return
            cur = path[-1]
            if cur == v:
                out.append(list(path))
                return
            for w in sorted(self.adj[cur], key=repr):
                if dist.get(w, -1) == dist[cur] - 1:
                    path.append(w)
                    walk(path)
                    path.pop()

        walk([u])
        return out

    def is_connected(self):
        if not self.vertices:
            return False
        return len(self.distances_from(self.vertices[0])) == self.n

    def to_json(self):
        return {"version": 1,
                "vertices": [str(v) for v in self.vertices],
                "edges": sorted([sorted((str(u), str(v)))
                                 for u in self.adj for v in self.adj[u]
                                 if str(u) < str(v)])}


@dataclass
class SubgraphFamily:
    """Named complete connected subgraphs given by vertex sets."""

    members: dict

    def validate(self, g):
        for cid, verts in self.members.items():
            verts = set(verts)
            if not verts:
                raise ElectrifyError("empty member %r" % (cid,))
            sub = induced_subgraph(g, verts)
            if not sub.is_connected():
                raise ElectrifyError("member %r not connected" % (cid,))

    def to_json(self):
        return {"families": [{"id": str(cid),
                              "member_keys": sorted(str(v) for v in verts)}
                             for cid, verts in sorted(self.members.items(),
                                                      key=lambda kv: str(kv[0]))]}


def induced_subgraph(g, verts):
    verts = set(verts)
    edges = [(u, v) for u in verts for v in g.adj[u] if v in verts]
    return MetricGraph(verts, edges)


class Electrification:
    """The base graph with one cone vertex per family member, joined to
    every vertex of that member by a unit edge."""

    def __init__(self, base, family):
        family.validate(base)
        self.base = base
        self.family = family
        self.cone = {cid: ("cone", cid) for cid in family.members}
        verts = list(base.vertices) + list(self.cone.values())
        edges = [(u, v) for u in base.vertices for v in base.adj[u]]
        for cid, verts_c in family.members.items():
            for v in verts_c:
                edges.append((self.cone[cid], v))
        self.graph = MetricGraph(verts, edges)
        self.member_graphs = {cid: induced_subgraph(base, verts_c)
                              for cid, verts_c in family.members.items()}

    def distance(self, u, v):
        return self.graph.distance(u, v)

    def is_cone(self, v):
        return isinstance(v, tuple) and len(v) == 2 and v[0] == "cone"

    def member_of_cone(self, v):
        return v[1]

    def is_efficient(self, path):
        seen = {}
        for v in path:
            if self.is_cone(v):
                cid = self.member_of_cone(v)
                seen[cid] = seen.get(cid, 0) + 1
                if seen[cid] > 1:
                    return False
        return True


def electrify(base, family):
    return Electrification(base, family)


def family_r_bound(base, family):
    """Largest intrinsic diameter of a pairwise intersection; 0 for
    empty or singleton intersections, None when some intersection is
    disconnected (unbounded within the stored graph)."""
    cids = sorted(family.members, key=str)
    r = 0
    for i in range(len(cids)):
        for j in range(i + 1, len(cids)):
            inter = set(family.members[cids[i]]) & set(family.members[cids[j]])
            if len(inter) <= 1:
                continue
            # intrinsic diameter inside each member graph
            for cid in (cids[i], cids[j]):
                sub = induced_subgraph(base, family.members[cid])
                for u in inter:
                    dd = sub.distances_from(u)
                    for v in inter:
                        if v not in dd:
                            return None
                        r = max(r, dd[v])
    return r


def wide_points(elec, path, R):
    """Cone transits whose entry and exit are at intrinsic distance at
    least R in the member subgraph."""
    if not elec.is_efficient(path):
        raise ElectrifyError("path is not efficient")
    out = []
    for k in range(1, len(path) - 1):
        v = path[k]
        if not elec.is_cone(v):
            continue
        cid = elec.member_of_cone(v)
        sub = elec.member_graphs[cid]
        d = sub.distance(path[k - 1], path[k + 1])
        if d >= R:
            out.append((k, cid))
    return out


def enlarge(elec, path):
    """Replace every cone transit by the lexicographically least
    intrinsic geodesic in the member subgraph."""
    if not path:
        return []
    if elec.is_cone(path[0]) or elec.is_cone(path[-1]):
        raise ElectrifyError("endpoints must lie in the base graph")
    out = [path[0]]
    k = 1
    while k < len(path):
        v = path[k]
        if not elec.is_cone(v):
            out.append(v)
            k += 1
            continue
        cid = elec.member_of_cone(v)
        sub = elec.member_graphs[cid]
        seg = sub.geodesic(path[k - 1], path[k + 1])
        out.extend(seg[1:])
        k += 2
    return out


def quasi_geodesic_holds(path, metric, L):
    """Both quasi-isometric-embedding inequalities at constant L, for
    all parameter pairs: |i-j|/L - L <= d <= L|i-j| + L."""
    n = len(path)
    L = Fraction(L).limit_denominator(1000)
    for i in range(n):
        for j in range(i + 1, n):
            d = metric(path[i], path[j])
            t = j - i
            if d > L * t + L:
                return False
            if Fraction(t, 1) / L - L > d:
                return False
    return True


def path_quality(path, metric, resolution=Fraction(1, 4), cap=64):
    """Smallest L on the resolution grid with the L-quasi-geodesic
    property for all index pairs."""
    L = Fraction(1)
    while L <= cap:
        if quasi_geodesic_holds(path, metric, L):
            return float(L)
        L += resolution
    raise ElectrifyError("path quality exceeds the cap")


def delta_four_point(g, sample_cap=None, rng=None):
    """Exact four-point hyperbolicity constant (half-integers).

    Maximal defect of the Gromov product inequality over vertex
    4-tuples, computed with doubled integer arithmetic; optionally over
    a random sample of tuples for large graphs.
    """
    verts = g.vertices
    n = len(verts)
    if n == 0:
        raise ElectrifyError("empty graph")
    if not g.is_connected():
        raise ElectrifyError("graph is disconnected")
    D = np.zeros((n, n), dtype=np.int64)
    for i, v in enumerate(verts):
        dd = g.distances_from(v)
        for j, w in enumerate(verts):
            D[i, j] = dd[w]
    if sample_cap is not None and n ** 4 > sample_cap:
        rng = rng or random.Random(0)
        best = 0
        for _ in range(sample_cap):
            i, j, k, l = (rng.randrange(n) for _ in range(4))
            s = sorted([D[i, j] + D[k, l], D[i, k] + D[j, l],
                        D[i, l] + D[j, k]])
            best = max(best, s[2] - s[1])
        return best / 2.0
    best = 0
    # vectorized over (k, l) for each (i, j)
    for i in range(n):
        Di = D[i]
        for j in range(i, n):
            s1 = D[i, j] + D          # D[i,j] + D[k,l]
            s2 = Di[:, None] + D[j][None, :]   # D[i,k] + D[j,l]
            s3 = Di[None, :] + D[j][:, None]   # D[i,l] + D[j,k]
            stacked = np.stack([s1, s2, s3])
            stacked.sort(axis=0)
            defect = (stacked[2] - stacked[1]).max()
            best = max(best, int(defect))
    return best / 2.0


def delta_thin_oracle(g, cap_paths=64):
    """Brute-force triangle slimness: over all vertex triples and all
    geodesic triangles, the least delta such that each side lies in the
    delta-neighbourhood of the union of the others.  Exponential; only
    for small graphs."""
    verts = g.vertices
    best = 0
    for x, y, z in itertools.combinations(verts, 3):
        gxy = g.all_geodesics(x, y, cap_paths)
        gyz = g.all_geodesics(y, z, cap_paths)
        gzx = g.all_geodesics(z, x, cap_paths)
        tri_best = None
        for a in gxy:
            for b in gyz:
                for c in gzx:
                    slim = _slimness(g, a, b, c)
                    if tri_best is None or slim < tri_best:
                        tri_best = slim
        best = max(best, tri_best)
    return best


def _slimness(g, a, b, c):
    worst = 0
    for side, others in ((a, b + c), (b, c + a), (c, a + b)):
        for v in side:
            dmin = min(g.distance(v, w) for w in others)
            worst = max(worst, dmin)
    return worst


# -- quasi-geodesic sampling and the penetration probe ------------------------


def sample_efficient_quasigeodesics(elec, u, v, rng, detours=2, cap=40):
    """Efficient quasi-geodesic sample between two base vertices:
    all geodesics (capped), plus detour injections that reroute through
    neighbours of geodesic vertices."""
    out = []
    geos = elec.graph.all_geodesics(u, v, cap=cap)
    out.extend(g for g in geos if elec.is_efficient(g))
    base_geo = out[0] if out else None
    for _ in range(detours * 4):
        if base_geo is None or len(out) >= cap * 2:
            break
        g0 = list(rng.choice(out[:cap]))
        k = rng.randrange(1, max(2, len(g0) - 1))
        mid = g0[k]
        nbrs = sorted(elec.graph.adj[mid], key=repr)
        if not nbrs:
            continue
        w = rng.choice(nbrs)
        if w in g0 or elec.is_cone(w) and not elec.is_efficient(
                g0[:k + 1] + [w] + g0[k:]):
            continue
        cand = g0[:k + 1] + [w] + g0[k:]
        if elec.is_efficient(cand):
            out.append(cand)
    return out


@dataclass
class PenetrationReport:
    L: float
    p_empirical: int
    r_bound: int | None
    violations: list          # (width, missed, entry_exit_need, detail)
    pairs_checked: int
    paths_checked: int

    def counterexample_at(self, p):
        """A violating pair of paths at threshold p: a p-wide transit of
        one path missed by the other, or visited with entry/exit points
        further than p apart."""
        for width, missed, need, detail in self.violations:
            if width >= p and (missed or need > p):
                return detail
        return None

    def holds_at(self, p):
        return self.counterexample_at(p) is None


def penetration_probe(elec, L, sample_pairs, rng=None, r_bound=None):
    """Empirical bounded-penetration threshold.

    For sampled endpoint pairs and sampled efficient L-quasi-geodesics,
    a member penetrated widely by one path must be visited by every
    other with entry and exit points close in the member; the report
    carries every observed violation triple, and p_empirical is the
    least threshold at which none remains.
    """
    rng = rng or random.Random(0)
    violations = []
    pairs = 0
    paths = 0
    for (u, v) in sample_pairs:
        fam = sample_efficient_quasigeodesics(elec, u, v, rng)
        quality = [p for p in fam if _quality_at_most(elec, p, L)]
        if len(quality) < 2:
            continue
        pairs += 1
        paths += len(quality)
        transits = []
        for p in quality:
            t = {}
            for k in range(1, len(p) - 1):
                if elec.is_cone(p[k]):
                    cid = elec.member_of_cone(p[k])
                    sub = elec.member_graphs[cid]
                    width = sub.distance(p[k - 1], p[k + 1])
                    t[cid] = (k, width)
            transits.append(t)
        for i, p1 in enumerate(quality):
            for j, p2 in enumerate(quality):
                if i == j:
                    continue
                for cid, (k, width) in transits[i].items():
                    if cid not in transits[j]:
                        violations.append(
                            (width, True, None, (p1, p2, cid)))
                        continue
                    k2, _ = transits[j][cid]
                    sub = elec.member_graphs[cid]
                    d_in = sub.distance(p1[k - 1], p2[k2 - 1])
                    d_out = sub.distance(p1[k + 1], p2[k2 + 1])
                    need = max(d_in, d_out)
                    if need > 0:
                        violations.append(
                            (width, False, need, (p1, p2, cid)))
    p_emp = 0
    while any(w >= p_emp and (missed or need > p_emp)
              for w, missed, need, _ in violations):
        p_emp += 1
    return PenetrationReport(L, p_emp, r_bound, violations, pairs, paths)


def _quality_at_most(elec, path, L):
    n = len(path)
    for i in range(n):
        for j in range(i + 1, n):
            d = elec.graph.distance(path[i], path[j])
            t = j - i
            if t > L * d + L or d > L * t + L:
                return False
    return True


def find_counterexample_family(elec, L, sample_pairs, p_threshold, rng=None):
    """Search for a violation at a fixed threshold: a wide transit of
    one path missed (or entered far away) by another."""
    rng = rng or random.Random(0)
    for (u, v) in sample_pairs:
        fam = sample_efficient_quasigeodesics(elec, u, v, rng)
        quality = [p for p in fam if _quality_at_most(elec, p, L)]
        for i, p1 in enumerate(quality):
            wides = {}
            for k in range(1, len(p1) - 1):
                if elec.is_cone(p1[k]):
                    cid = elec.member_of_cone(p1[k])
                    sub = elec.member_graphs[cid]
                    if sub.distance(p1[k - 1], p1[k + 1]) >= p_threshold:
                        wides[cid] = k
            if not wides:
                continue
            for j, p2 in enumerate(quality):
                if i == j:
                    continue
                visited = {elec.member_of_cone(x) for x in p2
                           if elec.is_cone(x)}
                for cid, k in wides.items():
                    if cid not in visited:
                        return (p1, p2, cid)
    return None


# -- synthetic instances -------------------------------------------------------


@dataclass
class SyntheticInstance:
    name: str
    base: MetricGraph
    family: SubgraphFamily
    why: dict = field(default_factory=dict)

    def electrification(self):
        return Electrification(self.base, self.family)


def caterpillar_instance(spine_len, leg_every=2, member_len=3, name=None):
    """Caterpillar tree with path members along the spine.

    Hypotheses hold by construction: members are paths (0-hyperbolic),
    the electrification of a tree is hyperbolic, and distinct members
    overlap in at most one vertex (r = 0), giving bounded penetration.
    """
    verts = ["s%d" % i for i in range(spine_len)]
    edges = [("s%d" % i, "s%d" % (i + 1)) for i in range(spine_len - 1)]
    for i in range(0, spine_len, leg_every):
        verts.append("l%d" % i)
        edges.append(("s%d" % i, "l%d" % i))
    base = MetricGraph(verts, edges)
    members = {}
    k = 0
    for start in range(0, spine_len - member_len, member_len):
        members["m%d" % k] = ["s%d" % j
                              for j in range(start, start + member_len + 1)]
        k += 1
    fam = SubgraphFamily(members)
    return SyntheticInstance(
        name or "caterpillar-%d" % spine_len, base, fam,
        why={"members_hyperbolic": "paths are trees, delta = 0",
             "electrification_hyperbolic": "coning a tree keeps delta small",
             "bounded_penetration": "members overlap in <= 1 vertex, r = 0"})


def cycle_chords_instance(n, chord_step, member_len=3, name=None):
    """Cycle with chords; members are arcs of the cycle."""
    verts = ["c%d" % i for i in range(n)]
    edges = [("c%d" % i, "c%d" % ((i + 1) % n)) for i in range(n)]
    for i in range(0, n, chord_step):
        edges.append(("c%d" % i, "c%d" % ((i + n // 2) % n)))
    base = MetricGraph(verts, edges)
    members = {}
    k = 0
    for start in range(0, n, member_len + 1):
        members["m%d" % k] = ["c%d" % ((start + j) % n)
                              for j in range(member_len + 1)]
        k += 1
    fam = SubgraphFamily(members)
    return SyntheticInstance(
        name or "cycle-%d-%d" % (n, chord_step), base, fam,
        why={"members_hyperbolic": "arcs are paths, delta = 0",
             "electrification_hyperbolic":
                 "chords plus cones give bounded diameter",
             "bounded_penetration": "members overlap in <= 1 vertex"})


def two_level_instance(branch, depth, name=None):
    """Tree with members being root-to-leaf path segments; a two-level
    cone construction."""
    verts = ["r"]
    edges = []
    members = {}
    for b in range(branch):
        prev = "r"
        chain = ["r"]
        for d in range(depth):
            v = "b%d_%d" % (b, d)
            verts.append(v)
            edges.append((prev, v))
            chain.append(v)
            prev = v
        members["m%d" % b] = chain
    base = MetricGraph(verts, edges)
    fam = SubgraphFamily(members)
    return SyntheticInstance(
        name or "twolevel-%d-%d" % (branch, depth), base, fam,
        why={"members_hyperbolic": "paths, delta = 0",
             "electrification_hyperbolic": "star of cones over a tree",
             "bounded_penetration": "members meet only at the root"})


def broken_family_instance(n=8, name=None):
    """Negative control: two members with a long common overlap, so the
    family is not r-bounded for small r and wide transits of one member
    can be bypassed through the other."""
    verts = ["v%d" % i for i in range(n)]
    edges = [("v%d" % i, "v%d" % (i + 1)) for i in range(n - 1)]
    base = MetricGraph(verts, edges)
    members = {"A": ["v%d" % i for i in range(n)],
               "B": ["v%d" % i for i in range(n)]}
    fam = SubgraphFamily(members)
    return SyntheticInstance(
        name or "broken-overlap", base, fam,
        why={"broken": "two members share the whole path; diam overlap = n-1"})


def synthetic_suite(count=20, seed=0):
    """Deterministic suite of instances whose hypotheses hold by
    construction, plus none of the negative controls."""
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        kind = i % 3
        if kind == 0:
            out.append(caterpillar_instance(6 + (i % 5) * 2,
                                            leg_every=2 + i % 2,
                                            member_len=2 + i % 3,
                                            name="cat-%d" % i))
        elif kind == 1:
            out.append(cycle_chords_instance(8 + (i % 4) * 2,
                                             chord_step=3 + i % 3,
                                             member_len=2 + i % 2,
                                             name="cyc-%d" % i))
        else:
            out.append(two_level_instance(2 + i % 3, 2 + i % 3,
                                          name="two-%d" % i))
        i += 1
    return out
