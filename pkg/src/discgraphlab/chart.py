"""Fixed combinatorial charts for closed oriented surfaces and exact
curve algebra on them.

The genus-g chart is the one-vertex triangulation obtained from the
standard 4g-gon by the fan of diagonals from one corner: 6g-3 edges,
4g-2 triangles.  Curves are reduced cyclic walks on the dual spine, with
normal coordinates (edge traversal counts) as the canonical encoding.
Fundamental group words are read from labels on the 2g dual edges not in
the diagonal spanning tree.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import words
from .spine import Spine
from .overlay import Realization


class ChartError(ValueError):
    pass


class ChartMismatch(ChartError):
    pass


class Chart:
    """Genus-g one-vertex triangulation with its dual spine.

    Edge order: class edges a_1, b_1, ..., a_g, b_g (indices 0..2g-1),
    then fan diagonals d_2..d_{4g-2} (indices 2g..6g-4).  Labels: alpha_i
    is the letter i, beta_i the letter g+i (1-based).
    """

    def __init__(self, genus):
        if genus < 2:
            raise ChartError("genus must be at least 2")
        self.genus = genus
        g = genus
        self.n_edges = 6 * g - 3
        self.n_triangles = 4 * g - 2
        self._build_spine()
        self.chart_id = "fan-%d" % g
        self.labels = {}
        for i in range(g):
            self.labels[2 * (2 * i)] = i + 1          # alpha_{i+1} on a-edge
            self.labels[2 * (2 * i + 1)] = g + i + 1  # beta_{i+1} on b-edge
        self.relator = self._vertex_link_word()
        self._curve_cache = {}
        self._closed_iota_cache = {}

    def _side_triangle(self, k):
        """Triangle (spine node) containing polygon side s_k."""
        g = self.genus
        if k <= 1:
            return 0
        if k >= 4 * g - 2:
            return 4 * g - 3
        return k - 1

    def _build_spine(self):
        g = self.genus
        n_nodes = 4 * g - 2
        # edge ids: a_i -> 2i, b_i -> 2i+1 (i = 0..g-1); d_j -> 2g + (j-2)
        self.edge_names = []
        for i in range(g):
            self.edge_names += ["a%d" % (i + 1), "b%d" % (i + 1)]
        for j in range(2, 4 * g - 1):
            self.edge_names.append("d%d" % j)

        def class_edge(k):
            """Edge id and dart end for polygon side s_k."""
            i, r = divmod(k, 4)
            if r in (0, 2):
                return 2 * i, 0 if r == 0 else 1
            return 2 * i + 1, 0 if r == 1 else 1

        def diag_edge(j):
            return 2 * g + (j - 2)

        # rotation lists per node, in triangle boundary order
        rot = [[] for _ in range(n_nodes)]
        # triangle T_1 = (s_0, s_1, d_2)
        e0, end0 = class_edge(0)
        e1, end1 = class_edge(1)
        rot[0] = [2 * e0 + end0, 2 * e1 + end1, 2 * diag_edge(2)]
        # T_j = (d_j, s_j, d_{j+1}) for 2 <= j <= 4g-3
        for j in range(2, 4 * g - 2):
            ej, endj = class_edge(j)
            rot[j - 1] = [2 * diag_edge(j) + 1, 2 * ej + endj,
                          2 * diag_edge(j + 1)]
        # T_{4g-2} = (d_{4g-2}, s_{4g-2}, s_{4g-1})
        ea, enda = class_edge(4 * g - 2)
        eb, endb = class_edge(4 * g - 1)
        rot[4 * g - 3] = [2 * diag_edge(4 * g - 2) + 1,
                          2 * ea + enda, 2 * eb + endb]
        faces_expected = 1
        sp = Spine(rot, capped_faces=())
        if len(sp.faces) != faces_expected:
            raise AssertionError("chart gluing produced %d vertices"
                                 % len(sp.faces))
        self.spine = Spine(rot, capped_faces=(0,))
        if self.spine.genus != self.genus or self.spine.n_boundary != 0:
            raise AssertionError("chart surface has wrong topology")

    def _vertex_link_word(self):
        face = self.spine.faces[0]
        return words.canonical_cyclic(
            self.spine.walk_labels(face, self.labels), oriented=True)

    # -- standard curves --------------------------------------------------

    def _partner_chord_walk(self, p):
        """Closed walk of the chord joining the two copies of the side
        class of s_p (p = 4i or 4i+1): crosses the fan diagonals between
        them, then the class edge once."""
        g = self.genus
        q = p + 2
        t_from = self._side_triangle(p)
        t_to = self._side_triangle(q)
        walk = []
        for j in range(max(p, 1) + 1, min(q, 4 * g - 2) + 1):
            e = 2 * g + (j - 2)
            # frame dart of a diagonal departs the closing triangle T_{j-1}
            walk.append(2 * e)
        i, r = divmod(p, 4)
        e_class = 2 * i if r == 0 else 2 * i + 1
        # depart t_to through the class edge (its mate end lives there)
        walk.append(2 * e_class + 1)
        w = tuple(walk)
        if not self.spine.is_closed_walk(w):
            raise AssertionError("chord walk is not closed")
        return self.spine.reduce_cyclic(w)

    def meridian_walk(self, i):
        """Cut-system meridian m_{i+1}: reads alpha_{i+1}."""
        return self._partner_chord_walk(4 * i)

    def dual_walk(self, i):
        """Dual curve b_{i+1}: reads beta_{i+1}, meets m_{i+1} once."""
        return self._partner_chord_walk(4 * i + 1)

    def curve(self, name):
        """Standard chart curves: m1..mg, b1..bg, sep (the separating
        curve cutting off the first handle)."""
        if name in self._curve_cache:
            return self._curve_cache[name]
        g = self.genus
        if name.startswith("m"):
            w = self.meridian_walk(int(name[1:]) - 1)
            c = CurveClass.from_walks(self, [w])
        elif name.startswith("b"):
            w = self.dual_walk(int(name[1:]) - 1)
            c = CurveClass.from_walks(self, [w])
        elif name == "sep":
            m = self.meridian_walk(0)
            b = self.dual_walk(0)
            comm = self.spine.reduce_cyclic(
                m + b + self.spine.reverse_walk(m) + self.spine.reverse_walk(b))
            c = CurveClass.from_walks(self, [comm])
        else:
            raise ChartError("unknown standard curve %r" % name)
        self._curve_cache[name] = c
        return c

    # -- word-level helpers -------------------------------------------------

    def walk_word(self, walk):
        """Word in pi_1 of the surface (2g generators, one relation) read
        by a closed walk; deterministic for a fixed chart."""
        return self.spine.walk_labels(walk, self.labels)

    def is_null_homotopic(self, walk):
        w = self.walk_word(walk)
        return words.is_trivial_in_quotient(w, self.relator)

    def homology_of_walks(self, walks):
        vec = [0] * (2 * self.genus)
        for w in walks:
            for letter in self.walk_word(w):
                vec[abs(letter) - 1] += 1 if letter > 0 else -1
        return tuple(vec)


@dataclass(frozen=True)
class CurveClass:
    """Isotopy class (relative to the chart vertex) of an essential
    simple closed multicurve, encoded by normal coordinates."""

    chart: Chart = field(compare=False, repr=False)
    components: tuple          # canonical reduced cyclic walks, sorted
    weights: tuple             # traversal count per chart edge
    canonical_key: str = field(compare=True)
    homology_class: tuple = field(compare=False)

    @property
    def component_count(self):
        return len(self.components)

    @property
    def is_multicurve(self):
        return len(self.components) > 1

    @property
    def total_weight(self):
        return sum(self.weights)

    @staticmethod
    def from_walks(chart, walks, _validate=True):
        sp = chart.spine
        comps = []
        for w in walks:
            w = sp.reduce_cyclic(tuple(w))
            if not w:
                raise ChartError("null-homotopic (empty) component")
            comps.append(sp.canonical_closed(w))
        comps = tuple(sorted(comps))
        if len(set(comps)) != len(comps):
            raise ChartError("parallel components in multicurve")
        if _validate:
            for w in comps:
                if _is_proper_power(w, sp):
                    raise ChartError("component is a proper power")
                if chart.is_null_homotopic(w):
                    raise ChartError("component is inessential")
                if sp.self_crossing_number(w) != 0:
                    raise ChartError("component is not simple")
            for i in range(len(comps)):
                for j in range(i + 1, len(comps)):
                    if sp.crossing_number(comps[i], comps[j]) != 0:
                        raise ChartError("components intersect")
        weights = sp.edge_weights(comps)
        key = _weights_key(chart.chart_id, weights)
        hom = chart.homology_of_walks(comps)
        return CurveClass(chart, comps, weights, key, hom)

    @property
    def is_separating(self):
        return all(x == 0 for x in self.homology_class)

    def to_json(self):
        return {"version": 1, "chart_id": self.chart.chart_id,
                "weights": list(self.weights), "key": self.canonical_key}

    @staticmethod
    def from_json(chart, record):
        if record.get("chart_id") != chart.chart_id:
            raise ChartMismatch("record belongs to chart %r"
                                % record.get("chart_id"))
        c = curves_from_weights(chart, tuple(record["weights"]))
        if c.canonical_key != record["key"]:
            raise ChartError("stored key does not match weights")
        return c

    def __hash__(self):
        return hash(self.canonical_key)


def _weights_key(chart_id, weights):
    payload = json.dumps({"chart": chart_id, "w": list(weights)},
                         separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()


def _is_proper_power(walk, sp):
    n = len(walk)
    for p in range(1, n):
        if n % p == 0 and walk == walk[:p] * (n // p):
            return True
    return False


def require_same_chart(*curves):
    chart = curves[0].chart
    for c in curves[1:]:
        if c.chart is not chart and c.chart.chart_id != chart.chart_id:
            raise ChartMismatch("curves on different charts")
    return chart


# -- intersection numbers ---------------------------------------------------

def chart_intersection_number(a, b):
    """Minimal crossings among representatives transverse to the chart
    and avoiding its vertex (universal-cover run counting)."""
    chart = require_same_chart(a, b)
    sp = chart.spine
    total = 0
    for u in a.components:
        for w in b.components:
            if u == w:
                continue
            total += sp.crossing_number(u, w)
    return total


def intersection_number(a, b):
    """Geometric intersection number on the closed surface.

    Representatives minimal away from the chart vertex can still bound
    bigons containing it; those are removed by sliding one curve across
    the vertex until no such bigon remains.
    """
    chart = require_same_chart(a, b)
    base = chart_intersection_number(a, b)
    if base == 0:
        return 0
    key = (a.canonical_key, b.canonical_key)
    cache = chart._closed_iota_cache
    if key in cache:
        return cache[key]
    _, b2, iota = closed_pair_reduce(a, b)
    cache[key] = iota
    cache[(b.canonical_key, a.canonical_key)] = iota
    return iota


def closed_pair_reduce(a, b):
    """Slide b across the chart vertex until the pair has no bigon
    containing the vertex; returns (a, slid b, closed intersection
    number).  The slid curve is isotopic to b on the closed surface."""
    chart = require_same_chart(a, b)
    pair_cache = getattr(chart, "_closed_pair_cache", None)
    if pair_cache is None:
        pair_cache = chart._closed_pair_cache = {}
    key = (a.canonical_key, b.canonical_key)
    if key in pair_cache:
        return pair_cache[key]
    sp = chart.spine
    cur = b
    guard = 0
    while True:
        guard += 1
        if guard > 200:
            raise AssertionError("vertex bigon reduction did not terminate")
        shared = set(a.components) & set(cur.components)
        ca = [w for w in a.components if w not in shared]
        cb = [w for w in cur.components if w not in shared]
        if not ca or not cb:
            out = (a, cur, 0)
            break
        if chart_intersection_number_walks(sp, ca, cb) == 0:
            out = (a, cur, 0)
            break
        real = Realization(sp, [ca, cb])
        bigon = _find_vertex_bigon(real)
        if bigon is None:
            out = (a, cur, real.crossing_total(0, 1))
            break
        cur = _slide_across_bigon(chart, ca, cb, cur, shared, real, bigon)
    pair_cache[key] = out
    return out


def chart_intersection_number_walks(sp, ca, cb):
    total = 0
    for u in ca:
        for w in cb:
            if u != w:
                total += sp.crossing_number(u, w)
    return total


def _find_vertex_bigon(real):
    for reg in real.regions:
        if not reg.contains_v or reg.chi != 1:
            continue
        if len(reg.circuits) != 1:
            continue
        circ = reg.circuits[0]
        runs = circ.strand_runs()
        if len(runs) != 2 or len(circ.corners) != 2:
            continue
        (id1, _), (id2, _) = runs
        if id1[0] == id2[0]:
            continue  # both arcs on the same system
        return circ
    return None


def _slide_across_bigon(chart, ca, cb, cur, shared, real, circ):
    """Replace the b-side arc of the vertex bigon by a copy of the
    a-side arc, removing two crossings."""
    sp = chart.spine
    c1, c2 = circ.corners
    runs = circ.strand_runs()
    (idx, segsx), (idy, segsy) = runs
    if idx[0] == 1:
        b_id, a_id = idx, idy
    else:
        b_id, a_id = idy, idx
    comp_b = b_id[1]
    walk_b = cb[comp_b]
    comp_a = a_id[1]
    walk_a = ca[comp_a]
    evb = [ev for ev in real.events_along(1, comp_b)
           if ev["crossing"] in (c1, c2)]
    eva = [ev for ev in real.events_along(0, comp_a)
           if ev["crossing"] in (c1, c2)]
    if len(evb) != 2 or len(eva) != 2:
        raise AssertionError("bigon corners not matched on both strands")
    old = chart_intersection_number(
        CurveClass.from_walks(chart, [walk_a], _validate=False),
        CurveClass.from_walks(chart, [walk_b], _validate=False))
    candidates = []
    arcs_a = []
    for e1, e2 in ((eva[0], eva[1]), (eva[1], eva[0])):
        fwd = event_arc(walk_a, e1, e2)
        arcs_a.append(fwd)
        arcs_a.append(tuple((d ^ 1) for d in reversed(fwd)))
    for keep in (0, 1):
        ev_in, ev_out = evb[keep], evb[1 - keep]
        kept = event_arc(walk_b, ev_in, ev_out)
        for patch in arcs_a:
            raw = kept + patch
            if not raw or not sp.is_closed_walk(raw):
                continue
            cand = sp.reduce_cyclic(raw)
            if not cand:
                continue
            candidates.append(sp.canonical_closed(cand))
    valid = []
    hb = chart.homology_of_walks([walk_b])
    hb_neg = tuple(-x for x in hb)
    for cand in sorted(set(candidates)):
        if _is_proper_power(cand, sp):
            continue
        if sp.self_crossing_number(cand) != 0:
            continue
        newi = sp.crossing_number(cand, walk_a)
        if newi > old - 2:
            continue
        h = chart.homology_of_walks([cand])
        if h != hb and h != hb_neg:
            continue
        if any(sp.crossing_number(cand, w) != 0 or cand == w
               for w in cur.components if w != walk_b):
            continue
        valid.append((0 if newi == old - 2 else 1, cand))
    valid.sort()
    for _, new_walk in valid:
        comps = [new_walk if w == walk_b else w for w in cur.components]
        try:
            return CurveClass.from_walks(chart, comps)
        except ChartError:
            continue
    import os
    if os.environ.get("DGL_DEBUG_SLIDE"):
        import json
        with open("/tmp/slide_fail.json", "w") as fh:
            json.dump({"walk_a": list(walk_a), "walk_b": list(walk_b),
                       "evb": [ev["pos"] for ev in evb],
                       "eva": [ev["pos"] for ev in eva],
                       "old": old}, fh)
    raise AssertionError("no valid slide across the vertex bigon")


def _cyclic_subwalk(walk, i_from, i_to):
    n = len(walk)
    out = []
    j = (i_from + 1) % n
    steps = (i_to - i_from) % n
    for _ in range(steps):
        out.append(walk[j])
        j = (j + 1) % n
    return tuple(out)


def event_arc(walk, ev_from, ev_to):
    """Darts traversed between two crossing events in forward order.

    Events on the same chord are ordered by their parameter along it: the
    direct hop carries no darts, while the wrap goes all the way around.
    """
    p1, p2 = ev_from["pos"], ev_to["pos"]
    if p1 != p2:
        return _cyclic_subwalk(walk, p1, p2)
    if ev_from["t"] < ev_to["t"]:
        return ()
    return walk[(p1 + 1) % len(walk):] + walk[:(p1 + 1) % len(walk)]


def closed_equal(a, b):
    """Isotopy on the closed surface: equal chart classes, or chart
    classes differing by slides across the vertex."""
    require_same_chart(a, b)
    if a.canonical_key == b.canonical_key:
        return True
    if a.component_count != b.component_count:
        return False
    if a.homology_class != b.homology_class and \
            tuple(-x for x in a.homology_class) != b.homology_class:
        return False
    _, b2, iota = closed_pair_reduce(a, b)
    if iota != 0:
        return False
    if a.canonical_key == b2.canonical_key:
        return True
    if a.component_count != 1:
        return False
    real = Realization(a.chart.spine,
                       [list(a.components), list(b2.components)])
    for reg in real.regions:
        if reg.contains_v and reg.chi == 0 and reg.n_boundary == 2:
            walks = sorted(a.chart.spine.canonical_closed(c.walk)
                           for c in reg.circuits)
            if walks == sorted([a.components[0], b2.components[0]]):
                return True
    return False


def intersection_number_oracle(a, b):
    """Independent tracer: realize both curves in minimal position and
    count the chord crossings cell by cell, after removing bigons that
    contain the chart vertex."""
    require_same_chart(a, b)
    _, b2, _ = closed_pair_reduce(a, b)
    shared = set(a.components) & set(b2.components)
    ca = [w for w in a.components if w not in shared]
    cb = [w for w in b2.components if w not in shared]
    if not ca or not cb:
        return 0
    real = Realization(a.chart.spine, [ca, cb])
    return real.crossing_total(0, 1)


def self_intersection_oracle(chart, walk):
    real = Realization(chart.spine, [[chart.spine.canonical_closed(walk)]])
    return real.crossing_total(0, 0)


# -- Dehn twists -------------------------------------------------------------

def dehn_twist(c, about, power):
    """Twist of c about a simple closed curve, |power| times, handedness
    by the sign of power."""
    chart = require_same_chart(c, about)
    if about.component_count != 1:
        raise ChartError("twisting curve must be connected")
    if power == 0:
        return c
    a = about.components[0]
    sp = chart.spine
    new_comps = []
    for w in c.components:
        if w == a:
            new_comps.append(w)
            continue
        new_comps.append(_twist_component(sp, w, a, power))
    return CurveClass.from_walks(chart, new_comps)


def _twist_component(sp, w, a, power):
    real = Realization(sp, [[w], [a]])
    evs = [ev for ev in real.events_along(0, 0) if ev["other"].system == 1]
    if not evs:
        return w
    n = len(a)
    out = []
    prev = 0
    for ev in evs:
        i = ev["pos"]
        out.extend(w[prev:i + 1])
        j = ev["other_pos"]
        loop = a[(j + 1) % n:] + a[:(j + 1) % n]
        eps = power if ev["sign"] > 0 else -power
        if eps < 0:
            loop = sp.reverse_walk(loop)
        out.extend(loop * abs(eps))
        prev = i + 1
    out.extend(w[prev:])
    return sp.reduce_cyclic(tuple(out))


class MappingWord:
    """Composition of Dehn twists, applied left to right."""

    def __init__(self, letters=()):
        self.letters = tuple((c, int(p)) for c, p in letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self):
        return MappingWord(tuple((c, -p) for c, p in reversed(self.letters)))

    def then(self, other):
        return MappingWord(self.letters + other.letters)

    def apply(self, curve):
        out = curve
        for c, p in self.letters:
            out = dehn_twist(out, c, p)
        return out

    def describe(self):
        return [(c.canonical_key[:12], p) for c, p in self.letters]


def apply_word(word, curve):
    return word.apply(curve)


# -- band sums ---------------------------------------------------------------

def band_sum_walk(chart, w1, w2, connector):
    """Band sum of two disjoint closed walks along a connecting path.

    The connector must start at a node visited by w1 and end at a node
    visited by w2; the returned reduced walk represents the band sum
    along that path (validity as a simple curve is the caller's check).
    """
    sp = chart.spine
    if not sp.is_path_walk(connector) or not connector:
        raise ChartError("connector must be a nonempty path walk")
    start = sp.node_of[connector[0]]
    end = sp.head(connector[-1])
    r1 = _rotate_to_end_at(sp, w1, start)
    r2 = _rotate_to_start_at(sp, w2, end)
    back = tuple((d ^ 1) for d in reversed(connector))
    return sp.reduce_cyclic(r1 + connector + r2 + back)


def _rotate_to_end_at(sp, w, node):
    for i in range(len(w)):
        if sp.head(w[i]) == node:
            return w[i + 1:] + w[:i + 1]
    raise ChartError("walk does not visit the connector endpoint")


def _rotate_to_start_at(sp, w, node):
    for i in range(len(w)):
        if sp.node_of[w[i]] == node:
            return w[i:] + w[:i]
    raise ChartError("walk does not visit the connector endpoint")


def spine_paths(chart, max_len):
    """All reduced path walks on the chart spine up to the given length."""
    sp = chart.spine
    out = []
    frontier = [(d,) for d in range(2 * sp.n_edges)]
    while frontier:
        batch = []
        for p in frontier:
            out.append(p)
            if len(p) < max_len:
                last = p[-1]
                for d2 in sp.rot[sp.head(last)]:
                    if d2 != (last ^ 1):
                        batch.append(p + (d2,))
        frontier = batch
    return out


# -- pi1 words ---------------------------------------------------------------

def pi1_word(c):
    """Cyclically reduced word of a connected curve in the surface group
    presentation carried by the chart."""
    if c.component_count != 1:
        raise ChartError("pi1 word requires a connected curve; "
                         "call once per component")
    return words.canonical_cyclic(c.chart.walk_word(c.components[0]),
                                  oriented=True)


# -- filling -----------------------------------------------------------------

def fills(a, b):
    """True iff every complementary component of a minimal-position
    realization of the union is an open disc."""
    require_same_chart(a, b)
    if intersection_number(a, b) == 0:
        return False
    _, b2, _ = closed_pair_reduce(a, b)
    shared = set(a.components) & set(b2.components)
    if shared:
        return False
    real = Realization(a.chart.spine,
                       [list(a.components), list(b2.components)])
    return all(r.is_disc for r in real.regions)


# -- normal-coordinate reconstruction ---------------------------------------

def curves_from_weights(chart, weights):
    """Rebuild the multicurve with the given normal coordinates.

    Corner counts in each triangle are forced by the weights; arcs near
    each corner are nested, and gluing along edges preserves slot order.
    """
    sp = chart.spine
    if len(weights) != sp.n_edges:
        raise ChartError("wrong number of edge weights")

    def slot_end(d, pos_ccw):
        # slot-end (edge, global index, departing dart) for the
        # pos_ccw-th slot of dart d in triangle boundary order; slot
        # lists run against the global order on frame darts
        e = d >> 1
        w = weights[e]
        idx = (w - 1 - pos_ccw) if (d & 1) == 0 else pos_ccw
        return (e, idx, d)

    partner = {}
    for node in range(sp.n_nodes):
        rot = sp.rot[node]
        if len(rot) != 3:
            raise ChartError("reconstruction requires a trivalent chart")
        wts = [weights[d >> 1] for d in rot]
        for k in range(3):
            x, y, z = wts[k], wts[(k + 1) % 3], wts[(k + 2) % 3]
            c = x + y - z
            if c < 0 or c % 2:
                raise ChartError("weights violate triangle conditions")
        for k in range(3):
            d1, d2 = rot[k], rot[(k + 1) % 3]
            x, y = wts[k], wts[(k + 1) % 3]
            z = wts[(k + 2) % 3]
            c = (x + y - z) // 2
            for t in range(c):
                # arcs at the corner between sides k and k+1: last slots
                # of d1 pair with first slots of d2, nested
                s1 = slot_end(d1, x - 1 - t)
                s2 = slot_end(d2, t)
                if s1 in partner or s2 in partner:
                    raise ChartError("weights overfill a corner")
                partner[s1] = s2
                partner[s2] = s1
    for e in range(sp.n_edges):
        for i in range(weights[e]):
            for d in (2 * e, 2 * e + 1):
                if (e, i, d) not in partner:
                    raise ChartError("weights leave a slot end unmatched")
    comps = []
    seen = set()
    for start in sorted(partner):
        if start in seen:
            continue
        walk = []
        cur = start
        while True:
            seen.add(cur)
            e2, i2, d2 = partner[cur]
            seen.add((e2, i2, d2))
            walk.append(d2)
            cur = (e2, i2, d2 ^ 1)
            if cur == start:
                break
            if len(walk) > 2 * sum(weights) + 4:
                raise ChartError("weights do not trace consistently")
        comps.append(tuple(walk))
    return CurveClass.from_walks(chart, comps)
