"""Handlebody structure over a surface chart: meridians, discbusting
tests, and the disc surgery calculus.

The handlebody H is fixed by the chart's cut system: the quotient
pi_1(boundary) -> pi_1(H) = F_g kills the alpha generators and sends
beta_i to the free generator x_i.  A simple closed curve bounds a disc
in H iff its image word reduces to nothing; that word-level certificate
drives every surgery decision, so no interior disc combinatorics is
ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import words
from .chart import (Chart, ChartError, CurveClass, MappingWord,
                    band_sum_walk, chart_intersection_number, event_arc,
                    intersection_number, pi1_word, require_same_chart,
                    spine_paths)
from .freefactors import is_diskbusting_words
from .overlay import Realization


class HandlebodyError(ValueError):
    pass


class Handlebody:
    """Chart plus cut system and the pi_1 quotient onto F_g."""

    def __init__(self, genus=2):
        self.chart = Chart(genus)
        self.genus = genus
        g = genus
        self.quotient_images = {}
        for i in range(1, g + 1):
            self.quotient_images[i] = ()        # alpha_i dies
            self.quotient_images[g + i] = (i,)  # beta_i -> x_i
        self.cut_system = tuple(self.chart.curve("m%d" % (i + 1))
                                for i in range(g))
        for i, m in enumerate(self.cut_system):
            if not self.is_meridian_curve(m):
                raise HandlebodyError("cut curve %d is not a meridian" % i)
        for i in range(g):
            for j in range(i + 1, g):
                if intersection_number(self.cut_system[i],
                                       self.cut_system[j]) != 0:
                    raise HandlebodyError("cut system curves intersect")
        self._disc_cache = {}

    # -- words in F_g -----------------------------------------------------

    def handlebody_word(self, curve_component_walk):
        surface_word = self.chart.walk_word(curve_component_walk)
        return words.substitute(surface_word, self.quotient_images)

    def curve_words(self, c):
        return tuple(self.handlebody_word(w) for w in c.components)

    def is_meridian_curve(self, c, with_certificate=False):
        """A connected essential curve bounds a disc iff its F_g word is
        cyclically trivial."""
        if c.component_count != 1:
            raise HandlebodyError("meridian test needs a connected curve")
        w = self.handlebody_word(c.components[0])
        trace = [w]
        red = words.cyclic_reduce(w)
        if red != w:
            trace.append(red)
        ok = (len(red) == 0)
        if with_certificate:
            return ok, {"word": list(w), "reduction": [list(t) for t in trace],
                        "trivial": ok}
        return ok

    def is_discbusting(self, c):
        """Whitehead-graph criterion on the F_g conjugacy classes."""
        ws = []
        for comp in c.components:
            w = words.cyclic_reduce(self.handlebody_word(comp))
            if not w:
                raise HandlebodyError(
                    "discbusting test rejects discbounding components")
            ws.append(w)
        return is_diskbusting_words(ws, self.genus)

    # -- discs --------------------------------------------------------------

    def disc(self, boundary, provenance=None):
        key = boundary.canonical_key
        if key in self._disc_cache:
            return self._disc_cache[key]
        ok, cert = self.is_meridian_curve(boundary, with_certificate=True)
        if not ok:
            raise HandlebodyError("boundary word %r is not trivial"
                                  % (cert["word"],))
        d = Disc(self, boundary, cert, provenance or {"kind": "root"},
                 boundary.is_separating)
        self._disc_cache[key] = d
        return d

    def standard_disc(self, i):
        return self.disc(self.cut_system[i], {"kind": "cut", "index": i})

    def separating_disc(self):
        return self.disc(self.chart.curve("sep"), {"kind": "sep"})

    def seed_discs(self, connector_len=8, limit=24):
        """Cut system, separating disc, and band-sum meridians.

        Band sums of cut discs along connecting arcs, including sums of a
        disc with its own parallel copy routed through another handle,
        provide meridians that genuinely cross the cut system; twists
        about pairwise disjoint discs can never produce those.
        Deterministic, deduplicated, sorted by (weight, key).
        """
        if getattr(self, "_seed_cache", None) is not None \
                and self._seed_params == (connector_len, limit):
            return self._seed_cache
        chart = self.chart
        sp = chart.spine
        seeds = {d.key: d for d in
                 [self.standard_disc(i) for i in range(self.genus)]
                 + [self.separating_disc()]}
        base = [self.cut_system[i] for i in range(self.genus)]
        base.append(self.chart.curve("sep"))
        found = []
        for p in spine_paths(chart, connector_len):
            if len(found) >= limit:
                break
            for c1 in base:
                w1 = c1.components[0]
                partners = [c2.components[0] for c2 in base if c2 is not c1]
                partners += [sp.reverse_walk(w1), w1]
                for w2 in partners:
                    try:
                        walk = band_sum_walk(chart, w1, w2, p)
                        if not walk:
                            continue
                        c = CurveClass.from_walks(chart, [walk])
                    except ChartError:
                        continue
                    if not self.is_meridian_curve(c):
                        continue
                    if c.canonical_key in seeds:
                        continue
                    d = self.disc(c, {"kind": "bandsum",
                                      "base": c1.canonical_key})
                    seeds[c.canonical_key] = d
                    found.append(d)
        out = sorted(seeds.values(),
                     key=lambda d: (d.boundary.total_weight, d.key))
        self._seed_cache = out
        self._seed_params = (connector_len, limit)
        return out


@dataclass(frozen=True)
class Disc:
    handlebody: Handlebody = field(compare=False, repr=False)
    boundary: CurveClass
    meridian_certificate: dict = field(compare=False, repr=False)
    provenance: dict = field(compare=False, repr=False)
    separating: bool = field(compare=False)

    @property
    def key(self):
        return self.boundary.canonical_key

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return self.key == other.key

    def to_json(self):
        rec = self.boundary.to_json()
        rec["meridian_cert"] = self.meridian_certificate
        rec["provenance"] = _provenance_json(self.provenance)
        return rec

    def __repr__(self):
        return "Disc(%s%s)" % (self.key[:12],
                               ", sep" if self.separating else "")


def _provenance_json(prov):
    out = {}
    for k, v in prov.items():
        if isinstance(v, Disc):
            out[k] = v.key
        elif isinstance(v, CurveClass):
            out[k] = v.canonical_key
        elif isinstance(v, MappingWord):
            out[k] = v.describe()
        else:
            out[k] = v
    return out


# -- outer arcs and simple surgery -------------------------------------------


@dataclass
class OuterArc:
    """Candidate surgery site: an arc of the moving boundary returning
    to the same side of the fixed disc's boundary."""

    arc_id: int
    side: int                 # sign of the departure crossing
    ev_from: dict = field(repr=False)
    ev_to: dict = field(repr=False)
    alpha_darts: tuple = field(repr=False)   # raw subwalk of the outer arc
    q1: "Disc | None" = None
    q2: "Disc | None" = None
    certified: bool = False
    alpha_crossings: int = 0  # crossings with the guide curve, if any


def _subwalk(walk, i_from, i_to):
    """Darts strictly after position i_from up to and including i_to,
    cyclically."""
    n = len(walk)
    if n == 0:
        return ()
    out = []
    j = (i_from + 1) % n
    steps = (i_to - i_from) % n
    for _ in range(steps):
        out.append(walk[j])
        j = (j + 1) % n
    return tuple(out)


def outer_arcs(H, D, E, guide=None):
    """Same-side returning arcs of the boundary of E relative to D, with
    both surgered curves certified as meridians.

    Returns (arcs, realization).  With a guide curve, each arc also
    counts its crossings with the guide.
    """
    chart = require_same_chart(D.boundary, E.boundary)
    if D.boundary.component_count != 1 or E.boundary.component_count != 1:
        raise HandlebodyError("surgery needs connected boundaries")
    wD = D.boundary.components[0]
    wE = E.boundary.components[0]
    systems = [[wD], [wE]]
    if guide is not None:
        systems.append(list(guide.components))
    real = Realization(chart.spine, systems)
    if real.crossing_total(0, 1) == 0:
        raise HandlebodyError("discs are disjoint; no surgery site")

    evs_E = real.events_along(1, 0)
    evs_D = real.events_along(0, 0)
    d_events = [ev for ev in evs_E if ev["other"].system == 0]
    arcs = []
    n = len(d_events)
    for k in range(n):
        ev1 = d_events[k]
        ev2 = d_events[(k + 1) % n]
        if ev1["sign"] == ev2["sign"]:
            continue  # same direction at both ends: not a return
        alpha = event_arc(wE, ev1, ev2)
        if guide is not None:
            g_crossings = _events_between(evs_E, ev1, ev2,
                                          other_system=2, walk_len=len(wE))
        else:
            g_crossings = 0
        # the two halves of D between the same crossings
        x1 = _matching_event(evs_D, ev1["crossing"])
        x2 = _matching_event(evs_D, ev2["crossing"])
        half1 = event_arc(wD, x2, x1)
        half2 = tuple(d ^ 1 for d in reversed(event_arc(wD, x1, x2)))
        q = []
        for half in (half1, half2):
            walk = chart.spine.reduce_cyclic(alpha + half)
            q.append(_try_disc(H, chart, walk, D, E))
        arc = OuterArc(arc_id=k, side=ev1["sign"], ev_from=ev1, ev_to=ev2,
                       alpha_darts=alpha, q1=q[0], q2=q[1],
                       certified=(q[0] is not None and q[1] is not None),
                       alpha_crossings=g_crossings)
        arcs.append(arc)
    return arcs, real


def _events_between(evs, ev1, ev2, other_system, walk_len):
    """Count events of the given system strictly between two events in
    traversal order along the walk."""
    def pos_key(ev):
        return (ev["pos"], ev["t"])
    k1, k2 = pos_key(ev1), pos_key(ev2)
    cnt = 0
    for ev in evs:
        if ev["other"].system != other_system:
            continue
        k = pos_key(ev)
        if k1 < k2:
            if k1 < k < k2:
                cnt += 1
        else:
            if k > k1 or k < k2:
                cnt += 1
    return cnt


def _matching_event(evs, crossing):
    for ev in evs:
        if ev["crossing"] is crossing:
            return ev
    raise AssertionError("crossing not found on the other curve")


def _try_disc(H, chart, walk, D, E):
    """Certify a surgered boundary walk as an essential disc; None when
    the walk fails to be an essential simple meridian."""
    if not walk:
        return None
    try:
        c = CurveClass.from_walks(chart, [walk])
    except ChartError:
        return None
    if not H.is_meridian_curve(c):
        return None
    return H.disc(c, {"kind": "surgery", "parents": (D.key, E.key)})


def simple_surgery(H, D, E, arc):
    """Surger D at a certified outer component of E - D."""
    if not arc.certified:
        raise HandlebodyError("surgery at an uncertified arc")
    q1, q2 = arc.q1, arc.q2
    for q in (q1, q2):
        if chart_intersection_number(q.boundary, D.boundary) != 0:
            raise AssertionError("surgered disc meets the surgered parent")
    return q1, q2


# -- surgery paths ------------------------------------------------------------


class SurgeryBudget(HandlebodyError):
    def __init__(self, partial):
        super().__init__("surgery step budget exceeded")
        self.partial = partial


@dataclass
class SurgeryPath:
    mode: str
    discs: list
    pairs: list = field(default_factory=list)
    note: str = ""

    def __len__(self):
        return len(self.discs) - 1


def surgery_path(H, D, E, mode="greedy", guide=None):
    """Iterated simple surgeries from D toward E.

    greedy: surger the moving disc at a certified outer component of
    E minus the moving disc, strictly reducing intersection with E,
    ending at a disc disjoint from E.  nested: additionally never reuse
    the previous outer arc.  alpha_guided: choose sites disjoint from
    the guide and halve the guide crossings of the moving disc.
    balanced: alternate sides, strictly decreasing the total guide
    crossings (see `balanced_path`).
    """
    if mode == "balanced":
        return balanced_path(H, D, E, guide)
    i0 = chart_intersection_number(D.boundary, E.boundary)
    budget = 4 * (i0 + 1)
    path = [D]
    cur = D
    prev_alpha = None
    k0 = None
    if mode == "alpha_guided":
        if guide is None:
            raise HandlebodyError("alpha_guided needs a guide curve")
        if chart_intersection_number(guide, E.boundary) > 1:
            raise HandlebodyError("guide must meet E at most once")
        k0 = chart_intersection_number(guide, D.boundary)
        if k0 < 1:
            raise HandlebodyError("guide must meet D")
    steps = 0
    while chart_intersection_number(cur.boundary, E.boundary) > 0:
        steps += 1
        if steps > budget:
            raise SurgeryBudget(SurgeryPath(mode, path))
        arcs, real = outer_arcs(H, cur, E, guide=guide)
        cert = [a for a in arcs if a.certified]
        if not cert:
            raise HandlebodyError("no certified outer arc found")
        nxt = _choose_step(H, mode, cur, E, cert, guide, prev_alpha)
        if nxt is None:
            break  # alpha_guided termination: disjoint from the guide
        cur, prev_alpha = nxt
        path.append(cur)
        if mode == "alpha_guided" and \
                chart_intersection_number(guide, cur.boundary) == 0:
            break
    return SurgeryPath(mode, path)


def _choose_step(H, mode, cur, E, cert, guide, prev_alpha):
    """Pick the next disc; ties by least canonical key of the result.

    Only sites that really behave like outer components are kept: the
    surgered disc must be disjoint from the current one and must strictly
    reduce the intersection with the target.
    """
    iota_cur = chart_intersection_number(cur.boundary, E.boundary)
    options = []
    for a in cert:
        for q, half_tag in ((a.q1, 1), (a.q2, 2)):
            if chart_intersection_number(q.boundary, cur.boundary) != 0:
                continue
            if chart_intersection_number(q.boundary, E.boundary) >= iota_cur:
                continue
            options.append((a, q, half_tag))
    if not options:
        raise HandlebodyError("no strictly reducing certified site")
    if mode == "greedy":
        # any certified site; deterministic by resulting key
        best = min(options, key=lambda o: o[1].key)
        return best[1], best[0].alpha_darts
    if mode == "nested":
        filtered = []
        for a, q, tag in options:
            if prev_alpha and _contains_subwalk(q.boundary.components[0],
                                                prev_alpha):
                continue
            filtered.append((a, q, tag))
        if not filtered:
            filtered = options
        best = min(filtered, key=lambda o: o[1].key)
        return best[1], best[0].alpha_darts
    if mode == "alpha_guided":
        j = chart_intersection_number(guide, cur.boundary)
        if j == 0:
            return None
        # outer components disjoint from the guide, then the half with
        # fewer guide crossings
        best = None
        for a, q, tag in options:
            if a.alpha_crossings != 0:
                continue
            cnt = chart_intersection_number(guide, q.boundary)
            key = (cnt, q.key)
            if best is None or key < best[0]:
                best = (key, q, a)
        if best is None:
            raise HandlebodyError("no guide-disjoint outer component")
        cnt, q, a = best[0][0], best[1], best[2]
        if 2 * cnt > j:
            raise AssertionError("guide crossings failed to halve")
        return q, a.alpha_darts
    raise HandlebodyError("unknown mode %r" % mode)


def _contains_subwalk(walk, sub):
    if not sub:
        return False
    n = len(walk)
    if len(sub) > n:
        return False
    doubled = walk + walk
    for i in range(n):
        if doubled[i:i + len(sub)] == sub:
            return True
    rev = tuple(d ^ 1 for d in reversed(sub))
    for i in range(n):
        if doubled[i:i + len(rev)] == rev:
            return True
    return False


def balanced_path(H, D, E, guide):
    """Alternating surgeries strictly decreasing the total number of
    guide crossings, stopping when a side meets the guide at most once
    or both differences have exactly two outer components."""
    if guide is None:
        raise HandlebodyError("balanced mode needs a guide curve")
    k = max(chart_intersection_number(guide, D.boundary),
            chart_intersection_number(guide, E.boundary))
    budget = 4 * (k + 2) + 8
    curD, curE = D, E
    pairs = [(curD, curE)]
    discs = [D, E]
    note = ""
    steps = 0
    while True:
        j = chart_intersection_number(guide, curD.boundary)
        jp = chart_intersection_number(guide, curE.boundary)
        if chart_intersection_number(curD.boundary, curE.boundary) == 0:
            note = "disjoint"
            break
        if min(j, jp) <= 1:
            note = "thin"  # halving lemma applies from here
            break
        arcs_D, _ = outer_arcs(H, curD, curE)   # components of E - D
        arcs_E, _ = outer_arcs(H, curE, curD)   # components of D - E
        nD = sum(1 for a in arcs_D if a.certified)
        nE = sum(1 for a in arcs_E if a.certified)
        if nD <= 2 and nE <= 2:
            note = "two_component"
            break
        steps += 1
        if steps > budget:
            raise SurgeryBudget(SurgeryPath("balanced", discs, pairs))
        if 3 * j > 2 * jp and nD >= 3:
            curD = _balanced_step(H, curD, curE, guide, j, jp)
            discs.append(curD)
        elif nE >= 3:
            curE = _balanced_step(H, curE, curD, guide, jp, j)
            discs.append(curE)
        else:
            curD = _balanced_step(H, curD, curE, guide, j, jp)
            discs.append(curD)
        pairs.append((curD, curE))
        total = (chart_intersection_number(guide, curD.boundary)
                 + chart_intersection_number(guide, curE.boundary))
        if total >= j + jp:
            raise AssertionError("balanced step failed to decrease")
    return SurgeryPath("balanced", discs, pairs, note)


def _balanced_step(H, mover, fixed, guide, j, jp):
    """Replace the mover by an outer component of fixed minus mover glued
    to the half of the mover with fewer guide crossings."""
    arcs, _ = outer_arcs(H, mover, fixed, guide=guide)
    cert = [a for a in arcs if a.certified]
    if not cert:
        raise HandlebodyError("no certified site in balanced step")
    best = None
    for a in cert:
        for q in (a.q1, a.q2):
            if chart_intersection_number(q.boundary, mover.boundary) != 0:
                continue
            cnt = chart_intersection_number(guide, q.boundary)
            key = (a.alpha_crossings, cnt, q.key)
            if best is None or key < best[0]:
                best = (key, q)
    if best is None:
        raise HandlebodyError("no disjoint certified site in balanced step")
    return best[1]
