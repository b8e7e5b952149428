"""Minimal-position realization of curve systems on a spine.

Curves (reduced cyclic walks) are laid out transversally to the cell
structure dual to the spine: a traversal of a spine edge is a strand
crossing the dual cell side, strands crossing one side are ordered by
where their itineraries diverge in the universal cover, and inside each
dual cell strands run as straight chords between boundary slots.  Chord
crossings are then exactly the geometric intersection points, and the
complement decomposes into regions whose topology and boundary circuits
are computed exactly.

Per-cell combinatorics uses exact rational coordinates on a convex
polygon, so no orientation convention is left implicit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key


class Strand:
    """One traversal of a spine edge by a component walk."""

    __slots__ = ("system", "comp", "pos", "direction", "edge", "order_index")

    def __init__(self, system, comp, pos, direction, edge):
        self.system = system
        self.comp = comp
        self.pos = pos
        self.direction = direction  # +1 traverses the frame dart, -1 the mate
        self.edge = edge
        self.order_index = None

    def key(self):
        return (self.system, self.comp, self.pos, self.direction)

    def __repr__(self):
        return "Strand(sys=%d, comp=%d, pos=%d, dir=%+d, e=%d)" % (
            self.system, self.comp, self.pos, self.direction, self.edge)


class Region:
    def __init__(self, chi, contains_v, cells):
        self.chi = chi
        self.contains_v = contains_v
        self.cells = cells
        self.circuits = []

    @property
    def n_boundary(self):
        return len(self.circuits)

    @property
    def genus(self):
        return (2 - self.chi - self.n_boundary) // 2

    @property
    def is_disc(self):
        return self.chi == 1

    def __repr__(self):
        return "Region(chi=%d, b=%d, g=%d%s)" % (
            self.chi, self.n_boundary, self.genus,
            ", v" if self.contains_v else "")


class Circuit:
    """One boundary component of a region.

    walk: the free homotopy class of the circuit pushed slightly into the
    region, as a reduced cyclic walk on the spine.  segments: the strand
    segment sides traversed, as (system, comp, chord pos, with_strand).
    corners: the crossings where the boundary pivots between strands.
    """

    def __init__(self, walk, segments, corners):
        self.walk = walk
        self.segments = segments
        self.corners = corners

    def strand_runs(self):
        """Maximal runs of consecutive segments on one (system, comp)."""
        runs = []
        for seg in self.segments:
            ident = (seg[0], seg[1])
            if runs and runs[-1][0] == ident:
                runs[-1][1].append(seg)
            else:
                runs.append((ident, [seg]))
        if len(runs) >= 2 and runs[0][0] == runs[-1][0]:
            first = runs.pop(0)
            runs[-1][1].extend(first[1])
        return runs


class Realization:
    """Simultaneous minimal-position layout of curve systems.

    systems: list of systems, each a list of nonempty reduced cyclic
    walks (components).
    """

    def __init__(self, spine, systems):
        self.spine = spine
        self.systems = [[tuple(w) for w in sys] for sys in systems]
        for sys in self.systems:
            for w in sys:
                if not w or spine.reduce_cyclic(w) != w:
                    raise ValueError("walks must be nonempty and reduced")
        self._build_strands()
        self._build_cells()
        self._build_regions()
        self._trace_circuits()

    def walk(self, system, comp):
        return self.systems[system][comp]

    # ---- strand order along each edge ---------------------------------
    #
    # Every strand lifts to a bi-infinite line in the universal cover
    # crossing the lifted edge.  Each line has two ideal endpoints, and
    # the circle at infinity seen from the edge splits into the head-side
    # arc, coordinates in (0,1), and the tail-side arc, coordinates in
    # (1,2), both traversed counterclockwise in ascending turn-rank order
    # of the itineraries.  Realizing lines as straight chords between
    # their endpoints, the order of strands across the edge is the order
    # in which the chords cut the diameter separating the two arcs.  Two
    # chords cross at most once, exactly when the itinerary divergences
    # force a crossing, so all per-edge orders are mutually consistent.

    def _turns_from(self, s, toward_head):
        """One full period of turn ranks walking away from the edge of
        strand s toward its head (along the frame dart) or tail."""
        spine = self.spine
        w = self.walk(s.system, s.comp)
        n = len(w)
        i = s.pos
        frame_travel = (s.direction == +1)
        step = +1 if (toward_head == frame_travel) else -1
        d = w[i] if step == +1 else (w[i] ^ 1)
        turns = []
        for _ in range(n):
            j = (i + step) % n
            d2 = w[j] if step == +1 else (w[j] ^ 1)
            turns.append((spine.turn(d, d2), spine.degree(spine.head(d))))
            i, d = j, d2
        return turns

    def _ideal_coord(self, s, toward_head):
        """Exact coordinate in (0,1) of the ideal endpoint of the strand
        line in the chosen direction."""
        lo, hi = Fraction(0), Fraction(1)
        for t, deg in self._turns_from(s, toward_head):
            width = (hi - lo) / (deg - 1)
            lo = lo + (t - 1) * width
            hi = lo + width
        # the itinerary is periodic: the endpoint is the fixed point of
        # the affine contraction x -> lo + (hi - lo) x
        return lo / (1 - (hi - lo))

    def _cross_param(self, s):
        """Position (x coordinate in (-1,1)) where the strand chord cuts
        the diameter between the two boundary arcs."""
        th = self._ideal_coord(s, toward_head=True)
        tt = 1 + self._ideal_coord(s, toward_head=False)
        ph = _unit_circle_point(th)
        pt = _unit_circle_point(tt)
        if ph == pt:
            raise AssertionError("strand line degenerate")
        # intersect with the x axis: yt < 0 < yh
        xh, yh = ph
        xt, yt = pt
        if not (yt < 0 < yh):
            raise AssertionError("endpoint arcs misplaced")
        return (xt * yh - xh * yt) / (yh - yt)

    def _build_strands(self):
        self.edge_strands = [[] for _ in range(self.spine.n_edges)]
        self.comp_strands = {}
        for si, sys in enumerate(self.systems):
            for ci, w in enumerate(sys):
                per = []
                for i, d in enumerate(w):
                    s = Strand(si, ci, i, +1 if (d & 1) == 0 else -1, d >> 1)
                    self.edge_strands[d >> 1].append(s)
                    per.append(s)
                self.comp_strands[(si, ci)] = per
        for strands in self.edge_strands:
            strands.sort(key=lambda s: (self._cross_param(s),) + s.key())
            for k, s in enumerate(strands):
                s.order_index = k

    # ---- per-cell planar arrangements ----------------------------------

    def _build_cells(self):
        self.arrs = [_CellArrangement(self, n) for n in range(self.spine.n_nodes)]
        self.crossings = []
        for arr in self.arrs:
            for c in arr.crossings:
                c["id"] = len(self.crossings)
                self.crossings.append(c)
        # global cell ids
        self.cells = []
        for arr in self.arrs:
            arr.cell_gids = []
            for _ in arr.cells:
                arr.cell_gids.append(len(self.cells))
                self.cells.append(arr)
        # piece -> [(arr, local half-edge, local cell)]
        self.piece_sides = {}
        for arr in self.arrs:
            for piece, lst in arr.piece_occurrences.items():
                self.piece_sides.setdefault(piece, []).extend(
                    (arr, he, cell) for he, cell in lst)
        for piece, occ in self.piece_sides.items():
            if len(occ) != 2:
                raise AssertionError(
                    "piece %r has %d occurrences" % (piece, len(occ)))

    def _build_regions(self):
        n_cells = len(self.cells)
        parent = list(range(n_cells))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for piece, occ in self.piece_sides.items():
            (arr1, he1, c1), (arr2, he2, c2) = occ
            g1 = arr1.cell_gids[c1]
            g2 = arr2.cell_gids[c2]
            r1, r2 = find(g1), find(g2)
            if r1 != r2:
                parent[r2] = r1
        self._find = find
        groups = {}
        for g in range(n_cells):
            groups.setdefault(find(g), []).append(g)
        # the cell vertex v sits in the region of any corner-incident cell
        v_root = None
        for arr in self.arrs:
            if arr.corner_cell_local is not None:
                v_root = find(arr.cell_gids[arr.corner_cell_local])
                break
        pieces_per_root = {}
        for piece, occ in self.piece_sides.items():
            root = find(occ[0][0].cell_gids[occ[0][2]])
            pieces_per_root[root] = pieces_per_root.get(root, 0) + 1
        self.regions = []
        self.region_of_root = {}
        for root, cells in sorted(groups.items()):
            chi = len(cells) - pieces_per_root.get(root, 0)
            contains_v = (root == v_root)
            if contains_v:
                chi += 1
            reg = Region(chi, contains_v, cells)
            self.region_of_root[root] = reg
            self.regions.append(reg)

    def region_of_cell_gid(self, gid):
        return self.region_of_root[self._find(gid)]

    # ---- boundary circuits ----------------------------------------------

    def _partner(self, arr, he):
        kind = arr.E[he[0]]["kind"]
        piece = arr.piece_of_side[kind[1]]
        occ = self.piece_sides[piece]
        for arr2, he2, c2 in occ:
            if arr2 is arr and he2 == he:
                continue
            return arr2, he2
        raise AssertionError("no partner for piece side")

    def _trace_circuits(self):
        visited = set()
        for arr in self.arrs:
            for he0 in arr.seg_half_edges:
                key0 = (arr.node, he0)
                if key0 in visited:
                    continue
                segments = []
                darts = []
                corners = []
                cur_arr, cur = arr, he0
                root = None
                guard = 0
                while (cur_arr.node, cur) not in visited:
                    guard += 1
                    if guard > 200000:
                        raise AssertionError("circuit trace runaway")
                    visited.add((cur_arr.node, cur))
                    seg = cur_arr.seg_info(cur)
                    segments.append(seg)
                    if root is None:
                        root = self._find(
                            cur_arr.cell_gids[cur_arr.face_of_he[cur]])
                    # advance within the face, jumping across pieces; every
                    # jump crosses the dual cell side the piece lies on, so
                    # the pushed-off circuit traverses that spine dart.
                    nxt = cur_arr.face_next(cur)
                    jumped = False
                    while True:
                        kind = cur_arr.E[nxt[0]]["kind"]
                        if kind[0] == "seg":
                            break
                        jumped = True
                        darts.append(cur_arr.side_dart[kind[1]])
                        cur_arr, nxt = self._jump(cur_arr, nxt)
                    if not jumped:
                        src = cur_arr.he_source(nxt)
                        if src[0] == "x":
                            corners.append(cur_arr.crossings[src[1]])
                    cur = nxt
                reg = self.region_of_root[root]
                walk = self.spine.reduce_cyclic(tuple(darts))
                reg.circuits.append(Circuit(walk, segments, corners))

    def _jump(self, arr, he):
        arr2, he2 = self._partner(arr, he)
        return arr2, arr2.face_next(he2)

    # ---- queries ----------------------------------------------------------

    def crossing_total(self, sys_a=None, sys_b=None):
        n = 0
        for c in self.crossings:
            s1, s2 = c["strands"]
            if sys_a is None:
                n += 1
            elif sys_a == sys_b:
                n += (s1.system == sys_a and s2.system == sys_a)
            else:
                n += ({s1.system, s2.system} == {sys_a, sys_b})
        return n

    def events_along(self, system, comp):
        """Crossing events along one component, in traversal order.

        Each event: dict with pos (chord index = walk step entering the
        crossing's cell), t (position along the chord), other (Strand
        just before the crossing on the other curve), other_pos/other_t,
        sign (+1 when (this, other) directions are positively oriented).
        """
        evs = []
        for c in self.crossings:
            s1, s2 = c["strands"]
            for mine, other, t_m, t_o, sgn in (
                    (s1, s2, c["t1"], c["t2"], c["sign"]),
                    (s2, s1, c["t2"], c["t1"], -c["sign"])):
                if mine.system == system and mine.comp == comp:
                    evs.append({
                        "pos": mine.pos, "t": t_m,
                        "other": other, "other_pos": other.pos,
                        "other_t": t_o, "sign": sgn, "crossing": c,
                    })
        evs.sort(key=lambda ev: (ev["pos"], ev["t"]))
        return evs

    def v_region(self):
        for r in self.regions:
            if r.contains_v:
                return r
        raise AssertionError("no region contains the cell vertex")


class _CellArrangement:
    """Exact planar subdivision of one dual cell by strand chords."""

    def __init__(self, real, node):
        self.real = real
        self.node = node
        spine = real.spine
        self.items = self._boundary_items()
        m = len(self.items)
        self.pts = [_circle_point(k) for k in range(m)]
        self.item_index = {}
        for k, it in enumerate(self.items):
            self.item_index[self._item_key(it)] = k

        self.chords = []
        for (si, ci), strands in real.comp_strands.items():
            w = real.walk(si, ci)
            n = len(w)
            for i in range(n):
                d = w[i]
                if spine.head(d) != node:
                    continue
                d2 = w[(i + 1) % n]
                s_in = strands[i]
                s_out = strands[(i + 1) % n]
                a = self.item_index[("slot", s_in.key(), d ^ 1)]
                b = self.item_index[("slot", s_out.key(), d2)]
                self.chords.append({
                    "a": a, "b": b, "s_in": s_in, "s_out": s_out,
                    "sys": si, "comp": ci, "pos": i})
        self._subdivide()

    def _boundary_items(self):
        """CCW boundary: corner marker, then the slots of each departing
        dart.  Facing along a dart, the CCW boundary of its tail cell
        meets the strands from right to left; slot lists are stored left
        to right facing along the frame dart, hence reversal exactly on
        frame darts."""
        items = []
        for k, d in enumerate(self.real.spine.rot[self.node]):
            items.append(("corner", self.node, k))
            seq = list(self.real.edge_strands[d >> 1])
            if (d & 1) == 0:
                seq = seq[::-1]
            for s in seq:
                items.append(("slot", s, d))
        return items

    @staticmethod
    def _item_key(it):
        if it[0] == "corner":
            return it
        return ("slot", it[1].key(), it[2])

    def _subdivide(self):
        pts = self.pts
        chords = self.chords
        events_on = [[] for _ in chords]
        self.crossings = []
        for i in range(len(chords)):
            pa, pb = pts[chords[i]["a"]], pts[chords[i]["b"]]
            for j in range(i + 1, len(chords)):
                pc, pd = pts[chords[j]["a"]], pts[chords[j]["b"]]
                hit = _seg_intersect(pa, pb, pc, pd)
                if hit is None:
                    continue
                p, t1, t2 = hit
                c = {"node": self.node, "point": p,
                     "strands": (chords[i]["s_in"], chords[j]["s_in"]),
                     "chord_ids": (i, j), "t1": t1, "t2": t2,
                     "sign": _cross_sign(pa, pb, pc, pd)}
                cid = len(self.crossings)
                self.crossings.append(c)
                events_on[i].append((t1, cid))
                events_on[j].append((t2, cid))

        V = {("b", k): pts[k] for k in range(len(pts))}
        for cid, c in enumerate(self.crossings):
            V[("x", cid)] = c["point"]
        E = []
        m = len(pts)
        for k in range(m):
            E.append({"u": ("b", k), "v": ("b", (k + 1) % m),
                      "kind": ("side", k)})
        for i, ch in enumerate(chords):
            seq = [("b", ch["a"])]
            seq += [("x", cid) for _, cid in sorted(events_on[i])]
            seq.append(("b", ch["b"]))
            for q in range(len(seq) - 1):
                E.append({"u": seq[q], "v": seq[q + 1],
                          "kind": ("seg", i, q)})
        self.V, self.E = V, E
        self._build_dcel()
        self._index_pieces()

    def _build_dcel(self):
        V, E = self.V, self.E
        out = {vk: [] for vk in V}
        for eid, e in enumerate(E):
            out[e["u"]].append((eid, 0))
            out[e["v"]].append((eid, 1))

        def src(he):
            eid, s = he
            return E[eid]["u"] if s == 0 else E[eid]["v"]

        def tgt(he):
            eid, s = he
            return E[eid]["v"] if s == 0 else E[eid]["u"]

        def direction(he):
            p, q = V[src(he)], V[tgt(he)]
            return (q[0] - p[0], q[1] - p[1])

        for vk, lst in out.items():
            lst.sort(key=cmp_to_key(
                lambda h1, h2: _angle_cmp(direction(h1), direction(h2))))
        pos = {}
        for vk, lst in out.items():
            for idx, he in enumerate(lst):
                pos[he] = (vk, idx)

        def nxt(he):
            rev = (he[0], 1 - he[1])
            vk, idx = pos[rev]
            lst = out[vk]
            return lst[(idx - 1) % len(lst)]

        faces, seen = [], set()
        for eid in range(len(E)):
            for s in (0, 1):
                he0 = (eid, s)
                if he0 in seen:
                    continue
                face, he = [], he0
                while he not in seen:
                    seen.add(he)
                    face.append(he)
                    he = nxt(he)
                faces.append(face)

        def area(face):
            a = Fraction(0)
            for he in face:
                p, q = V[src(he)], V[tgt(he)]
                a += p[0] * q[1] - q[0] * p[1]
            return a

        self.cells = [f for f in faces if area(f) > 0]
        self.face_of_he = {}
        for fi, face in enumerate(self.cells):
            for he in face:
                self.face_of_he[he] = fi
        self._he_next_in_face = {}
        for face in self.cells:
            for i, he in enumerate(face):
                self._he_next_in_face[he] = face[(i + 1) % len(face)]
        self._src = src
        self._tgt = tgt

    def _index_pieces(self):
        """Name the dual-side pieces behind the polygon sides and collect
        the half-edges bounding cells along them."""
        self.piece_of_side = {}
        self.side_dart = {}
        m = len(self.items)
        cur_dart = None
        for k in range(m):
            if self.items[k][0] == "corner":
                cur_dart = self.real.spine.rot[self.node][self.items[k][2]]
            self.side_dart[k] = cur_dart
        for k in range(m):
            self.piece_of_side[k] = self._piece_name(k)
        self.piece_occurrences = {}
        self.seg_half_edges = []
        for he, fi in self.face_of_he.items():
            kind = self.E[he[0]]["kind"]
            if kind[0] == "side":
                piece = self.piece_of_side[kind[1]]
                self.piece_occurrences.setdefault(piece, []).append((he, fi))
            else:
                self.seg_half_edges.append(he)
        self.corner_cell_local = None
        for he, fi in self.face_of_he.items():
            s = self._src(he)
            if s[0] == "b" and self.items[s[1]][0] == "corner":
                self.corner_cell_local = fi
                break

    def _piece_name(self, side_k):
        """Global identity of the dual-side piece behind polygon side k.

        A side of dual edge e carrying j strands has j+1 pieces, indexed
        0..j from the left, facing along the frame dart."""
        items = self.items
        m = len(items)
        it1, it2 = items[side_k], items[(side_k + 1) % m]
        t1, t2 = it1[0], it2[0]
        if t1 == "corner" and t2 == "corner":
            d = self.real.spine.rot[self.node][it1[2]]
            return (d >> 1, 0)
        if t1 == "slot" and t2 == "slot":
            s1, d1 = it1[1], it1[2]
            s2, d2 = it2[1], it2[2]
            if d1 != d2:
                raise AssertionError("adjacent slots on different darts")
            lo = min(s1.order_index, s2.order_index)
            if abs(s1.order_index - s2.order_index) != 1:
                raise AssertionError("non-adjacent slots adjacent on boundary")
            return (d1 >> 1, lo + 1)
        if t1 == "corner":
            s, d = it2[1], it2[2]
        else:
            s, d = it1[1], it1[2]
        e = d >> 1
        j = len(self.real.edge_strands[e])
        first = (t1 == "corner")
        if (d & 1) == 0:
            return (e, j) if first else (e, 0)
        return (e, 0) if first else (e, j)

    # -- navigation -------------------------------------------------------

    def face_next(self, he):
        return self._he_next_in_face[he]

    def he_source(self, he):
        return self._src(he)

    def seg_info(self, he):
        eid, s = he
        kind = self.E[eid]["kind"]
        ch = self.chords[kind[1]]
        with_strand = (s == 0)
        return (ch["sys"], ch["comp"], ch["pos"], with_strand)


def _circle_point(k):
    t = Fraction(k)
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


def _unit_circle_point(theta):
    """Monotone rational parametrization of the circle for theta in
    [0,2): theta in (0,1) covers the upper half counterclockwise from
    (1,0), theta in (1,2) the lower half back to (1,0)."""
    if theta == 0:
        return (Fraction(1), Fraction(0))
    if theta == 1:
        return (Fraction(-1), Fraction(0))
    if theta < 1:
        u = theta / (1 - theta)       # (0, +inf): upper half
    else:
        u = (theta - 2) / (theta - 1)  # (-inf, 0): lower half
    den = 1 + u * u
    return ((1 - u * u) / den, 2 * u / den)


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v):
    def half(w):
        if w[1] > 0 or (w[1] == 0 and w[0] > 0):
            return 0
        return 1
    ha, hb = half(u), half(v)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _seg_intersect(p1, p2, p3, p4):
    d1 = _sub(p2, p1)
    d2 = _sub(p4, p3)
    den = _cross(d1, d2)
    if den == 0:
        return None
    t = _cross(_sub(p3, p1), d2) / den
    u = _cross(_sub(p3, p1), d1) / den
    if not (0 < t < 1 and 0 < u < 1):
        return None
    return (p1[0] + t * d1[0], p1[1] + t * d1[1]), t, u


def _cross_sign(p1, p2, p3, p4):
    return 1 if _cross(_sub(p2, p1), _sub(p4, p3)) > 0 else -1
