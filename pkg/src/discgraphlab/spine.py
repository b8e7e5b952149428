"""Embedded graphs (ribbon spines) and curves as reduced cyclic walks.

A surface with a distinguished cell structure is modelled by its dual
spine: a graph embedded in the surface with a rotation system (the
counterclockwise cyclic order of departing darts at each node).  Free
homotopy classes of loops in the complement of the cell vertices are in
bijection with reduced cyclic walks on the spine, which gives exact,
hashable curve representatives.

Darts: edge e has darts 2e (the frame dart) and 2e+1; mate(d) = d ^ 1.
A walk is a tuple of darts; step d travels from node_of[d] to
node_of[mate(d)].  Reduced means no step is immediately undone.
"""

from __future__ import annotations

from . import words


class Spine:
    def __init__(self, rotations, capped_faces=()):
        """rotations: list per node of departing darts in CCW order.

        capped_faces: indices (into self.faces) of boundary circles of the
        ribbon that are filled by a disc of the ambient surface (the cell
        vertices); the remaining faces are genuine boundary circles.
        """
        self.rot = [tuple(r) for r in rotations]
        self.n_nodes = len(self.rot)
        darts = sorted(d for r in self.rot for d in r)
        if darts != list(range(len(darts))):
            raise ValueError("darts must be 0..2E-1, each in exactly one rotation")
        if len(darts) % 2:
            raise ValueError("odd number of darts")
        self.n_edges = len(darts) // 2
        self.node_of = [None] * (2 * self.n_edges)
        self._pos = [None] * (2 * self.n_edges)
        for n, r in enumerate(self.rot):
            for i, d in enumerate(r):
                self.node_of[d] = n
                self._pos[d] = i
        self.faces = self._trace_faces()
        self.capped_faces = tuple(sorted(capped_faces))
        self._face_of_corner = {}
        for fi, face in enumerate(self.faces):
            for d in face:
                self._face_of_corner[d] = fi

    # -- basic incidence ------------------------------------------------

    @staticmethod
    def mate(d):
        return d ^ 1

    @staticmethod
    def edge(d):
        return d >> 1

    def head(self, d):
        return self.node_of[d ^ 1]

    def degree(self, n):
        return len(self.rot[n])

    def next_rot(self, d):
        r = self.rot[self.node_of[d]]
        return r[(self._pos[d] + 1) % len(r)]

    def prev_rot(self, d):
        r = self.rot[self.node_of[d]]
        return r[(self._pos[d] - 1) % len(r)]

    def turn(self, d, d2):
        """Rotational turn taken when a walk continues d -> d2.

        Measured CCW from the reversal of d; 0 would be a backtrack and is
        rejected.  At a trivalent node the values 1 and 2 are the two ways
        past the node.
        """
        if self.node_of[d2] != self.head(d):
            raise ValueError("darts not consecutive")
        r = self.rot[self.head(d)]
        t = (self._pos[d2] - self._pos[d ^ 1]) % len(r)
        if t == 0:
            raise ValueError("backtrack has no turn")
        return t

    def _trace_faces(self):
        """Orbits of d -> next_rot(mate(d)); one per ribbon boundary circle."""
        seen = set()
        faces = []
        for d0 in range(2 * self.n_edges):
            if d0 in seen:
                continue
            face = []
            d = d0
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self.next_rot(d ^ 1)
            faces.append(tuple(face))
        return faces

    @property
    def euler_characteristic(self):
        """Euler characteristic of the ambient closed-up surface piece:
        ribbon plus a disc for every capped face."""
        return self.n_nodes - self.n_edges + len(self.capped_faces)

    @property
    def n_boundary(self):
        return len(self.faces) - len(self.capped_faces)

    @property
    def genus(self):
        chi = self.euler_characteristic
        return (2 - chi - self.n_boundary) // 2

    # -- walks ------------------------------------------------------------

    def is_closed_walk(self, w):
        if not w:
            return False
        return all(self.node_of[w[(i + 1) % len(w)]] == self.head(w[i])
                   for i in range(len(w)))

    def is_path_walk(self, w):
        return all(self.node_of[w[i + 1]] == self.head(w[i])
                   for i in range(len(w) - 1))

    def reduce_cyclic(self, w):
        """Remove backtracks, including across the wrap-around."""
        w = list(w)
        changed = True
        while changed and w:
            changed = False
            out = []
            for d in w:
                if out and out[-1] == (d ^ 1):
                    out.pop()
                    changed = True
                else:
                    out.append(d)
            while len(out) >= 2 and out[0] == (out[-1] ^ 1):
                out = out[1:-1]
                changed = True
            w = out
        return tuple(w)

    def reduce_path(self, w):
        out = []
        for d in w:
            if out and out[-1] == (d ^ 1):
                out.pop()
            else:
                out.append(d)
        return tuple(out)

    def canonical_closed(self, w, oriented=False):
        """Canonical representative of the unoriented reduced cyclic walk."""
        w = self.reduce_cyclic(w)
        if not w:
            return ()
        cands = [w[i:] + w[:i] for i in range(len(w))]
        if not oriented:
            rw = self.reverse_walk(w)
            cands += [rw[i:] + rw[:i] for i in range(len(rw))]
        return min(cands)

    @staticmethod
    def reverse_walk(w):
        return tuple((d ^ 1) for d in reversed(w))

    def edge_weights(self, walks):
        """Traversal count per edge over a family of walks."""
        wts = [0] * self.n_edges
        for w in walks:
            for d in w:
                wts[d >> 1] += 1
        return tuple(wts)

    # -- intersection counting -------------------------------------------

    def _run_flips(self, a, b, skip_diagonal=False):
        """Count crossing-forcing maximal common runs of two reduced
        cyclic walks traversed in the same direction.

        Every transverse crossing of two curve lifts in the universal
        cover sits on a maximal shared edge-run, and happens iff the turns
        at the two ends of the run are ranked the same way (a strand
        leaving on the right ahead must come from the right behind to
        avoid the other).  skip_diagonal suppresses the i == j pairs when
        a and b are the same walk.
        """
        p, q = len(a), len(b)
        cap = p + q
        count = 0
        for i in range(p):
            for j in range(q):
                if skip_diagonal and i == j:
                    continue
                if a[i] != b[j]:
                    continue
                # run start: predecessors must differ
                if a[(i - 1) % p] == b[(j - 1) % q]:
                    continue
                k = 1
                while k < cap and a[(i + k) % p] == b[(j + k) % q]:
                    k += 1
                if k >= cap:
                    continue  # parallel forever
                last = a[(i + k - 1) % p]
                ta = self.turn(last, a[(i + k) % p])
                tb = self.turn(last, b[(j + k) % q])
                pa = a[(i - 1) % p]
                pb = b[(j - 1) % q]
                tab = self.turn(a[i] ^ 1, pa ^ 1)
                tbb = self.turn(b[j] ^ 1, pb ^ 1)
                if (ta < tb) == (tab < tbb):
                    count += 1
        return count

    def crossing_number(self, a, b):
        """Geometric intersection number of two reduced cyclic walks
        (distinct curves; for one curve against itself use
        self_crossing_number)."""
        a = self.reduce_cyclic(a)
        b = self.reduce_cyclic(b)
        if not a or not b:
            return 0
        return (self._run_flips(a, b)
                + self._run_flips(a, self.reverse_walk(b)))

    def self_crossing_number(self, a):
        a = self.reduce_cyclic(a)
        if not a:
            return 0
        same = self._run_flips(a, a, skip_diagonal=True)
        opp = self._run_flips(a, self.reverse_walk(a))
        total = same + opp
        if total % 2:
            raise AssertionError("self-crossing parity violated")
        return total // 2

    # -- words ------------------------------------------------------------

    def walk_labels(self, w, labels):
        """Read a word from edge labels: labels maps frame darts to signed
        letters; traversing the mate emits the negative.  Unlabelled edges
        emit nothing."""
        out = []
        for d in w:
            frame = d & ~1
            lab = labels.get(frame)
            if lab is not None:
                out.append(lab if d == frame else -lab)
        return words.free_reduce(tuple(out))
