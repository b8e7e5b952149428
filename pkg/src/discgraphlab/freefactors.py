"""Whitehead automorphism engine for free groups and the free factor
graph built on it.

Words are tuples of nonzero ints over generators 1..n (see words.py).
Whitehead moves follow the cut-set formulation: the move (a, S) with
S a set of letters not containing +-a fixes a and maps every other
letter x to a^eps1 x a^-eps2 according to membership of -x and x in S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import words


def letters(n):
    return [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]


def apply_whitehead(word, a, cut, n):
    out = []
    for x in word:
        if x == a or x == -a:
            out.append(x)
            continue
        if -x not in cut:
            out.append(a)
        out.append(x)
        if x not in cut:
            out.append(-a)
    return words.cyclic_reduce(tuple(out))


def whitehead_moves(n):
    for a in letters(n):
        others = [x for x in letters(n) if x != a and x != -a]
        for r in range(len(others) + 1):
            for cut in itertools.combinations(others, r):
                yield (a, frozenset(cut))


def canonical_tuple(ws):
    return tuple(sorted(words.canonical_cyclic(w, oriented=True) for w in ws))


def total_length(ws):
    return sum(len(w) for w in ws)


def whitehead_minimize(ws, n, level_closure=True, max_level=20000):
    """Greedy length reduction by Whitehead moves, then closure under
    length-preserving moves at the minimum.

    Returns (minimal canonical tuple, level set, trace of moves).
    The minimal tuple is the lexicographically least member of the level
    set; the trace records the greedy descent.
    """
    cur = canonical_tuple(tuple(words.cyclic_reduce(w) for w in ws))
    if total_length(cur) == 0:
        raise ValueError("trivial input word")
    trace = []
    moves = list(whitehead_moves(n))
    while True:
        best = None
        for a, cut in moves:
            nxt = canonical_tuple([apply_whitehead(w, a, cut, n) for w in cur])
            if total_length(nxt) < total_length(cur):
                if best is None or (total_length(nxt), nxt) < (
                        total_length(best[0]), best[0]):
                    best = (nxt, (a, tuple(sorted(cut))))
        if best is None:
            break
        cur, mv = best
        trace.append(mv)
    if not level_closure:
        return cur, {cur}, trace
    level = {cur}
    frontier = [cur]
    while frontier and len(level) < max_level:
        t = frontier.pop()
        for a, cut in moves:
            nxt = canonical_tuple([apply_whitehead(w, a, cut, n) for w in t])
            if total_length(nxt) == total_length(cur) and nxt not in level:
                level.add(nxt)
                frontier.append(nxt)
    least = min(level)
    return least, level, trace


def whitehead_graph(ws, n):
    """Adjacency of the Whitehead graph: vertices are the 2n letters,
    one edge per adjacent pair (u, v) in a cyclic word linking u to -v."""
    adj = {x: set() for x in letters(n)}
    edges = []
    for w in ws:
        m = len(w)
        for i in range(m):
            u = w[i]
            v = -w[(i + 1) % m]
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
    return adj, edges


def connected_no_cutvertex(adj):
    """True iff the graph is connected (on all listed vertices) and has
    no cut vertex."""
    verts = list(adj)
    if not verts:
        return False
    start = verts[0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(verts):
        return False
    # articulation points by removal (graphs here are tiny)
    for v in verts:
        rest = [u for u in verts if u != v]
        if not rest:
            continue
        seen2 = {rest[0]}
        stack = [rest[0]]
        while stack:
            u = stack.pop()
            for w2 in adj[u]:
                if w2 != v and w2 not in seen2:
                    seen2.add(w2)
                    stack.append(w2)
        if len(seen2) != len(rest):
            return False
    return True


def is_diskbusting_words(ws, n):
    """Whitehead criterion: minimize, then the Whitehead graph must be
    connected without cut vertices."""
    ws = [words.cyclic_reduce(w) for w in ws]
    if any(not w for w in ws):
        raise ValueError("trivial component")
    minimal, _, _ = whitehead_minimize(ws, n, level_closure=False)
    adj, _ = whitehead_graph(minimal, n)
    return connected_no_cutvertex(adj)


# -- cyclic words and free factors -------------------------------------------


@dataclass(frozen=True)
class CyclicWord:
    letters: tuple
    key: tuple

    @staticmethod
    def make(w):
        red = words.cyclic_reduce(tuple(w))
        if not red:
            raise ValueError("trivial cyclic word")
        return CyclicWord(red, words.canonical_cyclic(red, oriented=True))

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class FreeFactorClass:
    """Conjugacy class of a free factor, canonicalized by jointly
    Whitehead-minimizing a defining basis."""

    rank: int
    ambient_rank: int
    basis: tuple          # canonical tuple of basis words
    canonical_key: tuple

    @staticmethod
    def make(basis_words, n):
        basis = tuple(words.free_reduce(tuple(w)) for w in basis_words)
        if any(not w for w in basis):
            raise ValueError("trivial basis word")
        rank = len(basis)
        if not (1 <= rank <= n - 1):
            raise ValueError("free factor rank must be in 1..n-1")
        least, _, _ = whitehead_minimize(basis, n)
        return FreeFactorClass(rank, n, basis, least)

    def __hash__(self):
        return hash((self.ambient_rank, self.canonical_key))

    def __eq__(self, other):
        return (self.ambient_rank == other.ambient_rank
                and self.canonical_key == other.canonical_key)


def standard_corank_one(n, killed):
    """The free factor generated by all generators except `killed`."""
    basis = [(i,) for i in range(1, n + 1) if i != killed]
    return FreeFactorClass.make(basis, n)


def ff_edge(x, y, depth=6):
    """Decide whether two free factor classes admit representatives with
    a common complement: F = A * B * C.

    Sound when returning ("yes", certificate): the certificate is a
    Whitehead image of the joint basis consisting of distinct single
    generators.  Bounded search; returns ("undecided", None) at the
    depth limit and ("no", None) only for structurally impossible cases.
    """
    n = x.ambient_rank
    if y.ambient_rank != n:
        raise ValueError("factors of different ambient rank")
    if x == y:
        return ("no", None)
    if x.rank + y.rank > n:
        return ("no", None)
    joint = tuple(x.canonical_key) + tuple(y.canonical_key)
    k = len(joint)

    def is_cert(t):
        gens = set()
        for w in t:
            if len(w) != 1:
                return False
            gens.add(abs(w[0]))
        return len(gens) == k

    seen = {canonical_joint(joint)}
    frontier = [tuple(joint)]
    moves = list(whitehead_moves(n))
    for _ in range(depth):
        nxt_frontier = []
        for t in frontier:
            if is_cert(t):
                return ("yes", t)
            for a, cut in moves:
                img = tuple(apply_whitehead(w, a, cut, n) for w in t)
                if any(not w for w in img):
                    continue
                ck = canonical_joint(img)
                if ck not in seen and total_length(img) <= total_length(joint):
                    seen.add(ck)
                    nxt_frontier.append(img)
        frontier = nxt_frontier
        if not frontier:
            break
    for t in seen:
        if is_cert(t):
            return ("yes", t)
    return ("undecided", None)


def canonical_joint(ws):
    return tuple(words.canonical_cyclic(w, oriented=True) for w in ws)
