"""Free-group words over signed integer letters.

A word is a tuple of nonzero ints; the letter -k is the inverse of k.
Cyclic words represent conjugacy classes (free homotopy classes of loops).
"""

from __future__ import annotations


def inverse(word):
    return tuple(-x for x in reversed(word))


def free_reduce(word):
    """Cancel adjacent inverse pairs until none remain."""
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    """Freely reduce, then cancel inverse pairs across the wrap-around."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def rotations(word):
    n = len(word)
    return [word[i:] + word[:i] for i in range(n)] or [word]


def canonical_cyclic(word, oriented=False):
    """Lexicographically least rotation of the cyclically reduced word.

    With oriented=False the inverse word's rotations compete too, so the
    result identifies unoriented loops.
    """
    w = cyclic_reduce(word)
    if not w:
        return ()
    cands = rotations(w)
    if not oriented:
        cands += rotations(inverse(w))
    return min(cands)


def concat(*words):
    return free_reduce(tuple(x for w in words for x in w))


def power(word, n):
    if n < 0:
        return power(inverse(word), -n)
    return free_reduce(word * n)


def substitute(word, images):
    """Apply the homomorphism sending letter k to images[k] (a word).

    images maps positive letters only; inverses are handled automatically.
    Letters missing from images are kept as-is.
    """
    out = []
    for x in word:
        img = images.get(abs(x))
        if img is None:
            out.append((x,))
        else:
            out.append(img if x > 0 else inverse(img))
    return free_reduce(tuple(y for part in out for y in part))


def primitive_root(cyclic_word):
    """Shortest u with cyclic_word = u^k; returns (u, k)."""
    w = tuple(cyclic_word)
    n = len(w)
    if n == 0:
        return (), 1
    for p in range(1, n + 1):
        if n % p == 0 and w == w[:p] * (n // p):
            return w[:p], n // p
    return w, 1


def dehn_reduce(word, relator):
    """Cyclic Dehn reduction modulo one relator (small cancellation).

    Repeatedly replaces any cyclic subword that matches more than half of
    a cyclic rotation of the relator or its inverse with the shorter
    complementary piece.  The relator must satisfy C'(1/6)-style small
    cancellation for the emptiness test to decide triviality; the genus-g
    surface relator (length 4g, g >= 2) qualifies.

    Returns a cyclically reduced word; empty iff trivial in the quotient.
    """
    rel = cyclic_reduce(relator)
    n = len(rel)
    if n == 0:
        return cyclic_reduce(word)
    half = n // 2
    variants = []
    for r in (rel, inverse(rel)):
        for rot in rotations(r):
            variants.append(rot)
    w = cyclic_reduce(word)
    changed = True
    while changed and w:
        changed = False
        m = len(w)
        doubled = w + w
        # look for long relator pieces: length half+1 .. n
        for piece_len in range(min(n, m), half, -1):
            repl_len = n - piece_len
            found = None
            for start in range(m):
                seg = doubled[start:start + piece_len]
                for rv in variants:
                    if seg == rv[:piece_len]:
                        # seg * tail = rv  =>  seg = rv * tail^-1
                        tail = rv[piece_len:]
                        found = (start, piece_len, inverse(tail))
                        break
                if found:
                    break
            if found:
                start, plen, repl = found
                rest = doubled[start + plen:start + m]
                w = cyclic_reduce(repl + rest)
                changed = True
                break
    return w


def is_trivial_in_quotient(word, relator):
    return len(dehn_reduce(word, relator)) == 0
