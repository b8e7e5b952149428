import math

import pytest

from discgraphlab.chart import MappingWord, dehn_twist, intersection_number
from discgraphlab.handlebody import Handlebody, surgery_path


@pytest.fixture(scope="module")
def H():
    return Handlebody(2)


def _guided_triple(H, k_target):
    """(D, E, alpha) with alpha meeting E once and D in k points."""
    chart = H.chart
    alpha = chart.curve("b1")
    E = H.standard_disc(0)  # iota(b1, m1) = 1
    assert intersection_number(alpha, E.boundary) == 1
    seeds = H.seed_discs()
    crossing = [d for d in seeds
                if intersection_number(d.boundary, E.boundary) > 0]
    m1 = E.boundary
    for base in crossing:
        for n in range(0, 9):
            c = dehn_twist(base.boundary, m1, n) if n else base.boundary
            k = intersection_number(alpha, c)
            if k == k_target and intersection_number(c, E.boundary) > 0:
                return H.disc(c, {"kind": "guided"}), E, alpha
    return None


@pytest.mark.parametrize("k", [2, 4])
def test_alpha_guided_halves(H, k):
    triple = _guided_triple(H, k)
    if triple is None:
        pytest.skip("no triple with k=%d at this seed depth" % k)
    D, E, alpha = triple
    path = surgery_path(H, D, E, mode="alpha_guided", guide=alpha)
    bound = int(math.log2(k)) + 1
    assert len(path) <= bound
    seq = path.discs
    for a, b in zip(seq, seq[1:]):
        assert intersection_number(a.boundary, b.boundary) == 0
    last = seq[-1]
    assert (intersection_number(last.boundary, E.boundary) == 0
            or intersection_number(alpha, last.boundary) == 0)
    # halving of the guide count step by step
    counts = [intersection_number(alpha, d.boundary) for d in seq]
    for i, c in enumerate(counts[1:], 1):
        assert 2 * c <= counts[i - 1] or counts[i - 1] == 0


def test_balanced_strict_decrease(H):
    triple = _guided_triple(H, 4)
    if triple is None:
        pytest.skip("no triple found")
    D, E, alpha = triple
    path = surgery_path(H, D, E, mode="balanced", guide=alpha)
    totals = []
    for dD, dE in path.pairs:
        totals.append(intersection_number(alpha, dD.boundary)
                      + intersection_number(alpha, dE.boundary))
    assert all(x > y for x, y in zip(totals, totals[1:]))
    assert path.note in ("disjoint", "thin", "two_component")
