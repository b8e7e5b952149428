import random

import pytest

from discgraphlab.electrify import (
    Electrification, ElectrifyError, MetricGraph, SubgraphFamily,
    broken_family_instance, caterpillar_instance, delta_four_point,
    delta_thin_oracle, electrify, enlarge, family_r_bound,
    find_counterexample_family, path_quality, penetration_probe,
    quasi_geodesic_holds, sample_efficient_quasigeodesics, synthetic_suite,
    wide_points,
)


def path_graph(n):
    return MetricGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return MetricGraph(range(n), [(i, (i + 1) % n) for i in range(n)])


def test_electrify_cone_distances():
    g = path_graph(5)
    fam = SubgraphFamily({"c": [0, 1, 2, 3, 4]})
    e = electrify(g, fam)
    assert e.distance(0, 4) == 2          # through the cone
    for x in range(5):
        assert e.distance(x, e.cone["c"]) == 1
    # d_E <= d_G pointwise
    for u in range(5):
        for v in range(5):
            assert e.distance(u, v) <= g.distance(u, v)


def test_electrify_partial_member():
    g = path_graph(5)
    fam = SubgraphFamily({"c": [1, 2, 3]})
    e = electrify(g, fam)
    assert e.distance(0, 4) == 4          # 0-1-cone-3-4


def test_empty_family_is_isometric():
    g = path_graph(6)
    e = electrify(g, SubgraphFamily({}))
    for u in range(6):
        for v in range(6):
            assert e.distance(u, v) == g.distance(u, v)


def test_invalid_family():
    g = path_graph(5)
    with pytest.raises(ElectrifyError):
        electrify(g, SubgraphFamily({"c": [0, 4]}))   # disconnected
    with pytest.raises(ElectrifyError):
        electrify(g, SubgraphFamily({"c": []}))


def test_family_r_bound():
    g = path_graph(7)
    fam = SubgraphFamily({"a": [0, 1, 2, 3], "b": [3, 4, 5, 6]})
    assert family_r_bound(g, fam) == 0     # single shared vertex
    fam2 = SubgraphFamily({"a": [0, 1, 2, 3, 4], "b": [2, 3, 4, 5, 6]})
    assert family_r_bound(g, fam2) == 2    # overlap 2..4
    fam3 = SubgraphFamily({"a": [0, 1, 2], "b": [4, 5, 6]})
    assert family_r_bound(g, fam3) == 0


def test_wide_points():
    g = path_graph(6)
    fam = SubgraphFamily({"c": [0, 1, 2, 3, 4, 5]})
    e = electrify(g, fam)
    path = [0, e.cone["c"], 5]
    assert wide_points(e, path, 5) == [(1, "c")]
    assert wide_points(e, path, 6) == []
    assert wide_points(e, path, 0) == [(1, "c")]
    assert wide_points(e, [0, 1, 2], 0) == []


def test_enlarge():
    g = path_graph(5)
    fam = SubgraphFamily({"c": [0, 1, 2, 3, 4]})
    e = electrify(g, fam)
    path = [0, e.cone["c"], 4]
    assert enlarge(e, path) == [0, 1, 2, 3, 4]
    assert enlarge(e, [0, 1, 2]) == [0, 1, 2]
    with pytest.raises(ElectrifyError):
        enlarge(e, [e.cone["c"], 0])


def test_path_quality_geodesic():
    g = path_graph(6)
    path = [0, 1, 2, 3, 4, 5]
    assert path_quality(path, g.distance) == 1.0


def test_path_quality_detour():
    g = cycle_graph(8)
    path = [0, 1, 2, 3, 4]   # the short way distance 0..4 is 4
    assert path_quality(path, g.distance) == 1.0
    detour = [0, 7, 6, 5, 4]  # also geodesic the other way
    assert path_quality(detour, g.distance) == 1.0
    wiggle = [0, 1, 0, 1, 2]
    q = path_quality(wiggle, g.distance)
    assert q > 1.0
    assert quasi_geodesic_holds(wiggle, g.distance, q)


def test_delta_trees_zero():
    g = path_graph(7)
    assert delta_four_point(g) == 0.0
    star = MetricGraph(range(5), [(0, i) for i in range(1, 5)])
    assert delta_four_point(star) == 0.0


def test_delta_cycle_matches_oracle():
    for n in (4, 5, 6, 7):
        g = cycle_graph(n)
        d4 = delta_four_point(g)
        dthin = delta_thin_oracle(g)
        # standard comparability between the two notions
        assert d4 <= 2 * dthin + 1
        assert dthin <= 4 * d4 + 1


def test_delta_relabel_invariant():
    g = cycle_graph(6)
    relabeled = MetricGraph([chr(65 + i) for i in range(6)],
                            [(chr(65 + i), chr(65 + (i + 1) % 6))
                             for i in range(6)])
    assert delta_four_point(g) == delta_four_point(relabeled)


def test_synthetic_suite_properties():
    suite = synthetic_suite(6)
    for inst in suite:
        assert inst.base.is_connected()
        inst.family.validate(inst.base)
        assert inst.why
        e = inst.electrification()
        r = family_r_bound(inst.base, inst.family)
        assert r is not None and r <= 1


def test_enlargements_are_quasigeodesics_on_suite():
    suite = synthetic_suite(5)
    rng = random.Random(1)
    worst = 1.0
    for inst in suite:
        e = inst.electrification()
        verts = inst.base.vertices
        for _ in range(6):
            u, v = rng.sample(verts, 2)
            geo = e.graph.geodesic(u, v)
            if not e.is_efficient(geo):
                continue
            big = enlarge(e, geo)
            q = path_quality(big, inst.base.distance)
            worst = max(worst, q)
    assert worst <= 6.0, worst


def test_penetration_probe_tree_family():
    inst = caterpillar_instance(10, member_len=3)
    e = inst.electrification()
    rng = random.Random(2)
    verts = inst.base.vertices
    pairs = [tuple(rng.sample(verts, 2)) for _ in range(8)]
    rep = penetration_probe(e, 3.0, pairs, rng=rng,
                            r_bound=family_r_bound(inst.base, inst.family))
    assert rep.holds_at(rep.p_empirical)


def test_broken_family_counterexample():
    inst = broken_family_instance(9)
    e = inst.electrification()
    pairs = [("v0", "v8")]
    rng = random.Random(3)
    counter = find_counterexample_family(e, 3.0, pairs, p_threshold=3,
                                         rng=rng)
    assert counter is not None
    p1, p2, cid = counter
    assert cid in ("A", "B")


def test_wide_monotone_in_R():
    inst = caterpillar_instance(10, member_len=4)
    e = inst.electrification()
    u, v = "s0", "s9"
    geo = e.graph.geodesic(u, v)
    if e.is_efficient(geo):
        for R1, R2 in ((0, 2), (1, 3), (2, 4)):
            w1 = set(wide_points(e, geo, R1))
            w2 = set(wide_points(e, geo, R2))
            assert w2 <= w1
