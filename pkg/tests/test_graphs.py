import pytest

from discgraphlab.chart import intersection_number
from discgraphlab.graphs import (
    BallBudget, CurvePool, FiniteGraph, GraphKind, build_ball,
    common_disjoint_curve, disjoint_multicurve, edge_test, nonsep_reroute,
    revalidate_witness,
)
from discgraphlab.handlebody import Handlebody, surgery_path


@pytest.fixture(scope="module")
def H():
    return Handlebody(2)


@pytest.fixture(scope="module")
def ctx(H):
    return {"pool": CurvePool(H)}


def test_edge_test_dg(H, ctx):
    d1, d2 = H.standard_disc(0), H.standard_disc(1)
    w = edge_test(H, GraphKind("DG"), d1, d2, ctx)
    assert w is not None and w.kind == "disjoint"
    assert revalidate_witness(H, GraphKind("DG"), d1, d2, w)


def test_edge_test_edg_crossing_pair(H, ctx):
    seeds = H.seed_discs()
    d1 = H.standard_disc(0)
    crossing = [d for d in seeds
                if intersection_number(d.boundary, d1.boundary) > 0]
    assert crossing
    d2 = crossing[0]
    w = edge_test(H, GraphKind("EDG"), d1, d2, ctx)
    # crossing but not filling: a common disjoint curve should exist
    if w is not None:
        assert w.kind == "common_curve"
        assert intersection_number(w.curve, d1.boundary) == 0
        assert intersection_number(w.curve, d2.boundary) == 0


def test_multicurve_witness_for_disjoint_pair(H, ctx):
    d1, d2 = H.standard_disc(0), H.standard_disc(1)
    mc = disjoint_multicurve(H, d1.boundary, d2.boundary, 3, ctx["pool"])
    assert mc is not None
    assert mc.component_count == 3
    assert intersection_number(mc, d1.boundary) == 0
    assert intersection_number(mc, d2.boundary) == 0


def test_edge_monotonicity_kinds(H, ctx):
    seeds = H.seed_discs()
    discs = seeds[:6]
    kinds = [GraphKind("DG"), GraphKind("EDG_h", h=3), GraphKind("EDG_h", h=2),
             GraphKind("EDG"), GraphKind("SDG")]
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            prev = None
            for k in kinds:
                w = edge_test(H, k, discs[i], discs[j], ctx)
                if prev is not None and prev and w is None:
                    raise AssertionError(
                        "monotonicity broken between %s and previous kind"
                        % k.label())
                prev = w is not None


def test_edg3_equals_dg(H, ctx):
    seeds = H.seed_discs()
    discs = seeds[:6]
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            dg = edge_test(H, GraphKind("DG"), discs[i], discs[j], ctx)
            e3 = edge_test(H, GraphKind("EDG_h", h=3), discs[i], discs[j], ctx)
            assert (dg is None) == (e3 is None), (i, j)


@pytest.fixture(scope="module")
def small_dg_ball(H, ctx):
    budget = BallBudget(max_vertices=40, max_weight=120,
                        orbit_word_len=1, surgery_pairs_per_round=60)
    return build_ball(H, GraphKind("DG"), H.standard_disc(0), 2,
                      budget, ctx)


def test_ball_contains_cut_system(H, small_dg_ball):
    g = small_dg_ball
    m2 = H.standard_disc(1)
    assert m2.key in g.vertices
    assert g.distance(g.center, m2.key) == 1
    sep = H.separating_disc()
    assert sep.key in g.vertices
    assert g.distance(g.center, sep.key) == 1


def test_ball_determinism(H, ctx):
    budget = BallBudget(max_vertices=25, max_weight=90,
                        orbit_word_len=1, surgery_pairs_per_round=30)
    g1 = build_ball(H, GraphKind("DG"), H.standard_disc(0), 2, budget,
                    {"pool": CurvePool(H)})
    g2 = build_ball(H, GraphKind("DG"), H.standard_disc(0), 2, budget,
                    {"pool": CurvePool(H)})
    assert g1.dumps() == g2.dumps()


def test_distance_ordering(H, ctx):
    budget = BallBudget(max_vertices=30, max_weight=100,
                        orbit_word_len=1, surgery_pairs_per_round=40)
    center = H.standard_disc(0)
    balls = {}
    for tag in ("DG", "EDG", "SDG"):
        balls[tag] = build_ball(H, GraphKind(tag), center, 3, budget,
                                {"pool": ctx["pool"]})
    keys = sorted(set(balls["DG"].vertices)
                  & set(balls["EDG"].vertices) & set(balls["SDG"].vertices))
    for k in keys[:12]:
        dd = balls["DG"].distance(center.key, k)
        de = balls["EDG"].distance(center.key, k)
        ds = balls["SDG"].distance(center.key, k)
        if dd is not None and de is not None:
            assert de <= dd
        if de is not None and ds is not None:
            assert ds <= de


def test_witnesses_revalidate(H, small_dg_ball):
    g = small_dg_ball
    for k1 in g.adj:
        for k2, w in g.adj[k1].items():
            assert revalidate_witness(H, g.kind, g.vertices[k1],
                                      g.vertices[k2], w)


def test_nonsep_reroute(H, ctx):
    budget = BallBudget(max_vertices=40, max_weight=120,
                        orbit_word_len=1, surgery_pairs_per_round=60)
    g = build_ball(H, GraphKind("DG"), H.standard_disc(0), 2, budget, ctx)
    sep = H.separating_disc()
    m1, m2 = H.standard_disc(0), H.standard_disc(1)
    if sep.key in g.vertices:
        path = [m1.key, sep.key, m2.key]
        # only a valid input if consecutive pairs are edges
        if sep.key in g.adj[m1.key] and m2.key in g.adj[sep.key]:
            out = nonsep_reroute(H, g, path)
            assert len(out) == 3
            assert not out[1].separating
            assert intersection_number(out[1].boundary, m1.boundary) == 0
            assert intersection_number(out[1].boundary, m2.boundary) == 0
