import json

import pytest

from silt import explorer as ex
from silt import orders


@pytest.fixture(scope="module")
def a2_eq():
    return ex.explore(orders.triangular_example_reduction())


@pytest.fixture(scope="module")
def bass_eq():
    return ex.explore(orders.bass_v_reduction())


def labelled_nodes(eq):
    """Map (sorted dim vectors of summands, proj labels) -> node index."""
    ws = eq.workspace
    out = {}
    for i, node in enumerate(eq.nodes):
        dims = tuple(sorted(ws.registry.dims(s) for s in node.summands))
        proj = tuple(eq.algebra.quiver.vertices[v] for v in node.proj_part)
        out[(dims, proj)] = i
    return out


def test_single_vertex_exploration():
    eq = ex.explore(orders.hereditary_reduction(1))
    assert eq.complete
    assert len(eq.nodes) == 2
    assert len(eq.edges) == 1
    assert ex.hasse_check(eq)


def test_a2_matches_figure(a2_eq):
    eq = a2_eq
    assert eq.complete
    assert len(eq.nodes) == 5
    assert len(eq.edges) == 5
    at = labelled_nodes(eq)
    lam = at[(((0, 1), (1, 1)), ())]
    p1m1 = at[(((1, 0), (1, 1)), ())]
    p2 = at[(((0, 1),), ("1",))]
    m1 = at[(((1, 0),), ("2",))]
    zero = at[((), ("1", "2"))]
    assert {(u, v) for (u, v, _) in eq.edges} == {
        (lam, p1m1), (lam, p2), (p1m1, m1), (p2, zero), (m1, zero)}


def test_a2_out_degree_of_top(a2_eq):
    lam_out = sum(1 for (u, _, _) in a2_eq.edges if u == 0)
    assert lam_out == a2_eq.algebra.quiver.n_vertices


def test_bass_v_matches_figure(bass_eq):
    eq = bass_eq
    assert eq.complete
    assert len(eq.nodes) == 6
    assert len(eq.edges) == 6
    at = labelled_nodes(eq)
    lam = at[(((1, 1), (1, 1)), ())]
    m2p2 = at[(((0, 1), (1, 1)), ())]
    p1m1 = at[(((1, 0), (1, 1)), ())]
    m2 = at[(((0, 1),), ("0",))]
    m1 = at[(((1, 0),), ("1",))]
    zero = at[((), ("0", "1"))]
    assert {(u, v) for (u, v, _) in eq.edges} == {
        (lam, m2p2), (lam, p1m1), (m2p2, m2), (p1m1, m1), (m2, zero), (m1, zero)}


def test_hasse_check(a2_eq, bass_eq):
    assert ex.hasse_check(a2_eq)
    assert ex.hasse_check(bass_eq)


def test_hasse_check_rejects_transitive_edge(a2_eq):
    eq = a2_eq
    zero = next(i for i, nd in enumerate(eq.nodes) if not nd.summands)
    doctored = ex.ExchangeQuiver(eq.workspace, eq.nodes,
                                 eq.edges + [(0, zero, 0)], eq.complete)
    assert not ex.hasse_check(doctored)


def test_poset_relations_a2(a2_eq):
    leq = ex.poset_relations(a2_eq)
    assert int(leq.sum()) == 13  # 5 reflexive + 8 strict


def test_unique_source_and_sink(a2_eq, bass_eq):
    for eq in (a2_eq, bass_eq):
        indeg = {i: 0 for i in range(len(eq.nodes))}
        outdeg = {i: 0 for i in range(len(eq.nodes))}
        for (u, v, _) in eq.edges:
            outdeg[u] += 1
            indeg[v] += 1
        assert [i for i in indeg if indeg[i] == 0] == [0]
        sinks = [i for i in outdeg if outdeg[i] == 0]
        assert len(sinks) == 1
        assert not eq.nodes[sinks[0]].summands


def test_limits_return_partial():
    eq = ex.explore(orders.hereditary_reduction(2), ex.ExploreLimits(max_nodes=3))
    assert not eq.complete
    assert len(eq.nodes) <= 3
    eq = ex.explore(orders.hereditary_reduction(2), ex.ExploreLimits(max_depth=1))
    assert not eq.complete
    with pytest.raises(ValueError):
        ex.hasse_check(eq)
    with pytest.raises(ValueError):
        ex.ExploreLimits(max_nodes=0)


def test_to_json_roundtrip(a2_eq):
    doc = json.loads(ex.to_json(a2_eq))
    assert doc["complete"] is True
    assert len(doc["nodes"]) == 5
    assert len(doc["edges"]) == 5
    assert doc["algebra"]["nilpotency_bound"] == 2
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" \
        == ex.to_json(a2_eq)


def test_to_dot(a2_eq):
    dot = ex.to_dot(a2_eq)
    assert dot.startswith("digraph")
    assert dot.count("->") == 5
    assert "n0" in dot


def test_workers_agree():
    seq = ex.to_json(ex.explore(orders.hereditary_reduction(2), workers=1))
    par = ex.to_json(ex.explore(orders.hereditary_reduction(2), workers=8))
    assert seq == par


def test_hereditary_2_counts():
    eq = ex.explore(orders.hereditary_reduction(2))
    assert eq.complete
    assert len(eq.nodes) == 6
    assert len(eq.edges) == 6
    assert ex.hasse_check(eq)


def test_every_node_sits_between_extremes(a2_eq, bass_eq):
    from silt import twoterm as tt
    for eq in (a2_eq, bass_eq):
        ws = eq.workspace
        lam = tt.lambda_stalk(eq.algebra)
        shift = tt.lambda_shift(eq.algebra)
        for node in eq.nodes:
            cx = ws.complex_of(node)
            assert tt.silt_leq(lam, cx)
            assert tt.silt_leq(cx, shift)


def test_edges_are_bongartz_to_co_bongartz(a2_eq, bass_eq):
    # deleting the mutated summand from an edge's source must complete
    # upward to the source and downward to the target
    from silt import twoterm as tt
    for eq in (a2_eq, bass_eq):
        ws = eq.workspace
        for (u, v, at) in eq.edges:
            src = eq.nodes[u]
            sub = ws.make_pair(src.summands[:at] + src.summands[at + 1:],
                               src.proj_part)
            p_cx = ws.complex_of(sub)
            top = tt.bongartz_completion(p_cx, ws.registry)
            bot = tt.co_bongartz_completion(p_cx, ws.registry)
            src_cx = ws.complex_of(src)
            tgt_cx = ws.complex_of(eq.nodes[v])
            assert tt.silt_leq(top, src_cx) and tt.silt_leq(src_cx, top)
            assert tt.silt_leq(bot, tgt_cx) and tt.silt_leq(tgt_cx, bot)


def test_registry_iso_reflexive_symmetric(a2_eq):
    from silt import repmod as rm
    reg = a2_eq.workspace.registry
    for i in range(len(reg)):
        assert rm.is_isomorphic(reg.rep(i), reg.rep(i))
        for j in range(len(reg)):
            assert rm.is_isomorphic(reg.rep(i), reg.rep(j)) == \
                rm.is_isomorphic(reg.rep(j), reg.rep(i))
